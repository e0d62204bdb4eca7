#pragma once

#include "detk/analyze.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace detk {

// Deterministic renderings: fixed float precision, no timestamps, no
// addresses, stable ordering; byte-identical across runs for equal inputs.
std::string render_text(const DeterminacyReport& rep);
nlohmann::json render_json(const DeterminacyReport& rep);

std::string render_fit_text(const ExponentFit& fit);
nlohmann::json render_fit_json(const ExponentFit& fit);

// columns: log_r,log_d,is_envelope (log10)
std::string render_fit_csv(const ExponentFit& fit);

std::string render_fitting_text(const FittingResult& res);
std::string render_tame_text(const TameReport& rep);
std::string render_nonqa_text(const NonQAReport& rep);

std::string format_num(double v);

} // namespace detk
