#include "detk/fitting.hpp"

namespace detk {

MapGerm::MapGerm(std::vector<Polynomial> comps) : components(std::move(comps)) {
    if (components.empty()) throw Error("map germ needs at least one component");
    for (const auto& c : components)
        if (c.constant_term() != 0)
            throw Error("map germ component does not vanish at the origin: " + c.str());
}

MapGerm gradient(const Polynomial& f) {
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < f.nvars(); ++i) comps.push_back(derive(f, i));
    return MapGerm(std::move(comps));
}

Polynomial sigma_apply(const ModuleVector& v, const MapGerm& psi) {
    if (v.size() != psi.size()) throw IndexError("module vector length does not match psi");
    Polynomial s = Polynomial::zero(psi.vars());
    for (std::size_t i = 0; i < v.size(); ++i) s = s + v.entries[i] * psi.components[i];
    return s;
}

PrimitiveResult primitive_member(const Polynomial& f, const Ideal& I) {
    if (f.constant_term() != 0) throw Error("primitive membership requires f(0) = 0");
    PrimitiveResult res;
    Polynomial nf = normal_form(f, I);
    if (!nf.is_zero()) {
        res.failed_part = "f";
        res.witness = std::move(nf);
        return res;
    }
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        Polynomial d = derive(f, i);
        Polynomial nd = normal_form(d, I);
        if (!nd.is_zero()) {
            res.failed_part = "df/dx" + std::to_string(i + 1);
            res.witness = std::move(nd);
            return res;
        }
    }
    res.member = true;
    return res;
}

FittingResult build_lambda(const MapGerm& psi, const MapGerm& phi) {
    Ideal psi_ideal(psi.components);
    for (const auto& c : phi.components) {
        Polynomial nf = normal_form(c, psi_ideal);
        if (!nf.is_zero())
            throw NotInIdealError("phi component has no lift over psi: " + c.str(), nf.str());
    }
    FittingResult res;
    res.psi = psi;
    res.phi = phi;
    for (const auto& c : phi.components) {
        MemberResult m = ideal_member(c, psi_ideal);
        if (!m.member)
            throw NotInIdealError("phi component has no lift over psi: " + c.str(),
                                  m.cert.remainder.str());
        res.lifts.push_back(std::move(m.cert.cofactors));
    }
    res.relations = syzygies(psi.components);

    std::size_t p = psi.size();
    std::size_t q = phi.size();
    std::size_t r = res.relations.size();
    res.lambda = std::make_shared<PolyMatrix>(p, q + r, psi.vars());
    for (std::size_t j = 0; j < q; ++j)
        for (std::size_t i = 0; i < p; ++i) res.lambda->at(i, j) = res.lifts[j].entries[i];
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < p; ++i) res.lambda->at(i, q + j) = res.relations[j].entries[i];
    return res;
}

FittingResult fitting_ideal(const MapGerm& psi, const MapGerm& phi) {
    FittingResult res = build_lambda(psi, phi);
    std::vector<Polynomial> mins = minors(*res.lambda, psi.size());
    for (auto& m : mins)
        if (!m.is_zero()) res.minor_list.push_back(std::move(m));
    if (res.minor_list.empty())
        throw DegenerateIdealError("all maximal minors vanish: the Fitting ideal is zero");
    res.ideal = std::make_shared<Ideal>(res.minor_list);
    return res;
}

FittingResult kf_pipeline(const MapGerm& psi, const Polynomial& f) {
    Ideal psi_ideal(psi.components);
    PrimitiveResult pr = primitive_member(f, psi_ideal);
    if (!pr.member)
        throw NotPrimitiveError("f is not in the primitive ideal of <psi>: " + pr.failed_part +
                                    " does not reduce to zero",
                                pr.failed_part);
    return fitting_ideal(psi, gradient(f));
}

} // namespace detk
