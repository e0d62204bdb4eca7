#pragma once

#include "detk/polynomial.hpp"

#include <vector>

namespace detk {

// Row-major matrix of polynomials; holds the presentation matrix whose
// maximal minors generate the Fitting ideal.
class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols, const VarList& vars);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const VarList& vars() const { return vars_; }

    Polynomial& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Polynomial& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    PolyMatrix submatrix(const std::vector<std::size_t>& row_idx,
                         const std::vector<std::size_t>& col_idx) const;

private:
    std::size_t rows_, cols_;
    VarList vars_;
    std::vector<Polynomial> entries_;
};

// Laplace expansion along `pivot_row` (any row gives the same result;
// exposed for consistency checks).
Polynomial determinant(const PolyMatrix& m, std::size_t pivot_row = 0);

// All k x k minors, enumerated over row subsets then column subsets, each
// in lexicographic index order. For the Fitting pipeline k == rows and the
// row subset is unique.
std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t k);

} // namespace detk
