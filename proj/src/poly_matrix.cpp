#include "detk/poly_matrix.hpp"

namespace detk {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, const VarList& vars)
    : rows_(rows), cols_(cols), vars_(vars), entries_(rows * cols, Polynomial::zero(vars)) {
    if (rows == 0 || cols == 0) throw IndexError("matrix dimensions must be positive");
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                                 const std::vector<std::size_t>& col_idx) const {
    PolyMatrix s(row_idx.size(), col_idx.size(), vars_);
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j) s.at(i, j) = at(row_idx[i], col_idx[j]);
    return s;
}

Polynomial determinant(const PolyMatrix& m, std::size_t pivot_row) {
    if (m.rows() != m.cols()) throw IndexError("determinant of a non-square matrix");
    if (pivot_row >= m.rows()) throw IndexError("pivot row out of range");
    std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    Polynomial det = Polynomial::zero(m.vars());
    std::vector<std::size_t> rest_rows;
    for (std::size_t r = 0; r < n; ++r)
        if (r != pivot_row) rest_rows.push_back(r);
    for (std::size_t c = 0; c < n; ++c) {
        if (m.at(pivot_row, c).is_zero()) continue;
        std::vector<std::size_t> rest_cols;
        for (std::size_t cc = 0; cc < n; ++cc)
            if (cc != c) rest_cols.push_back(cc);
        Polynomial cofactor = determinant(m.submatrix(rest_rows, rest_cols), 0);
        Polynomial contrib = m.at(pivot_row, c) * cofactor;
        if ((pivot_row + c) % 2 == 1) contrib = -contrib;
        det = det + contrib;
    }
    return det;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    cur.reserve(k);
    // lexicographic enumeration of k-subsets of {0..n-1}
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] < n - (k - i)) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

} // namespace

std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t k) {
    if (k == 0 || k > std::min(m.rows(), m.cols())) throw IndexError("minor size out of range");
    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    subsets(m.rows(), k, row_sets);
    subsets(m.cols(), k, col_sets);
    std::vector<Polynomial> out;
    out.reserve(row_sets.size() * col_sets.size());
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) out.push_back(determinant(m.submatrix(rs, cs)));
    return out;
}

} // namespace detk
