#ifndef REFLMAP_LINALG_HPP
#define REFLMAP_LINALG_HPP

#include <utility>
#include <vector>

#include "reflmap/cyclotomic.hpp"
#include "reflmap/errors.hpp"

namespace reflmap {

using CycloMatrix = std::vector<std::vector<CycloElem>>;

inline CycloMatrix identity_matrix(const FieldPtr& f, std::size_t n) {
    CycloMatrix m(n, std::vector<CycloElem>(n, CycloElem::zero(f)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = CycloElem::one(f);
    return m;
}

inline CycloMatrix mat_mul(const CycloMatrix& a, const CycloMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    const FieldPtr& f = a[0][0].field();
    CycloMatrix c(n, std::vector<CycloElem>(m, CycloElem::zero(f)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) c[i][j] = c[i][j] + a[i][l] * b[l][j];
        }
    return c;
}

inline CycloMatrix mat_transpose(const CycloMatrix& a) {
    if (a.empty()) return {};
    CycloMatrix t(a[0].size(), std::vector<CycloElem>(a.size(), CycloElem::zero(a[0][0].field())));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

// In-place reduced row echelon form; returns pivot column per pivot row.
// Leading entries are 1 and pivot columns are cleared, so the result is
// a canonical representative of the row space.
inline std::vector<std::size_t> rref(CycloMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        if (!m[r][c].is_one()) {
            CycloElem inv = m[r][c].inverse();
            m[r][c] = CycloElem::one(inv.field());
            for (std::size_t j = c + 1; j < cols; ++j)
                if (!m[r][j].is_zero()) m[r][j] = m[r][j] * inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            CycloElem factor = m[i][c];
            m[i][c] = CycloElem::zero(factor.field());
            for (std::size_t j = c + 1; j < cols; ++j)
                if (!m[r][j].is_zero()) m[i][j] = m[i][j] - factor * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(pivots.size(), std::vector<CycloElem>());  // drop zero rows
    return pivots;
}

inline std::size_t mat_rank(CycloMatrix m) { return rref(m).size(); }

// Basis of the null space of m, one row per free column (canonical: the
// free-column entry is 1, pivot entries are filled from the RREF).
inline CycloMatrix kernel_basis(CycloMatrix m, std::size_t cols, const FieldPtr& f) {
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    CycloMatrix out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<CycloElem> v(cols, CycloElem::zero(f));
        v[free] = CycloElem::one(f);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free];
        out.push_back(std::move(v));
    }
    return out;
}

// Inverse of a square matrix; throws math_error if singular.
inline CycloMatrix mat_inverse(const CycloMatrix& a) {
    std::size_t n = a.size();
    const FieldPtr& f = a[0][0].field();
    CycloMatrix aug(n, std::vector<CycloElem>(2 * n, CycloElem::zero(f)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = CycloElem::one(f);
    }
    std::vector<std::size_t> pivots = rref(aug);
    if (pivots.size() != n || pivots[n - 1] != n - 1)
        throw math_error("matrix is singular");
    CycloMatrix inv(n, std::vector<CycloElem>(n, CycloElem::zero(f)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

inline bool mat_equal(const CycloMatrix& a, const CycloMatrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != b[i][j]) return false;
    }
    return true;
}

} // namespace reflmap

#endif
