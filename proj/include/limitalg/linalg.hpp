#pragma once

// Dense exact linear algebra over a field F. F must provide +, -, *, and the
// free functions is_zero(F), inverse(F) and unit_like(F) (see scalar.hpp, cyclotomic.hpp).
// Vectors are rows; a subspace is represented by a list of spanning rows.

#include "limitalg/scalar.hpp"

#include <cstddef>
#include <vector>

namespace limitalg {

template <class F>
using Row = std::vector<F>;

template <class F>
using Rows = std::vector<Row<F>>;

/// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<size_t> rref(Rows<F>& m)
{
    std::vector<size_t> pivots;
    if (m.empty())
        return pivots;
    const size_t ncols = m.front().size();
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < m.size(); ++c) {
        size_t piv = r;
        while (piv < m.size() && is_zero(m[piv][c]))
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[r], m[piv]);
        F inv = inverse(m[r][c]);
        for (size_t k = c; k < ncols; ++k)
            if (!is_zero(m[r][k]))
                m[r][k] = m[r][k] * inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == r || is_zero(m[i][c]))
                continue;
            F f = m[i][c];
            for (size_t k = c; k < ncols; ++k)
                if (!is_zero(m[r][k]))
                    m[i][k] = m[i][k] - f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

template <class F>
size_t rank(Rows<F> m)
{
    return rref(m).size();
}

/// Basis of {x : m x = 0} where m has `ncols` columns. `zero` fixes the field
/// instance (cyclotomic order).
template <class F>
Rows<F> nullspace(Rows<F> m, size_t ncols, const F& zero)
{
    auto pivots = rref(m);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    Rows<F> basis;
    for (size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        Row<F> v(ncols, zero);
        v[free] = unit_like(zero);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = zero - m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Canonical (reduced echelon) basis of the span of the rows.
template <class F>
Rows<F> span_basis(Rows<F> m)
{
    rref(m);
    return m;
}

template <class F>
bool same_span(const Rows<F>& a, const Rows<F>& b)
{
    return span_basis(a) == span_basis(b);
}

/// dim(span(a) ∩ span(b)) = dim a + dim b - dim(a + b).
template <class F>
size_t intersection_dim(const Rows<F>& a, const Rows<F>& b)
{
    Rows<F> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return rank(a) + rank(b) - rank(both);
}

template <class F>
bool contains_span(const Rows<F>& big, const Rows<F>& small)
{
    return intersection_dim(big, small) == rank(small);
}

} // namespace limitalg
