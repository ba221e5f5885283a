#pragma once

// Finite-dimensional associative algebras given by structure constants over
// an exact field F, with the trace-form radical and subspace/ideal helpers.

#include "limitalg/linalg.hpp"
#include "limitalg/tower.hpp"

#include <utility>
#include <vector>

namespace limitalg {

template <class F>
struct FiniteAlgebra {
    using Sparse = std::vector<std::pair<int, F>>;

    int dim = 0;
    F zero{};
    // table[i][j] = b_i * b_j as a sparse combination of basis vectors
    std::vector<std::vector<Sparse>> table;

    FiniteAlgebra() = default;
    FiniteAlgebra(int d, F z) : dim(d), zero(std::move(z)), table(d, std::vector<Sparse>(d)) {}

    Row<F> basis(int i) const
    {
        Row<F> v(dim, zero);
        v[i] = unit_like(zero);
        return v;
    }

    Row<F> multiply(const Row<F>& a, const Row<F>& b) const
    {
        Row<F> out(dim, zero);
        for (int i = 0; i < dim; ++i) {
            if (is_zero(a[i]))
                continue;
            for (int j = 0; j < dim; ++j) {
                if (is_zero(b[j]))
                    continue;
                const F ab = a[i] * b[j];
                for (const auto& [k, c] : table[i][j])
                    out[k] = out[k] + ab * c;
            }
        }
        return out;
    }
};

/// tr(L_{b_k}) for every basis vector.
template <class F>
Row<F> regular_traces(const FiniteAlgebra<F>& A)
{
    Row<F> t(A.dim, A.zero);
    for (int k = 0; k < A.dim; ++k)
        for (int m = 0; m < A.dim; ++m)
            for (const auto& [idx, c] : A.table[k][m])
                if (idx == m)
                    t[k] = t[k] + c;
    return t;
}

/// Radical over a characteristic-zero field: x with tr(L_{xa}) = 0 for all a
/// (and tr(L_x) = 0, which covers the non-unital case). Reduced echelon basis.
template <class F>
Rows<F> radical_basis(const FiniteAlgebra<F>& A)
{
    const Row<F> t = regular_traces(A);
    // constraint row j: sum_i x_i tr(L_{b_i b_j})
    Rows<F> cons(A.dim + 1, Row<F>(A.dim, A.zero));
    for (int i = 0; i < A.dim; ++i) {
        for (int j = 0; j < A.dim; ++j)
            for (const auto& [k, c] : A.table[i][j])
                if (!is_zero(t[k]))
                    cons[j][i] = cons[j][i] + c * t[k];
        cons[A.dim][i] = t[i];
    }
    return span_basis(nullspace(cons, A.dim, A.zero));
}

/// Span of {x y : x in X, y in Y}.
template <class F>
Rows<F> product_span(const FiniteAlgebra<F>& A, const Rows<F>& X, const Rows<F>& Y)
{
    Rows<F> out;
    for (const auto& x : X)
        for (const auto& y : Y) {
            auto p = A.multiply(x, y);
            bool nz = false;
            for (const auto& c : p)
                nz = nz || !is_zero(c);
            if (nz)
                out.push_back(std::move(p));
        }
    return span_basis(std::move(out));
}

template <class F>
bool is_two_sided_ideal(const FiniteAlgebra<F>& A, const Rows<F>& I)
{
    Rows<F> all;
    for (int i = 0; i < A.dim; ++i)
        all.push_back(A.basis(i));
    return contains_span(I, product_span(A, all, I)) && contains_span(I, product_span(A, I, all));
}

/// Least k >= 1 with I^k = 0, or 0 if I is not nilpotent (checked up to dim+1).
template <class F>
int nilpotency_index(const FiniteAlgebra<F>& A, const Rows<F>& I)
{
    Rows<F> p = span_basis(I);
    for (int k = 1; k <= A.dim + 1; ++k) {
        if (p.empty())
            return k;
        auto next = product_span(A, p, I);
        if (next.size() == p.size())
            return 0;
        p = std::move(next);
    }
    return 0;
}

/// Structure constants of the multi-matrix triangular algebra, basis in
/// canonical (summand,row,col) order.
FiniteAlgebra<Rational> triangular_algebra(const LevelShape& shape);
std::vector<UnitCoord> triangular_basis(const LevelShape& shape);

} // namespace limitalg
