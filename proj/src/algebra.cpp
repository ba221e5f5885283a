#include "limitalg/algebra.hpp"

#include <map>

namespace limitalg {

std::vector<UnitCoord> triangular_basis(const LevelShape& shape)
{
    std::vector<UnitCoord> b;
    for (int s = 0; s < shape.summands(); ++s)
        for (int i = 1; i <= shape.size(s); ++i)
            for (int j = i; j <= shape.size(s); ++j)
                b.push_back({s, i, j});
    return b;
}

FiniteAlgebra<Rational> triangular_algebra(const LevelShape& shape)
{
    const auto basis = triangular_basis(shape);
    std::map<UnitCoord, int> index;
    for (size_t i = 0; i < basis.size(); ++i)
        index[basis[i]] = static_cast<int>(i);
    FiniteAlgebra<Rational> A(static_cast<int>(basis.size()), Rational(0));
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            const auto& x = basis[i];
            const auto& y = basis[j];
            if (x.summand == y.summand && x.col == y.row)
                A.table[i][j].push_back({index.at({x.summand, x.row, y.col}), Rational(1)});
        }
    return A;
}

} // namespace limitalg
