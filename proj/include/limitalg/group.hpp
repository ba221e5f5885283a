#pragma once

#include "limitalg/cyclotomic.hpp"

#include <string>
#include <vector>

namespace limitalg {

/// Z_{d_1} x ... x Z_{d_t}; elements are indexed 0..size()-1 in mixed radix
/// (first factor varies slowest).
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default; // trivial group
    explicit FiniteAbelianGroup(std::vector<int> orders);

    const std::vector<int>& orders() const { return orders_; }
    int rank() const { return static_cast<int>(orders_.size()); }
    int size() const { return size_; }
    int exponent() const { return exponent_; }

    std::vector<int> element(int index) const;
    int index(const std::vector<int>& coords) const;
    int identity() const { return 0; }
    int add(int a, int b) const;
    int inverse(int a) const;
    int generator(int i) const;
    std::string to_string(int a) const;

private:
    std::vector<int> orders_;
    int size_ = 1;
    int exponent_ = 1;
};

/// gamma(g) = zeta_m^{sum c_i g_i m/d_i}, m = exponent.
struct Character {
    std::vector<int> c;

    Cyclotomic operator()(const FiniteAbelianGroup& G, int g) const;
    long exponent_at(const FiniteAbelianGroup& G, int g) const;
};

std::vector<Character> characters(const FiniteAbelianGroup& G);
Character multiply(const FiniteAbelianGroup& G, const Character& a, const Character& b);

} // namespace limitalg
