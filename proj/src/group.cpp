#include "limitalg/group.hpp"

#include <numeric>
#include <stdexcept>

namespace limitalg {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> orders) : orders_(std::move(orders))
{
    for (int d : orders_) {
        if (d < 1)
            throw std::invalid_argument("cyclic factor orders must be positive");
        size_ *= d;
        exponent_ = std::lcm(exponent_, d);
    }
}

std::vector<int> FiniteAbelianGroup::element(int index) const
{
    std::vector<int> c(orders_.size());
    for (size_t i = orders_.size(); i-- > 0;) {
        c[i] = index % orders_[i];
        index /= orders_[i];
    }
    return c;
}

int FiniteAbelianGroup::index(const std::vector<int>& coords) const
{
    int idx = 0;
    for (size_t i = 0; i < orders_.size(); ++i) {
        const int d = orders_[i];
        idx = idx * d + ((coords[i] % d) + d) % d;
    }
    return idx;
}

int FiniteAbelianGroup::add(int a, int b) const
{
    auto x = element(a), y = element(b);
    for (size_t i = 0; i < x.size(); ++i)
        x[i] += y[i];
    return index(x);
}

int FiniteAbelianGroup::inverse(int a) const
{
    auto x = element(a);
    for (auto& v : x)
        v = -v;
    return index(x);
}

int FiniteAbelianGroup::generator(int i) const
{
    std::vector<int> c(orders_.size(), 0);
    c.at(i) = 1;
    return index(c);
}

std::string FiniteAbelianGroup::to_string(int a) const
{
    auto x = element(a);
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i)
        s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

long Character::exponent_at(const FiniteAbelianGroup& G, int g) const
{
    const auto x = G.element(g);
    long e = 0;
    for (size_t i = 0; i < x.size(); ++i)
        e += long(c[i]) * x[i] * (G.exponent() / G.orders()[i]);
    return e % G.exponent();
}

Cyclotomic Character::operator()(const FiniteAbelianGroup& G, int g) const
{
    return Cyclotomic::root_of_unity(G.exponent(), exponent_at(G, g));
}

std::vector<Character> characters(const FiniteAbelianGroup& G)
{
    std::vector<Character> out;
    for (int i = 0; i < G.size(); ++i)
        out.push_back({G.element(i)});
    return out;
}

Character multiply(const FiniteAbelianGroup& G, const Character& a, const Character& b)
{
    Character r{a.c};
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = (a.c[i] + b.c[i]) % G.orders()[i];
    return r;
}

} // namespace limitalg
