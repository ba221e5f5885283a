#include "limitalg/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace limitalg {

namespace {

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den)
{
    // den is monic
    const size_t dn = den.size() - 1;
    std::vector<long> quot(num.size() - dn, 0);
    for (size_t i = num.size(); i-- > dn;) {
        long c = num[i];
        quot[i - dn] = c;
        for (size_t j = 0; j <= dn; ++j)
            num[i - dn + j] -= c * den[j];
    }
    return quot;
}

// Reduces an arbitrary-degree polynomial modulo the monic Phi_m.
std::vector<Rational> reduce(std::vector<Rational> p, const std::vector<long>& phi)
{
    const size_t d = phi.size() - 1;
    for (size_t i = p.size(); i-- > d;) {
        if (sgn(p[i]) == 0)
            continue;
        Rational c = p[i];
        for (size_t j = 0; j <= d; ++j)
            p[i - d + j] -= c * phi[j];
    }
    p.resize(d);
    return p;
}

} // namespace

const std::vector<long>& cyclotomic_polynomial(int m)
{
    if (m < 1)
        throw std::invalid_argument("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<int, std::vector<long>> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end())
        return it->second;

    // Fill every divisor in increasing order; Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e.
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0 || cache.count(d))
            continue;
        std::vector<long> num(d + 1, 0);
        num[0] = -1;
        num[d] = 1;
        for (int e = 1; e < d; ++e)
            if (d % e == 0)
                num = poly_div_exact(num, cache.at(e));
        cache.emplace(d, std::move(num));
    }
    return cache.at(m);
}

int euler_phi(int m)
{
    int r = 0;
    for (int k = 1; k <= m; ++k)
        if (std::gcd(k, m) == 1)
            ++r;
    return r;
}

Cyclotomic::Cyclotomic(int order)
    : order_(order), coeffs_(cyclotomic_polynomial(order).size() - 1)
{
}

Cyclotomic::Cyclotomic(int order, const Rational& value) : Cyclotomic(order)
{
    coeffs_[0] = value;
}

Cyclotomic Cyclotomic::root_of_unity(int order, long exponent)
{
    Cyclotomic z(order);
    long e = ((exponent % order) + order) % order;
    std::vector<Rational> p(e + 1);
    p[e] = 1;
    z.coeffs_ = reduce(std::move(p), cyclotomic_polynomial(order));
    return z;
}

bool Cyclotomic::is_zero() const
{
    for (const auto& c : coeffs_)
        if (sgn(c) != 0)
            return false;
    return true;
}

bool Cyclotomic::is_rational() const
{
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0)
            return false;
    return true;
}

void Cyclotomic::check_same(const Cyclotomic& o) const
{
    if (order_ != o.order_)
        throw std::invalid_argument("cyclotomic order mismatch");
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o)
{
    check_same(o);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o)
{
    check_same(o);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o)
{
    check_same(o);
    std::vector<Rational> p(2 * coeffs_.size() - 1);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0)
            continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            p[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    coeffs_ = reduce(std::move(p), cyclotomic_polynomial(order_));
    return *this;
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b)
{
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

Cyclotomic Cyclotomic::conjugate() const
{
    std::vector<Rational> p(order_ + 1);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        p[(order_ - static_cast<int>(i)) % order_] += coeffs_[i];
    Cyclotomic r(order_);
    r.coeffs_ = reduce(std::move(p), cyclotomic_polynomial(order_));
    return r;
}

Cyclotomic Cyclotomic::inverse() const
{
    if (is_zero())
        throw std::domain_error("inverse of zero cyclotomic");
    const size_t d = coeffs_.size();
    // Column j of M is this * zeta^j; solve M x = e_0.
    std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1));
    for (size_t j = 0; j < d; ++j) {
        Cyclotomic col = *this * root_of_unity(order_, static_cast<long>(j));
        for (size_t i = 0; i < d; ++i)
            a[i][j] = col.coeffs_[i];
    }
    a[0][d] = 1;
    for (size_t c = 0; c < d; ++c) {
        size_t piv = c;
        while (piv < d && sgn(a[piv][c]) == 0)
            ++piv;
        if (piv == d)
            throw std::domain_error("singular multiplication matrix");
        std::swap(a[c], a[piv]);
        Rational inv = 1 / a[c][c];
        for (auto& v : a[c])
            v *= inv;
        for (size_t r = 0; r < d; ++r) {
            if (r == c || sgn(a[r][c]) == 0)
                continue;
            Rational f = a[r][c];
            for (size_t k = c; k <= d; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    Cyclotomic r(order_);
    for (size_t i = 0; i < d; ++i)
        r.coeffs_[i] = a[i][d];
    return r;
}

std::string Cyclotomic::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            os << ',';
        os << coeffs_[i].get_str();
    }
    os << ']';
    return os.str();
}

} // namespace limitalg
