#pragma once

#include "limitalg/scalar.hpp"

#include <string>
#include <vector>

namespace limitalg {

/// Element of the cyclotomic field Q(zeta_m), stored as rational coefficients
/// of 1, zeta, ..., zeta^{phi(m)-1} reduced modulo the m-th cyclotomic
/// polynomial. Arithmetic between different orders throws.
class Cyclotomic {
public:
    Cyclotomic() = default; // order 1, value 0
    explicit Cyclotomic(int order);
    Cyclotomic(int order, const Rational& value);

    static Cyclotomic root_of_unity(int order, long exponent);

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const;
    bool is_rational() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic operator-() const;

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    /// Complex conjugation, zeta -> zeta^{-1}.
    Cyclotomic conjugate() const;
    Cyclotomic inverse() const;

    /// "[c0,c1,...]" with exact rationals.
    std::string to_string() const;

private:
    void check_same(const Cyclotomic& o) const;

    int order_ = 1;
    std::vector<Rational> coeffs_ = std::vector<Rational>(1);
};

/// Integer coefficients (low degree first) of the m-th cyclotomic polynomial.
const std::vector<long>& cyclotomic_polynomial(int m);
int euler_phi(int m);

inline bool is_zero(const Cyclotomic& c) { return c.is_zero(); }
inline Cyclotomic inverse(const Cyclotomic& c) { return c.inverse(); }
inline Cyclotomic conj(const Cyclotomic& c) { return c.conjugate(); }
inline Cyclotomic unit_like(const Cyclotomic& c) { return Cyclotomic(c.order(), 1); }
inline std::string to_string(const Cyclotomic& c) { return c.to_string(); }

} // namespace limitalg
