#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g2cover/field.hpp"

namespace g2cover {

/// Dense univariate polynomial over a small finite field, little-endian
/// coefficients, canonical (no trailing zeros; the zero polynomial has an
/// empty vector and degree -1).  Degrees in this project never exceed ~10.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr k) : k_(std::move(k)) {}
    Poly(FieldPtr k, std::vector<Elem> coeffs);
    /// Convenience for literal coefficient lists (values reduced into the field).
    static Poly from_ints(const FieldPtr& k, const std::vector<long long>& coeffs);
    static Poly constant(const FieldPtr& k, Elem c);
    static Poly x(const FieldPtr& k);

    const FieldPtr& field() const { return k_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Elem lc() const { return c_.empty() ? 0 : c_.back(); }
    Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    const std::vector<Elem>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(Elem c) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// (quotient, remainder) with deg r < deg b.  Throws on zero divisor.
    std::pair<Poly, Poly> divmod(const Poly& b) const;
    Poly operator/(const Poly& b) const { return divmod(b).first; }
    Poly operator%(const Poly& b) const { return divmod(b).second; }

    Poly monic() const;
    Poly derivative() const;
    Elem eval(Elem x) const;
    Poly pow_mod(long long e, const Poly& mod) const;

    /// x^m * f(1/x); requires m >= deg f.
    Poly reversed(int m) const;
    /// f(s*x + t)
    Poly compose_affine(Elem s, Elem t) const;

    /// gcd(f, f') has degree 0, with the char-p caveat: f' == 0 means f is a
    /// p-th power, hence not squarefree for deg f >= 1.
    bool is_squarefree() const;
    /// (root, multiplicity) pairs by exhaustive evaluation, ascending code.
    std::vector<std::pair<Elem, int>> roots_in_field() const;

    std::string to_string(const std::string& var = "x") const;
    static Poly parse(const FieldPtr& k, std::string_view text, const std::string& var = "x");

    /// Total order: by degree, then coefficients from the top down.
    static int cmp(const Poly& a, const Poly& b);

private:
    FieldPtr k_;
    std::vector<Elem> c_;
    void trim();
    void check_same_field(const Poly& o) const;
};

/// Monic gcd; gcd(f, 0) = monic(f), gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
/// Extended gcd: returns (g, s, t) with s*a + t*b = g (g monic unless zero).
std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b);

}  // namespace g2cover
