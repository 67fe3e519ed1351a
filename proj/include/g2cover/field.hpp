#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace g2cover {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Element of a finite field, encoded as the base-p digit value of its
/// coordinate vector in powers of the generator: code = sum c_i * p^i.
/// The prime subfield therefore occupies codes 0..p-1.
using Elem = std::uint16_t;

/// Arithmetic context for F_q, q = p^n.  Public construction is limited to
/// q <= 16; larger extensions (used internally for point counts over
/// F_{q^k}) come from make_extension.  Immutable after construction, safe
/// to share across threads.
class Field {
public:
    /// Validated constructor for the supported field range (q <= 16).
    /// When no modulus is given, the built-in table is used.  The modulus
    /// must be monic of degree n and irreducible over F_p.
    static FieldPtr make(int p, int n, const std::vector<int>* modulus = nullptr);

    /// Parse a field spec string: "q=16" or "q=16;mod=a^4+a+1".
    static FieldPtr parse_spec(std::string_view text);

    /// Internal factory for extensions of F_p of any degree with p^m <= 65536,
    /// with a deterministic modulus.  Results are cached per (p, m).
    static FieldPtr make_extension(int p, int m);

    int p() const { return p_; }
    int n() const { return n_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return mod_; }
    bool has_default_modulus() const { return default_mod_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    /// Residue of the modulus variable; only meaningful for n > 1.
    Elem generator() const;
    /// True when the generator has full multiplicative order q-1.
    bool generator_primitive() const { return alpha_primitive_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    Elem pow(Elem a, long long e) const;

    /// Square root in odd characteristic, canonical root = the one with the
    /// smaller code.  Returns nullopt for non-squares.  Throws in char 2.
    std::optional<Elem> sqrt(Elem a) const;
    /// Unique square root in characteristic 2 (squaring is a bijection).
    Elem frobenius_sqrt(Elem a) const;
    /// Solve y^2 + c*y = d in characteristic 2.  Canonical root = smaller
    /// code; the other solution is y + c.  Returns nullopt when unsolvable.
    std::optional<Elem> artin_schreier_solve(Elem c, Elem d) const;

    bool is_square(Elem a) const;
    /// Absolute trace to F_2 (characteristic 2 only), returned as 0 or 1.
    int trace2(Elem a) const;

    /// All q elements in ascending code order (starts with 0).
    std::vector<Elem> elements() const;

    /// Digits c_0..c_{n-1} of an element.
    std::vector<int> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<int>& c) const;

    /// Text form: integers for the prime subfield, "a^k" otherwise.
    std::string to_string(Elem a) const;
    /// Accepts integers (with sign), "a", "a^k" and sums of those.
    Elem parse_element(std::string_view text) const;
    std::optional<Elem> try_parse_element(std::string_view text) const;

    /// "q=16" for default modulus, "q=16;mod=a^4+a+1" otherwise.
    std::string spec_string() const;
    std::string modulus_string() const;

    bool same_field(const Field& other) const;

private:
    Field() = default;
    void build_tables();

    int p_ = 0, n_ = 0, q_ = 0;
    std::vector<int> mod_;     // monic, length n+1, coefficients in [0,p)
    bool default_mod_ = true;
    bool alpha_primitive_ = false;

    std::vector<Elem> add_table_;     // q*q, only when q <= 256
    std::vector<std::uint32_t> log_;  // dlog base a fixed primitive element
    std::vector<Elem> exp_;           // length 2(q-1)
    std::vector<std::uint32_t> alpha_log_;  // dlog base the designated generator
    Elem primitive_ = 0;

    Elem add_digits(Elem a, Elem b) const;
    Elem mul_raw(Elem a, Elem b) const;  // polynomial mulmod, used during setup
};

/// Code-order table embedding `small` into `big` (same p, small.n | big.n):
/// the generator of `small` is sent to the least root of its modulus in `big`.
std::vector<Elem> embedding_map(const Field& small, const Field& big);

}  // namespace g2cover
