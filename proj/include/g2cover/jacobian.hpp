#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "g2cover/abgroup.hpp"
#include "g2cover/curve.hpp"

namespace g2cover {

/// Reduced divisor class in Mumford form: u monic with deg u <= 2,
/// deg v < deg u (v = 0 when u = 1), u | v^2 + h v - f on the arithmetic
/// model.  For models with two rational points at infinity, n counts the
/// copies of the distinguished infinite point in the canonical effective
/// representative (0 <= n <= 2 - deg u); n = 0 for all other model kinds.
struct MumfordClass {
    Poly u, v;
    int n = 0;

    std::string to_string() const;
    bool operator==(const MumfordClass& o) const { return n == o.n && u == o.u && v == o.v; }
};

enum class ModelKind { OddRamified, EvenSplit, EvenInert };

/// Image of a rational place on the arithmetic model.
struct NormPoint {
    enum class Kind { Affine, Infinity, InfinityPlus, InfinityMinus } kind;
    Elem x = 0, y = 0;
};

/// An isomorphic model on which divisor arithmetic runs, together with the
/// coordinate change from the original model.  The transforms are: an
/// optional Moebius move x -> rho + 1/x, y -> y/x^3 (bringing a rational
/// Weierstrass point to infinity), then an optional substitution
/// y -> y + shift(x) (characteristic 2, clearing the x^6 coefficient).
/// Even-kind models are never transformed.
struct NormalizedModel {
    CurveModel original;
    CurveModel model;
    ModelKind kind = ModelKind::OddRamified;
    std::optional<Elem> moebius_rho;
    std::optional<Poly> shift;
    Elem branch_plus = 0, branch_minus = 0;  // y/x^3 limits at infinity (split only)

    NormPoint map_place(const Place& p) const;
};

NormalizedModel normalize_model(const CurveModel& m);

/// Divisor class group arithmetic for one genus-2 model.  Construction
/// normalizes the model; all public element values are canonical reduced
/// forms on the arithmetic model.
class Jacobian {
public:
    explicit Jacobian(const CurveModel& m);

    const CurveModel& model() const { return norm_.original; }
    const NormalizedModel& normalized() const { return norm_; }
    ModelKind kind() const { return norm_.kind; }

    MumfordClass identity() const;
    bool is_identity(const MumfordClass& a) const;
    /// Cantor composition + reduction, balanced for split-infinity models.
    MumfordClass add(const MumfordClass& a, const MumfordClass& b) const;
    MumfordClass neg(const MumfordClass& a) const;
    MumfordClass sub(const MumfordClass& a, const MumfordClass& b) const;
    MumfordClass scalar(std::int64_t k, const MumfordClass& a) const;
    /// The class of [P - deg(P) O] for rational places of the original model.
    MumfordClass place_difference(const Place& P, const Place& O) const;

    /// Canonical reduced representatives of every divisor class; the count
    /// must equal L(1) (checked by enumerate_class_group).
    std::vector<MumfordClass> enumerate_elements() const;

    bool is_valid(const MumfordClass& a) const;
    void require_valid(const MumfordClass& a) const;

    static int cmp(const MumfordClass& a, const MumfordClass& b);
    /// Injective 32-bit key for table lookups (field codes are < 16).
    std::uint32_t pack(const MumfordClass& a) const;

private:
    NormalizedModel norm_;
    FieldPtr k_;
    Poly h_, f_;              // arithmetic model
    Poly gplus_, gminus_;     // cubic sections at the two infinite points (split)
    int rdeg_ = 0;            // deg(gplus^2 + h gplus - f), at most 2 (split)

    struct State {            // [div(u,v) + a*inf+ - (deg u + a)*inf-]
        Poly u, v;
        int a = 0;
    };
    State compose(const State& s1, const State& s2) const;
    void reduce_step(State& s, bool toward_plus) const;
    MumfordClass canonicalize(State s) const;
    State state_of(const MumfordClass& m) const;
    State point_state(const NormPoint& p) const;
    State neg_state(const State& s) const;
};

/// Divisor class group with full element table, invariant factors, a
/// generator per factor, and O(1) discrete logs.
class ClassGroup {
public:
    explicit ClassGroup(const CurveModel& m);

    const Jacobian& jacobian() const { return jac_; }
    const CurveModel& model() const { return jac_.model(); }
    std::int64_t order() const { return order_; }
    const AbelianStructure& structure() const { return structure_; }
    const std::vector<MumfordClass>& elements() const { return elements_; }
    const std::vector<MumfordClass>& generators() const { return generators_; }

    /// Coordinates in (Z/d_1) + ... + (Z/d_r); throws if the element is not
    /// in the table.
    Vec to_vector(const MumfordClass& a) const;
    MumfordClass from_vector(const Vec& v) const;

    std::int64_t element_order(const MumfordClass& a) const;

    /// "h=10; structure=Z/10"
    std::string summary() const;

private:
    Jacobian jac_;
    std::int64_t order_ = 0;
    std::vector<MumfordClass> elements_;
    AbelianStructure structure_;
    std::vector<MumfordClass> generators_;
    std::unordered_map<std::uint32_t, Vec> dlog_;
    std::unordered_map<std::uint32_t, std::int64_t> orders_;
};

inline ClassGroup enumerate_class_group(const CurveModel& m) { return ClassGroup(m); }

}  // namespace g2cover
