#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "g2cover/poly.hpp"

namespace g2cover {

/// Genus-2 model y^2 + h(x) y = f(x).  Odd characteristic requires h = 0,
/// characteristic 2 requires h != 0.  Construction does not validate
/// smoothness; validate_genus2 does.
struct CurveModel {
    FieldPtr k;
    Poly h;
    Poly f;

    std::string text() const;                      // "q=..; h=..; f=.."
    static CurveModel parse(std::string_view text);
    bool operator==(const CurveModel& o) const { return h == o.h && f == o.f; }
};

/// Rational (degree-1) place of a genus-2 model, labeled per the conventions
/// "P_inf", "P_inf_{b}" (split infinity), "P_a" (ramified over x-a), and
/// "P_{a,b}" (split, the branch through y = b).
struct Place {
    enum class Kind { InfiniteRamified, InfiniteSplit, AffineRamified, AffineSplit };
    Kind kind;
    Elem alpha = 0;   // affine x-coordinate (affine kinds)
    Elem beta = 0;    // y-value; for split infinity, the limit of y/x^3
    std::string label;
    int degree = 1;

    bool is_infinite() const {
        return kind == Kind::InfiniteRamified || kind == Kind::InfiniteSplit;
    }
};

std::string place_label(const Field& k, const Place& p);
/// Resolve a label against the model's rational places; throws if absent.
Place parse_place(const CurveModel& m, std::string_view label);

/// Behaviour of the model over x = infinity.
struct InfinityKind {
    enum class Kind { Ramified, Split, Inert } kind;
    Elem branch0 = 0, branch1 = 0;  // y/x^3 limits of the two branches when split
};
InfinityKind infinity_kind(const CurveModel& m);

/// True iff the model defines a smooth genus-2 curve.  Throws when the
/// degree preconditions (deg f in {5,6}, deg h <= 3) fail.
bool validate_genus2(const CurveModel& m);

/// All rational places in deterministic order: infinity first, then affine
/// by x-code, split pairs by y-code.
std::vector<Place> rational_places(const CurveModel& m);

/// #C(F_{q^k}) for the smooth model, brute force over the extension; k <= 4.
std::int64_t count_points_ext(const CurveModel& m, int k);

/// L(t) = 1 + a1 t + a2 t^2 + q a1 t^3 + q^2 t^4 from N_1, N_2.
std::pair<std::int64_t, std::int64_t> l_polynomial(const CurveModel& m);

/// h = L(1); always within the Weil interval [(sqrt q - 1)^4, (sqrt q + 1)^4].
std::int64_t class_number(const CurveModel& m);

/// Count of places of degree d (d = 1 or 2).
std::int64_t places_of_degree(const CurveModel& m, int d);

/// N_k predicted from the L-coefficients via Newton's identities (k <= 4).
std::int64_t point_count_from_l(std::int64_t a1, std::int64_t a2, int q, int k);

/// Exact-integer Weil interval check for a class number candidate.
bool class_number_in_weil_interval(std::int64_t h, int q);

}  // namespace g2cover
