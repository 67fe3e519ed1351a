#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "g2cover/curve.hpp"

#include "json.hpp"

namespace g2cover {

/// Curve family selector.  The odd-characteristic modes enumerate monic
/// degree-5 models with a translation-normalized coefficient, and degree-6
/// models with leading coefficient in {1, fixed non-square}; characteristic
/// 2 enumerates h-orbit representatives with f reduced modulo the image of
/// u -> u^2 + h u.  Together the modes cover every isomorphism class at
/// least once (with redundancy).
struct FamilySpec {
    enum class Mode { OddDeg5, OddDeg6, Char2Full, ExplicitList };
    FieldPtr field;
    Mode mode;
    std::vector<CurveModel> explicit_models;  // ExplicitList only
    /// keep one model in `num` out of `den`, chosen by a seeded hash of the
    /// stream position; (0,0) disables sampling
    std::uint64_t sample_num = 0, sample_den = 0;
    std::uint64_t seed = 0;
};

/// Family modes applicable to a field: {OddDeg5, OddDeg6} or {Char2Full}.
std::vector<FamilySpec::Mode> default_modes(const Field& k);

/// Deterministic stream of valid genus-2 models for the family.
std::vector<CurveModel> enumerate_curves(const FamilySpec& spec);

/// Isomorphism-invariant tuple (N_1, N_2, h, invariant factors).
struct Fingerprint {
    std::int64_t n1 = 0, n2 = 0, h = 0;
    Vec factors;
    bool operator==(const Fingerprint& o) const {
        return n1 == o.n1 && n2 == o.n2 && h == o.h && factors == o.factors;
    }
    bool operator<(const Fingerprint& o) const {
        return std::tie(n1, n2, h, factors) < std::tie(o.n1, o.n2, o.h, o.factors);
    }
    std::string to_string() const;
};
Fingerprint fingerprint(const CurveModel& m);

/// Substitution (x, y) -> (s x + t, e y + w(x)) carrying one model to another.
struct ModelTransform {
    Elem scale_x = 1, shift_x = 0, scale_y = 1;
    Poly shift_y;  // w, degree <= 3
};

/// Apply the substitution; the result satisfies
/// e^2 f'(x) = f(s x + t) + w^2 + h(s x + t) w and e h'(x) = h(s x + t).
CurveModel transform_model(const CurveModel& m, const ModelTransform& t);

/// Canonical form of a characteristic-2 model under the affine substitution
/// group and Artin-Schreier reduction, together with a transform realizing
/// it.  Stream models of Char2Full mode are exactly the canonical forms.
std::pair<CurveModel, ModelTransform> char2_canonical_form(const CurveModel& m);

/// Canonical translation representative for odd characteristic (the stream
/// member isomorphic to m when m is monic of degree 5).
std::pair<CurveModel, ModelTransform> odd_deg5_canonical_form(const CurveModel& m);

/// Normalization constants and counts, for auditing orbit coverage.
nlohmann::ordered_json family_manifest(const FamilySpec& spec);

}  // namespace g2cover
