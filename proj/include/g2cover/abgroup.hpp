#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace g2cover {

using Vec = std::vector<std::int64_t>;

/// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_r,
/// each d_i >= 2.  The trivial group has r = 0.
struct AbelianStructure {
    Vec factors;

    std::int64_t order() const;
    int rank() const { return static_cast<int>(factors.size()); }
    Vec reduce(Vec v) const;
    Vec add(const Vec& a, const Vec& b) const;
    std::string to_string() const;  // "Z/8 x Z/8", "1" for trivial
    bool operator==(const AbelianStructure& o) const { return factors == o.factors; }
};

/// Subgroup of an AbelianStructure, held as the row-style Hermite normal
/// form of the lattice spanned by its generators together with the relation
/// rows diag(d_1..d_r).  The HNF is unique, so subgroup equality is matrix
/// equality.
class Subgroup {
public:
    Subgroup(AbelianStructure st, std::vector<Vec> generators);

    const AbelianStructure& structure() const { return st_; }
    const std::vector<Vec>& hnf() const { return hnf_; }
    std::int64_t order() const { return order_; }
    std::int64_t index() const { return index_; }

    bool contains(Vec v) const;
    /// HNF rows reduced mod the factors, zero rows dropped: a small
    /// generating set for display and serialization.
    std::vector<Vec> reduced_generators() const;
    /// "gens=[(0,4);(0,5)]; order=8; index=8"
    std::string to_string() const;

    bool operator==(const Subgroup& o) const { return hnf_ == o.hnf_; }
    bool operator<(const Subgroup& o) const;

private:
    AbelianStructure st_;
    std::vector<Vec> hnf_;   // r x r, upper triangular, positive diagonal
    std::int64_t order_ = 1, index_ = 1;
};

Subgroup subgroup_generated(const AbelianStructure& st, const std::vector<Vec>& gens);
Subgroup trivial_subgroup(const AbelianStructure& st);
Subgroup full_subgroup(const AbelianStructure& st);

/// Every subgroup exactly once, ordered by index then by canonical matrix.
/// Enumerates the p-primary components separately and takes products.
std::vector<Subgroup> all_subgroups(const AbelianStructure& st);

/// Cached variant keyed by the invariant factors (thread-safe).
std::shared_ptr<const std::vector<Subgroup>> all_subgroups_cached(const AbelianStructure& st);

/// Row-style HNF of an integer matrix (rows spanning a full-rank lattice in
/// Z^r): upper triangular, positive diagonal, entries above a pivot reduced
/// into [0, pivot).
std::vector<Vec> hermite_normal_form(std::vector<Vec> rows, int cols);

}  // namespace g2cover
