#include "g2cover/abgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace g2cover {

std::int64_t AbelianStructure::order() const {
    std::int64_t o = 1;
    for (auto d : factors) o *= d;
    return o;
}

Vec AbelianStructure::reduce(Vec v) const {
    if (v.size() != factors.size()) throw std::invalid_argument("vector length != rank");
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] %= factors[i];
        if (v[i] < 0) v[i] += factors[i];
    }
    return v;
}

Vec AbelianStructure::add(const Vec& a, const Vec& b) const {
    if (a.size() != factors.size() || b.size() != factors.size())
        throw std::invalid_argument("vector length != rank");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % factors[i];
    return r;
}

std::string AbelianStructure::to_string() const {
    if (factors.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += " x ";
        out += "Z/" + std::to_string(factors[i]);
    }
    return out;
}

std::vector<Vec> hermite_normal_form(std::vector<Vec> rows, int cols) {
    // column-by-column Euclidean elimination on rows
    std::vector<Vec> out;
    size_t row_start = 0;
    for (int col = 0; col < cols; ++col) {
        // make all entries below row_start in this column zero, keeping one pivot
        while (true) {
            size_t pivot = rows.size();
            for (size_t i = row_start; i < rows.size(); ++i)
                if (rows[i][col] != 0 &&
                    (pivot == rows.size() ||
                     std::llabs(rows[i][col]) < std::llabs(rows[pivot][col])))
                    pivot = i;
            if (pivot == rows.size()) break;  // column already clear
            std::swap(rows[row_start], rows[pivot]);
            if (rows[row_start][col] < 0)
                for (auto& x : rows[row_start]) x = -x;
            bool clean = true;
            for (size_t i = row_start + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                std::int64_t q = rows[i][col] / rows[row_start][col];
                for (int j = 0; j < cols; ++j) rows[i][j] -= q * rows[row_start][j];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (row_start < rows.size() && rows[row_start][col] != 0) {
            ++row_start;
        } else {
            throw std::logic_error("HNF input lattice not full rank");
        }
    }
    rows.resize(row_start);
    // reduce entries above each pivot
    for (size_t i = 0; i < rows.size(); ++i) {
        int pcol = 0;
        while (pcol < cols && rows[i][pcol] == 0) ++pcol;
        for (size_t j = 0; j < i; ++j) {
            std::int64_t q = rows[j][pcol] / rows[i][pcol];
            if (rows[j][pcol] % rows[i][pcol] < 0) q -= 1;
            if (q == 0) continue;
            for (int c = 0; c < cols; ++c) rows[j][c] -= q * rows[i][c];
        }
    }
    return rows;
}

Subgroup::Subgroup(AbelianStructure st, std::vector<Vec> generators) : st_(std::move(st)) {
    int r = st_.rank();
    std::vector<Vec> rows;
    for (auto& g : generators) {
        if (static_cast<int>(g.size()) != r) throw std::invalid_argument("generator length != rank");
        rows.push_back(st_.reduce(g));
    }
    for (int i = 0; i < r; ++i) {
        Vec rel(r, 0);
        rel[i] = st_.factors[i];
        rows.push_back(rel);
    }
    hnf_ = hermite_normal_form(std::move(rows), r);
    if (static_cast<int>(hnf_.size()) != r) throw std::logic_error("subgroup lattice not full rank");
    index_ = 1;
    for (int i = 0; i < r; ++i) index_ *= hnf_[i][i];
    std::int64_t total = st_.order();
    if (total % index_ != 0) throw std::logic_error("subgroup index does not divide group order");
    order_ = total / index_;
}

bool Subgroup::contains(Vec v) const {
    int r = st_.rank();
    if (static_cast<int>(v.size()) != r) throw std::invalid_argument("vector length != rank");
    v = st_.reduce(std::move(v));
    // back-substitute through the triangular basis
    for (int i = 0; i < r; ++i) {
        // pivot of row i sits at column i (full-rank upper triangular)
        std::int64_t piv = hnf_[i][i];
        if (v[i] % piv != 0) return false;
        std::int64_t q = v[i] / piv;
        for (int j = i; j < r; ++j) v[j] -= q * hnf_[i][j];
    }
    for (int j = 0; j < r; ++j)
        if (v[j] != 0) return false;
    return true;
}

std::vector<Vec> Subgroup::reduced_generators() const {
    std::vector<Vec> out;
    for (const auto& row : hnf_) {
        Vec v = st_.reduce(row);
        bool zero = std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
        if (!zero) out.push_back(std::move(v));
    }
    return out;
}

std::string Subgroup::to_string() const {
    std::ostringstream os;
    os << "gens=[";
    auto gens = reduced_generators();
    for (size_t i = 0; i < gens.size(); ++i) {
        if (i) os << ";";
        os << "(";
        for (size_t j = 0; j < gens[i].size(); ++j) {
            if (j) os << ",";
            os << gens[i][j];
        }
        os << ")";
    }
    os << "]; order=" << order_ << "; index=" << index_;
    return os.str();
}

bool Subgroup::operator<(const Subgroup& o) const {
    if (index_ != o.index_) return index_ < o.index_;
    return hnf_ < o.hnf_;
}

Subgroup subgroup_generated(const AbelianStructure& st, const std::vector<Vec>& gens) {
    return Subgroup(st, gens);
}

Subgroup trivial_subgroup(const AbelianStructure& st) { return Subgroup(st, {}); }

Subgroup full_subgroup(const AbelianStructure& st) {
    std::vector<Vec> gens;
    for (int i = 0; i < st.rank(); ++i) {
        Vec v(st.rank(), 0);
        v[i] = 1;
        gens.push_back(v);
    }
    return Subgroup(st, gens);
}

namespace {

// all vectors of the group, odometer order
std::vector<Vec> all_elements(const AbelianStructure& st) {
    std::vector<Vec> out;
    Vec cur(st.rank(), 0);
    out.push_back(cur);
    while (true) {
        int i = 0;
        while (i < st.rank() && cur[i] + 1 == st.factors[i]) cur[i++] = 0;
        if (i == st.rank()) break;
        ++cur[i];
        out.push_back(cur);
    }
    return out;
}

// subgroups of one p-primary structure, by closure BFS with HNF dedup
std::vector<Subgroup> subgroups_primary(const AbelianStructure& st) {
    std::vector<Subgroup> found;
    std::set<std::vector<Vec>> seen;
    auto elements = all_elements(st);
    std::vector<Subgroup> frontier;
    Subgroup triv = trivial_subgroup(st);
    seen.insert(triv.hnf());
    found.push_back(triv);
    frontier.push_back(triv);
    while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const auto& sg : frontier) {
            auto base = sg.reduced_generators();
            for (const auto& e : elements) {
                if (sg.contains(e)) continue;
                auto gens = base;
                gens.push_back(e);
                Subgroup bigger(st, gens);
                if (seen.insert(bigger.hnf()).second) {
                    found.push_back(bigger);
                    next.push_back(bigger);
                }
            }
        }
        frontier = std::move(next);
    }
    return found;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const AbelianStructure& st) {
    std::int64_t order = st.order();
    if (order > 10000) throw std::invalid_argument("subgroup enumeration capped at order 10000");
    if (st.rank() == 0) return {trivial_subgroup(st)};

    // primes dividing the order
    std::vector<std::int64_t> primes;
    std::int64_t m = order;
    for (std::int64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) primes.push_back(m);

    int r = st.rank();
    // per-prime: structure of the p-part and the CRT lift of its coordinates
    struct Primary {
        AbelianStructure st;            // invariant factors of the p-part
        std::vector<int> coord;         // which full coordinate each p-coordinate is
        std::vector<std::int64_t> lift; // multiply a p-part value by this in Z/d_i
        std::vector<Subgroup> subs;
    };
    std::vector<Primary> parts;
    for (auto p : primes) {
        Primary part;
        for (int i = 0; i < r; ++i) {
            std::int64_t d = st.factors[i], pe = 1;
            while (d % p == 0) { d /= p; pe *= p; }
            if (pe == 1) continue;
            std::int64_t cof = st.factors[i] / pe;  // coprime to p
            // idempotent: cof * inv(cof mod pe) acts as identity on the p-part
            std::int64_t inv = 0;
            for (std::int64_t t = 1; t < pe; ++t)
                if ((cof % pe) * t % pe == 1) { inv = t; break; }
            part.st.factors.push_back(pe);
            part.coord.push_back(i);
            part.lift.push_back(cof * inv % st.factors[i]);
        }
        // invariant-factor chains stay chains when restricted to one prime
        part.subs = subgroups_primary(part.st);
        parts.push_back(std::move(part));
    }

    // cartesian product of per-prime subgroups
    std::vector<Subgroup> out;
    std::vector<size_t> pick(parts.size(), 0);
    while (true) {
        std::vector<Vec> gens;
        for (size_t pi = 0; pi < parts.size(); ++pi) {
            const auto& part = parts[pi];
            for (const auto& g : part.subs[pick[pi]].reduced_generators()) {
                Vec v(r, 0);
                for (size_t j = 0; j < g.size(); ++j)
                    v[part.coord[j]] = g[j] % part.st.factors[j] * part.lift[j] % st.factors[part.coord[j]];
                gens.push_back(std::move(v));
            }
        }
        out.emplace_back(st, gens);
        size_t i = 0;
        while (i < parts.size() && pick[i] + 1 == parts[i].subs.size()) pick[i++] = 0;
        if (i == parts.size()) break;
        ++pick[i];
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::shared_ptr<const std::vector<Subgroup>> all_subgroups_cached(const AbelianStructure& st) {
    static std::mutex mu;
    static std::map<Vec, std::shared_ptr<const std::vector<Subgroup>>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(st.factors);
    if (it != cache.end()) return it->second;
    auto res = std::make_shared<const std::vector<Subgroup>>(all_subgroups(st));
    cache.emplace(st.factors, res);
    return res;
}

}  // namespace g2cover
