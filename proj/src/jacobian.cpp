#include "g2cover/jacobian.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace g2cover {

std::string MumfordClass::to_string() const {
    std::string s = "(" + u.to_string() + ", " + v.to_string();
    if (n != 0) s += ", " + std::to_string(n);
    return s + ")";
}

NormalizedModel normalize_model(const CurveModel& m) {
    if (!validate_genus2(m)) throw std::invalid_argument("invalid genus-2 model");
    const FieldPtr& k = m.k;
    NormalizedModel nm;
    nm.original = m;
    nm.model = m;

    if (k->p() != 2) {
        if (m.f.deg() == 6) {
            auto roots = m.f.roots_in_field();
            if (!roots.empty()) {
                // move the rational Weierstrass point x = rho to infinity
                Elem rho = roots.front().first;
                nm.moebius_rho = rho;
                nm.model.f = m.f.compose_affine(k->one(), rho).reversed(6);
            }
        }
        if (nm.model.f.deg() == 5) {
            nm.kind = ModelKind::OddRamified;
        } else {
            auto inf = infinity_kind(nm.model);
            nm.kind = inf.kind == InfinityKind::Kind::Split ? ModelKind::EvenSplit
                                                            : ModelKind::EvenInert;
            nm.branch_plus = inf.branch0;
            nm.branch_minus = inf.branch1;
        }
    } else {
        if (nm.model.h.coeff(3) != 0) {
            auto roots = nm.model.h.roots_in_field();
            if (!roots.empty()) {
                Elem rho = roots.front().first;
                nm.moebius_rho = rho;
                nm.model.h = m.h.compose_affine(k->one(), rho).reversed(3);
                nm.model.f = m.f.compose_affine(k->one(), rho).reversed(6);
            }
        }
        if (nm.model.h.coeff(3) == 0) {
            if (nm.model.f.deg() == 6) {
                // clear the x^6 coefficient: y -> y + s x^3 with s^2 = f_6
                Elem s = k->frobenius_sqrt(nm.model.f.coeff(6));
                Poly g(k, {0, 0, 0, s});
                nm.shift = g;
                nm.model.f = nm.model.f + g * g + nm.model.h * g;
            }
            if (nm.model.f.deg() != 5)
                throw std::logic_error("normalization did not reach an odd-degree model");
            nm.kind = ModelKind::OddRamified;
        } else {
            auto inf = infinity_kind(nm.model);
            nm.kind = inf.kind == InfinityKind::Kind::Split ? ModelKind::EvenSplit
                                                            : ModelKind::EvenInert;
            nm.branch_plus = inf.branch0;
            nm.branch_minus = inf.branch1;
        }
    }
    if (!validate_genus2(nm.model)) throw std::logic_error("normalized model failed validation");
    return nm;
}

NormPoint NormalizedModel::map_place(const Place& p) const {
    const Field& k = *model.k;
    if (kind != ModelKind::OddRamified) {
        // even kinds are never transformed
        switch (p.kind) {
            case Place::Kind::AffineRamified:
            case Place::Kind::AffineSplit:
                return {NormPoint::Kind::Affine, p.alpha, p.beta};
            case Place::Kind::InfiniteSplit:
                return {p.beta == branch_plus ? NormPoint::Kind::InfinityPlus
                                              : NormPoint::Kind::InfinityMinus,
                        0, 0};
            case Place::Kind::InfiniteRamified:
                throw std::logic_error("even model cannot have ramified infinity");
        }
    }
    Elem X = 0, Y = 0;
    if (p.is_infinite()) {
        if (!moebius_rho) return {NormPoint::Kind::Infinity, 0, 0};
        // split infinite place with branch value beta lands at x = 0
        X = 0;
        Y = p.beta;
    } else if (moebius_rho) {
        if (p.alpha == *moebius_rho) return {NormPoint::Kind::Infinity, 0, 0};
        X = k.inv(k.sub(p.alpha, *moebius_rho));
        Y = k.mul(p.beta, k.mul(X, k.mul(X, X)));
    } else {
        X = p.alpha;
        Y = p.beta;
    }
    if (shift) Y = k.add(Y, shift->eval(X));
    return {NormPoint::Kind::Affine, X, Y};
}

Jacobian::Jacobian(const CurveModel& m)
    : norm_(normalize_model(m)), k_(norm_.model.k), h_(norm_.model.h), f_(norm_.model.f) {
    if (norm_.kind != ModelKind::EvenSplit) return;

    // cubic sections G+ and G- with y - G vanishing at one infinite point;
    // the leading coefficient of G+ is the canonical branch value
    const Field& k = *k_;
    Elem g3 = norm_.branch_plus, g2, g1, g0;
    if (k.p() == 2) {
        Elem h3 = h_.coeff(3), h2 = h_.coeff(2), h1 = h_.coeff(1), h0 = h_.coeff(0);
        g2 = k.div(k.add(f_.coeff(5), k.mul(h2, g3)), h3);
        g1 = k.div(k.add(k.add(f_.coeff(4), k.mul(g2, g2)),
                         k.add(k.mul(h2, g2), k.mul(h1, g3))),
                   h3);
        g0 = k.div(k.add(k.add(f_.coeff(3), k.mul(h2, g1)),
                         k.add(k.mul(h1, g2), k.mul(h0, g3))),
                   h3);
    } else {
        Elem two = k.add(k.one(), k.one());
        Elem c = k.inv(k.mul(two, g3));
        g2 = k.mul(f_.coeff(5), c);
        g1 = k.mul(k.sub(f_.coeff(4), k.mul(g2, g2)), c);
        g0 = k.mul(k.sub(f_.coeff(3), k.mul(two, k.mul(g2, g1))), c);
    }
    gplus_ = Poly(k_, {g0, g1, g2, g3});
    gminus_ = -gplus_ - h_;
    Poly r = gplus_ * gplus_ + h_ * gplus_ - f_;
    if (r.is_zero() || r.deg() > 2)
        throw std::logic_error("infinite section has the wrong remainder degree");
    rdeg_ = r.deg();
    if (gminus_.coeff(3) != norm_.branch_minus)
        throw std::logic_error("branch orientation mismatch");
}

MumfordClass Jacobian::identity() const {
    Poly one = Poly::constant(k_, k_->one());
    return {one, Poly(k_), norm_.kind == ModelKind::EvenSplit ? 1 : 0};
}

bool Jacobian::is_identity(const MumfordClass& a) const { return a == identity(); }

bool Jacobian::is_valid(const MumfordClass& a) const {
    if (a.u.is_zero() || a.u.lc() != k_->one() || a.u.deg() > 2) return false;
    if (a.v.deg() >= std::max(a.u.deg(), 0)) return false;
    if (!((a.v * a.v + h_ * a.v - f_) % a.u).is_zero()) return false;
    if (norm_.kind == ModelKind::EvenSplit) {
        if (a.n < 0 || a.n > 2 - a.u.deg()) return false;
    } else {
        if (a.n != 0) return false;
        if (norm_.kind == ModelKind::EvenInert && a.u.deg() == 1) return false;
    }
    return true;
}

void Jacobian::require_valid(const MumfordClass& a) const {
    if (!is_valid(a)) throw std::invalid_argument("invalid divisor class: " + a.to_string());
}

Jacobian::State Jacobian::state_of(const MumfordClass& m) const {
    // canonical triples are measured against inf+ + inf-; states against
    // (deg u + a) inf-: the offset between the two conventions is one
    return {m.u, m.v, m.n - 1};
}

Jacobian::State Jacobian::point_state(const NormPoint& p) const {
    switch (p.kind) {
        case NormPoint::Kind::Affine: {
            Poly u(k_, {k_->neg(p.x), k_->one()});
            Poly v = Poly::constant(k_, p.y);
            return {u, v, -1};  // [P - inf+] for split; [P - inf] otherwise
        }
        case NormPoint::Kind::Infinity:
            return {Poly::constant(k_, k_->one()), Poly(k_), 0};
        case NormPoint::Kind::InfinityPlus:
            return {Poly::constant(k_, k_->one()), Poly(k_), 0};
        case NormPoint::Kind::InfinityMinus:
            return {Poly::constant(k_, k_->one()), Poly(k_), -1};
    }
    throw std::logic_error("unreachable");
}

Jacobian::State Jacobian::neg_state(const State& s) const {
    Poly vneg = (-h_ - s.v) % s.u;
    return {s.u, vneg, -(s.u.deg() + s.a)};
}

Jacobian::State Jacobian::compose(const State& s1, const State& s2) const {
    auto [d1, e1, e2] = xgcd(s1.u, s2.u);
    Poly cross = s1.v + s2.v + h_;
    auto [d, c1, c2] = xgcd(d1, cross);
    Poly dd = d * d;
    auto [u, ur] = (s1.u * s2.u).divmod(dd);
    if (!ur.is_zero()) throw std::logic_error("composition: u division not exact");
    Poly num = c1 * (e1 * (s1.u * s2.v) + e2 * (s2.u * s1.v)) + c2 * (s1.v * s2.v + f_);
    auto [vq, vr] = num.divmod(d);
    if (!vr.is_zero()) throw std::logic_error("composition: v division not exact");
    Poly v = vq % u;
    return {u.monic(), v, s1.a + s2.a + d.deg()};
}

void Jacobian::reduce_step(State& s, bool toward_plus) const {
    Poly vt = s.v;
    if (norm_.kind == ModelKind::EvenSplit) {
        const Poly& G = toward_plus ? gplus_ : gminus_;
        vt = G + ((s.v - G) % s.u);
    }
    Poly w = vt * vt + h_ * vt - f_;
    if (w.is_zero()) throw std::logic_error("reduction hit a reducible model");
    auto [q, rem] = w.divmod(s.u);
    if (!rem.is_zero()) throw std::logic_error("reduction: divisibility failed");
    Poly ustar = q.monic();
    Poly vstar = (-h_ - vt) % ustar;
    if (norm_.kind == ModelKind::EvenSplit) {
        // order of vanishing of y - vt at each infinite point
        auto val_at = [&](const Poly& G) {
            Poly diff = G - vt;
            if (diff.is_zero()) return 3 - rdeg_;
            return -diff.deg();
        };
        int wplus = val_at(gplus_), wminus = val_at(gminus_);
        if (-(wplus + wminus) != s.u.deg() + ustar.deg())
            throw std::logic_error("reduction: balance bookkeeping failed");
        s.a = s.a - ustar.deg() - wplus;
    }
    s.u = std::move(ustar);
    s.v = std::move(vstar);
}

MumfordClass Jacobian::canonicalize(State s) const {
    int guard = 0;
    if (norm_.kind == ModelKind::EvenSplit) {
        // canonical window in state coordinates: -1 <= a <= 1 - deg u
        while (s.u.deg() > 2 || s.a < -1 || s.a > 1 - s.u.deg()) {
            bool toward_plus = s.u.deg() > 2 ? s.a >= 0 : s.a > 1 - s.u.deg();
            reduce_step(s, toward_plus);
            if (++guard > 64) throw std::logic_error("balanced reduction did not terminate");
        }
        MumfordClass out{s.u, s.v, s.a + 1};
        require_valid(out);
        return out;
    }
    while (s.u.deg() > 2) {
        reduce_step(s, true);
        if (++guard > 16) throw std::logic_error("reduction did not terminate");
    }
    if (norm_.kind == ModelKind::EvenInert && s.u.deg() == 1)
        throw std::logic_error("odd-degree divisor on an inert model");
    MumfordClass out{s.u, s.v, 0};
    require_valid(out);
    return out;
}

MumfordClass Jacobian::add(const MumfordClass& a, const MumfordClass& b) const {
    require_valid(a);
    require_valid(b);
    return canonicalize(compose(state_of(a), state_of(b)));
}

MumfordClass Jacobian::neg(const MumfordClass& a) const {
    require_valid(a);
    MumfordClass out{a.u, (-h_ - a.v) % a.u,
                     norm_.kind == ModelKind::EvenSplit ? 2 - a.u.deg() - a.n : 0};
    require_valid(out);
    return out;
}

MumfordClass Jacobian::sub(const MumfordClass& a, const MumfordClass& b) const {
    return add(a, neg(b));
}

MumfordClass Jacobian::scalar(std::int64_t k, const MumfordClass& a) const {
    if (k < 0) return scalar(-k, neg(a));
    MumfordClass acc = identity(), base = a;
    while (k > 0) {
        if (k & 1) acc = add(acc, base);
        k >>= 1;
        if (k > 0) base = add(base, base);
    }
    return acc;
}

MumfordClass Jacobian::place_difference(const Place& P, const Place& O) const {
    State sp = point_state(norm_.map_place(P));
    State so = point_state(norm_.map_place(O));
    return canonicalize(compose(sp, neg_state(so)));
}

std::vector<MumfordClass> Jacobian::enumerate_elements() const {
    const Field& k = *k_;
    bool split = norm_.kind == ModelKind::EvenSplit;
    bool inert = norm_.kind == ModelKind::EvenInert;
    std::vector<MumfordClass> out;
    Poly one = Poly::constant(k_, k.one());

    for (int n = 0; n <= (split ? 2 : 0); ++n) out.push_back({one, Poly(k_), n});

    if (!inert) {
        for (Elem x : k.elements()) {
            for (Elem y : k.elements()) {
                // affine point (x, y)
                if (k.add(k.mul(y, y), k.mul(h_.eval(x), y)) != f_.eval(x)) continue;
                Poly u(k_, {k.neg(x), k.one()});
                Poly v = Poly::constant(k_, y);
                for (int n = 0; n <= (split ? 1 : 0); ++n) out.push_back({u, v, n});
            }
        }
    }

    for (Elem u1 : k.elements()) {
        for (Elem u0 : k.elements()) {
            Poly u(k_, {u0, u1, k.one()});
            for (Elem v1 : k.elements()) {
                for (Elem v0 : k.elements()) {
                    Poly v(k_, {v0, v1});
                    if (((v * v + h_ * v - f_) % u).is_zero()) out.push_back({u, v, 0});
                }
            }
        }
    }

    std::sort(out.begin(), out.end(),
              [](const MumfordClass& a, const MumfordClass& b) { return cmp(a, b) < 0; });
    return out;
}

int Jacobian::cmp(const MumfordClass& a, const MumfordClass& b) {
    int c = Poly::cmp(a.u, b.u);
    if (c) return c;
    c = Poly::cmp(a.v, b.v);
    if (c) return c;
    return a.n < b.n ? -1 : a.n > b.n ? 1 : 0;
}

std::uint32_t Jacobian::pack(const MumfordClass& a) const {
    std::uint32_t x = static_cast<std::uint32_t>(a.u.deg());
    x |= static_cast<std::uint32_t>(a.u.coeff(0)) << 2;
    x |= static_cast<std::uint32_t>(a.u.coeff(1)) << 6;
    x |= static_cast<std::uint32_t>(a.v.coeff(0)) << 10;
    x |= static_cast<std::uint32_t>(a.v.coeff(1)) << 14;
    x |= static_cast<std::uint32_t>(a.n) << 18;
    return x;
}

namespace {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int exact_log(std::int64_t value, std::int64_t base) {
    int e = 0;
    while (value > 1) {
        if (value % base != 0) throw std::logic_error("count is not a power of the prime");
        value /= base;
        ++e;
    }
    return e;
}

}  // namespace

ClassGroup::ClassGroup(const CurveModel& m) : jac_(m) {
    std::int64_t h = class_number(m);
    elements_ = jac_.enumerate_elements();
    if (static_cast<std::int64_t>(elements_.size()) != h) {
        std::ostringstream os;
        os << "class group size " << elements_.size() << " != L(1) = " << h
           << " for " << m.text();
        throw std::logic_error(os.str());
    }
    order_ = h;

    std::unordered_map<std::uint32_t, int> index;
    index.reserve(elements_.size() * 2);
    for (size_t i = 0; i < elements_.size(); ++i) {
        auto [it, fresh] = index.emplace(jac_.pack(elements_[i]), static_cast<int>(i));
        if (!fresh) throw std::logic_error("duplicate canonical divisor class");
    }
    auto idx_of = [&](const MumfordClass& c) {
        auto it = index.find(jac_.pack(c));
        if (it == index.end()) throw std::logic_error("element escaped the canonical table");
        return it->second;
    };
    int id_idx = idx_of(jac_.identity());
    auto add_idx = [&](int i, int j) { return idx_of(jac_.add(elements_[i], elements_[j])); };

    auto primes = factorize(h);
    int n = static_cast<int>(elements_.size());

    // multiplication-by-p index maps
    std::vector<std::vector<int>> pmap(primes.size(), std::vector<int>(n));
    for (size_t pi = 0; pi < primes.size(); ++pi)
        for (int i = 0; i < n; ++i)
            pmap[pi][i] = idx_of(jac_.scalar(primes[pi].first, elements_[i]));

    // p-exponent multisets from the torsion counts c_j = #{x : p^j x = 0}
    std::vector<std::vector<int>> exps_desc(primes.size());
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        auto [p, E] = primes[pi];
        std::vector<int> cur(n);
        for (int i = 0; i < n; ++i) cur[i] = i;
        std::int64_t c_prev = 1;
        std::vector<int> lambda;  // lambda_j = #factors with p-exponent >= j
        for (int j = 1; j <= E; ++j) {
            for (int i = 0; i < n; ++i) cur[i] = pmap[pi][cur[i]];
            std::int64_t cj = 0;
            for (int i = 0; i < n; ++i)
                if (cur[i] == id_idx) ++cj;
            lambda.push_back(exact_log(cj / c_prev, p));
            c_prev = cj;
        }
        for (size_t j = 0; j < lambda.size(); ++j) {
            int ge_j = lambda[j];
            int ge_next = j + 1 < lambda.size() ? lambda[j + 1] : 0;
            for (int t = 0; t < ge_j - ge_next; ++t) exps_desc[pi].push_back(static_cast<int>(j) + 1);
        }
        std::sort(exps_desc[pi].rbegin(), exps_desc[pi].rend());
    }

    size_t rank = 0;
    for (auto& e : exps_desc) rank = std::max(rank, e.size());
    Vec desc;  // invariant factors, largest first
    for (size_t t = 0; t < rank; ++t) {
        std::int64_t d = 1;
        for (size_t pi = 0; pi < primes.size(); ++pi)
            if (t < exps_desc[pi].size()) {
                std::int64_t pe = 1;
                for (int j = 0; j < exps_desc[pi][t]; ++j) pe *= primes[pi].first;
                d *= pe;
            }
        desc.push_back(d);
    }
    structure_.factors = Vec(desc.rbegin(), desc.rend());
    if (structure_.order() != h) throw std::logic_error("invariant factors do not multiply to h");

    // element orders via the p-maps
    std::vector<std::int64_t> order_of(n, 1);
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        auto [p, E] = primes[pi];
        std::int64_t cof = h;
        for (int j = 0; j < E; ++j) cof /= p;
        for (int i = 0; i < n; ++i) {
            int y = idx_of(jac_.scalar(cof, elements_[i]));
            int mp = 0;
            while (y != id_idx) {
                y = pmap[pi][y];
                ++mp;
                if (mp > E) throw std::logic_error("p-order exceeded the Sylow exponent");
            }
            for (int j = 0; j < mp; ++j) order_of[i] *= p;
        }
    }
    for (int i = 0; i < n; ++i) {
        orders_.emplace(jac_.pack(elements_[i]), order_of[i]);
    }

    // basis realizing the invariant factors: peel maximal orders with the
    // least canonical element, backtracking if a choice cannot be extended
    std::vector<int> basis_desc;
    std::set<int> span = {id_idx};
    std::function<bool(size_t)> pick = [&](size_t slot) -> bool {
        if (slot == desc.size()) return true;
        std::int64_t d = desc[slot];
        auto dfac = factorize(d);
        for (int i = 0; i < n; ++i) {
            if (order_of[i] != d) continue;
            if (span.count(i)) continue;
            // <x> meets the span iff one of its minimal subgroups lies inside
            bool indep = true;
            for (auto& [pp, ee] : dfac) {
                (void)ee;
                int min_gen = idx_of(jac_.scalar(d / pp, elements_[i]));
                if (span.count(min_gen)) { indep = false; break; }
            }
            if (!indep) continue;
            std::set<int> bigger;
            int mult = id_idx;
            for (std::int64_t t = 0; t < d; ++t) {
                for (int s : span) bigger.insert(add_idx(s, mult));
                mult = add_idx(mult, i);
            }
            if (static_cast<std::int64_t>(bigger.size()) != static_cast<std::int64_t>(span.size()) * d)
                continue;
            basis_desc.push_back(i);
            std::set<int> saved = std::move(span);
            span = std::move(bigger);
            if (pick(slot + 1)) return true;
            span = std::move(saved);
            basis_desc.pop_back();
        }
        return false;
    };
    if (!pick(0)) throw std::logic_error("no basis realizes the invariant factors");

    generators_.clear();
    for (auto it = basis_desc.rbegin(); it != basis_desc.rend(); ++it)
        generators_.push_back(elements_[*it]);  // ascending factor order

    // discrete logs by odometer over the generator coordinates
    int r = static_cast<int>(structure_.factors.size());
    Vec cur(r, 0);
    int pos = id_idx;
    dlog_.reserve(elements_.size() * 2);
    std::vector<int> gen_idx(r);
    for (int j = 0; j < r; ++j) gen_idx[j] = idx_of(generators_[j]);
    while (true) {
        auto [it, fresh] = dlog_.emplace(jac_.pack(elements_[pos]), cur);
        if (!fresh) throw std::logic_error("generator coordinates are not a bijection");
        int j = 0;
        while (j < r) {
            ++cur[j];
            pos = add_idx(pos, gen_idx[j]);
            if (cur[j] < structure_.factors[j]) break;
            cur[j] = 0;
            ++j;
        }
        if (j == r) break;
        if (r == 0) break;
    }
    if (dlog_.size() != elements_.size())
        throw std::logic_error("discrete log table incomplete");
    if (pos != id_idx) throw std::logic_error("odometer did not return to the identity");
}

Vec ClassGroup::to_vector(const MumfordClass& a) const {
    auto it = dlog_.find(jac_.pack(a));
    if (it == dlog_.end()) throw std::invalid_argument("element not in the class group table");
    return it->second;
}

MumfordClass ClassGroup::from_vector(const Vec& v) const {
    Vec w = structure_.reduce(v);
    MumfordClass acc = jac_.identity();
    for (size_t i = 0; i < w.size(); ++i)
        acc = jac_.add(acc, jac_.scalar(w[i], generators_[i]));
    return acc;
}

std::int64_t ClassGroup::element_order(const MumfordClass& a) const {
    auto it = orders_.find(jac_.pack(a));
    if (it == orders_.end()) throw std::invalid_argument("element not in the class group table");
    return it->second;
}

std::string ClassGroup::summary() const {
    return "h=" + std::to_string(order_) + "; structure=" + structure_.to_string();
}

}  // namespace g2cover
