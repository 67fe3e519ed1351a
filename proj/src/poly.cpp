#include "g2cover/poly.hpp"

#include <cctype>
#include <stdexcept>
#include <tuple>

namespace g2cover {

Poly::Poly(FieldPtr k, std::vector<Elem> coeffs) : k_(std::move(k)), c_(std::move(coeffs)) {
    trim();
}

Poly Poly::from_ints(const FieldPtr& k, const std::vector<long long>& coeffs) {
    std::vector<Elem> c;
    c.reserve(coeffs.size());
    long long p = k->p();
    for (long long v : coeffs) {
        long long r = ((v % p) + p) % p;
        c.push_back(static_cast<Elem>(r));
    }
    return Poly(k, std::move(c));
}

Poly Poly::constant(const FieldPtr& k, Elem c) {
    return Poly(k, c ? std::vector<Elem>{c} : std::vector<Elem>{});
}

Poly Poly::x(const FieldPtr& k) { return Poly(k, {0, 1}); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Poly::check_same_field(const Poly& o) const {
    if (k_.get() == o.k_.get()) return;
    if (k_ && o.k_ && k_->same_field(*o.k_)) return;
    throw std::invalid_argument("polynomials over different fields");
}

Poly Poly::operator+(const Poly& o) const {
    check_same_field(o);
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = k_->add(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0);
    return Poly(k_, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<Elem> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = k_->neg(c_[i]);
    return Poly(k_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_same_field(o);
    if (is_zero() || o.is_zero()) return Poly(k_);
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = k_->add(r[i + j], k_->mul(c_[i], o.c_[j]));
    }
    return Poly(k_, std::move(r));
}

Poly Poly::scaled(Elem c) const {
    if (c == 0) return Poly(k_);
    std::vector<Elem> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = k_->mul(c_[i], c);
    return Poly(k_, std::move(r));
}

bool Poly::operator==(const Poly& o) const {
    if (c_ != o.c_) return false;
    if (k_.get() == o.k_.get()) return true;
    return k_ && o.k_ && k_->same_field(*o.k_);
}

std::pair<Poly, Poly> Poly::divmod(const Poly& b) const {
    check_same_field(b);
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (deg() < b.deg()) return {Poly(k_), *this};
    Elem lb_inv = k_->inv(b.lc());
    std::vector<Elem> rem = c_;
    std::vector<Elem> quo(deg() - b.deg() + 1, 0);
    for (int d = deg(); d >= b.deg(); --d) {
        Elem cd = rem[d];
        if (cd == 0) continue;
        Elem q = k_->mul(cd, lb_inv);
        quo[d - b.deg()] = q;
        for (int i = 0; i <= b.deg(); ++i)
            rem[d - b.deg() + i] = k_->sub(rem[d - b.deg() + i], k_->mul(q, b.c_[i]));
    }
    return {Poly(k_, std::move(quo)), Poly(k_, std::move(rem))};
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(k_->inv(lc()));
}

Poly Poly::derivative() const {
    if (deg() < 1) return Poly(k_);
    std::vector<Elem> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = k_->mul(c_[i], static_cast<Elem>(i % k_->p()));
    return Poly(k_, std::move(r));
}

Elem Poly::eval(Elem x) const {
    Elem acc = 0;
    for (int i = deg(); i >= 0; --i) acc = k_->add(k_->mul(acc, x), c_[i]);
    return acc;
}

Poly Poly::pow_mod(long long e, const Poly& mod) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    Poly acc = Poly::constant(k_, k_->one()) % mod;
    Poly base = *this % mod;
    while (e > 0) {
        if (e & 1) acc = (acc * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return acc;
}

Poly Poly::reversed(int m) const {
    if (m < deg()) throw std::invalid_argument("reversal degree below deg f");
    std::vector<Elem> r(m + 1, 0);
    for (int i = 0; i <= deg(); ++i) r[m - i] = c_[i];
    return Poly(k_, std::move(r));
}

Poly Poly::compose_affine(Elem s, Elem t) const {
    // Horner in (s*x + t)
    Poly lin = Poly(k_, {t, s});
    Poly acc(k_);
    for (int i = deg(); i >= 0; --i)
        acc = acc * lin + Poly::constant(k_, c_[i]);
    return acc;
}

bool Poly::is_squarefree() const {
    if (is_zero()) throw std::domain_error("squarefree test on zero polynomial");
    if (deg() == 0) return true;
    Poly d = derivative();
    if (d.is_zero()) return false;  // p-th power
    return gcd(*this, d).deg() == 0;
}

std::vector<std::pair<Elem, int>> Poly::roots_in_field() const {
    if (is_zero()) throw std::domain_error("root search on zero polynomial");
    std::vector<std::pair<Elem, int>> out;
    for (Elem x : k_->elements()) {
        if (eval(x) != 0) continue;
        Poly lin(k_, {k_->neg(x), 1});
        Poly rest = *this;
        int mult = 0;
        while (!rest.is_zero() && rest.eval(x) == 0) {
            auto [q, r] = rest.divmod(lin);
            if (!r.is_zero()) break;
            rest = q;
            ++mult;
        }
        out.emplace_back(x, mult);
    }
    return out;
}

int Poly::cmp(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (int i = a.deg(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i) ? -1 : 1;
    return 0;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    const Field& k = *k_;
    for (int i = deg(); i >= 0; --i) {
        Elem c = c_[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (i == 0) out += k.to_string(c);
        else if (c == k.one()) out += mono;
        else out += k.to_string(c) + "*" + mono;
    }
    return out;
}

Poly Poly::parse(const FieldPtr& k, std::string_view text, const std::string& var) {
    // terms: c, c*x^k, x^k, x; atomic coefficients (integer or a^k)
    std::vector<Elem> acc;
    auto add_term = [&](int deg, Elem c, bool negate) {
        if (static_cast<int>(acc.size()) <= deg) acc.resize(deg + 1, 0);
        if (negate) c = k->neg(c);
        acc[deg] = k->add(acc[deg], c);
    };
    size_t i = 0;
    char v = var.empty() ? 'x' : var[0];
    auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    bool first = true;
    skip_ws();
    if (i >= text.size()) throw std::invalid_argument("empty polynomial text");
    while (i < text.size()) {
        skip_ws();
        bool neg = false;
        if (text[i] == '+' || text[i] == '-') {
            neg = text[i] == '-';
            ++i;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in polynomial");
        }
        skip_ws();
        if (i >= text.size()) throw std::invalid_argument("dangling sign in polynomial");
        Elem c = k->one();
        bool saw_coef = false;
        if (text[i] == 'a' && v != 'a') {
            // generator power coefficient
            size_t j = i + 1;
            long long e = 1;
            if (j < text.size() && text[j] == '^') {
                ++j;
                e = 0;
                while (j < text.size() && isdigit(static_cast<unsigned char>(text[j])))
                    e = e * 10 + (text[j++] - '0');
            }
            c = k->pow(k->generator(), e);
            i = j;
            saw_coef = true;
            if (i < text.size() && text[i] == '*') ++i;
        } else if (isdigit(static_cast<unsigned char>(text[i]))) {
            long long value = 0;
            while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
                value = value * 10 + (text[i++] - '0');
            c = static_cast<Elem>(value % k->p());
            saw_coef = true;
            if (i < text.size() && text[i] == '*') ++i;
        }
        int deg = 0;
        skip_ws();
        if (i < text.size() && text[i] == v) {
            ++i;
            deg = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                deg = 0;
                if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
                    throw std::invalid_argument("bad exponent in polynomial");
                while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
                    deg = deg * 10 + (text[i++] - '0');
            }
        } else if (!saw_coef) {
            throw std::invalid_argument("bad term in polynomial: '" + std::string(text) + "'");
        }
        add_term(deg, c, neg);
        first = false;
        skip_ws();
    }
    return Poly(k, std::move(acc));
}

Poly gcd(Poly a, Poly b) {
    if (a.is_zero() && b.is_zero()) return a;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
    const FieldPtr& k = a.field() ? a.field() : b.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(k, k->one()), s1 = Poly(k);
    Poly t0 = Poly(k), t1 = Poly::constant(k, k->one());
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.is_zero() && r0.lc() != k->one()) {
        Elem c = k->inv(r0.lc());
        r0 = r0.scaled(c);
        s0 = s0.scaled(c);
        t0 = t0.scaled(c);
    }
    return {r0, s0, t0};
}

}  // namespace g2cover
