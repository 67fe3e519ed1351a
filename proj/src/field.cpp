#include "g2cover/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace g2cover {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Built-in moduli, little-endian coefficients.  The q=9 and q=16 entries fix
// the generators used by the record curves (a^2 = a+1 and a^4 = a+1); q=4 and
// q=8 use the usual minimal-weight choices.
const std::map<int, std::vector<int>> kDefaultModuli = {
    {4, {1, 1, 1}},        // x^2+x+1
    {8, {1, 1, 0, 1}},     // x^3+x+1
    {9, {2, 2, 1}},        // x^2+2x+2 = x^2-x-1
    {16, {1, 1, 0, 0, 1}}, // x^4+x+1
};

std::vector<int> poly_mulmod_int(const std::vector<int>& a, const std::vector<int>& b,
                                 const std::vector<int>& mod, int p) {
    // dense schoolbook over Z/p, reduced by the monic `mod`
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    int m = static_cast<int>(mod.size()) - 1;
    for (int d = static_cast<int>(r.size()) - 1; d >= m; --d) {
        int c = r[d];
        if (c == 0) continue;
        r[d] = 0;
        for (int i = 0; i < m; ++i)
            r[d - m + i] = ((r[d - m + i] - c * mod[i]) % p + p) % p;
    }
    r.resize(m);
    return r;
}

bool irreducible_over_prime(const std::vector<int>& f, int p) {
    // Rabin: x^(p^m) == x mod f, and gcd(x^(p^(m/t)) - x, f) = 1 for prime t|m.
    int m = static_cast<int>(f.size()) - 1;
    if (m < 1) return false;
    auto frob = [&](const std::vector<int>& g) {
        // g -> g^p mod f by square-and-multiply on the exponent p
        std::vector<int> acc = {1};
        std::vector<int> base = g;
        int e = p;
        while (e > 0) {
            if (e & 1) acc = poly_mulmod_int(acc, base, f, p);
            base = poly_mulmod_int(base, base, f, p);
            e >>= 1;
        }
        return acc;
    };
    auto x_poly = [&]() {
        std::vector<int> x(m, 0);
        if (m == 1) { x = {0}; }
        else x[1] = 1;
        return x;
    };
    auto gcd_deg = [&](std::vector<int> a, std::vector<int> b) {
        auto deg = [](const std::vector<int>& v) {
            for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
                if (v[i]) return i;
            return -1;
        };
        while (deg(b) >= 0) {
            // a mod b
            int db = deg(b);
            int lb = b[db];
            int linv = 1;
            for (int t = 1; t < p; ++t) if (lb * t % p == 1) { linv = t; break; }
            while (deg(a) >= db) {
                int da = deg(a);
                int c = a[da] * linv % p;
                for (int i = 0; i <= db; ++i)
                    a[da - db + i] = ((a[da - db + i] - c * b[i]) % p + p) % p;
            }
            std::swap(a, b);
        }
        return deg(a);
    };

    // power x through m Frobenius steps, checking the subfield conditions
    std::vector<int> xp = x_poly();
    std::vector<int> pow_chain = xp;
    for (int j = 1; j <= m; ++j) {
        pow_chain = frob(pow_chain);
        bool is_proper_divisor = j < m && m % j == 0 && is_prime(m / j);
        if (is_proper_divisor) {
            std::vector<int> diff = pow_chain;
            diff.resize(std::max(diff.size(), xp.size()), 0);
            for (size_t i = 0; i < xp.size(); ++i)
                diff[i] = ((diff[i] - xp[i]) % p + p) % p;
            if (gcd_deg(diff, f) != 0) return false;
        }
    }
    std::vector<int> diff = pow_chain;
    diff.resize(std::max(diff.size(), xp.size()), 0);
    for (size_t i = 0; i < xp.size(); ++i)
        diff[i] = ((diff[i] - xp[i]) % p + p) % p;
    auto deg = [](const std::vector<int>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
            if (v[i]) return i;
        return -1;
    };
    return deg(diff) == -1;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

Elem Field::add_digits(Elem a, Elem b) const {
    if (p_ == 2) return static_cast<Elem>(a ^ b);
    Elem r = 0;
    int scale = 1;
    for (int i = 0; i < n_; ++i) {
        int da = (a / scale) % p_, db = (b / scale) % p_;
        r = static_cast<Elem>(r + ((da + db) % p_) * scale);
        scale *= p_;
    }
    return r;
}

Elem Field::mul_raw(Elem a, Elem b) const {
    // digit vectors, schoolbook product, reduce by modulus
    std::vector<int> va(n_), vb(n_);
    for (int i = 0, s = 1; i < n_; ++i, s *= p_) {
        va[i] = (a / s) % p_;
        vb[i] = (b / s) % p_;
    }
    auto r = poly_mulmod_int(va, vb, mod_, p_);
    Elem out = 0;
    for (int i = n_ - 1; i >= 0; --i) out = static_cast<Elem>(out * p_ + r[i]);
    return out;
}

void Field::build_tables() {
    q_ = static_cast<int>(ipow(p_, n_));
    if (q_ <= 256) {
        add_table_.resize(static_cast<size_t>(q_) * q_);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b)
                add_table_[static_cast<size_t>(a) * q_ + b] =
                    add_digits(static_cast<Elem>(a), static_cast<Elem>(b));
    }

    // find a primitive element by order test against the prime factors of q-1
    std::vector<int> prime_factors;
    int m = q_ - 1;
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) prime_factors.push_back(m);

    auto pow_raw = [&](Elem a, long long e) {
        Elem acc = 1, base = a;
        while (e > 0) {
            if (e & 1) acc = mul_raw(acc, base);
            base = mul_raw(base, base);
            e >>= 1;
        }
        return acc;
    };
    primitive_ = 0;
    for (int g = 1; g < q_; ++g) {
        bool ok = true;
        for (int f : prime_factors)
            if (pow_raw(static_cast<Elem>(g), (q_ - 1) / f) == 1) { ok = false; break; }
        if (ok) { primitive_ = static_cast<Elem>(g); break; }
    }
    if (primitive_ == 0) throw std::logic_error("no primitive element found");

    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1), 0);
    Elem cur = 1;
    for (int k = 0; k < q_ - 1; ++k) {
        exp_[k] = cur;
        exp_[k + q_ - 1] = cur;
        log_[cur] = static_cast<std::uint32_t>(k);
        cur = mul_raw(cur, primitive_);
    }
    if (cur != 1) throw std::logic_error("multiplicative group order mismatch");

    alpha_primitive_ = false;
    if (n_ > 1) {
        alpha_primitive_ = std::gcd(static_cast<long long>(log_[p_]),
                                    static_cast<long long>(q_ - 1)) == 1;
        if (alpha_primitive_) {
            alpha_log_.assign(q_, 0);
            Elem e = 1;
            for (int k = 0; k < q_ - 1; ++k) {
                alpha_log_[e] = static_cast<std::uint32_t>(k);
                e = mul_raw(e, static_cast<Elem>(p_));
            }
        }
    }
}

FieldPtr Field::make(int p, int n, const std::vector<int>* modulus) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
    long long q = ipow(p, n);
    if (q > 16) throw std::invalid_argument("unsupported field size (q must be <= 16)");

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->n_ = n;
    if (n == 1) {
        f->mod_ = {0, 1};  // placeholder x, unused
        f->default_mod_ = true;
    } else if (modulus == nullptr) {
        auto it = kDefaultModuli.find(static_cast<int>(q));
        if (it == kDefaultModuli.end()) throw std::logic_error("missing default modulus");
        f->mod_ = it->second;
        f->default_mod_ = true;
    } else {
        std::vector<int> mod = *modulus;
        if (static_cast<int>(mod.size()) != n + 1 || mod[n] != 1)
            throw std::invalid_argument("modulus must be monic of degree n");
        for (int& c : mod) c = ((c % p) + p) % p;
        if (!irreducible_over_prime(mod, p))
            throw std::invalid_argument("modulus is reducible over F_p");
        f->mod_ = mod;
        auto it = kDefaultModuli.find(static_cast<int>(q));
        f->default_mod_ = it != kDefaultModuli.end() && it->second == mod;
    }
    if (n > 1 && !irreducible_over_prime(f->mod_, p))
        throw std::logic_error("built-in modulus reducible");
    f->build_tables();
    return f;
}

FieldPtr Field::make_extension(int p, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, FieldPtr> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({p, m});
        if (it != cache.end()) return it->second;
    }
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (m < 1 || ipow(p, m) > 65536) throw std::invalid_argument("extension too large");

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->n_ = m;
    if (m == 1) {
        f->mod_ = {0, 1};
    } else {
        // deterministic: least monic irreducible in code order of the low part
        std::vector<int> mod(m + 1, 0);
        mod[m] = 1;
        long long limit = ipow(p, m);
        bool found = false;
        for (long long code = 1; code < limit; ++code) {
            long long c = code;
            for (int i = 0; i < m; ++i) { mod[i] = static_cast<int>(c % p); c /= p; }
            if (irreducible_over_prime(mod, p)) { found = true; break; }
        }
        if (!found) throw std::logic_error("no irreducible modulus found");
        f->mod_ = mod;
    }
    f->default_mod_ = true;
    f->build_tables();

    std::lock_guard<std::mutex> lk(mu);
    auto [it, inserted] = cache.emplace(std::make_pair(p, m), f);
    return it->second;
}

Elem Field::generator() const {
    if (n_ == 1) throw std::domain_error("prime field has no designated generator");
    return static_cast<Elem>(p_);
}

Elem Field::add(Elem a, Elem b) const {
    if (!add_table_.empty()) return add_table_[static_cast<size_t>(a) * q_ + b];
    return add_digits(a, b);
}

Elem Field::neg(Elem a) const {
    if (p_ == 2) return a;
    Elem r = 0;
    int scale = 1;
    for (int i = 0; i < n_; ++i) {
        int d = (a / scale) % p_;
        r = static_cast<Elem>(r + ((p_ - d) % p_) * scale);
        scale *= p_;
    }
    return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inversion of zero");
    return exp_[q_ - 1 - log_[a]];
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, long long e) const {
    if (a == 0) {
        if (e < 0) throw std::domain_error("inversion of zero");
        return e == 0 ? one() : 0;
    }
    long long ord = q_ - 1;
    long long k = (static_cast<long long>(log_[a]) * (e % ord)) % ord;
    if (k < 0) k += ord;
    return exp_[k];
}

bool Field::is_square(Elem a) const {
    if (a == 0) return true;
    if (p_ == 2) return true;
    return log_[a] % 2 == 0;
}

std::optional<Elem> Field::sqrt(Elem a) const {
    if (p_ == 2) throw std::domain_error("sqrt is for odd characteristic; use frobenius_sqrt");
    if (a == 0) return Elem{0};
    if (log_[a] % 2 != 0) return std::nullopt;
    Elem r = exp_[log_[a] / 2];
    Elem r2 = neg(r);
    return std::min(r, r2);
}

Elem Field::frobenius_sqrt(Elem a) const {
    if (p_ != 2) throw std::domain_error("frobenius_sqrt is for characteristic 2");
    return pow(a, q_ / 2);
}

std::optional<Elem> Field::artin_schreier_solve(Elem c, Elem d) const {
    if (p_ != 2) throw std::domain_error("artin_schreier_solve is for characteristic 2");
    if (c == 0) return frobenius_sqrt(d);
    // first solution found in code order is canonical (smallest code)
    for (int y = 0; y < q_; ++y) {
        Elem ye = static_cast<Elem>(y);
        if (add(mul(ye, ye), mul(c, ye)) == d) return ye;
    }
    return std::nullopt;
}

int Field::trace2(Elem a) const {
    if (p_ != 2) throw std::domain_error("trace2 is for characteristic 2");
    Elem t = 0, cur = a;
    for (int i = 0; i < n_; ++i) {
        t = add(t, cur);
        cur = mul(cur, cur);
    }
    if (t > 1) throw std::logic_error("trace landed outside F_2");
    return t;
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> v(q_);
    for (int i = 0; i < q_; ++i) v[i] = static_cast<Elem>(i);
    return v;
}

std::vector<int> Field::coeffs(Elem a) const {
    std::vector<int> c(n_);
    for (int i = 0; i < n_; ++i) {
        c[i] = a % p_;
        a = static_cast<Elem>(a / p_);
    }
    return c;
}

Elem Field::from_coeffs(const std::vector<int>& c) const {
    Elem r = 0;
    for (int i = std::min<int>(n_, static_cast<int>(c.size())) - 1; i >= 0; --i)
        r = static_cast<Elem>(r * p_ + (((c[i] % p_) + p_) % p_));
    return r;
}

std::string Field::to_string(Elem a) const {
    if (a < p_) return std::to_string(a);
    if (alpha_primitive_ && n_ > 1) {
        std::uint32_t k = alpha_log_[a];
        if (k == 0) return "1";
        if (k == 1) return "a";
        return "a^" + std::to_string(k);
    }
    // fallback: coefficient sum, highest power first
    std::string out;
    auto c = coeffs(a);
    for (int i = n_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        std::string mono = i == 0 ? "" : (i == 1 ? "a" : "a^" + std::to_string(i));
        if (i == 0) out += std::to_string(c[i]);
        else if (c[i] == 1) out += mono;
        else out += std::to_string(c[i]) + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

std::optional<Elem> Field::try_parse_element(std::string_view text) const {
    // sums of atoms; atoms are signed integers, "a", or "a^k"
    Elem acc = 0;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    bool first = true;
    while (true) {
        skip_ws();
        int sign = 1;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            break;
        }
        skip_ws();
        if (i >= text.size()) return std::nullopt;
        Elem atom;
        if (text[i] == 'a') {
            ++i;
            long long k = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
                k = 0;
                while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
                    k = k * 10 + (text[i++] - '0');
            }
            if (n_ == 1) return std::nullopt;
            atom = pow(generator(), k);
        } else if (isdigit(static_cast<unsigned char>(text[i]))) {
            long long v = 0;
            while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            atom = static_cast<Elem>(v % p_);
        } else {
            return std::nullopt;
        }
        if (sign < 0) atom = neg(atom);
        acc = add(acc, atom);
        first = false;
        skip_ws();
        if (i >= text.size()) return acc;
        if (text[i] != '+' && text[i] != '-') return std::nullopt;
    }
    return std::nullopt;
}

Elem Field::parse_element(std::string_view text) const {
    auto r = try_parse_element(text);
    if (!r) throw std::invalid_argument("bad field element: '" + std::string(text) + "'");
    return *r;
}

std::string Field::modulus_string() const {
    if (n_ == 1) return "";
    std::string out;
    for (int i = n_; i >= 0; --i) {
        int c = mod_[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        std::string mono = i == 0 ? "" : (i == 1 ? "a" : "a^" + std::to_string(i));
        if (i == 0) out += std::to_string(c);
        else if (c == 1) out += mono;
        else out += std::to_string(c) + "*" + mono;
    }
    return out;
}

std::string Field::spec_string() const {
    if (default_mod_ || n_ == 1) return "q=" + std::to_string(q_);
    return "q=" + std::to_string(q_) + ";mod=" + modulus_string();
}

FieldPtr Field::parse_spec(std::string_view text) {
    int q = -1;
    std::string mod_text;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(';', start);
        std::string_view part = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        if (!part.empty()) {
            size_t eq = part.find('=');
            if (eq == std::string_view::npos) throw std::invalid_argument("bad field spec");
            std::string_view key = part.substr(0, eq), val = part.substr(eq + 1);
            if (key == "q") q = std::stoi(std::string(val));
            else if (key == "mod") mod_text = std::string(val);
            else throw std::invalid_argument("unknown field spec key: " + std::string(key));
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    if (q < 2) throw std::invalid_argument("field spec missing q");
    int p = 0, n = 0;
    for (int cand = 2; cand <= q; ++cand) {
        if (!is_prime(cand)) continue;
        int m = q, e = 0;
        while (m % cand == 0) { m /= cand; ++e; }
        if (m == 1) { p = cand; n = e; break; }
    }
    if (p == 0) throw std::invalid_argument("q is not a prime power");
    if (mod_text.empty()) return make(p, n);

    // modulus text is a polynomial in 'a' with integer coefficients
    std::vector<int> mod(n + 1, 0);
    size_t i = 0;
    std::string_view t = mod_text;
    int sign = 1;
    auto fail = [&] { throw std::invalid_argument("bad modulus: " + mod_text); };
    while (i < t.size()) {
        while (i < t.size() && t[i] == ' ') ++i;
        if (i < t.size() && (t[i] == '+' || t[i] == '-')) { sign = t[i] == '-' ? -1 : 1; ++i; }
        while (i < t.size() && t[i] == ' ') ++i;
        if (i >= t.size()) fail();
        long long coef = 1;
        bool saw_coef = false;
        if (isdigit(static_cast<unsigned char>(t[i]))) {
            coef = 0;
            while (i < t.size() && isdigit(static_cast<unsigned char>(t[i]))) coef = coef * 10 + (t[i++] - '0');
            saw_coef = true;
            if (i < t.size() && t[i] == '*') ++i;
        }
        int deg = 0;
        if (i < t.size() && t[i] == 'a') {
            ++i;
            deg = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                deg = 0;
                if (i >= t.size() || !isdigit(static_cast<unsigned char>(t[i]))) fail();
                while (i < t.size() && isdigit(static_cast<unsigned char>(t[i]))) deg = deg * 10 + (t[i++] - '0');
            }
        } else if (!saw_coef) {
            fail();
        }
        if (deg > n) fail();
        mod[deg] = static_cast<int>(((mod[deg] + sign * coef) % p + p) % p);
        sign = 1;
        while (i < t.size() && t[i] == ' ') ++i;
        if (i < t.size() && t[i] != '+' && t[i] != '-') fail();
    }
    return make(p, n, &mod);
}

bool Field::same_field(const Field& other) const {
    return p_ == other.p_ && n_ == other.n_ && mod_ == other.mod_;
}

std::vector<Elem> embedding_map(const Field& small, const Field& big) {
    if (small.p() != big.p() || big.n() % small.n() != 0)
        throw std::invalid_argument("no embedding between these fields");
    if (small.n() == 1) {
        std::vector<Elem> m(small.q());
        for (int i = 0; i < small.q(); ++i) m[i] = static_cast<Elem>(i);
        return m;
    }
    // least root of the small modulus inside big
    const auto& mod = small.modulus();
    Elem root = 0;
    bool found = false;
    for (int x = 0; x < big.q(); ++x) {
        Elem acc = 0, xp = 1, xe = static_cast<Elem>(x);
        for (size_t i = 0; i < mod.size(); ++i) {
            acc = big.add(acc, big.mul(static_cast<Elem>(mod[i] % big.p()), xp));
            xp = big.mul(xp, xe);
        }
        if (acc == 0) { root = xe; found = true; break; }
    }
    if (!found) throw std::logic_error("modulus has no root in the extension");
    std::vector<Elem> m(small.q());
    for (int e = 0; e < small.q(); ++e) {
        auto c = small.coeffs(static_cast<Elem>(e));
        Elem acc = 0, rp = 1;
        for (int i = 0; i < small.n(); ++i) {
            acc = big.add(acc, big.mul(static_cast<Elem>(c[i]), rp));
            rp = big.mul(rp, root);
        }
        m[e] = acc;
    }
    return m;
}

}  // namespace g2cover
