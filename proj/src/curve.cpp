#include "g2cover/curve.hpp"

#include <sstream>
#include <stdexcept>

namespace g2cover {

std::string CurveModel::text() const {
    std::string out = k->spec_string();
    if (!h.is_zero()) out += "; h=" + h.to_string();
    out += "; f=" + f.to_string();
    return out;
}

CurveModel CurveModel::parse(std::string_view text) {
    std::string spec_part, h_part, f_part;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(';', start);
        auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
        while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
        if (!piece.empty()) {
            size_t eq = piece.find('=');
            if (eq == std::string_view::npos) throw std::invalid_argument("bad curve text");
            std::string key(piece.substr(0, eq));
            std::string val(piece.substr(eq + 1));
            if (key == "q" || key == "mod") {
                if (!spec_part.empty()) spec_part += ";";
                spec_part += key + "=" + val;
            } else if (key == "h") {
                h_part = val;
            } else if (key == "f") {
                f_part = val;
            } else {
                throw std::invalid_argument("unknown curve key: " + key);
            }
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    if (spec_part.empty() || f_part.empty())
        throw std::invalid_argument("curve text needs q=... and f=...");
    FieldPtr k = Field::parse_spec(spec_part);
    Poly h = h_part.empty() ? Poly(k) : Poly::parse(k, h_part);
    Poly f = Poly::parse(k, f_part);
    return CurveModel{k, h, f};
}

std::string place_label(const Field& k, const Place& p) {
    switch (p.kind) {
        case Place::Kind::InfiniteRamified: return "P_inf";
        case Place::Kind::InfiniteSplit: return "P_inf_{" + k.to_string(p.beta) + "}";
        case Place::Kind::AffineRamified: return "P_" + k.to_string(p.alpha);
        case Place::Kind::AffineSplit:
            return "P_{" + k.to_string(p.alpha) + "," + k.to_string(p.beta) + "}";
    }
    throw std::logic_error("unreachable");
}

InfinityKind infinity_kind(const CurveModel& m) {
    const Field& k = *m.k;
    Elem f6 = m.f.coeff(6);
    if (k.p() == 2) {
        Elem h3 = m.h.coeff(3);
        if (h3 == 0) return {InfinityKind::Kind::Ramified, 0, 0};
        auto y = k.artin_schreier_solve(h3, f6);
        if (!y) return {InfinityKind::Kind::Inert, 0, 0};
        Elem b0 = *y, b1 = k.add(*y, h3);
        if (b0 > b1) std::swap(b0, b1);
        return {InfinityKind::Kind::Split, b0, b1};
    }
    if (m.f.deg() == 5) return {InfinityKind::Kind::Ramified, 0, 0};
    auto r = k.sqrt(f6);
    if (!r) return {InfinityKind::Kind::Inert, 0, 0};
    Elem b0 = *r, b1 = k.neg(*r);
    if (b0 > b1) std::swap(b0, b1);
    return {InfinityKind::Kind::Split, b0, b1};
}

bool validate_genus2(const CurveModel& m) {
    const Field& k = *m.k;
    if (m.f.deg() != 5 && m.f.deg() != 6)
        throw std::invalid_argument("deg f must be 5 or 6");
    if (m.h.deg() > 3)
        throw std::invalid_argument("deg h must be <= 3");
    if (k.p() != 2) {
        if (!m.h.is_zero()) return false;  // odd characteristic uses the y^2 = f form
        return m.f.is_squarefree();
    }
    if (m.h.is_zero()) return false;  // y^2 = f is inseparable in characteristic 2

    // affine chart: no common zero of h and f'^2 + f h'^2
    Poly fd = m.f.derivative(), hd = m.h.derivative();
    Poly sing = fd * fd + m.f * hd * hd;
    if (gcd(m.h, sing).deg() != 0) return false;

    // second chart (x -> 1/x, y -> y/x^3): same test on the reversed data
    Poly hr = m.h.reversed(3);
    Poly fr = m.f.reversed(6);
    Poly frd = fr.derivative(), hrd = hr.derivative();
    Poly sing2 = frd * frd + fr * hrd * hrd;
    return gcd(hr, sing2).deg() == 0;
}

std::vector<Place> rational_places(const CurveModel& m) {
    if (!validate_genus2(m)) throw std::invalid_argument("invalid genus-2 model");
    const Field& k = *m.k;
    std::vector<Place> out;
    auto inf = infinity_kind(m);
    if (inf.kind == InfinityKind::Kind::Ramified) {
        Place p{Place::Kind::InfiniteRamified, 0, 0, "", 1};
        p.label = place_label(k, p);
        out.push_back(p);
    } else if (inf.kind == InfinityKind::Kind::Split) {
        for (Elem b : {inf.branch0, inf.branch1}) {
            Place p{Place::Kind::InfiniteSplit, 0, b, "", 1};
            p.label = place_label(k, p);
            out.push_back(p);
        }
    }
    for (Elem x : k.elements()) {
        Elem hv = m.h.eval(x), fv = m.f.eval(x);
        if (k.p() == 2) {
            if (hv == 0) {
                Place p{Place::Kind::AffineRamified, x, k.frobenius_sqrt(fv), "", 1};
                p.label = place_label(k, p);
                out.push_back(p);
            } else {
                auto y = k.artin_schreier_solve(hv, fv);
                if (!y) continue;
                Elem b0 = *y, b1 = k.add(*y, hv);
                if (b0 > b1) std::swap(b0, b1);
                for (Elem b : {b0, b1}) {
                    Place p{Place::Kind::AffineSplit, x, b, "", 1};
                    p.label = place_label(k, p);
                    out.push_back(p);
                }
            }
        } else {
            if (fv == 0) {
                Place p{Place::Kind::AffineRamified, x, 0, "", 1};
                p.label = place_label(k, p);
                out.push_back(p);
            } else if (k.is_square(fv)) {
                Elem r = *k.sqrt(fv);
                Elem b0 = r, b1 = k.neg(r);
                if (b0 > b1) std::swap(b0, b1);
                for (Elem b : {b0, b1}) {
                    Place p{Place::Kind::AffineSplit, x, b, "", 1};
                    p.label = place_label(k, p);
                    out.push_back(p);
                }
            }
        }
    }
    return out;
}

Place parse_place(const CurveModel& m, std::string_view label) {
    for (const Place& p : rational_places(m))
        if (p.label == label) return p;
    throw std::invalid_argument("no rational place labeled '" + std::string(label) + "'");
}

std::int64_t count_points_ext(const CurveModel& m, int kk) {
    if (kk < 1 || kk > 4) throw std::invalid_argument("extension degree k must be 1..4");
    if (!validate_genus2(m)) throw std::invalid_argument("invalid genus-2 model");
    const Field& base = *m.k;
    FieldPtr bigp = kk == 1 ? m.k : Field::make_extension(base.p(), base.n() * kk);
    const Field& big = *bigp;
    auto emb = embedding_map(base, big);

    auto lift = [&](const Poly& g) {
        std::vector<Elem> c(g.coeffs().size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = emb[g.coeffs()[i]];
        return c;
    };
    std::vector<Elem> hc = lift(m.h), fc = lift(m.f);
    auto eval_big = [&](const std::vector<Elem>& c, Elem x) {
        Elem acc = 0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            acc = big.add(big.mul(acc, x), c[i]);
        return acc;
    };

    std::int64_t count = 0;
    bool char2 = base.p() == 2;
    for (int xi = 0; xi < big.q(); ++xi) {
        Elem x = static_cast<Elem>(xi);
        Elem hv = eval_big(hc, x), fv = eval_big(fc, x);
        if (char2) {
            if (hv == 0) count += 1;
            else if (big.trace2(big.div(fv, big.mul(hv, hv))) == 0) count += 2;
        } else {
            if (fv == 0) count += 1;
            else if (big.is_square(fv)) count += 2;
        }
    }
    // points over x = infinity
    Elem f6 = m.f.coeff(6) ? emb[m.f.coeff(6)] : 0;
    if (char2) {
        Elem h3 = m.h.coeff(3) ? emb[m.h.coeff(3)] : 0;
        if (h3 == 0) count += 1;
        else if (big.trace2(big.div(f6, big.mul(h3, h3))) == 0) count += 2;
    } else {
        if (m.f.deg() == 5) count += 1;
        else if (big.is_square(f6)) count += 2;
    }
    return count;
}

std::pair<std::int64_t, std::int64_t> l_polynomial(const CurveModel& m) {
    std::int64_t n1 = count_points_ext(m, 1);
    std::int64_t n2 = count_points_ext(m, 2);
    std::int64_t q = m.k->q();
    std::int64_t a1 = n1 - (q + 1);
    std::int64_t num = a1 * a1 - (q * q + 1 - n2);
    if (num % 2 != 0) throw std::logic_error("non-integral a2: model is not genus 2");
    return {a1, num / 2};
}

std::int64_t class_number(const CurveModel& m) {
    auto [a1, a2] = l_polynomial(m);
    std::int64_t q = m.k->q();
    std::int64_t h = 1 + a1 + a2 + q * a1 + q * q;
    if (h <= 0) throw std::logic_error("non-positive class number");
    return h;
}

std::int64_t places_of_degree(const CurveModel& m, int d) {
    if (d < 1 || d > 2) throw std::invalid_argument("degree must be 1 or 2");
    std::int64_t n1 = count_points_ext(m, 1);
    if (d == 1) return n1;
    std::int64_t n2 = count_points_ext(m, 2);
    if ((n2 - n1) % 2 != 0) throw std::logic_error("N_2 - N_1 must be even");
    return (n2 - n1) / 2;
}

std::int64_t point_count_from_l(std::int64_t a1, std::int64_t a2, int q, int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("k must be 1..4");
    // elementary symmetric functions of the reciprocal roots
    std::int64_t e1 = -a1, e2 = a2, e3 = -static_cast<std::int64_t>(q) * a1;
    std::int64_t e4 = static_cast<std::int64_t>(q) * q;
    std::int64_t s1 = e1;
    std::int64_t s2 = e1 * s1 - 2 * e2;
    std::int64_t s3 = e1 * s2 - e2 * s1 + 3 * e3;
    std::int64_t s4 = e1 * s3 - e2 * s2 + e3 * s1 - 4 * e4;
    std::int64_t s = k == 1 ? s1 : k == 2 ? s2 : k == 3 ? s3 : s4;
    std::int64_t qk = 1;
    for (int i = 0; i < k; ++i) qk *= q;
    return qk + 1 - s;
}

bool class_number_in_weil_interval(std::int64_t h, int q) {
    // (sqrt q - 1)^4 <= h <= (sqrt q + 1)^4, compared in exact integers:
    // both bounds are A -+ B sqrt(q) with A = q^2 + 6q + 1, B = 4(q+1).
    std::int64_t A = static_cast<std::int64_t>(q) * q + 6 * q + 1;
    std::int64_t B = 4 * (static_cast<std::int64_t>(q) + 1);
    // lower: h >= A - B sqrt q  <=>  B sqrt q >= A - h
    std::int64_t d = A - h;
    bool lower_ok = d <= 0 || B * B * q >= d * d;
    // upper: h <= A + B sqrt q  <=>  h - A <= B sqrt q
    std::int64_t u = h - A;
    bool upper_ok = u <= 0 || u * u <= B * B * q;
    return lower_ok && upper_ok;
}

}  // namespace g2cover
