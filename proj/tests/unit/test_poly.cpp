#include "doctest.h"

#include <random>

#include "g2cover/poly.hpp"

using namespace g2cover;

namespace {

Poly random_poly(const FieldPtr& k, int max_deg, std::mt19937& rng) {
    std::uniform_int_distribution<int> dd(-1, max_deg);
    int d = dd(rng);
    if (d < 0) return Poly(k);
    std::vector<Elem> c(d + 1);
    std::uniform_int_distribution<int> ce(0, k->q() - 1);
    for (auto& x : c) x = static_cast<Elem>(ce(rng));
    if (c.back() == 0) c.back() = 1;
    return Poly(k, c);
}

}  // namespace

TEST_CASE("gcd and derivative examples over F_5") {
    auto k = Field::make(5, 1);
    Poly a = Poly::parse(k, "x^2-1");
    Poly b = Poly::parse(k, "x-1");
    CHECK(gcd(a, b) == Poly::parse(k, "x+4"));  // monic form of x-1

    Poly f = Poly::parse(k, "x^5-x^3+x");
    CHECK(f.eval(4) == 4);  // 1024 - 64 + 4 = 964 = 4 mod 5
    CHECK(Poly::parse(k, "x^5").derivative().is_zero());
}

TEST_CASE("squarefree detection") {
    auto k = Field::make(5, 1);
    CHECK(Poly::parse(k, "x^5-x^3+x").is_squarefree());
    CHECK(!Poly::parse(k, "x^2").is_squarefree());
    CHECK(!Poly::parse(k, "x^5").is_squarefree());  // derivative vanishes: 5th power
    CHECK_THROWS(Poly(k).is_squarefree());

    // oracle for the first example: x^5-x^3+x = x(x^4-x^2+1) splits over F_25
    // with five distinct roots
    auto f25 = Field::make_extension(5, 2);
    auto emb = embedding_map(*k, *f25);
    Poly f = Poly::parse(k, "x^5-x^3+x");
    std::vector<Elem> big_coeffs;
    for (auto c : f.coeffs()) big_coeffs.push_back(emb[c]);
    Poly fbig(f25, big_coeffs);
    auto roots = fbig.roots_in_field();
    CHECK(roots.size() == 5);
    for (auto [r, m] : roots) {
        (void)r;
        CHECK(m == 1);
    }
}

TEST_CASE("roots in the base field") {
    auto f5 = Field::make(5, 1);
    auto roots = Poly::parse(f5, "x^5-x^3+x").roots_in_field();
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == std::pair<Elem, int>{0, 1});

    auto f2 = Field::make(2, 1);
    auto r2 = Poly::parse(f2, "x^2+x").roots_in_field();
    CHECK(r2 == std::vector<std::pair<Elem, int>>{{0, 1}, {1, 1}});

    auto f16 = Field::make(2, 4);
    auto r16 = Poly::parse(f16, "x^2+x").roots_in_field();
    CHECK(r16 == std::vector<std::pair<Elem, int>>{{0, 1}, {1, 1}});
}

TEST_CASE("divmod round-trip and eval homomorphism, randomized") {
    std::mt19937 rng(20260810);
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {5, 1}, {2, 4}, {3, 2}, {13, 1}}) {
        auto k = Field::make(p, n);
        for (int trial = 0; trial < 200; ++trial) {
            Poly a = random_poly(k, 8, rng);
            Poly b = random_poly(k, 5, rng);
            if (!b.is_zero()) {
                auto [q, r] = a.divmod(b);
                CHECK(q * b + r == a);
                CHECK(r.deg() < b.deg());
            } else {
                CHECK_THROWS_AS(a.divmod(b), std::domain_error);
            }
            Poly c = random_poly(k, 4, rng);
            std::uniform_int_distribution<int> ce(0, k->q() - 1);
            Elem x = static_cast<Elem>(ce(rng));
            CHECK((a * c).eval(x) == k->mul(a.eval(x), c.eval(x)));
            // gcd divides both inputs
            Poly g = gcd(a, c);
            if (!g.is_zero()) {
                CHECK((a % g).is_zero());
                CHECK((c % g).is_zero());
            }
            // common roots are roots of the gcd
            if (!a.is_zero() && !c.is_zero() && !g.is_zero()) {
                for (auto [root, mult] : a.roots_in_field()) {
                    (void)mult;
                    if (c.eval(root) == 0) CHECK(g.eval(root) == 0);
                }
            }
            // xgcd identity
            if (!a.is_zero() || !c.is_zero()) {
                auto [g2, s, t] = xgcd(a, c);
                CHECK(s * a + t * c == g2);
            }
        }
    }
}

TEST_CASE("text format") {
    auto f5 = Field::make(5, 1);
    Poly f = Poly::parse(f5, "x^5+x^2-x");
    CHECK(f.to_string() == "x^5+x^2+4*x");
    CHECK(Poly::parse(f5, f.to_string()) == f);

    auto f16 = Field::make(2, 4);
    Poly g = Poly::parse(f16, "a^6*x^5+a^12*x^4+x^3+a^3*x^2+a^9*x");
    CHECK(g.deg() == 5);
    CHECK(g.lc() == f16->pow(f16->generator(), 6));
    CHECK(g.to_string() == "a^6*x^5+a^12*x^4+x^3+a^3*x^2+a^9*x");
    CHECK(Poly::parse(f16, g.to_string()) == g);

    CHECK(Poly(f5).to_string() == "0");
    CHECK(Poly::parse(f5, "0").is_zero());
    CHECK_THROWS(Poly::parse(f5, ""));
    CHECK_THROWS(Poly::parse(f5, "x^"));
}

TEST_CASE("reversal and affine composition") {
    auto f5 = Field::make(5, 1);
    Poly f = Poly::parse(f5, "x^3+2*x+1");
    Poly r = f.reversed(3);
    CHECK(r == Poly::parse(f5, "x^3+2*x^2+1"));
    // f(x + 1) evaluated matches composition
    Poly shifted = f.compose_affine(1, 1);
    for (Elem x : f5->elements()) CHECK(shifted.eval(x) == f.eval(f5->add(x, 1)));
}
