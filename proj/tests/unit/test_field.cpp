#include "doctest.h"

#include <algorithm>
#include <set>

#include "g2cover/field.hpp"

using namespace g2cover;

namespace {

// independent multiplication oracle: repeated addition
Elem mul_by_addition(const Field& k, Elem a, int times) {
    Elem acc = 0;
    for (int i = 0; i < times; ++i) acc = k.add(acc, a);
    return acc;
}

}  // namespace

TEST_CASE("default moduli match the stated generators") {
    auto f16 = Field::make(2, 4);
    // alpha^4 = alpha + 1
    Elem a = f16->generator();
    CHECK(f16->pow(a, 4) == f16->add(a, f16->one()));
    CHECK(f16->mul(a, f16->pow(a, 3)) == f16->add(a, f16->one()));

    auto f9 = Field::make(3, 2);
    // alpha^2 = alpha + 1
    Elem b = f9->generator();
    CHECK(f9->mul(b, b) == f9->add(b, f9->one()));

    auto f5 = Field::make(5, 1);
    CHECK(f5->q() == 5);
    CHECK_THROWS(f5->generator());
}

TEST_CASE("construction errors") {
    std::vector<int> reducible = {1, 0, 1};  // x^2 + 1 = (x+1)^2 over F_2
    CHECK_THROWS_AS(Field::make(2, 2, &reducible), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(2, 5), std::invalid_argument);   // q = 32
    CHECK_THROWS_AS(Field::make(4, 1), std::invalid_argument);   // not prime
    CHECK_THROWS_AS(Field::make(17, 1), std::invalid_argument);  // q = 17
}

TEST_CASE("basic arithmetic against exhaustive oracles") {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1},
                                                        {7, 1}, {2, 3}, {3, 2}, {11, 1},
                                                        {13, 1}, {2, 4}}) {
        auto k = Field::make(p, n);
        CAPTURE(k->q());
        for (Elem a : k->elements()) {
            CHECK(k->add(a, 0) == a);
            CHECK(k->mul(a, 1) == a);
            CHECK(k->add(a, k->neg(a)) == 0);
            if (a != 0) CHECK(k->mul(a, k->inv(a)) == 1);
            // prime-subfield scalars agree with repeated addition
            for (int b = 0; b < k->p(); ++b)
                CHECK(k->mul(a, static_cast<Elem>(b)) == mul_by_addition(*k, a, b));
            for (Elem b : k->elements()) {
                CHECK(k->add(a, b) == k->add(b, a));
                CHECK(k->mul(a, b) == k->mul(b, a));
                for (Elem c : k->elements()) {
                    if (k->q() > 8 && (a * 7 + b * 3 + c) % 5) continue;  // sample larger fields
                    CHECK(k->add(k->add(a, b), c) == k->add(a, k->add(b, c)));
                    CHECK(k->mul(a, k->add(b, c)) == k->add(k->mul(a, b), k->mul(a, c)));
                    CHECK(k->mul(k->mul(a, b), c) == k->mul(a, k->mul(b, c)));
                }
            }
        }
        CHECK_THROWS_AS(k->inv(0), std::domain_error);
    }
}

TEST_CASE("pow examples") {
    auto f5 = Field::make(5, 1);
    CHECK(f5->pow(2, 4) == 1);  // 2^4 = 16 = 1 mod 5, cf. the squares table below
    for (Elem a : f5->elements())
        if (a) CHECK(f5->pow(a, 4) == 1);
    auto f16 = Field::make(2, 4);
    CHECK(f16->inv(1) == 1);
    CHECK(f16->pow(f16->generator(), 15) == 1);
}

TEST_CASE("generator primitivity for the named fields") {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
        auto k = Field::make(p, n);
        CHECK(k->generator_primitive());
        Elem a = k->generator();
        for (int e = 1; e < k->q() - 1; ++e) CHECK(k->pow(a, e) != 1);
        CHECK(k->pow(a, k->q() - 1) == 1);
    }
}

TEST_CASE("element enumeration") {
    auto f2 = Field::make(2, 1);
    CHECK(f2->elements() == std::vector<Elem>{0, 1});
    auto f9 = Field::make(3, 2);
    auto e9 = f9->elements();
    CHECK(e9.size() == 9);
    CHECK(std::set<Elem>(e9.begin(), e9.end()).size() == 9);
    CHECK(e9.front() == 0);

    auto f16 = Field::make(2, 4);
    auto els = f16->elements();
    // the record coefficients a^6, a^9, a^12 are present
    for (int e : {6, 9, 12}) {
        Elem v = f16->pow(f16->generator(), e);
        CHECK(std::find(els.begin(), els.end(), v) != els.end());
        CHECK(f16->parse_element("a^" + std::to_string(e)) == v);
    }
}

TEST_CASE("square roots in odd characteristic") {
    auto f5 = Field::make(5, 1);
    // exhaustive squares table: {0,1,4} are the squares mod 5
    std::set<Elem> squares;
    for (Elem a : f5->elements()) squares.insert(f5->mul(a, a));
    CHECK(squares == std::set<Elem>{0, 1, 4});

    CHECK(f5->sqrt(4) == Elem{2});  // canonical root: 2 < 3
    CHECK(!f5->sqrt(2).has_value());
    CHECK(!f5->sqrt(3).has_value());
    CHECK(f5->sqrt(0) == Elem{0});

    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2},
                                                        {11, 1}, {13, 1}}) {
        auto k = Field::make(p, n);
        int nonzero_squares = 0;
        for (Elem a : k->elements()) {
            auto r = k->sqrt(a);
            if (a && k->is_square(a)) ++nonzero_squares;
            if (r) {
                CHECK(k->mul(*r, *r) == a);
                CHECK(*r <= k->neg(*r));
            } else {
                CHECK(!k->is_square(a));
            }
        }
        CHECK(nonzero_squares == (k->q() - 1) / 2);
    }
    auto f4 = Field::make(2, 2);
    CHECK_THROWS_AS(f4->sqrt(1), std::domain_error);
}

TEST_CASE("characteristic 2: Frobenius and Artin-Schreier") {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}}) {
        auto k = Field::make(p, n);
        // squaring is a bijection
        std::set<Elem> sq;
        for (Elem a : k->elements()) sq.insert(k->mul(a, a));
        CHECK(sq.size() == static_cast<size_t>(k->q()));
        for (Elem a : k->elements()) {
            Elem r = k->frobenius_sqrt(a);
            CHECK(k->mul(r, r) == a);
        }
        for (Elem c : k->elements()) {
            int solvable = 0;
            for (Elem d : k->elements()) {
                auto y = k->artin_schreier_solve(c, d);
                if (y) {
                    ++solvable;
                    CHECK(k->add(k->mul(*y, *y), k->mul(c, *y)) == d);
                    if (c != 0) {
                        Elem other = k->add(*y, c);
                        CHECK(k->add(k->mul(other, other), k->mul(c, other)) == d);
                        CHECK(*y <= other);
                        CHECK(k->trace2(k->div(d, k->mul(c, c))) == 0);
                    }
                }
            }
            if (c == 0) CHECK(solvable == k->q());
            else CHECK(solvable == k->q() / 2);
        }
    }
    auto f2 = Field::make(2, 1);
    CHECK(f2->artin_schreier_solve(1, 0) == Elem{0});  // y^2 + y = 0: roots 0 and 1
    auto f5 = Field::make(5, 1);
    CHECK_THROWS_AS(f5->artin_schreier_solve(1, 0), std::domain_error);
}

TEST_CASE("element text round-trip") {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {5, 1}, {2, 2}, {2, 3},
                                                        {3, 2}, {2, 4}, {13, 1}}) {
        auto k = Field::make(p, n);
        for (Elem a : k->elements()) {
            CHECK(k->parse_element(k->to_string(a)) == a);
        }
    }
    auto f16 = Field::make(2, 4);
    // sums accepted on input
    CHECK(f16->parse_element("a^3+1") == f16->add(f16->pow(f16->generator(), 3), 1));
    auto f5 = Field::make(5, 1);
    CHECK(f5->parse_element("-1") == 4);
}

TEST_CASE("field spec strings") {
    auto f16 = Field::parse_spec("q=16");
    CHECK(f16->q() == 16);
    CHECK(f16->spec_string() == "q=16");
    auto f16b = Field::parse_spec("q=16;mod=a^4+a+1");
    CHECK(f16b->same_field(*f16));
    CHECK(f16b->spec_string() == "q=16");  // the default modulus prints short
    auto f9 = Field::parse_spec("q=9");
    CHECK(f9->modulus_string() == "a^2+2*a+2");
    CHECK_THROWS(Field::parse_spec("q=12"));
    // a non-default modulus round-trips through the spec string
    auto f16c = Field::parse_spec("q=16;mod=a^4+a^3+1");
    CHECK(!f16c->same_field(*f16));
    auto f16d = Field::parse_spec(f16c->spec_string());
    CHECK(f16d->same_field(*f16c));
}

TEST_CASE("internal extensions for point counting") {
    auto f256 = Field::make_extension(2, 8);
    CHECK(f256->q() == 256);
    auto f16 = Field::make(2, 4);
    auto emb = embedding_map(*f16, *f256);
    // embedding is a field homomorphism
    for (Elem a : f16->elements())
        for (Elem b : f16->elements()) {
            CHECK(emb[f16->add(a, b)] == f256->add(emb[a], emb[b]));
            CHECK(emb[f16->mul(a, b)] == f256->mul(emb[a], emb[b]));
        }
    auto f625 = Field::make_extension(5, 4);
    CHECK(f625->q() == 625);
    CHECK(f625->mul(f625->inv(17), 17) == 1);
}
