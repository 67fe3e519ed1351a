#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "g2cover/jacobian.hpp"

using namespace g2cover;

namespace {

CurveModel example1() { return CurveModel::parse("q=2; h=x; f=x^5+x^3+x^2+x"); }
CurveModel f5_record() { return CurveModel::parse("q=5; f=x^5-x^3+x"); }

Place find_place(const CurveModel& m, const std::string& label) {
    return parse_place(m, label);
}

CurveModel random_valid_model(const FieldPtr& k, std::mt19937& rng) {
    std::uniform_int_distribution<int> ce(0, k->q() - 1);
    std::uniform_int_distribution<int> degf(5, 6);
    while (true) {
        int df = degf(rng);
        std::vector<Elem> fc(df + 1);
        for (auto& c : fc) c = static_cast<Elem>(ce(rng));
        if (fc.back() == 0) fc.back() = 1;
        Poly f(k, fc);
        Poly h(k);
        if (k->p() == 2) {
            std::vector<Elem> hc(4);
            for (auto& c : hc) c = static_cast<Elem>(ce(rng));
            h = Poly(k, hc);
            if (h.is_zero()) continue;
        }
        CurveModel m{k, h, f};
        if (validate_genus2(m)) return m;
    }
}

void check_group_axioms(const ClassGroup& cg, std::mt19937& rng, int triples) {
    const Jacobian& J = cg.jacobian();
    const auto& els = cg.elements();
    std::uniform_int_distribution<size_t> pick(0, els.size() - 1);
    MumfordClass id = J.identity();
    for (int t = 0; t < triples; ++t) {
        const auto& x = els[pick(rng)];
        const auto& y = els[pick(rng)];
        const auto& z = els[pick(rng)];
        CHECK(J.add(J.add(x, y), z) == J.add(x, J.add(y, z)));
        CHECK(J.add(x, y) == J.add(y, x));
        CHECK(J.add(x, id) == x);
        CHECK(J.add(x, J.neg(x)) == id);
    }
}

}  // namespace

TEST_CASE("two-torsion class on the q=2 curve") {
    auto m = example1();
    Jacobian J(m);
    Place p0 = find_place(m, "P_0");
    Place pinf = find_place(m, "P_inf");
    MumfordClass a = J.place_difference(p0, pinf);
    CHECK(!J.is_identity(a));                 // a != 0
    CHECK(J.is_identity(J.add(a, a)));        // 2a = 0 because div(x) = 2 P_0 - 2 P_inf
    CHECK(J.place_difference(pinf, pinf) == J.identity());
}

TEST_CASE("class group structures of the reference curves") {
    SUBCASE("q=2: order 10, cyclic") {
        ClassGroup cg(example1());
        CHECK(cg.order() == 10);
        CHECK(cg.structure().factors == Vec{10});
        CHECK(cg.summary() == "h=10; structure=Z/10");
    }
    SUBCASE("q=5: Z/8 + Z/8") {
        ClassGroup cg(f5_record());
        CHECK(cg.order() == 64);
        CHECK(cg.structure().factors == Vec{8, 8});
        CHECK(cg.summary() == "h=64; structure=Z/8 x Z/8");
    }
}

TEST_CASE("normalize_model") {
    SUBCASE("odd-degree models are unchanged") {
        auto m = f5_record();
        auto nm = normalize_model(m);
        CHECK(nm.kind == ModelKind::OddRamified);
        CHECK(!nm.moebius_rho.has_value());
        CHECK(nm.model == m);
    }
    SUBCASE("ramified infinity in characteristic 2 is unchanged") {
        auto m = example1();
        auto nm = normalize_model(m);
        CHECK(nm.kind == ModelKind::OddRamified);
        CHECK(!nm.moebius_rho.has_value());
        CHECK(nm.model == m);
    }
    SUBCASE("a rational Weierstrass point moves to infinity") {
        // f = x^6 - 1 has the rational root 1 over F_5
        auto k = Field::make(5, 1);
        CurveModel m{k, Poly(k), Poly::parse(k, "x^6-1")};
        REQUIRE(validate_genus2(m));
        auto nm = normalize_model(m);
        CHECK(nm.kind == ModelKind::OddRamified);
        CHECK(nm.moebius_rho.has_value());
        CHECK(nm.model.f.deg() == 5);
        // the isomorphic model has the same counts
        CHECK(count_points_ext(m, 1) == count_points_ext(nm.model, 1));
        CHECK(count_points_ext(m, 2) == count_points_ext(nm.model, 2));
    }
    SUBCASE("mapped places satisfy the arithmetic model equation") {
        std::mt19937 rng(3);
        for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
            auto k = Field::make(p, n);
            for (int t = 0; t < 30; ++t) {
                auto m = random_valid_model(k, rng);
                auto nm = normalize_model(m);
                const auto& mm = nm.model;
                for (const auto& pl : rational_places(m)) {
                    NormPoint np = nm.map_place(pl);
                    if (np.kind != NormPoint::Kind::Affine) continue;
                    Elem lhs = k->add(k->mul(np.y, np.y), k->mul(mm.h.eval(np.x), np.y));
                    CHECK(lhs == mm.f.eval(np.x));
                }
            }
        }
    }
}

TEST_CASE("negation fixes u and flips the balance counter") {
    std::mt19937 rng(5);
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}}) {
        auto k = Field::make(p, n);
        for (int t = 0; t < 15; ++t) {
            ClassGroup cg(random_valid_model(k, rng));
            for (const auto& x : cg.elements()) {
                MumfordClass nx = cg.jacobian().neg(x);
                CHECK(nx.u == x.u);
                CHECK(cg.jacobian().is_identity(cg.jacobian().add(x, nx)));
            }
        }
    }
}

TEST_CASE("group law on the reference curves") {
    std::mt19937 rng(17);
    ClassGroup c2(example1());
    check_group_axioms(c2, rng, 200);
    ClassGroup c5(f5_record());
    check_group_axioms(c5, rng, 200);
}

TEST_CASE("enumerated order equals L(1) on random models (all infinity kinds)") {
    std::mt19937 rng(23);
    std::map<ModelKind, int> seen;
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto k = Field::make(p, n);
        for (int t = 0; t < 40; ++t) {
            auto m = random_valid_model(k, rng);
            ClassGroup cg(m);  // the constructor asserts |elements| == L(1)
            seen[cg.jacobian().kind()]++;
            CHECK(cg.order() == class_number(m));
            check_group_axioms(cg, rng, 5);
        }
    }
    // the sample must exercise every arithmetic regime
    CHECK(seen[ModelKind::OddRamified] > 0);
    CHECK(seen[ModelKind::EvenSplit] > 0);
    CHECK(seen[ModelKind::EvenInert] > 0);
}

TEST_CASE("Abel-Jacobi map is injective, exhaustively") {
    std::mt19937 rng(29);
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
        auto k = Field::make(p, n);
        for (int t = 0; t < 10; ++t) {
            auto m = random_valid_model(k, rng);
            auto places = rational_places(m);
            if (places.empty()) continue;
            Jacobian J(m);
            const Place& O = places.front();
            std::set<std::string> images;
            for (const auto& P : places)
                images.insert(J.place_difference(P, O).to_string());
            CHECK(images.size() == places.size());
        }
    }
}

TEST_CASE("two-torsion count matches the invariant factors") {
    std::mt19937 rng(31);
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {2, 1}}) {
        auto k = Field::make(p, n);
        for (int t = 0; t < 10; ++t) {
            ClassGroup cg(random_valid_model(k, rng));
            const Jacobian& J = cg.jacobian();
            int even = 0;
            for (auto d : cg.structure().factors)
                if (d % 2 == 0) ++even;
            std::int64_t expect = 1;
            for (int i = 0; i < even; ++i) expect *= 2;
            std::int64_t torsion = 0;
            for (const auto& x : cg.elements())
                if (J.is_identity(J.add(x, x))) ++torsion;
            CHECK(torsion == expect);
            // every element order divides the largest factor
            std::int64_t dr = cg.structure().factors.empty() ? 1 : cg.structure().factors.back();
            for (const auto& x : cg.elements()) CHECK(dr % cg.element_order(x) == 0);
        }
    }
}

TEST_CASE("to_vector is an isomorphism") {
    std::mt19937 rng(37);
    ClassGroup cg(f5_record());
    CHECK(cg.to_vector(cg.jacobian().identity()) == Vec{0, 0});
    const auto& els = cg.elements();
    std::uniform_int_distribution<size_t> pick(0, els.size() - 1);
    for (int t = 0; t < 300; ++t) {
        const auto& x = els[pick(rng)];
        const auto& y = els[pick(rng)];
        Vec vx = cg.to_vector(x), vy = cg.to_vector(y);
        CHECK(cg.to_vector(cg.jacobian().add(x, y)) == cg.structure().add(vx, vy));
        CHECK(cg.from_vector(vx) == x);
    }
    // an element that is not in canonical form is rejected
    MumfordClass bogus{Poly::parse(f5_record().k, "x^2"), Poly(f5_record().k), 0};
    CHECK_THROWS(cg.to_vector(bogus));
}

TEST_CASE("normalization preserves counts, class number and structure") {
    std::mt19937 rng(41);
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}}) {
        auto k = Field::make(p, n);
        int moved = 0;
        for (int t = 0; t < 60 && moved < 8; ++t) {
            auto m = random_valid_model(k, rng);
            auto nm = normalize_model(m);
            if (!nm.moebius_rho) continue;
            ++moved;
            CHECK(count_points_ext(m, 1) == count_points_ext(nm.model, 1));
            CHECK(count_points_ext(m, 2) == count_points_ext(nm.model, 2));
            CHECK(class_number(m) == class_number(nm.model));
            ClassGroup a(m), b(nm.model);
            CHECK(a.structure().factors == b.structure().factors);
        }
        CHECK(moved > 0);
    }
}
