#include <catch2/catch_amalgamated.hpp>

#include "ffint/curve.hpp"
#include "ffint/element_factor.hpp"

using namespace ffint;

namespace {

CurvePtr elliptic_f5() {
    auto F5 = Field::make(5, 1);
    return Curve::hyperelliptic(F5, Poly::from_ints(F5.get(), {1, 0, 0, 1})); // y^2 = x^3 + 1
}

} // namespace

TEST_CASE("curve construction") {
    auto F3 = Field::make(3, 1);
    auto P1 = Curve::projective_line(F3);
    CHECK(P1->genus() == 0);

    auto C = elliptic_f5();
    CHECK(C->genus() == 1);

    auto F5 = Field::make(5, 1);
    // x^3 has gcd(x^3, 3x^2) = x^2: singular
    CHECK_THROWS_AS(Curve::hyperelliptic(F5, Poly::from_ints(F5.get(), {0, 0, 0, 1})), Error);
    CHECK_THROWS_AS(Curve::hyperelliptic(F5, Poly::from_ints(F5.get(), {1, 0, 0, 0, 1})), Error);
    auto F2 = Field::make(2, 1);
    CHECK_THROWS_AS(Curve::hyperelliptic(F2, Poly::from_ints(F2.get(), {1, 1, 0, 1})), Error);
}

TEST_CASE("divisor validation") {
    auto F3 = Field::make(3, 1);
    auto P1 = Curve::projective_line(F3);
    Divisor E(P1, {{Place::infinity(), 3}});
    CHECK(E.degree() == 3);
    CHECK(E.has_infinity());

    Divisor E2(P1, {{Place::affine(F3->from_int(0)), 2}, {Place::infinity(), 1}});
    CHECK(E2.degree() == 3);
    CHECK(E2.mult_at(Place::affine(F3->from_int(0))) == 2);

    CHECK_THROWS_AS(Divisor(P1, {{Place::infinity(), 0}}), Error);
    CHECK_THROWS_AS(Divisor(P1, {{Place::infinity(), 1}, {Place::infinity(), 2}}), Error);

    auto C = elliptic_f5();
    CHECK_THROWS_AS(Divisor(C, {{Place::affine(C->field()->from_int(1)), 1}}), Error);
}

TEST_CASE("riemann-roch bases match the closed forms") {
    auto F3 = Field::make(3, 1);
    auto P1 = Curve::projective_line(F3);

    auto basis = rr_basis(Divisor(P1, {{Place::infinity(), 3}}));
    REQUIRE(basis.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(basis[j].num() == Poly::monomial(F3.get(), j, F3->one()));
        CHECK(basis[j].den().empty());
    }

    // E = 2*(t=0) + 1*inf -> {1, t, 1/t, 1/t^2}
    auto basis2 = rr_basis(Divisor(P1, {{Place::affine(F3->from_int(0)), 2}, {Place::infinity(), 1}}));
    REQUIRE(basis2.size() == 4);
    CHECK(basis2[0].num() == Poly::one(F3.get()));
    CHECK(basis2[1].num() == Poly::variable(F3.get()));
    CHECK(basis2[2].den() ==
          std::vector<std::pair<FieldElem, std::uint32_t>>{{F3->from_int(0), 1}});
    CHECK(basis2[3].den() ==
          std::vector<std::pair<FieldElem, std::uint32_t>>{{F3->from_int(0), 2}});

    // hyperelliptic g=1, E = 5*inf -> {1, x, y, x^2, x*y} by pole order
    auto C = elliptic_f5();
    const Field* F5 = C->field();
    auto hb = rr_basis(Divisor(C, {{Place::infinity(), 5}}));
    REQUIRE(hb.size() == 5);
    CHECK((hb[0].part_a() == Poly::one(F5) && hb[0].part_b().is_zero()));
    CHECK((hb[1].part_a() == Poly::variable(F5) && hb[1].part_b().is_zero()));
    CHECK((hb[2].part_a().is_zero() && hb[2].part_b() == Poly::one(F5)));
    CHECK((hb[3].part_a() == Poly::monomial(F5, 2, F5->one()) && hb[3].part_b().is_zero()));
    CHECK((hb[4].part_a().is_zero() && hb[4].part_b() == Poly::variable(F5)));
}

TEST_CASE("rr_basis length equals deg E - g + 1 beyond 2g-2") {
    auto F5 = Field::make(5, 1);
    auto P1 = Curve::projective_line(F5);
    for (std::uint32_t m_inf = 0; m_inf <= 10; ++m_inf) {
        for (std::uint32_t m0 = 0; m0 + m_inf <= 20; m0 += 3) {
            std::vector<std::pair<Place, std::uint32_t>> support;
            if (m_inf > 0) support.push_back({Place::infinity(), m_inf});
            if (m0 > 0) support.push_back({Place::affine(F5->from_int(1)), m0});
            Divisor E(P1, support);
            CHECK(rr_basis(E).size() == E.degree() + 1);
        }
    }
    auto C = elliptic_f5(); // g = 1
    for (std::uint32_t m = 1; m <= 20; ++m) {
        Divisor E(C, {{Place::infinity(), m}});
        CHECK(rr_basis(E).size() == E.degree() - 1 + 1);
    }
    // genus 2: y^2 = x^5 + 1 over F_7 (squarefree: no common root with 5x^4)
    auto F7 = Field::make(7, 1);
    Poly f2 = Poly::from_ints(F7.get(), {1, 0, 0, 0, 0, 1});
    auto C2 = Curve::hyperelliptic(F7, f2);
    REQUIRE(C2->genus() == 2);
    for (std::uint32_t m = 3; m <= 20; ++m) { // 2g - 2 = 2, strict above
        Divisor E(C2, {{Place::infinity(), m}});
        CHECK(rr_basis(E).size() == E.degree() - 2 + 1);
    }
}

TEST_CASE("pole degrees") {
    auto F3 = Field::make(3, 1);
    auto P1 = Curve::projective_line(F3);
    Divisor E(P1, {{Place::infinity(), 3}});
    FunctionElem t5 = FunctionElem::rational(P1, Poly::monomial(F3.get(), 5, F3->one()));
    CHECK(pole_degree(E, t5) == 5);

    auto C = elliptic_f5();
    const Field* F5 = C->field();
    Divisor Einf(C, {{Place::infinity(), 9}});
    FunctionElem y = FunctionElem::hyper(C, Poly::zero(F5), Poly::one(F5));
    CHECK(pole_degree(Einf, y) == 3);
    FunctionElem x5 = FunctionElem::hyper(C, Poly::monomial(F5, 5, F5->one()), Poly::zero(F5));
    CHECK(pole_degree(Einf, x5) == 10);

    // pole off the support
    FunctionElem pole_at_1 =
        FunctionElem::rational(P1, Poly::one(F3.get()), {{F3->from_int(1), 1}});
    CHECK_THROWS_AS(pole_degree(E, pole_at_1), Error);

    // mixed-support rational function: (t^5+1)/t^3 on E = 3*(t=0) + 2*inf
    Divisor Emix(P1, {{Place::affine(F3->from_int(0)), 3}, {Place::infinity(), 2}});
    Poly num = Poly::from_ints(F3.get(), {1, 0, 0, 0, 0, 1});
    FunctionElem h = FunctionElem::rational(P1, num, {{F3->from_int(0), 3}});
    CHECK(pole_degree(Emix, h) == 5); // order 3 at t=0, order 2 at infinity
}

TEST_CASE("norms on y^2 = x^3 + 1 over F_5") {
    auto C = elliptic_f5();
    const Field* F5 = C->field();
    FunctionElem y = FunctionElem::hyper(C, Poly::zero(F5), Poly::one(F5));
    CHECK(norm(y) == -C->fpoly());
    FunctionElem x = FunctionElem::hyper(C, Poly::variable(F5), Poly::zero(F5));
    CHECK(norm(x) == Poly::monomial(F5, 2, F5->one()));
    FunctionElem xy = FunctionElem::hyper(C, Poly::variable(F5), Poly::one(F5));
    CHECK(norm(xy) == Poly::from_ints(F5, {4, 0, 1, 4})); // x^2 - x^3 - 1
    CHECK_THROWS_AS(norm(FunctionElem::hyper(C, Poly::zero(F5), Poly::zero(F5))), Error);
}

TEST_CASE("place classification by the Euler criterion") {
    auto C = elliptic_f5();
    const Field* F5 = C->field();
    CHECK(classify_place(C, Poly::variable(F5)) == PlaceClass::Split);    // f(0) = 1 = 1^2
    CHECK(classify_place(C, Poly::from_ints(F5, {-1, 1})) == PlaceClass::Inert); // f(1) = 2
    CHECK(classify_place(C, Poly::from_ints(F5, {1, 1})) == PlaceClass::Ramified); // f(-1) = 0
    CHECK_THROWS_AS(classify_place(C, Poly::from_ints(F5, {-1, 0, 1})), Error); // x^2-1 reducible
}

TEST_CASE("hensel square roots") {
    auto C = elliptic_f5();
    const Field* F5 = C->field();
    Poly x = Poly::variable(F5);

    CHECK(hensel_sqrt(C, x, 1) == Poly::one(F5));
    CHECK(hensel_sqrt(C, x, 4) == Poly::from_ints(F5, {1, 0, 0, 3})); // 1 + 3x^3

    CHECK_THROWS_AS(hensel_sqrt(C, Poly::from_ints(F5, {1, 1}), 2), Error);  // ramified
    CHECK_THROWS_AS(hensel_sqrt(C, Poly::from_ints(F5, {-1, 1}), 2), Error); // inert

    // r^2 = f mod pi^n for every split place of degree <= 2 and n <= 6,
    // and the residue class is preserved across precisions
    for (std::uint32_t d = 1; d <= 2; ++d) {
        const std::uint64_t count = d == 1 ? 5 : 25;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::int64_t> c;
            std::uint64_t v = idx;
            for (std::uint32_t i = 0; i < d; ++i) {
                c.push_back(static_cast<std::int64_t>(v % 5));
                v /= 5;
            }
            c.push_back(1);
            Poly pi = Poly::from_ints(F5, c);
            if (!is_irreducible(pi)) continue;
            if (classify_place(C, pi) != PlaceClass::Split) continue;
            Poly r1 = hensel_sqrt(C, pi, 1);
            for (std::uint32_t n = 1; n <= 6; ++n) {
                Poly r = hensel_sqrt(C, pi, n);
                Poly mod = Poly::one(F5);
                for (std::uint32_t i = 0; i < n; ++i) mod = mod * pi;
                REQUIRE(((r * r - C->fpoly()) % mod).is_zero());
                REQUIRE((r.is_zero() || r.degree() < static_cast<int>(n * d)));
                REQUIRE((r % pi) == r1);
            }
        }
    }
}
