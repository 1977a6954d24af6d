#include <catch2/catch_amalgamated.hpp>

#include "ffint/element_factor.hpp"
#include "ffint/oracle.hpp"

using namespace ffint;

namespace {

CurvePtr elliptic_f5() {
    auto F5 = Field::make(5, 1);
    return Curve::hyperelliptic(F5, Poly::from_ints(F5.get(), {1, 0, 0, 1}));
}

} // namespace

TEST_CASE("projective-line factorizations") {
    auto F3 = Field::make(3, 1);
    auto P1 = Curve::projective_line(F3);
    Divisor E(P1, {{Place::infinity(), 1}});
    Rng rng(5);

    FunctionElem h = FunctionElem::rational(P1, Poly::from_ints(F3.get(), {1, 0, 1})); // t^2+1
    ElementFactorization ef = factor_element(E, h, rng);
    REQUIRE(ef.primes.size() == 1);
    CHECK(ef.primes[0].first.kind == PrimeDivisor::Kind::FiniteP1);
    CHECK(ef.primes[0].first.degree == 2);
    CHECK(ef.primes[0].second == 1);
    CHECK(ef.anomalies.empty());
    CHECK(is_prime_element(E, h, rng));

    CHECK_THROWS_AS(factor_element(E, FunctionElem::rational(P1, Poly::zero(F3.get())), rng),
                    Error);
}

TEST_CASE("zeros at infinity count when infinity is off the support") {
    auto F3 = Field::make(3, 1);
    auto P1 = Curve::projective_line(F3);
    // E = 3*(t=0); h = (t^2+1)/t^3 vanishes at infinity to order 1
    Divisor E(P1, {{Place::affine(F3->from_int(0)), 3}});
    FunctionElem h = FunctionElem::rational(P1, Poly::from_ints(F3.get(), {1, 0, 1}),
                                            {{F3->from_int(0), 3}});
    Rng rng(5);
    ElementFactorization ef = factor_element(E, h, rng);
    REQUIRE(ef.primes.size() == 2);
    CHECK(ef.primes[0].first.kind == PrimeDivisor::Kind::InfinityP1);
    CHECK(ef.primes[0].second == 1);
    CHECK(ef.primes[1].first.degree == 2);
    CHECK(ef.degree_sum() == pole_degree(E, h)); // 3 = 1 + 2
}

TEST_CASE("support-point zeros are flagged, not counted") {
    auto F3 = Field::make(3, 1);
    auto P1 = Curve::projective_line(F3);
    Divisor E(P1, {{Place::affine(F3->from_int(0)), 1}, {Place::infinity(), 3}});
    // h = t^2 + t = t(t+1): the factor t sits at a support point
    FunctionElem h = FunctionElem::rational(P1, Poly::from_ints(F3.get(), {0, 1, 1}));
    Rng rng(5);
    ElementFactorization ef = factor_element(E, h, rng);
    REQUIRE(ef.anomalies.size() == 1);
    CHECK(ef.anomalies[0].first == Place::affine(F3->from_int(0)));
    CHECK(ef.anomalies[0].second == 1);
    REQUIRE(ef.primes.size() == 1);
    CHECK(ef.primes[0].first.pi == Poly::from_ints(F3.get(), {1, 1}));
}

TEST_CASE("hyperelliptic factorizations against the brute-force oracle") {
    auto C = elliptic_f5();
    const Field* F5 = C->field();
    Divisor E(C, {{Place::infinity(), 9}});
    PlaceTable table(C, 4);
    Rng rng(11);

    // h = y: norm -(x^3+1) ramifies at both factors of f
    FunctionElem y = FunctionElem::hyper(C, Poly::zero(F5), Poly::one(F5));
    ElementFactorization ef = factor_element(E, y, rng);
    REQUIRE(ef.primes.size() == 2);
    CHECK(ef.primes[0].first.kind == PrimeDivisor::Kind::HypRamified);
    CHECK(ef.primes[0].first.pi == Poly::from_ints(F5, {1, 1}));
    CHECK(ef.primes[0].second == 1);
    CHECK(ef.primes[1].first.kind == PrimeDivisor::Kind::HypRamified);
    CHECK(ef.primes[1].first.pi == Poly::from_ints(F5, {1, 4, 1})); // x^2 - x + 1
    CHECK(ef.primes[1].second == 1);
    CHECK(brute_factor(E, y, table) == ef.primes);
    CHECK_FALSE(is_prime_element(E, y, rng));

    // h = x: split place over x with the two unit roots
    FunctionElem x = FunctionElem::hyper(C, Poly::variable(F5), Poly::zero(F5));
    ElementFactorization efx = factor_element(E, x, rng);
    REQUIRE(efx.primes.size() == 2);
    for (const auto& [pd, mult] : efx.primes) {
        CHECK(pd.kind == PrimeDivisor::Kind::HypSplit);
        CHECK(pd.pi == Poly::variable(F5));
        CHECK(pd.degree == 1);
        CHECK(mult == 1);
    }
    CHECK(efx.primes[0].first.root == Poly::one(F5));
    CHECK(efx.primes[1].first.root == Poly::from_ints(F5, {4}));
    CHECK(brute_factor(E, x, table) == efx.primes);

    // inert linear places are prime elements of degree 2
    FunctionElem h2 = FunctionElem::hyper(C, Poly::from_ints(F5, {-1, 1}), Poly::zero(F5));
    auto type = factorization_type(E, h2, rng);
    REQUIRE(type.has_value());
    CHECK(type->parts() == std::vector<std::uint32_t>{2});
    CHECK(is_prime_element(E, h2, rng));
}

TEST_CASE("factorization types") {
    auto F5 = Field::make(5, 1);
    auto P1 = Curve::projective_line(F5);
    Divisor E(P1, {{Place::infinity(), 1}});
    Rng rng(3);

    // (t-1)^2 is not separable
    CHECK_FALSE(
        factorization_type(E, FunctionElem::rational(P1, Poly::from_ints(F5.get(), {1, -2, 1})),
                           rng)
            .has_value());
    CHECK_FALSE(
        is_prime_element(E, FunctionElem::rational(P1, Poly::from_ints(F5.get(), {-1, 0, 1})),
                         rng)); // t^2-1

    auto C = elliptic_f5();
    Divisor Einf(C, {{Place::infinity(), 9}});
    FunctionElem y = FunctionElem::hyper(C, Poly::zero(C->field()), Poly::one(C->field()));
    auto ty = factorization_type(Einf, y, rng);
    REQUIRE(ty.has_value());
    CHECK(ty->parts() == std::vector<std::uint32_t>{2, 1});
    CHECK(ty->k() == 3);

    auto F2 = Field::make(2, 1);
    auto P1_2 = Curve::projective_line(F2);
    Divisor E2(P1_2, {{Place::infinity(), 1}});
    auto t2 = factorization_type(E2, FunctionElem::rational(P1_2, Poly::from_ints(F2.get(), {0, 1, 1})),
                                 rng);
    REQUIRE(t2.has_value());
    CHECK(t2->parts() == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("degree accounting on random elements") {
    Rng rng(2024);
    auto C = elliptic_f5();
    const Field* F5 = C->field();
    Divisor E(C, {{Place::infinity(), 9}});
    for (int iter = 0; iter < 400; ++iter) {
        std::vector<FieldElem> ac, bc;
        for (int i = 0; i < 4; ++i) ac.push_back(F5->from_index(rng.below(5)));
        for (int i = 0; i < 3; ++i) bc.push_back(F5->from_index(rng.below(5)));
        Poly a = Poly::from_elems(F5, ac);
        Poly b = Poly::from_elems(F5, bc);
        if (a.is_zero() && b.is_zero()) continue;
        FunctionElem h = FunctionElem::hyper(C, a, b);
        ElementFactorization ef = factor_element(E, h, rng);
        REQUIRE(ef.degree_sum() == pole_degree(E, h));
        // norm compatibility: residue-degree-weighted multiplicities above
        // each pi recover the norm valuation
        Factorization nf = factor(norm(h), rng);
        for (const auto& [pi, vn] : nf.factors) {
            std::uint64_t weighted = 0;
            for (const auto& [pd, mult] : ef.primes) {
                if (pd.kind == PrimeDivisor::Kind::HypInert && pd.pi == pi) weighted += 2ULL * mult;
                if ((pd.kind == PrimeDivisor::Kind::HypSplit ||
                     pd.kind == PrimeDivisor::Kind::HypRamified) &&
                    pd.pi == pi)
                    weighted += mult;
            }
            REQUIRE(weighted == vn);
        }
    }

    auto F3 = Field::make(3, 1);
    auto P1 = Curve::projective_line(F3);
    Divisor E2(P1, {{Place::affine(F3->from_int(0)), 2}, {Place::infinity(), 2}});
    for (int iter = 0; iter < 400; ++iter) {
        std::vector<FieldElem> nc;
        for (int i = 0; i < 7; ++i) nc.push_back(F3->from_index(rng.below(3)));
        Poly num = Poly::from_elems(F3.get(), nc);
        if (num.is_zero()) continue;
        FunctionElem h = FunctionElem::rational(P1, num, {{F3->from_int(0), 2}});
        ElementFactorization ef = factor_element(E2, h, rng);
        std::uint64_t anomaly_sum = 0;
        for (const auto& [place, mult] : ef.anomalies) anomaly_sum += mult;
        REQUIRE(ef.degree_sum() + anomaly_sum == pole_degree(E2, h));
    }
}
