#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ffint/json_io.hpp"
#include "ffint/oracle.hpp"
#include "ffint/stats.hpp"

using namespace ffint;

namespace {

Interval p1_interval(std::uint64_t p, std::uint32_t fdeg, std::uint32_t m_inf) {
    auto F = Field::make(p, 1);
    auto P1 = Curve::projective_line(F);
    FunctionElem f = FunctionElem::rational(P1, Poly::monomial(F.get(), fdeg, F->one()));
    return Interval::make(P1, f, Divisor(P1, {{Place::infinity(), m_inf}}));
}

} // namespace

TEST_CASE("cycle-type probabilities") {
    CHECK(partition_prob(Partition({5})) == Rational(1, 5));
    CHECK(partition_prob(Partition({1, 1, 1, 1})) == Rational(1, 24));
    CHECK(partition_prob(Partition({2, 1, 1})) == Rational(1, 4));

    // closed form against the S_k enumeration, k <= 5 here (full range in
    // the acceptance suite)
    for (std::uint32_t k = 1; k <= 5; ++k) {
        auto census_map = sk_census(k);
        detail::i128 kfact = 1;
        for (std::uint32_t i = 2; i <= k; ++i) kfact *= i;
        for (const auto& lambda : all_partitions(k)) {
            Rational expected = Rational::from_i128(census_map.at(lambda), kfact);
            CHECK(partition_prob(lambda) == expected);
        }
    }

    // exact unit mass for k <= 12
    for (std::uint32_t k = 1; k <= 12; ++k) {
        Rational sum;
        for (const auto& lambda : all_partitions(k)) sum = sum + partition_prob(lambda);
        CHECK(sum == Rational(1));
    }
}

TEST_CASE("exhaustive census of all monic quintics over F_3") {
    Interval I = p1_interval(3, 5, 4);
    Histogram h = census(I, ExhaustiveMode{});
    CHECK(h.total == 243);
    CHECK(h.counts.at(Partition({5})) == 48);
    CHECK(h.counts.at(Partition({5})) == necklace_count(3, 5));
    CHECK(h.counts.find(Partition({1, 1, 1, 1, 1})) == h.counts.end()); // only 3 points available
    std::uint64_t sum = h.nonseparable;
    for (const auto& [lambda, n] : h.counts) {
        CHECK(lambda.k() == 5);
        sum += n;
    }
    CHECK(sum == 243);
}

TEST_CASE("prime counts in genuinely short intervals") {
    CHECK(prime_count(p1_interval(3, 5, 3), ExhaustiveMode{}) == 16);
    // over F_2 with E = 1*inf: only t^3+t+1 lies in I(t^3, 1)
    CHECK(prime_count(p1_interval(2, 3, 1), ExhaustiveMode{}) == 1);
}

TEST_CASE("census respects the budget and worker count") {
    Interval I = p1_interval(3, 5, 4);
    CensusOptions opts;
    opts.budget = 100;
    CHECK_THROWS_AS(census(I, ExhaustiveMode{}, opts), Error);

    Histogram h1 = census(I, ExhaustiveMode{});
    CensusOptions opts3;
    opts3.workers = 3;
    Histogram h3 = census(I, ExhaustiveMode{}, opts3);
    CHECK(h1.counts == h3.counts);
    CHECK(h1.nonseparable == h3.nonseparable);
    CHECK(h1.total == h3.total);
}

TEST_CASE("sampled censuses are reproducible and converge to exhaustive") {
    Interval I = p1_interval(3, 5, 3);
    Histogram s1 = census(I, SampleMode{20000, 7});
    Histogram s2 = census(I, SampleMode{20000, 7});
    CHECK(s1.counts == s2.counts);
    CHECK(s1.nonseparable == s2.nonseparable);

    Histogram ex = census(I, ExhaustiveMode{});
    for (const auto& [lambda, n] : ex.counts) {
        double p = static_cast<double>(n) / static_cast<double>(ex.total);
        double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(s1.total));
        auto it = s1.counts.find(lambda);
        double freq =
            it == s1.counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(s1.total);
        CHECK(std::fabs(freq - p) <= 5.0 * sigma + 1e-12);
    }
}

TEST_CASE("deviation reports") {
    Interval I = p1_interval(3, 5, 4);
    Histogram h = census(I, ExhaustiveMode{});
    CountReport r = deviation_report(h);
    REQUIRE(r.fitted_c.has_value());
    CHECK(r.total == 243);

    bool found = false;
    for (const auto& row : r.rows) {
        if (row.lambda == Partition({5})) {
            found = true;
            CHECK(row.observed == 48);
            CHECK(row.expected == Rational(243, 5));
            CHECK(row.deviation == Catch::Approx(0.6).epsilon(1e-12));
            CHECK(row.normalized == Catch::Approx(0.6 / std::pow(3.0, 4.5)).epsilon(1e-9));
        }
    }
    CHECK(found);
    CHECK(*r.fitted_c >= 0.6 / std::pow(3.0, 4.5));

    // with floor 0 the expected column cross-foots to the total
    CountReport full = deviation_report(h, 0.0);
    Rational sum;
    for (const auto& row : full.rows) sum = sum + row.expected;
    CHECK(sum == Rational(243));

    // degenerate sampled run
    Histogram empty = census(I, SampleMode{0, 1});
    CountReport re = deviation_report(empty);
    CHECK(re.rows.empty());
    CHECK_FALSE(re.fitted_c.has_value());

    // sampled normalization is in binomial sigma units
    Histogram s = census(I, SampleMode{5000, 3});
    CountReport rs = deviation_report(s);
    CHECK_FALSE(rs.fitted_c.has_value());
    for (const auto& row : rs.rows) {
        double p = partition_prob(row.lambda).to_double();
        double sigma = std::sqrt(5000.0 * p * (1.0 - p));
        CHECK(row.normalized == Catch::Approx(row.deviation / sigma).epsilon(1e-9));
    }
}

TEST_CASE("report serialization is byte-stable") {
    Interval I = p1_interval(3, 5, 3);
    IterMode mode = SampleMode{500, 99};
    Histogram h1 = census(I, mode);
    Histogram h2 = census(I, mode);
    std::string j1 = io::report_to_json(I, h1, deviation_report(h1)).dump(2);
    std::string j2 = io::report_to_json(I, h2, deviation_report(h2)).dump(2);
    CHECK(j1 == j2);
    std::string c1 = io::report_to_csv(I, deviation_report(h1));
    CHECK(c1.rfind("q,p,e,genus,degE,m,k,lambda,observed,expected,deviation,normalized\n", 0) == 0);
}
