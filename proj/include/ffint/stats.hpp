#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "ffint/interval.hpp"
#include "ffint/partition.hpp"
#include "ffint/rational.hpp"

namespace ffint {

/// P(lambda): the fraction of permutations in S_k with cycle type lambda,
/// in closed form 1 / prod_j (j^{m_j} m_j!) where m_j is the multiplicity
/// of part j. Exact rational arithmetic.
inline Rational partition_prob(const Partition& lambda) {
    detail::i128 den = 1;
    const detail::i128 limit = detail::i128(1) << 120;
    const auto& parts = lambda.parts();
    std::size_t i = 0;
    while (i < parts.size()) {
        std::uint32_t j = parts[i];
        std::uint64_t mj = 0;
        while (i < parts.size() && parts[i] == j) {
            ++mj;
            ++i;
        }
        for (std::uint64_t c = 0; c < mj; ++c) {
            den *= j;
            den *= (c + 1);
            if (den > limit) raise(ErrorCode::BudgetExceeded, "partition too large for exact P");
        }
    }
    return Rational::from_i128(1, den);
}

/// Census result: factorization-type tallies over an interval run.
/// Nonseparable specializations are tallied apart, never folded into a
/// partition. Exhaustive runs cover all q^{m+1} tuples.
struct Histogram {
    const Interval* interval = nullptr;
    IterMode mode = ExhaustiveMode{};
    std::map<Partition, std::uint64_t> counts;
    std::uint64_t nonseparable = 0;
    std::uint64_t total = 0;

    bool exhaustive() const { return std::holds_alternative<ExhaustiveMode>(mode); }

    /// Shard merge; associative and commutative.
    void merge(const Histogram& other) {
        for (const auto& [lambda, n] : other.counts) counts[lambda] += n;
        nonseparable += other.nonseparable;
        total += other.total;
    }
};

struct CensusOptions {
    std::uint64_t budget = kDefaultBudget;
    std::uint32_t workers = 1;
    std::uint64_t factor_seed = 0; // steers the internal splitting only
};

namespace detail {

inline Histogram census_shard(const Interval& I, const IterMode& mode, std::uint64_t begin,
                              std::uint64_t end, std::uint64_t shard, std::uint64_t base_seed) {
    Histogram h;
    Rng rng = Rng::shard_stream(base_seed, shard);
    auto tally = [&](const std::vector<FieldElem>&, const FunctionElem& elem) {
        std::optional<Partition> type = factorization_type(I.divisor(), elem, rng);
        if (type)
            ++h.counts[*type];
        else
            ++h.nonseparable;
        ++h.total;
    };
    if (std::holds_alternative<ExhaustiveMode>(mode)) {
        I.enumerate_range(begin, end, tally);
    } else {
        for (std::uint64_t i = begin; i < end; ++i) {
            std::vector<FieldElem> tuple = I.sample_tuple(rng);
            tally(tuple, I.element_at(tuple));
        }
    }
    return h;
}

} // namespace detail

/// Runs the interval stream and tallies factorization types. Work is split
/// into `workers` shards (index ranges when exhaustive, derived sample
/// streams otherwise); the merged result is deterministic for a fixed
/// (mode, seed, workers).
inline Histogram census(const Interval& I, const IterMode& mode, const CensusOptions& opts = {}) {
    std::uint64_t n_items;
    std::uint64_t base_seed;
    if (std::holds_alternative<ExhaustiveMode>(mode)) {
        if (I.size() > opts.budget)
            raise(ErrorCode::BudgetExceeded,
                  "exhaustive census of " + std::to_string(I.size()) +
                      " elements exceeds the budget " + std::to_string(opts.budget));
        n_items = I.size();
        base_seed = opts.factor_seed;
    } else {
        n_items = std::get<SampleMode>(mode).count;
        base_seed = std::get<SampleMode>(mode).seed;
    }
    std::uint32_t workers = std::max<std::uint32_t>(1, opts.workers);
    if (workers > n_items) workers = n_items == 0 ? 1 : static_cast<std::uint32_t>(n_items);

    std::vector<Histogram> shards(workers);
    if (workers == 1) {
        shards[0] = detail::census_shard(I, mode, 0, n_items, 0, base_seed);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = n_items / workers;
        const std::uint64_t extra = n_items % workers;
        std::uint64_t begin = 0;
        for (std::uint32_t w = 0; w < workers; ++w) {
            std::uint64_t len = chunk + (w < extra ? 1 : 0);
            std::uint64_t end = begin + len;
            pool.emplace_back([&, w, begin, end] {
                shards[w] = detail::census_shard(I, mode, begin, end, w, base_seed);
            });
            begin = end;
        }
        for (auto& th : pool) th.join();
    }
    Histogram out;
    out.interval = &I;
    out.mode = mode;
    for (const auto& shard : shards) out.merge(shard);
    return out;
}

/// pi_C(I(f,E)): the number of elements generating a prime ideal, i.e. the
/// census count of the single-part separable type (k).
inline std::uint64_t prime_count(const Interval& I, const IterMode& mode,
                                 const CensusOptions& opts = {}) {
    Histogram h = census(I, mode, opts);
    auto it = h.counts.find(Partition({static_cast<std::uint32_t>(I.k())}));
    return it == h.counts.end() ? 0 : it->second;
}

struct ReportRow {
    Partition lambda;
    std::uint64_t observed = 0;
    Rational expected;  // P(lambda) * total, exact
    double deviation = 0.0;  // |observed - expected|
    double normalized = 0.0; // deviation / q^{m+1/2}, or binomial sigma units
};

/// Deviations against the symmetric-group law. Exhaustive runs normalize by
/// q^{m+1/2} and fit the observed constant as the maximal normalized
/// deviation; sampled runs report z-scores against Binomial(N, P(lambda)).
struct CountReport {
    std::vector<ReportRow> rows; // largest partition first
    std::uint64_t nonseparable = 0;
    std::uint64_t total = 0;
    bool exhaustive = true;
    double prob_floor = 0.0;
    std::optional<double> fitted_c;
};

inline CountReport deviation_report(const Histogram& H, double prob_floor = 0.01) {
    CountReport out;
    out.nonseparable = H.nonseparable;
    out.total = H.total;
    out.exhaustive = H.exhaustive();
    out.prob_floor = prob_floor;
    if (H.total == 0) return out;
    const Interval& I = *H.interval;
    const std::uint32_t k = static_cast<std::uint32_t>(I.k());
    const double q = static_cast<double>(I.curve()->field()->size());
    const double scale = std::pow(q, static_cast<double>(I.m()) + 0.5);
    double max_norm = 0.0;
    for (const Partition& lambda : all_partitions(k)) {
        Rational prob = partition_prob(lambda);
        auto it = H.counts.find(lambda);
        std::uint64_t observed = it == H.counts.end() ? 0 : it->second;
        if (observed == 0 && prob.to_double() < prob_floor) continue;
        ReportRow row{lambda, observed, Rational(), 0.0, 0.0};
        row.expected = prob * Rational(static_cast<std::int64_t>(H.total));
        Rational diff = row.expected - Rational(static_cast<std::int64_t>(observed));
        row.deviation = std::fabs(diff.to_double());
        if (out.exhaustive) {
            row.normalized = row.deviation / scale;
        } else {
            double p = prob.to_double();
            double sigma = std::sqrt(static_cast<double>(H.total) * p * (1.0 - p));
            row.normalized = sigma > 0.0 ? row.deviation / sigma : 0.0;
        }
        max_norm = std::max(max_norm, row.normalized);
        out.rows.push_back(std::move(row));
    }
    if (out.exhaustive) out.fitted_c = max_norm;
    return out;
}

} // namespace ffint
