#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "ffint/element_factor.hpp"
#include "ffint/partition.hpp"
#include "ffint/rational.hpp"

namespace ffint {

/// Moebius function by trial division.
inline int mobius(std::uint32_t n) {
    if (n == 0) raise(ErrorCode::ConfigError, "mobius(0)");
    int sign = 1;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

/// Number of monic irreducible degree-k polynomials over F_q:
/// (1/k) sum_{d | k} mu(d) q^{k/d}, exact.
inline std::uint64_t necklace_count(std::uint64_t q, std::uint32_t k) {
    if (k == 0) raise(ErrorCode::ConfigError, "necklace_count needs k >= 1");
    detail::i128 sum = 0;
    for (std::uint32_t d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        detail::i128 power = 1;
        for (std::uint32_t i = 0; i < k / d; ++i) {
            power *= static_cast<detail::i128>(q);
            if (power > (detail::i128(1) << 120))
                raise(ErrorCode::BudgetExceeded, "q^k too large for exact count");
        }
        sum += mu * power;
    }
    if (sum % k != 0 || sum < 0) raise(ErrorCode::InternalError, "necklace sum not divisible by k");
    return static_cast<std::uint64_t>(sum / k);
}

/// Cycle-type census of S_k by direct enumeration of all k! permutations.
inline std::map<Partition, std::uint64_t> sk_census(std::uint32_t k) {
    if (k == 0 || k > 8) raise(ErrorCode::BudgetExceeded, "sk_census enumerates k! for k <= 8 only");
    std::vector<std::uint32_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<Partition, std::uint64_t> out;
    do {
        std::vector<bool> seen(k, false);
        std::vector<std::uint32_t> cycles;
        for (std::uint32_t start = 0; start < k; ++start) {
            if (seen[start]) continue;
            std::uint32_t len = 0, cur = start;
            while (!seen[cur]) {
                seen[cur] = true;
                cur = perm[cur];
                ++len;
            }
            cycles.push_back(len);
        }
        ++out[Partition(std::move(cycles))];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace detail {

inline Poly poly_from_index(const Field* F, std::uint64_t idx, std::uint32_t width) {
    std::vector<FieldElem> c;
    c.reserve(width);
    for (std::uint32_t i = 0; i < width; ++i) {
        c.push_back(F->from_index(idx % F->size()));
        idx /= F->size();
    }
    return Poly::from_elems(F, std::move(c));
}

inline std::uint64_t checked_pow(std::uint64_t q, std::uint32_t d) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (out > (std::uint64_t(1) << 40))
            raise(ErrorCode::BudgetExceeded, "brute-force enumeration too large");
        out *= q;
    }
    return out;
}

inline std::uint32_t brute_valuation(const Poly& h, const Poly& pi) {
    // exact order of pi in h; h nonzero
    std::uint32_t v = 0;
    Poly cur = h;
    for (;;) {
        auto [q, r] = divmod(cur, pi);
        if (!r.is_zero()) return v;
        cur = std::move(q);
        ++v;
        if (cur.is_zero()) return v;
    }
}

} // namespace detail

/// Exhaustive enumeration of the places of the curve up to a degree bound,
/// with enough tabulated local data (split roots lifted digit by digit) to
/// compute valuations directly. Deliberately avoids the main code paths:
/// irreducibility by trial division, splitting by residue root search, and
/// root lifting by per-digit scan instead of Newton iteration.
class PlaceTable {
   public:
    struct Entry {
        PrimeDivisor pd;
        Poly lifted_root;             // split places: r with r^2 = f mod pi^{precision}
        std::uint32_t precision = 0;  // valuations above pi never reach it
    };

    PlaceTable(CurvePtr curve, std::uint32_t max_degree)
        : curve_(std::move(curve)), max_degree_(max_degree) {
        const Field* F = curve_->field();
        std::vector<std::vector<Poly>> irreducible_by_degree(max_degree_ + 1);
        for (std::uint32_t d = 1; d <= max_degree_; ++d) {
            const std::uint64_t count = detail::checked_pow(F->size(), d);
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                Poly cand = detail::poly_from_index(F, idx, d);
                cand = cand + Poly::monomial(F, d, F->one());
                bool divisible = false;
                for (std::uint32_t dd = 1; dd <= d / 2 && !divisible; ++dd)
                    for (const Poly& lower : irreducible_by_degree[dd]) {
                        if ((cand % lower).is_zero()) {
                            divisible = true;
                            break;
                        }
                    }
                if (!divisible) irreducible_by_degree[d].push_back(std::move(cand));
            }
            if (curve_->is_p1() && irreducible_by_degree[d].size() != necklace_count(F->size(), d))
                raise(ErrorCode::InternalError, "place enumeration disagrees with the exact count");
        }
        if (curve_->is_p1()) {
            entries_.push_back({PrimeDivisor::infinity_p1(F), Poly(F)});
            for (std::uint32_t d = 1; d <= max_degree_; ++d)
                for (Poly& pi : irreducible_by_degree[d])
                    entries_.push_back({PrimeDivisor::finite_p1(std::move(pi)), Poly(F)});
            return;
        }
        const Poly& f = curve_->fpoly();
        for (std::uint32_t d = 1; d <= max_degree_; ++d) {
            for (Poly& pi : irreducible_by_degree[d]) {
                // all residue roots of Y^2 = f mod pi by full scan
                std::vector<Poly> roots;
                const std::uint64_t count = detail::checked_pow(F->size(), d);
                for (std::uint64_t idx = 0; idx < count; ++idx) {
                    Poly r = detail::poly_from_index(F, idx, d);
                    if (((r * r - f) % pi).is_zero()) roots.push_back(r);
                }
                if (roots.size() == 0) {
                    if (2 * d <= max_degree_)
                        entries_.push_back({PrimeDivisor::hyp(PlaceClass::Inert, pi), Poly(F)});
                } else if (roots.size() == 1) {
                    if (!roots[0].is_zero() || !(f % pi).is_zero())
                        raise(ErrorCode::InternalError, "single root must be 0 at a ramified place");
                    entries_.push_back({PrimeDivisor::hyp(PlaceClass::Ramified, pi), Poly(F)});
                } else if (roots.size() == 2) {
                    // valuations above pi are at most max_degree / deg pi,
                    // so lift just beyond that bound
                    const std::uint32_t prec = max_degree_ / d + 1;
                    for (const Poly& r : roots) {
                        Poly lifted = lift_root_by_digits(pi, r, prec);
                        entries_.push_back({PrimeDivisor::hyp(PlaceClass::Split, pi, r),
                                            std::move(lifted), prec});
                    }
                } else {
                    raise(ErrorCode::InternalError, "more than two square roots mod an irreducible");
                }
            }
        }
        if (F->size() <= (1ULL << 12)) affine_point_count_check();
    }

    const CurvePtr& curve() const { return curve_; }
    std::uint32_t max_degree() const { return max_degree_; }
    const std::vector<Entry>& entries() const { return entries_; }

   private:
    /// r_{j+1} = r_j + c * pi^j, scanning all residue digits c for the one
    /// with r_{j+1}^2 = f mod pi^{j+1}.
    Poly lift_root_by_digits(const Poly& pi, const Poly& r0, std::uint32_t precision) {
        const Field* F = curve_->field();
        const Poly& f = curve_->fpoly();
        const std::uint32_t d = static_cast<std::uint32_t>(pi.degree());
        Poly r = r0;
        Poly pi_j = pi;
        for (std::uint32_t j = 1; j < precision; ++j) {
            Poly pi_next = pi_j * pi;
            const std::uint64_t count = detail::checked_pow(F->size(), d);
            bool found = false;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                Poly cand = r + detail::poly_from_index(F, idx, d) * pi_j;
                if (((cand * cand - f) % pi_next).is_zero()) {
                    r = std::move(cand);
                    found = true;
                    break;
                }
            }
            if (!found) raise(ErrorCode::InternalError, "digit lift found no root");
            pi_j = std::move(pi_next);
        }
        return r;
    }

    /// Degree-1 place data must reproduce the raw affine point count.
    void affine_point_count_check() const {
        const Field* F = curve_->field();
        std::uint64_t points = 0;
        for (std::uint64_t xi = 0; xi < F->size(); ++xi) {
            FieldElem x = F->from_index(xi);
            FieldElem fx = curve_->fpoly().eval(x);
            for (std::uint64_t yi = 0; yi < F->size(); ++yi) {
                FieldElem y = F->from_index(yi);
                if (y * y == fx) ++points;
            }
        }
        std::uint64_t from_places = 0;
        for (const auto& entry : entries_) {
            if (entry.pd.pi.is_zero() || entry.pd.pi.degree() != 1) continue;
            if (entry.pd.kind == PrimeDivisor::Kind::HypSplit ||
                entry.pd.kind == PrimeDivisor::Kind::HypRamified)
                ++from_places;
        }
        if (points != from_places)
            raise(ErrorCode::InternalError, "place table disagrees with the affine point count");
    }

    CurvePtr curve_;
    std::uint32_t max_degree_;
    std::vector<Entry> entries_;
};

/// Independent factorization of (h): the valuation of h at every tabulated
/// place, using only tabulated local data. Must agree with factor_element.
inline std::vector<std::pair<PrimeDivisor, std::uint32_t>> brute_factor(const Divisor& E,
                                                                        const FunctionElem& h,
                                                                        const PlaceTable& table) {
    const CurvePtr& C = E.curve();
    if (h.is_zero()) raise(ErrorCode::ZeroElement, "factorization of the zero element");
    if (table.curve() != C) raise(ErrorCode::ConfigError, "table built for a different curve");
    const std::uint64_t k = pole_degree(E, h);
    if (k > table.max_degree())
        raise(ErrorCode::TableTooSmall, "pole degree " + std::to_string(k) +
                                            " exceeds the table bound " +
                                            std::to_string(table.max_degree()));
    constexpr std::uint32_t kInfValuation = 0xffffffffu;
    std::vector<std::pair<PrimeDivisor, std::uint32_t>> out;
    for (const auto& entry : table.entries()) {
        std::uint32_t v = 0;
        if (C->is_p1()) {
            if (entry.pd.kind == PrimeDivisor::Kind::InfinityP1) {
                if (E.has_infinity()) continue;
                std::int64_t dd = 0;
                for (const auto& [pt, exp] : h.den()) dd += exp;
                std::int64_t dn = h.num().degree();
                v = dd > dn ? static_cast<std::uint32_t>(dd - dn) : 0;
            } else {
                if (entry.pd.pi.nterms() == 2) {
                    FieldElem root = -entry.pd.pi.coeffs()[0];
                    bool at_support = false;
                    for (const auto& [place, mult] : E.support())
                        if (!place.at_infinity && place.point == root) at_support = true;
                    if (at_support) continue;
                }
                v = detail::brute_valuation(h.num(), entry.pd.pi);
            }
        } else {
            const Poly& pi = entry.pd.pi;
            auto vp = [&](const Poly& g) {
                return g.is_zero() ? kInfValuation : detail::brute_valuation(g, pi);
            };
            switch (entry.pd.kind) {
                case PrimeDivisor::Kind::HypRamified: {
                    std::uint32_t va = vp(h.part_a());
                    std::uint32_t vb = vp(h.part_b());
                    std::uint32_t from_a = va == kInfValuation ? kInfValuation : 2 * va;
                    std::uint32_t from_b = vb == kInfValuation ? kInfValuation : 2 * vb + 1;
                    v = std::min(from_a, from_b);
                    break;
                }
                case PrimeDivisor::Kind::HypInert:
                    v = std::min(vp(h.part_a()), vp(h.part_b()));
                    break;
                case PrimeDivisor::Kind::HypSplit: {
                    Poly pi_prec = Poly::one(C->field());
                    for (std::uint32_t i = 0; i < entry.precision; ++i) pi_prec = pi_prec * pi;
                    Poly w = (h.part_a() + entry.lifted_root * h.part_b()) % pi_prec;
                    std::uint32_t raw = w.is_zero() ? entry.precision : detail::brute_valuation(w, pi);
                    if (raw >= entry.precision)
                        raise(ErrorCode::InternalError, "valuation exceeds the lift precision");
                    v = raw;
                    break;
                }
                default:
                    raise(ErrorCode::InternalError, "unexpected place kind");
            }
            if (v == kInfValuation)
                raise(ErrorCode::InternalError, "infinite valuation of a nonzero element");
        }
        if (v > 0) out.emplace_back(entry.pd, v);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return prime_divisor_less(a.first, b.first); });
    return out;
}

} // namespace ffint
