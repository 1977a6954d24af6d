#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffint/curve.hpp"
#include "ffint/partition.hpp"

namespace ffint {

enum class PlaceClass { Split, Inert, Ramified };

/// Prime ideal of the coordinate ring of C \ supp(E), with its residue
/// degree. Projective line: a monic irreducible pi(t), or the place at
/// infinity when it lies off supp(E). Hyperelliptic: a monic irreducible
/// pi(x) together with its splitting behaviour; split primes carry the
/// residue root r of y^2 = f mod pi that identifies the branch.
struct PrimeDivisor {
    enum class Kind { InfinityP1, FiniteP1, HypRamified, HypSplit, HypInert };

    Kind kind;
    Poly pi;
    Poly root; // HypSplit only: canonical representative mod pi
    std::uint32_t degree = 0;

    static PrimeDivisor infinity_p1(const Field* F) {
        return {Kind::InfinityP1, Poly::zero(F), Poly::zero(F), 1};
    }
    static PrimeDivisor finite_p1(Poly pi) {
        std::uint32_t d = static_cast<std::uint32_t>(pi.degree());
        return {Kind::FiniteP1, std::move(pi), Poly(nullptr), d};
    }
    static PrimeDivisor hyp(PlaceClass cls, Poly pi, Poly root = Poly(nullptr)) {
        std::uint32_t d = static_cast<std::uint32_t>(pi.degree());
        switch (cls) {
            case PlaceClass::Ramified:
                return {Kind::HypRamified, std::move(pi), Poly(nullptr), d};
            case PlaceClass::Inert:
                return {Kind::HypInert, std::move(pi), Poly(nullptr), 2 * d};
            case PlaceClass::Split:
                return {Kind::HypSplit, std::move(pi), std::move(root), d};
        }
        raise(ErrorCode::InternalError, "bad place class");
    }

    friend bool operator==(const PrimeDivisor& a, const PrimeDivisor& b) {
        if (a.kind != b.kind || a.degree != b.degree) return false;
        if (a.kind == Kind::InfinityP1) return true;
        if (a.pi != b.pi) return false;
        if (a.kind == Kind::HypSplit) return a.root == b.root;
        return true;
    }
    friend bool operator!=(const PrimeDivisor& a, const PrimeDivisor& b) { return !(a == b); }

    std::string str() const {
        switch (kind) {
            case Kind::InfinityP1: return "inf";
            case Kind::FiniteP1: return "(" + pi.str("t") + ")";
            case Kind::HypRamified: return "(" + pi.str("x") + "; ramified)";
            case Kind::HypInert: return "(" + pi.str("x") + "; inert)";
            case Kind::HypSplit: return "(" + pi.str("x") + "; y=" + root.str("x") + ")";
        }
        return "?";
    }
};

/// Canonical order: by degree, infinity first, then pi, then branch root.
inline bool prime_divisor_less(const PrimeDivisor& a, const PrimeDivisor& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.kind == PrimeDivisor::Kind::InfinityP1) return false;
    if (a.pi != b.pi) return poly_less(a.pi, b.pi);
    if (a.kind == PrimeDivisor::Kind::HypSplit && a.root != b.root)
        return poly_less(a.root, b.root);
    return false;
}

namespace detail {

inline void require_monic_irreducible(const Poly& pi) {
    if (pi.is_zero() || pi.nterms() < 2 || !pi.is_monic() || !is_irreducible(pi))
        raise(ErrorCode::NotIrreducible, "place descriptor must be monic irreducible");
}

/// Norm of alpha from F_q[x]/(pi) down to F_q as a field element; the
/// product of Frobenius conjugates alpha^{q^i}, i < deg pi.
inline FieldElem residue_norm(const Poly& alpha, const Poly& pi) {
    const Field* F = alpha.field();
    const std::uint64_t q = F->size();
    const std::uint32_t d = static_cast<std::uint32_t>(pi.degree());
    Poly acc = alpha % pi;
    Poly frob = acc;
    for (std::uint32_t i = 1; i < d; ++i) {
        frob = powmod(frob, q, pi);
        acc = mulmod(acc, frob, pi);
    }
    if (acc.is_zero()) return F->zero();
    if (acc.nterms() != 1) raise(ErrorCode::InternalError, "norm did not land in the base field");
    return acc.coeffs()[0];
}

/// Euler criterion in the residue field F_{q^{deg pi}}: alpha nonzero is a
/// square iff alpha^{(Q-1)/2} = 1, evaluated as residue_norm(alpha)^{(q-1)/2}.
inline bool residue_is_square(const Poly& alpha, const Poly& pi) {
    const Field* F = alpha.field();
    FieldElem n = residue_norm(alpha, pi);
    if (n.is_zero()) raise(ErrorCode::InternalError, "Euler criterion on zero");
    return pow(n, static_cast<std::int64_t>((F->size() - 1) / 2)) == F->one();
}

/// Lexicographic-from-constant comparison of residue representatives; used
/// to pick the canonical square root between r and -r. The constant
/// coefficient decides whenever the two differ there (the rule in use);
/// later coefficients break the tie when both constant terms coincide.
inline bool residue_lex_less(const Poly& a, const Poly& b, std::uint32_t width) {
    const Field* F = a.field();
    for (std::uint32_t i = 0; i < width; ++i) {
        std::uint64_t ia = F->index_of(a.coeff(i));
        std::uint64_t ib = F->index_of(b.coeff(i));
        if (ia != ib) return ia < ib;
    }
    return false;
}

inline Poly canonical_of_pair(const Poly& r, const Poly& pi) {
    Poly minus = (-r) % pi;
    Poly plus = r % pi;
    return residue_lex_less(plus, minus, static_cast<std::uint32_t>(pi.degree())) ? plus : minus;
}

/// Square root in F_{q^d} = F_q[x]/(pi) by Tonelli-Shanks (exponents carried
/// in 128 bits); the nonsquare needed by the general case is found by a
/// deterministic scan in canonical element order.
inline Poly residue_sqrt(const Poly& alpha, const Poly& pi) {
    const Field* F = alpha.field();
    const std::uint64_t q = F->size();
    const std::uint32_t d = static_cast<std::uint32_t>(pi.degree());
    unsigned __int128 Q = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (Q > (static_cast<unsigned __int128>(1) << 120) / q)
            raise(ErrorCode::BudgetExceeded, "residue field too large for square roots");
        Q *= q;
    }
    Poly a = alpha % pi;
    Poly r(F);
    if (Q % 4 == 3) {
        r = powmod_u128(a, (Q + 1) / 4, pi);
    } else {
        // Tonelli-Shanks: Q - 1 = 2^s * m with m odd
        unsigned __int128 m = Q - 1;
        std::uint32_t s = 0;
        while (m % 2 == 0) {
            m /= 2;
            ++s;
        }
        Poly z(F);
        for (std::uint64_t idx = 1;; ++idx) {
            std::vector<FieldElem> coeffs;
            std::uint64_t v = idx;
            for (std::uint32_t i = 0; i < d; ++i) {
                coeffs.push_back(F->from_index(v % q));
                v /= q;
            }
            Poly cand = Poly::from_elems(F, std::move(coeffs));
            if (cand.is_zero()) continue;
            if (!residue_is_square(cand, pi)) {
                z = cand;
                break;
            }
        }
        Poly c = powmod_u128(z, m, pi);
        Poly t = powmod_u128(a, m, pi);
        r = powmod_u128(a, (m + 1) / 2, pi);
        std::uint32_t big_m = s;
        const Poly one = Poly::one(F);
        while (t != one) {
            Poly tt = t;
            std::uint32_t i = 0;
            while (tt != one) {
                tt = mulmod(tt, tt, pi);
                ++i;
                if (i >= big_m) raise(ErrorCode::InternalError, "sqrt of a nonsquare");
            }
            Poly b = c;
            for (std::uint32_t j = 0; j + i + 1 < big_m; ++j) b = mulmod(b, b, pi);
            big_m = i;
            c = mulmod(b, b, pi);
            t = mulmod(t, c, pi);
            r = mulmod(r, b, pi);
        }
    }
    if (mulmod(r, r, pi) != a % pi) raise(ErrorCode::InternalError, "square root verification failed");
    return r;
}

} // namespace detail

/// Splitting of the affine place (pi) in the quadratic extension
/// F_q(x, y | y^2 = f): ramified iff pi | f, otherwise split or inert by
/// the Euler criterion on f mod pi.
inline PlaceClass classify_place(const CurvePtr& C, const Poly& pi) {
    if (C->is_p1()) raise(ErrorCode::ConfigError, "place classification is hyperelliptic-only");
    detail::require_monic_irreducible(pi);
    Poly fr = C->fpoly() % pi;
    if (fr.is_zero()) return PlaceClass::Ramified;
    return detail::residue_is_square(fr, pi) ? PlaceClass::Split : PlaceClass::Inert;
}

/// Local root of Y^2 = f above a split place: r with r^2 = f mod pi^n and
/// deg r < n deg pi. The canonical branch is fixed in the residue field
/// (precision 1) and preserved by the Newton lift, so labels are stable
/// across precisions.
inline Poly hensel_sqrt(const CurvePtr& C, const Poly& pi, std::uint32_t n) {
    if (n < 1) raise(ErrorCode::ConfigError, "precision must be >= 1");
    if (classify_place(C, pi) != PlaceClass::Split)
        raise(ErrorCode::NotSplit, "hensel_sqrt needs a split place");
    const Field* F = C->field();
    const Poly& f = C->fpoly();
    Poly r = detail::canonical_of_pair(detail::residue_sqrt(f % pi, pi), pi);
    std::uint32_t prec = 1;
    Poly pi_pow = pi;
    while (prec < n) {
        std::uint32_t next = std::min(2 * prec, n);
        Poly mod = pi_pow;
        for (std::uint32_t i = prec; i < next; ++i) mod = mod * pi;
        Poly two_r = (F->from_int(2) * r) % mod;
        Poly u = invert_mod(two_r, mod);
        Poly s = (r * r - f) % mod;
        r = (r - s * u) % mod;
        prec = next;
        pi_pow = std::move(mod);
    }
    return r;
}

/// Prime factorization of the ideal (h) in the coordinate ring of
/// C \ supp(E). Projective-line numerator factors that sit at support
/// points cannot occur for interval elements; they are dropped and
/// reported in `anomalies` instead of silently miscounting.
struct ElementFactorization {
    std::vector<std::pair<PrimeDivisor, std::uint32_t>> primes;
    std::vector<std::pair<Place, std::uint32_t>> anomalies;

    std::uint64_t degree_sum() const {
        std::uint64_t s = 0;
        for (const auto& [pd, mult] : primes) s += static_cast<std::uint64_t>(pd.degree) * mult;
        return s;
    }
};

inline ElementFactorization factor_element(const Divisor& E, const FunctionElem& h, Rng& rng) {
    const CurvePtr& C = E.curve();
    if (h.is_zero()) raise(ErrorCode::ZeroElement, "factorization of the zero element");
    const Field* F = C->field();
    const std::uint64_t k = pole_degree(E, h); // also validates pole support
    ElementFactorization out;

    if (C->is_p1()) {
        Factorization nf = factor(h.num(), rng);
        std::int64_t dn = h.num().degree();
        std::int64_t dd = 0;
        for (const auto& [pt, exp] : h.den()) dd += exp;
        for (auto& [pi, mult] : nf.factors) {
            if (pi.nterms() == 2) {
                FieldElem root = -pi.coeffs()[0];
                bool at_support = false;
                for (const auto& [place, m] : E.support())
                    if (!place.at_infinity && place.point == root) at_support = true;
                if (at_support) {
                    out.anomalies.emplace_back(Place::affine(root), mult);
                    continue;
                }
            }
            out.primes.emplace_back(PrimeDivisor::finite_p1(pi), mult);
        }
        if (!E.has_infinity()) {
            std::int64_t v_inf = dd - dn; // >= 0, pole check passed
            if (v_inf > 0)
                out.primes.emplace_back(PrimeDivisor::infinity_p1(F),
                                        static_cast<std::uint32_t>(v_inf));
        } else if (dn < dd) {
            // vanishing at a support place: same defensive treatment
            out.anomalies.emplace_back(Place::infinity(), static_cast<std::uint32_t>(dd - dn));
        }
    } else {
        Poly nrm = norm(h);
        Factorization nf = factor(nrm, rng);
        for (auto& [pi, mult] : nf.factors) {
            PlaceClass cls = classify_place(C, pi);
            if (cls == PlaceClass::Ramified) {
                out.primes.emplace_back(PrimeDivisor::hyp(PlaceClass::Ramified, pi), mult);
                continue;
            }
            if (cls == PlaceClass::Inert) {
                if (mult % 2 != 0)
                    raise(ErrorCode::InternalParityError,
                          "odd norm valuation at an inert place: " + pi.str("x"));
                out.primes.emplace_back(PrimeDivisor::hyp(PlaceClass::Inert, pi), mult / 2);
                continue;
            }
            Poly r = hensel_sqrt(C, pi, mult);
            Poly w = h.part_a() + r * h.part_b();
            // v = min(mult, v_pi(a + r b)); w = 0 means the valuation
            // exceeds the available precision, so it caps at mult
            std::uint32_t v = 0;
            if (w.is_zero()) {
                v = mult;
            } else {
                while (v < mult) {
                    auto [q2, rem] = divmod(w, pi);
                    if (!rem.is_zero()) break;
                    w = std::move(q2);
                    ++v;
                }
            }
            Poly r0 = r % pi;
            Poly r1 = (-r) % pi;
            if (v > 0)
                out.primes.emplace_back(PrimeDivisor::hyp(PlaceClass::Split, pi, r0), v);
            if (mult - v > 0)
                out.primes.emplace_back(PrimeDivisor::hyp(PlaceClass::Split, pi, r1), mult - v);
        }
    }

    std::sort(out.primes.begin(), out.primes.end(),
              [](const auto& a, const auto& b) { return prime_divisor_less(a.first, b.first); });
    std::uint64_t anomaly_sum = 0;
    for (const auto& [place, mult] : out.anomalies) anomaly_sum += mult;
    if (out.degree_sum() + anomaly_sum != k)
        raise(ErrorCode::InternalError, "degree accounting failed: zeros do not balance poles");
    return out;
}

/// Factorization type of h: the partition of k by prime degrees when the
/// quotient is separable (all multiplicities 1); nullopt otherwise.
inline std::optional<Partition> factorization_type(const Divisor& E, const FunctionElem& h,
                                                   Rng& rng) {
    ElementFactorization ef = factor_element(E, h, rng);
    std::vector<std::uint32_t> degs;
    degs.reserve(ef.primes.size());
    for (const auto& [pd, mult] : ef.primes) {
        if (mult >= 2) return std::nullopt;
        degs.push_back(pd.degree);
    }
    return Partition(std::move(degs));
}

/// True iff (h) is a prime ideal of the coordinate ring.
inline bool is_prime_element(const Divisor& E, const FunctionElem& h, Rng& rng) {
    ElementFactorization ef = factor_element(E, h, rng);
    return ef.primes.size() == 1 && ef.primes[0].second == 1;
}

} // namespace ffint
