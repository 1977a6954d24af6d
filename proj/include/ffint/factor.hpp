#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "ffint/poly.hpp"
#include "ffint/rng.hpp"

namespace ffint {

/// unit * prod(factors[i].first ^ factors[i].second) reproduces the input
/// exactly; factors are monic irreducible, pairwise distinct, sorted by
/// degree then coefficient order.
struct Factorization {
    FieldElem unit;
    std::vector<std::pair<Poly, std::uint32_t>> factors;

    Poly reassemble(const Field* F) const {
        Poly out = Poly::constant(F, unit);
        for (const auto& [p, m] : factors)
            for (std::uint32_t i = 0; i < m; ++i) out = out * p;
        return out;
    }
};

namespace detail {

/// Coefficient-wise p-th root of a polynomial lying in F_q[t^p].
inline Poly pth_root(const Poly& h) {
    const Field* F = h.field();
    const std::uint64_t p = F->characteristic();
    std::vector<FieldElem> out;
    out.reserve(h.nterms() / p + 1);
    // a^(q/p) is the p-th root of a in F_q
    std::uint64_t root_exp = 1;
    for (std::uint32_t i = 0; i + 1 < F->ext_degree(); ++i) root_exp *= p;
    for (std::size_t i = 0; i < h.nterms(); i += p)
        out.push_back(F->pow(h.coeffs()[i], static_cast<std::int64_t>(root_exp)));
    return Poly::from_elems(F, std::move(out));
}

} // namespace detail

/// Squarefree decomposition of a monic polynomial in characteristic p:
/// returns pairs (g, m) with g monic squarefree, pairwise coprime, and
/// h = prod g^m. Multiplicities divisible by p are pulled out through
/// p-th-root descent.
inline std::vector<std::pair<Poly, std::uint32_t>> squarefree_decomposition(const Poly& h,
                                                                            std::uint32_t stride = 1) {
    const std::uint64_t p = h.field()->characteristic();
    std::vector<std::pair<Poly, std::uint32_t>> out;
    Poly c = gcd(h, h.derivative()); // gcd(h, 0) = h covers h' == 0
    Poly w = h / c;                  // product of factors with p-coprime multiplicity
    std::uint32_t i = 1;
    while (w.nterms() > 1) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.nterms() > 1) out.emplace_back(z, i * stride);
        c = c / y;
        w = std::move(y);
        ++i;
    }
    if (c.nterms() > 1) {
        // c collects the factors whose multiplicity is divisible by p
        Poly g = detail::pth_root(c);
        auto inner = squarefree_decomposition(g, stride * static_cast<std::uint32_t>(p));
        out.insert(out.end(), inner.begin(), inner.end());
    }
    return out;
}

/// Radical of h (monic) and whether h is squarefree up to a unit.
inline std::pair<Poly, bool> squarefree_part(const Poly& h) {
    if (h.is_zero()) raise(ErrorCode::ZeroPolynomial, "squarefree part of zero");
    const Poly hm = h.monic();
    if (hm.nterms() == 1) return {hm, true};
    Poly rad = Poly::one(h.field());
    for (const auto& [g, m] : squarefree_decomposition(hm)) rad = rad * g;
    return {rad, rad.nterms() == hm.nterms()};
}

namespace detail {

/// Distinct-degree splitting of a monic squarefree polynomial: returns
/// (product of irreducibles of degree d, d) pairs in ascending d.
inline std::vector<std::pair<Poly, std::uint32_t>> distinct_degree_split(Poly h) {
    const Field* F = h.field();
    const std::uint64_t q = F->size();
    std::vector<std::pair<Poly, std::uint32_t>> out;
    Poly x = Poly::variable(F);
    Poly w = x % h;
    std::uint32_t d = 0;
    while (h.nterms() > 1 && 2 * (d + 1) <= static_cast<std::uint32_t>(h.degree())) {
        ++d;
        w = powmod(w, q, h);
        Poly g = gcd(w - x, h);
        if (g.nterms() > 1) {
            out.emplace_back(g, d);
            h = h / g;
            w = w % h;
        }
    }
    if (h.nterms() > 1) out.emplace_back(h, static_cast<std::uint32_t>(h.degree()));
    return out;
}

inline Poly random_poly_below(const Field* F, std::uint32_t deg_bound, Rng& rng) {
    std::vector<FieldElem> c;
    c.reserve(deg_bound);
    for (std::uint32_t i = 0; i < deg_bound; ++i) c.push_back(F->from_index(rng.below(F->size())));
    return Poly::from_elems(F, std::move(c));
}

/// r^{(q^d - 1)/2} mod h without forming the big exponent: first the norm
/// r^{1 + q + ... + q^{d-1}}, then the (q-1)/2 power.
inline Poly half_order_power(const Poly& r, std::uint32_t d, const Poly& h) {
    const Field* F = r.field();
    const std::uint64_t q = F->size();
    Poly acc = r % h;
    Poly frob = acc;
    for (std::uint32_t i = 1; i < d; ++i) {
        frob = powmod(frob, q, h);
        acc = mulmod(acc, frob, h);
    }
    return powmod(acc, (q - 1) / 2, h);
}

/// Equal-degree splitting (Cantor-Zassenhaus; trace construction in
/// characteristic 2) of a monic squarefree product of degree-d irreducibles.
inline void equal_degree_split(const Poly& h, std::uint32_t d, Rng& rng, std::vector<Poly>& out) {
    const Field* F = h.field();
    if (static_cast<std::uint32_t>(h.degree()) == d) {
        out.push_back(h);
        return;
    }
    const std::uint64_t q = F->size();
    Poly one = Poly::one(F);
    for (;;) {
        Poly r = random_poly_below(F, static_cast<std::uint32_t>(h.degree()), rng);
        if (r.is_zero()) continue;
        Poly g = gcd(r, h);
        if (g.nterms() > 1 && g != h) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(h / g, d, rng, out);
            return;
        }
        Poly w(F);
        if (F->characteristic() == 2) {
            // trace map over F_2: sum of r^{2^i}, i < e*d
            std::uint64_t bits = 0;
            for (std::uint64_t t = q; t > 1; t >>= 1) ++bits;
            Poly acc = r % h;
            Poly term = acc;
            for (std::uint64_t i = 1; i < bits * d; ++i) {
                term = mulmod(term, term, h);
                acc = acc + term;
            }
            w = acc % h;
        } else {
            w = half_order_power(r, d, h) - one;
        }
        Poly s = gcd(w, h);
        if (s.nterms() > 1 && s != h) {
            equal_degree_split(s, d, rng, out);
            equal_degree_split(h / s, d, rng, out);
            return;
        }
    }
}

} // namespace detail

/// Complete factorization: squarefree decomposition, distinct-degree
/// splitting, then randomized equal-degree splitting. The PRNG only steers
/// the internal splitting; the returned factorization is canonical.
inline Factorization factor(const Poly& h, Rng& rng) {
    if (h.is_zero()) raise(ErrorCode::ZeroPolynomial, "factor of the zero polynomial");
    const Field* F = h.field();
    Factorization out;
    out.unit = h.lead();
    if (h.nterms() == 1) return out;
    const Poly hm = h.monic();
    for (const auto& [part, mult] : squarefree_decomposition(hm)) {
        for (const auto& [prod, d] : detail::distinct_degree_split(part)) {
            std::vector<Poly> irreducibles;
            detail::equal_degree_split(prod, d, rng, irreducibles);
            for (auto& f : irreducibles) out.factors.emplace_back(std::move(f), mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

/// Rabin irreducibility test, independent of factor(): t^{q^n} = t mod h and
/// gcd(t^{q^{n/r}} - t, h) = 1 at every prime r | n.
inline bool is_irreducible(const Poly& h) {
    if (h.is_zero()) raise(ErrorCode::ZeroPolynomial, "irreducibility of zero");
    if (h.nterms() == 1) raise(ErrorCode::ConstantPolynomial, "irreducibility of a constant");
    const std::uint32_t n = static_cast<std::uint32_t>(h.degree());
    if (n == 1) return true;
    const Field* F = h.field();
    const std::uint64_t q = F->size();
    const Poly hm = h.monic();
    Poly x = Poly::variable(F) % hm;
    std::vector<Poly> frob(n + 1, Poly(F));
    frob[0] = x;
    for (std::uint32_t i = 1; i <= n; ++i) frob[i] = powmod(frob[i - 1], q, hm);
    if (frob[n] != frob[0]) return false;
    std::vector<std::uint32_t> prime_divs;
    std::uint32_t rem = n;
    for (std::uint32_t r = 2; r * r <= rem; ++r) {
        if (rem % r == 0) {
            prime_divs.push_back(r);
            while (rem % r == 0) rem /= r;
        }
    }
    if (rem > 1) prime_divs.push_back(rem);
    for (std::uint32_t r : prime_divs) {
        if (gcd(frob[n / r] - x, hm).nterms() > 1) return false;
    }
    return true;
}

} // namespace ffint
