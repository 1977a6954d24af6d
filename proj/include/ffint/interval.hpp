#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ffint/curve.hpp"
#include "ffint/element_factor.hpp"
#include "ffint/rng.hpp"

namespace ffint {

struct ExhaustiveMode {};
struct SampleMode {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};
using IterMode = std::variant<ExhaustiveMode, SampleMode>;

inline constexpr std::uint64_t kDefaultBudget = 100000000ULL; // 10^8 elements

/// Checkable hypotheses of the prime-density statement for I(f,E).
struct HypothesisReport {
    bool condition_i = false;      // 3(2g+1) <= deg E < k
    std::uint64_t i_threshold = 0; // 3(2g+1)
    std::uint64_t ii_threshold = 0; // 2(2g+1)
    std::uint64_t deg_E = 0;
    std::uint64_t k = 0;
    bool condition_ii = false; // char 2 and df vanishing on a nonempty finite set
    bool char_is_two = false;
    bool df_nonzero = false;
    bool df_nonconstant = false;
    std::vector<std::string> df_witness_zeros;
    bool short_interval = false;
    bool riemann_roch_ok = false; // deg E >= 2g - 2
    std::uint64_t dim = 0;        // m + 1
};

struct IntervalSummary {
    std::string curve_kind;
    std::uint64_t p = 0;
    std::uint32_t e = 1;
    std::uint64_t q = 0;
    std::uint32_t genus = 0;
    std::string fpoly; // empty on the projective line
    std::string f;
    std::string E;
    std::uint64_t deg_E = 0;
    std::uint64_t m = 0;
    std::uint64_t k = 0;
    std::uint64_t size = 0; // q^{m+1}
};

/// The short interval I(f,E) = f + H^0(C, O(E)): f, the divisor E, the
/// section basis {1, f_1, ..., f_m}, and fast specialization of the tuple
/// (a_0, ..., a_m) to the element f + a_0 + sum a_i f_i.
class Interval {
   public:
    /// Enforces the short-interval condition: at every place of supp(E) the
    /// pole order of f strictly exceeds the multiplicity in E.
    static Interval make(CurvePtr curve, FunctionElem f, Divisor E) {
        if (f.curve() != curve || E.curve() != curve)
            raise(ErrorCode::ConfigError, "curve mismatch between f and E");
        if (f.is_zero() || f.is_constant())
            raise(ErrorCode::ConfigError, "constant f gives an empty pole divisor (k = 0)");
        PoleProfile profile = pole_profile(E, f); // raises PoleOutsideE
        for (const auto& [place, order] : profile.orders) {
            if (order <= E.mult_at(place))
                raise(ErrorCode::NotShort, "pole order of f at " + place.str() + " is " +
                                               std::to_string(order) +
                                               ", not strictly greater than " +
                                               std::to_string(E.mult_at(place)));
        }
        Interval out(std::move(curve), std::move(f), std::move(E));
        out.basis_ = rr_basis(out.E_);
        out.m_ = out.basis_.size() - 1;
        out.k_ = profile.total;
        const std::uint64_t q = out.curve_->field()->size();
        std::uint64_t size = 1;
        for (std::uint64_t i = 0; i <= out.m_; ++i) {
            if (size > (std::uint64_t(1) << 62) / q)
                raise(ErrorCode::ConfigError, "interval size q^{m+1} does not fit in 64 bits");
            size *= q;
        }
        out.size_ = size;
        out.precompute();
        return out;
    }

    const CurvePtr& curve() const { return curve_; }
    const Divisor& divisor() const { return E_; }
    const FunctionElem& f() const { return f_; }
    const std::vector<FunctionElem>& basis() const { return basis_; }
    std::uint64_t m() const { return m_; }
    std::uint64_t k() const { return k_; }
    std::uint64_t size() const { return size_; }

    /// The specialization f + a_0 + sum a_i f_i in canonical form.
    FunctionElem element_at(std::span<const FieldElem> tuple) const {
        const Field* F = curve_->field();
        if (tuple.size() != m_ + 1)
            raise(ErrorCode::WrongArity, "expected " + std::to_string(m_ + 1) + " coordinates");
        for (const auto& a : tuple)
            if (a.owner() != F) raise(ErrorCode::FieldMismatch, "tuple entry not in the base field");
        if (curve_->is_p1()) {
            Poly num = f_.num();
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                if (tuple[i].is_zero()) continue;
                num = num + tuple[i] * lifted_[i];
            }
            return FunctionElem::rational(curve_, std::move(num), f_.den());
        }
        std::vector<FieldElem> a_c = pad(f_.part_a(), a_len_);
        std::vector<FieldElem> b_c = pad(f_.part_b(), b_len_);
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (tuple[i].is_zero()) continue;
            auto [is_y, power] = monomials_[i];
            auto& slot = is_y ? b_c[power] : a_c[power];
            slot = slot + tuple[i];
        }
        return FunctionElem::hyper(curve_, Poly::from_elems(F, std::move(a_c)),
                                   Poly::from_elems(F, std::move(b_c)));
    }

    std::vector<FieldElem> tuple_from_index(std::uint64_t idx) const {
        const Field* F = curve_->field();
        const std::uint64_t q = F->size();
        std::vector<FieldElem> tuple(m_ + 1, F->zero());
        for (std::size_t j = m_ + 1; j-- > 0;) {
            tuple[j] = F->from_index(idx % q);
            idx /= q;
        }
        return tuple;
    }

    /// Visit elements with lexicographic indices in [begin, end). The
    /// enumeration order is lexicographic on (a_0, ..., a_m) in field
    /// element order, so runs are resumable by index prefix.
    template <typename Fn>
    void enumerate_range(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
        if (begin >= end) return;
        const Field* F = curve_->field();
        const std::uint64_t q = F->size();
        std::vector<std::uint64_t> digits(m_ + 1, 0);
        std::vector<FieldElem> tuple = tuple_from_index(begin);
        std::uint64_t rest = begin;
        for (std::size_t j = m_ + 1; j-- > 0;) {
            digits[j] = rest % q;
            rest /= q;
        }
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            fn(static_cast<const std::vector<FieldElem>&>(tuple), element_at(tuple));
            if (idx + 1 == end) break;
            std::size_t j = m_;
            for (;;) {
                if (++digits[j] < q) {
                    tuple[j] = F->from_index(digits[j]);
                    break;
                }
                digits[j] = 0;
                tuple[j] = F->from_index(0);
                --j; // begin < end <= size keeps this in range
            }
        }
    }

    std::vector<FieldElem> sample_tuple(Rng& rng) const {
        const Field* F = curve_->field();
        const std::uint64_t q = F->size();
        std::vector<FieldElem> tuple;
        tuple.reserve(m_ + 1);
        for (std::uint64_t j = 0; j <= m_; ++j) tuple.push_back(F->from_index(rng.below(q)));
        return tuple;
    }

    IntervalSummary summary() const {
        IntervalSummary s;
        const Field* F = curve_->field();
        s.curve_kind = curve_->is_p1() ? "projective_line" : "hyperelliptic";
        s.p = F->characteristic();
        s.e = F->ext_degree();
        s.q = F->size();
        s.genus = curve_->genus();
        if (!curve_->is_p1()) s.fpoly = curve_->fpoly().str("x");
        s.f = f_.str();
        std::string es;
        for (const auto& [place, mult] : E_.support()) {
            if (!es.empty()) es += " + ";
            es += std::to_string(mult) + "*(" + place.str() + ")";
        }
        s.E = es;
        s.deg_E = E_.degree();
        s.m = m_;
        s.k = k_;
        s.size = size_;
        return s;
    }

   private:
    Interval(CurvePtr curve, FunctionElem f, Divisor E)
        : curve_(std::move(curve)), f_(std::move(f)), E_(std::move(E)) {}

    static std::vector<FieldElem> pad(const Poly& p, std::size_t len) {
        std::vector<FieldElem> out = p.coeffs();
        out.resize(len, p.field()->zero());
        return out;
    }

    void precompute() {
        const Field* F = curve_->field();
        if (curve_->is_p1()) {
            // Lift every basis numerator onto the common denominator of f:
            // multiply by (t - p)^{e_p - d_p} at each pole point of f.
            lifted_.clear();
            for (const auto& g : basis_) {
                Poly lift = g.num();
                for (const auto& [pt, f_exp] : f_.den()) {
                    std::uint32_t g_exp = 0;
                    for (const auto& [gpt, ge] : g.den())
                        if (gpt == pt) g_exp = ge;
                    Poly lin = Poly::from_elems(F, {-pt, F->one()});
                    for (std::uint32_t i = g_exp; i < f_exp; ++i) lift = lift * lin;
                }
                lifted_.push_back(std::move(lift));
            }
            return;
        }
        monomials_.clear();
        std::size_t a_hi = f_.part_a().nterms(), b_hi = f_.part_b().nterms();
        for (const auto& g : basis_) {
            bool is_y = !g.part_b().is_zero();
            const Poly& mono = is_y ? g.part_b() : g.part_a();
            std::uint32_t power = static_cast<std::uint32_t>(mono.degree());
            monomials_.emplace_back(is_y, power);
            auto& hi = is_y ? b_hi : a_hi;
            hi = std::max<std::size_t>(hi, power + 1);
        }
        a_len_ = a_hi;
        b_len_ = b_hi;
    }

    CurvePtr curve_;
    FunctionElem f_;
    Divisor E_;
    std::vector<FunctionElem> basis_;
    std::uint64_t m_ = 0, k_ = 0, size_ = 0;
    // projective line: basis numerators over f's denominator
    std::vector<Poly> lifted_;
    // hyperelliptic: basis monomials as (multiplies y, power of x)
    std::vector<std::pair<bool, std::uint32_t>> monomials_;
    std::size_t a_len_ = 0, b_len_ = 0;
};

/// Full stream of (tuple, element) pairs: exhaustive in lexicographic order
/// (guarded by the budget) or N seeded uniform samples.
template <typename Fn>
void iterate_or_sample(const Interval& I, const IterMode& mode, std::uint64_t budget, Fn&& fn) {
    if (std::holds_alternative<ExhaustiveMode>(mode)) {
        if (I.size() > budget)
            raise(ErrorCode::BudgetExceeded, "exhaustive enumeration of " +
                                                 std::to_string(I.size()) +
                                                 " elements exceeds the budget " +
                                                 std::to_string(budget));
        I.enumerate_range(0, I.size(), fn);
        return;
    }
    const auto& s = std::get<SampleMode>(mode);
    Rng rng(s.seed);
    for (std::uint64_t i = 0; i < s.count; ++i) {
        std::vector<FieldElem> tuple = I.sample_tuple(rng);
        fn(static_cast<const std::vector<FieldElem>&>(tuple), I.element_at(tuple));
    }
}

/// Numeric hypothesis check for the interval's prime-density statement.
/// condition_i: 3(2g+1) <= deg E < k. condition_ii: characteristic 2 and
/// the derivative of f (projective-line model) nonzero and nonconstant; the
/// witness zeros of f' are reported. riemann_roch_ok: deg E >= 2g - 2.
inline HypothesisReport theorem_hypotheses(const Interval& I) {
    HypothesisReport r;
    const CurvePtr& C = I.curve();
    const std::uint32_t g = C->genus();
    r.i_threshold = 3ULL * (2 * g + 1);
    r.ii_threshold = 2ULL * (2 * g + 1);
    r.deg_E = I.divisor().degree();
    r.k = I.k();
    r.dim = I.m() + 1;
    r.condition_i = r.i_threshold <= r.deg_E && r.deg_E < r.k;
    r.char_is_two = C->field()->characteristic() == 2;
    if (C->is_p1()) {
        // df = (N'D - ND')/D^2; its zeros are the zeros of W = N'D - ND'
        const FunctionElem& f = I.f();
        Poly D = f.den_poly();
        Poly W = f.num().derivative() * D - f.num() * D.derivative();
        r.df_nonzero = !W.is_zero();
        r.df_nonconstant = W.nterms() > 1;
        if (r.df_nonconstant) {
            Rng rng(0);
            for (const auto& [pi, mult] : factor(W, rng).factors)
                r.df_witness_zeros.push_back(pi.str("t"));
        }
    }
    r.condition_ii = r.char_is_two && r.df_nonzero && r.df_nonconstant;
    r.short_interval = true; // enforced at construction
    r.riemann_roch_ok =
        static_cast<std::int64_t>(r.deg_E) >= 2 * static_cast<std::int64_t>(g) - 2;
    return r;
}

} // namespace ffint
