#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ffint/factor.hpp"
#include "ffint/poly.hpp"

namespace ffint {

enum class CurveKind { ProjectiveLine, Hyperelliptic };

class Curve;
using CurvePtr = std::shared_ptr<const Curve>;

/// Curve model with an explicit affine coordinate ring. Two kinds:
///   - the projective line over F_q (genus 0);
///   - a hyperelliptic model y^2 = f(x) with f monic squarefree of odd
///     degree 2g+1 in odd characteristic (one place at infinity, degree 1).
class Curve {
   public:
    static CurvePtr projective_line(FieldPtr base) {
        return CurvePtr(new Curve(CurveKind::ProjectiveLine, std::move(base), 0, Poly(nullptr)));
    }

    static CurvePtr hyperelliptic(FieldPtr base, Poly fpoly) {
        if (base->characteristic() == 2)
            raise(ErrorCode::CharTwoUnsupported, "hyperelliptic models need odd characteristic");
        if (fpoly.is_zero() || fpoly.nterms() < 2)
            raise(ErrorCode::SingularModel, "f must be nonconstant");
        if (fpoly.field() != base.get())
            raise(ErrorCode::FieldMismatch, "f is not defined over the base field");
        if (fpoly.degree() % 2 == 0)
            raise(ErrorCode::EvenDegree, "f must have odd degree 2g+1");
        if (!fpoly.is_monic()) raise(ErrorCode::SingularModel, "f must be monic");
        if (!squarefree_part(fpoly).second)
            raise(ErrorCode::SingularModel, "f must be squarefree");
        std::uint32_t genus = static_cast<std::uint32_t>(fpoly.degree() - 1) / 2;
        return CurvePtr(new Curve(CurveKind::Hyperelliptic, std::move(base), genus, std::move(fpoly)));
    }

    CurveKind kind() const { return kind_; }
    bool is_p1() const { return kind_ == CurveKind::ProjectiveLine; }
    const Field* field() const { return base_.get(); }
    FieldPtr field_ptr() const { return base_; }
    std::uint32_t genus() const { return genus_; }

    const Poly& fpoly() const {
        if (kind_ != CurveKind::Hyperelliptic)
            raise(ErrorCode::ConfigError, "fpoly only exists on hyperelliptic models");
        return fpoly_;
    }

   private:
    Curve(CurveKind kind, FieldPtr base, std::uint32_t genus, Poly fpoly)
        : kind_(kind), base_(std::move(base)), genus_(genus), fpoly_(std::move(fpoly)) {}

    CurveKind kind_;
    FieldPtr base_;
    std::uint32_t genus_;
    Poly fpoly_;
};

/// A degree-1 closed point usable in divisor supports: infinity or an
/// affine rational point (projective line only).
struct Place {
    bool at_infinity = true;
    FieldElem point; // meaningful when !at_infinity

    static Place infinity() { return Place{}; }
    static Place affine(FieldElem p) { return Place{false, std::move(p)}; }

    friend bool operator==(const Place& a, const Place& b) {
        if (a.at_infinity != b.at_infinity) return false;
        return a.at_infinity || a.point == b.point;
    }

    std::string str() const {
        if (at_infinity) return "inf";
        return "t=" + point.owner()->elem_str(point);
    }
};

/// Effective divisor: support places with multiplicities >= 1, pairwise
/// distinct. Hyperelliptic divisors are supported at infinity only.
class Divisor {
   public:
    Divisor(CurvePtr curve, std::vector<std::pair<Place, std::uint32_t>> support)
        : curve_(std::move(curve)), support_(std::move(support)) {
        for (auto& [place, mult] : support_) {
            if (mult == 0) raise(ErrorCode::ConfigError, "divisor multiplicities must be >= 1");
            if (!place.at_infinity) {
                if (!curve_->is_p1())
                    raise(ErrorCode::UnsupportedDivisor,
                          "hyperelliptic divisors must be supported at infinity");
                if (place.point.owner() != curve_->field())
                    raise(ErrorCode::FieldMismatch, "support point not in the base field");
            }
        }
        // canonical order: infinity first, then points by index
        std::sort(support_.begin(), support_.end(), [&](const auto& a, const auto& b) {
            if (a.first.at_infinity != b.first.at_infinity) return a.first.at_infinity;
            if (a.first.at_infinity) return false;
            return elem_less(a.first.point, b.first.point);
        });
        for (std::size_t i = 1; i < support_.size(); ++i)
            if (support_[i].first == support_[i - 1].first)
                raise(ErrorCode::ConfigError, "divisor support places must be distinct");
    }

    const CurvePtr& curve() const { return curve_; }
    const std::vector<std::pair<Place, std::uint32_t>>& support() const { return support_; }

    /// Sum of multiplicities times place degrees (all places here have
    /// degree one).
    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& [place, mult] : support_) d += mult;
        return d;
    }

    bool has_infinity() const {
        for (const auto& [place, mult] : support_)
            if (place.at_infinity) return true;
        return false;
    }

    std::uint32_t mult_at(const Place& p) const {
        for (const auto& [place, mult] : support_)
            if (place == p) return mult;
        return 0;
    }

   private:
    CurvePtr curve_;
    std::vector<std::pair<Place, std::uint32_t>> support_;
};

/// Element of the coordinate ring (or of the function field) of the curve.
/// Projective line: num / prod (t - p_i)^{d_i}, stored canonically with the
/// numerator coprime to each denominator factor. Hyperelliptic: a + y*b.
class FunctionElem {
   public:
    static FunctionElem rational(CurvePtr curve, Poly num,
                                 std::vector<std::pair<FieldElem, std::uint32_t>> den = {}) {
        if (!curve->is_p1())
            raise(ErrorCode::ConfigError, "rational form is for the projective line");
        FunctionElem out;
        out.curve_ = std::move(curve);
        const Field* F = out.curve_->field();
        if (num.field() != F) raise(ErrorCode::FieldMismatch, "numerator over the wrong field");
        out.a_ = std::move(num);
        out.b_ = Poly::zero(F);
        out.den_ = std::move(den);
        out.canonicalize_p1();
        return out;
    }

    static FunctionElem hyper(CurvePtr curve, Poly a, Poly b) {
        if (curve->is_p1()) raise(ErrorCode::ConfigError, "a + y*b form is for hyperelliptic models");
        const Field* F = curve->field();
        if (a.field() != F || b.field() != F)
            raise(ErrorCode::FieldMismatch, "components over the wrong field");
        FunctionElem out;
        out.curve_ = std::move(curve);
        out.a_ = std::move(a);
        out.b_ = std::move(b);
        return out;
    }

    const CurvePtr& curve() const { return curve_; }

    // Projective line accessors.
    const Poly& num() const { return a_; }
    const std::vector<std::pair<FieldElem, std::uint32_t>>& den() const { return den_; }

    // Hyperelliptic accessors.
    const Poly& part_a() const { return a_; }
    const Poly& part_b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    bool is_constant() const {
        if (curve_->is_p1()) return den_.empty() && a_.nterms() <= 1;
        return b_.is_zero() && a_.nterms() <= 1;
    }

    friend bool operator==(const FunctionElem& x, const FunctionElem& y) {
        return x.curve_ == y.curve_ && x.a_ == y.a_ && x.b_ == y.b_ && x.den_ == y.den_;
    }
    friend bool operator!=(const FunctionElem& x, const FunctionElem& y) { return !(x == y); }

    /// Expanded denominator polynomial prod (t - p)^d (projective line).
    Poly den_poly() const {
        const Field* F = curve_->field();
        Poly d = Poly::one(F);
        for (const auto& [pt, exp] : den_) {
            Poly lin = Poly::from_elems(F, {-pt, F->one()});
            for (std::uint32_t i = 0; i < exp; ++i) d = d * lin;
        }
        return d;
    }

    std::string str() const {
        const Field* F = curve_->field();
        if (curve_->is_p1()) {
            std::string n = a_.str("t");
            if (den_.empty()) return n;
            std::string d;
            for (const auto& [pt, exp] : den_) {
                if (!d.empty()) d += "*";
                d += "(" + Poly::from_elems(F, {-pt, F->one()}).str("t") + ")";
                if (exp > 1) d += "^" + std::to_string(exp);
            }
            return "(" + n + ")/(" + d + ")";
        }
        if (b_.is_zero()) return a_.str("x");
        std::string s = b_.nterms() == 1 && b_.is_monic() ? "y" : "(" + b_.str("x") + ")*y";
        if (a_.is_zero()) return s;
        return a_.str("x") + " + " + s;
    }

   private:
    FunctionElem() : a_(nullptr), b_(nullptr) {}

    void canonicalize_p1() {
        const Field* F = curve_->field();
        std::vector<std::pair<FieldElem, std::uint32_t>> kept;
        for (auto& [pt, exp] : den_) {
            if (pt.owner() != F) raise(ErrorCode::FieldMismatch, "pole point not in the base field");
            if (exp == 0) continue;
            Poly lin = Poly::from_elems(F, {-pt, F->one()});
            while (exp > 0 && !a_.is_zero() && a_.eval(pt).is_zero()) {
                a_ = a_ / lin;
                --exp;
            }
            if (exp > 0 && !a_.is_zero()) kept.emplace_back(pt, exp);
        }
        if (a_.is_zero()) kept.clear();
        std::sort(kept.begin(), kept.end(),
                  [](const auto& x, const auto& y) { return elem_less(x.first, y.first); });
        for (std::size_t i = 1; i < kept.size(); ++i)
            if (kept[i].first == kept[i - 1].first)
                raise(ErrorCode::ConfigError, "repeated pole point in denominator");
        den_ = std::move(kept);
    }

    CurvePtr curve_;
    Poly a_; // numerator (projective line) or the a-part (hyperelliptic)
    Poly b_; // b-part (hyperelliptic); zero on the projective line
    std::vector<std::pair<FieldElem, std::uint32_t>> den_;
};

/// Per-place pole orders of h against the support of E.
struct PoleProfile {
    std::uint64_t total = 0; // k = deg div(h)_-
    std::vector<std::pair<Place, std::uint32_t>> orders; // aligned with E.support()
};

/// Pole orders of h at supp(E); raises PoleOutsideE if h has a pole off
/// the support. Hyperelliptic: -v_inf(a + y b) = max(2 deg a, 2g+1+2 deg b).
inline PoleProfile pole_profile(const Divisor& E, const FunctionElem& h) {
    const CurvePtr& C = E.curve();
    if (h.curve() != C) raise(ErrorCode::ConfigError, "element and divisor on different curves");
    PoleProfile out;
    if (C->is_p1()) {
        for (const auto& [pt, exp] : h.den()) {
            bool in_support = false;
            for (const auto& [place, mult] : E.support())
                if (!place.at_infinity && place.point == pt) in_support = true;
            if (!in_support)
                raise(ErrorCode::PoleOutsideE,
                      "pole at t=" + pt.owner()->elem_str(pt) + " lies outside supp(E)");
        }
        std::int64_t dn = h.num().is_zero() ? 0 : h.num().degree();
        std::int64_t dd = 0;
        for (const auto& [pt, exp] : h.den()) dd += exp;
        std::int64_t inf_order = h.num().is_zero() ? 0 : dn - dd;
        if (inf_order > 0 && !E.has_infinity())
            raise(ErrorCode::PoleOutsideE, "pole at infinity lies outside supp(E)");
        for (const auto& [place, mult] : E.support()) {
            std::uint32_t order = 0;
            if (place.at_infinity) {
                order = inf_order > 0 ? static_cast<std::uint32_t>(inf_order) : 0;
            } else {
                for (const auto& [pt, exp] : h.den())
                    if (pt == place.point) order = exp;
            }
            out.orders.emplace_back(place, order);
            out.total += order;
        }
        return out;
    }
    // hyperelliptic: poles live at infinity only
    std::uint64_t k = 0;
    if (!h.is_zero()) {
        std::uint64_t ka = h.part_a().is_zero()
                               ? 0
                               : 2 * static_cast<std::uint64_t>(h.part_a().degree());
        std::uint64_t kb = h.part_b().is_zero()
                               ? 0
                               : 2 * C->genus() + 1 + 2 * static_cast<std::uint64_t>(h.part_b().degree());
        k = std::max(ka, kb);
    }
    if (k > 0 && !E.has_infinity())
        raise(ErrorCode::PoleOutsideE, "pole at infinity lies outside supp(E)");
    for (const auto& [place, mult] : E.support())
        out.orders.emplace_back(place, place.at_infinity ? static_cast<std::uint32_t>(k) : 0);
    out.total = k;
    return out;
}

/// k = total order of poles of h (the degree of its divisor of poles).
inline std::uint64_t pole_degree(const Divisor& E, const FunctionElem& h) {
    return pole_profile(E, h).total;
}

/// Basis {1, f_1, ..., f_m} of H^0(C, O(E)) with leading constant 1.
/// Projective line: 1, the powers t^j up to the infinity multiplicity, then
/// partial fractions (t-p)^(-j) per affine support point. Hyperelliptic
/// E = m*inf: monomials x^i (2i <= m) and x^j y (2j + 2g+1 <= m), ordered by
/// pole order at infinity.
inline std::vector<FunctionElem> rr_basis(const Divisor& E) {
    const CurvePtr& C = E.curve();
    const Field* F = C->field();
    std::vector<FunctionElem> basis;
    if (C->is_p1()) {
        basis.push_back(FunctionElem::rational(C, Poly::one(F)));
        for (const auto& [place, mult] : E.support()) {
            if (!place.at_infinity) continue;
            for (std::uint32_t j = 1; j <= mult; ++j)
                basis.push_back(FunctionElem::rational(C, Poly::monomial(F, j, F->one())));
        }
        for (const auto& [place, mult] : E.support()) {
            if (place.at_infinity) continue;
            for (std::uint32_t j = 1; j <= mult; ++j)
                basis.push_back(FunctionElem::rational(C, Poly::one(F), {{place.point, j}}));
        }
        return basis;
    }
    std::uint64_t m = 0;
    for (const auto& [place, mult] : E.support()) {
        if (!place.at_infinity)
            raise(ErrorCode::UnsupportedDivisor, "hyperelliptic support is at infinity only");
        m = mult;
    }
    const std::uint64_t w = 2 * C->genus() + 1; // pole order of y
    std::vector<std::pair<std::uint64_t, FunctionElem>> ordered;
    for (std::uint64_t i = 0; 2 * i <= m; ++i)
        ordered.emplace_back(2 * i,
                             FunctionElem::hyper(C, Poly::monomial(F, i, F->one()), Poly::zero(F)));
    for (std::uint64_t j = 0; 2 * j + w <= m; ++j)
        ordered.emplace_back(2 * j + w,
                             FunctionElem::hyper(C, Poly::zero(F), Poly::monomial(F, j, F->one())));
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [order, fn] : ordered) basis.push_back(std::move(fn));
    return basis;
}

/// Norm of a + y*b down to F_q[x]: a^2 - f*b^2.
inline Poly norm(const FunctionElem& h) {
    const CurvePtr& C = h.curve();
    if (C->is_p1()) raise(ErrorCode::ConfigError, "norm is defined on hyperelliptic models");
    if (h.is_zero()) raise(ErrorCode::ZeroElement, "norm of the zero element");
    return h.part_a() * h.part_a() - C->fpoly() * h.part_b() * h.part_b();
}

} // namespace ffint
