#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ffint/field.hpp"

namespace ffint {

/// Dense univariate polynomial over F_q, coefficients low degree first with
/// no trailing zeros (the zero polynomial stores no coefficients). The
/// degree of the zero polynomial is not a number; callers test is_zero().
class Poly {
   public:
    explicit Poly(const Field* f) : field_(f) {}

    static Poly zero(const Field* f) { return Poly(f); }

    static Poly constant(const Field* f, const FieldElem& c) {
        Poly out(f);
        if (!c.is_zero()) out.coeffs_.push_back(c);
        return out;
    }

    static Poly one(const Field* f) { return constant(f, f->one()); }

    /// c * t^d
    static Poly monomial(const Field* f, std::size_t d, const FieldElem& c) {
        Poly out(f);
        if (c.is_zero()) return out;
        out.coeffs_.assign(d, f->zero());
        out.coeffs_.push_back(c);
        return out;
    }

    static Poly variable(const Field* f) { return monomial(f, 1, f->one()); }

    static Poly from_elems(const Field* f, std::vector<FieldElem> coeffs) {
        Poly out(f);
        out.coeffs_ = std::move(coeffs);
        out.trim();
        return out;
    }

    static Poly from_ints(const Field* f, const std::vector<std::int64_t>& coeffs) {
        Poly out(f);
        out.coeffs_.reserve(coeffs.size());
        for (auto c : coeffs) out.coeffs_.push_back(f->from_int(c));
        out.trim();
        return out;
    }

    const Field* field() const { return field_; }
    const std::vector<FieldElem>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t nterms() const { return coeffs_.size(); }

    int degree() const {
        if (coeffs_.empty()) raise(ErrorCode::ZeroPolynomial, "degree of the zero polynomial");
        return static_cast<int>(coeffs_.size()) - 1;
    }

    const FieldElem& lead() const {
        if (coeffs_.empty()) raise(ErrorCode::ZeroPolynomial, "leading coefficient of zero");
        return coeffs_.back();
    }

    FieldElem coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : field_->zero();
    }

    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == field_->one(); }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check(b);
        Poly out(a.field_);
        const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
        out.coeffs_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.coeffs_.push_back(a.coeff(i) + b.coeff(i));
        out.trim();
        return out;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check(b);
        Poly out(a.field_);
        const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
        out.coeffs_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.coeffs_.push_back(a.coeff(i) - b.coeff(i));
        out.trim();
        return out;
    }

    friend Poly operator-(const Poly& a) {
        Poly out(a.field_);
        out.coeffs_.reserve(a.coeffs_.size());
        for (const auto& c : a.coeffs_) out.coeffs_.push_back(-c);
        return out;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        std::vector<FieldElem> out;
        mul_into(a.field_, a.coeffs_.data(), a.coeffs_.size(), b.coeffs_.data(), b.coeffs_.size(),
                 out);
        Poly r(a.field_);
        r.coeffs_ = std::move(out);
        r.trim();
        return r;
    }

    friend Poly operator*(const FieldElem& c, const Poly& a) {
        Poly out(a.field_);
        if (c.is_zero()) return out;
        out.coeffs_.reserve(a.coeffs_.size());
        for (const auto& x : a.coeffs_) out.coeffs_.push_back(c * x);
        out.trim();
        return out;
    }

    /// a = q*b + r with deg r < deg b. b must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        a.check(b);
        if (b.is_zero()) raise(ErrorCode::DivisionByZero, "polynomial division by zero");
        Poly q(a.field_), r = a;
        if (r.coeffs_.size() < b.coeffs_.size()) return {q, r};
        const Field* F = a.field_;
        q.coeffs_.assign(r.coeffs_.size() - b.coeffs_.size() + 1, F->zero());
        FieldElem lead_inv = inv(b.coeffs_.back());
        for (std::size_t i = r.coeffs_.size() - b.coeffs_.size() + 1; i-- > 0;) {
            FieldElem c = r.coeffs_[i + b.coeffs_.size() - 1];
            if (c.is_zero()) continue;
            FieldElem factor = c * lead_inv;
            q.coeffs_[i] = factor;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                r.coeffs_[i + j] = r.coeffs_[i + j] - factor * b.coeffs_[j];
        }
        q.trim();
        r.trim();
        return {q, r};
    }

    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        if (is_monic()) return *this;
        return inv(coeffs_.back()) * *this;
    }

    FieldElem eval(const FieldElem& x) const {
        FieldElem acc = field_->zero();
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    Poly derivative() const {
        Poly out(field_);
        if (coeffs_.size() < 2) return out;
        out.coeffs_.reserve(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            out.coeffs_.push_back(field_->from_int(static_cast<std::int64_t>(i)) * coeffs_[i]);
        out.trim();
        return out;
    }

    /// Multiply by t^k.
    Poly shifted(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        Poly out(field_);
        out.coeffs_.assign(k, field_->zero());
        out.coeffs_.insert(out.coeffs_.end(), coeffs_.begin(), coeffs_.end());
        return out;
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        const Field* F = field_;
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const FieldElem& c = coeffs_[i];
            if (c.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            std::string cs = F->elem_str(c);
            bool needs_paren = cs.find('+') != std::string::npos;
            if (i == 0) {
                os << (needs_paren ? "(" + cs + ")" : cs);
                continue;
            }
            if (cs != "1") {
                os << (needs_paren ? "(" + cs + ")" : cs) << "*";
            }
            os << var;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

   private:
    void check(const Poly& b) const {
        if (field_ != b.field_) raise(ErrorCode::FieldMismatch, "polynomials over different fields");
    }

    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    // Classical multiplication, switching to Karatsuba for large operands.
    static constexpr std::size_t kKaratsubaThreshold = 32;

    static void mul_into(const Field* F, const FieldElem* a, std::size_t na, const FieldElem* b,
                         std::size_t nb, std::vector<FieldElem>& out) {
        out.assign(na + nb - 1, F->zero());
        if (std::min(na, nb) < kKaratsubaThreshold) {
            for (std::size_t i = 0; i < na; ++i) {
                if (a[i].is_zero()) continue;
                for (std::size_t j = 0; j < nb; ++j) out[i + j] = out[i + j] + a[i] * b[j];
            }
            return;
        }
        const std::size_t half = std::min(na, nb) / 2;
        // a = a0 + t^half a1, b = b0 + t^half b1
        std::vector<FieldElem> a0b0, a1b1, mid;
        mul_into(F, a, half, b, half, a0b0);
        mul_into(F, a + half, na - half, b + half, nb - half, a1b1);
        std::vector<FieldElem> asum(std::max(half, na - half), F->zero());
        std::vector<FieldElem> bsum(std::max(half, nb - half), F->zero());
        for (std::size_t i = 0; i < half; ++i) asum[i] = a[i];
        for (std::size_t i = half; i < na; ++i) asum[i - half] = asum[i - half] + a[i];
        for (std::size_t i = 0; i < half; ++i) bsum[i] = b[i];
        for (std::size_t i = half; i < nb; ++i) bsum[i - half] = bsum[i - half] + b[i];
        mul_into(F, asum.data(), asum.size(), bsum.data(), bsum.size(), mid);
        for (std::size_t i = 0; i < a0b0.size(); ++i) mid[i] = mid[i] - a0b0[i];
        for (std::size_t i = 0; i < a1b1.size(); ++i) mid[i] = mid[i] - a1b1[i];
        for (std::size_t i = 0; i < a0b0.size(); ++i) out[i] = out[i] + a0b0[i];
        for (std::size_t i = 0; i < mid.size(); ++i) out[i + half] = out[i + half] + mid[i];
        for (std::size_t i = 0; i < a1b1.size(); ++i)
            out[i + 2 * half] = out[i + 2 * half] + a1b1[i];
    }

    const Field* field_;
    std::vector<FieldElem> coeffs_;
};

/// Monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

inline Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
    Poly result = Poly::one(base.field());
    base = base % m;
    while (e > 0) {
        if (e & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

inline Poly powmod_u128(Poly base, unsigned __int128 e, const Poly& m) {
    Poly result = Poly::one(base.field());
    base = base % m;
    while (e > 0) {
        if (e & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

/// Inverse of a modulo m via extended Euclid; requires gcd(a, m) = 1.
inline Poly invert_mod(const Poly& a, const Poly& m) {
    const Field* F = a.field();
    Poly r0 = m, r1 = a % m;
    Poly s0 = Poly::zero(F), s1 = Poly::one(F);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.is_zero() || r0.nterms() != 1)
        raise(ErrorCode::DivisionByZero, "element not invertible modulo m");
    return (inv(r0.lead()) * s0) % m;
}

/// Canonical polynomial order: by degree, then coefficients compared from
/// the constant term upward by canonical element index. Zero sorts first.
inline bool poly_less(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return !a.is_zero() < !b.is_zero();
    if (a.nterms() != b.nterms()) return a.nterms() < b.nterms();
    const Field* F = a.field();
    for (std::size_t i = 0; i < a.nterms(); ++i) {
        std::uint64_t ia = F->index_of(a.coeffs()[i]);
        std::uint64_t ib = F->index_of(b.coeffs()[i]);
        if (ia != ib) return ia < ib;
    }
    return false;
}

} // namespace ffint
