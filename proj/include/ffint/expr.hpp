#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>

#include "ffint/curve.hpp"

namespace ffint {

namespace detail {

/// Parsed value (a + y*b) / den; b stays zero on the projective line and
/// den stays 1 on hyperelliptic models.
struct ExprValue {
    Poly a, b, den;
};

class ExprParser {
   public:
    ExprParser(CurvePtr curve, const std::string& src) : curve_(std::move(curve)), src_(src) {}

    FunctionElem parse() {
        ExprValue v = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return finish(std::move(v));
    }

   private:
    [[noreturn]] void fail(const std::string& msg) {
        raise(ErrorCode::ConfigError,
              "expression parse error at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    ExprValue parse_expr() {
        ExprValue v = parse_term();
        for (;;) {
            if (eat('+'))
                v = add(v, parse_term());
            else if (eat('-'))
                v = add(v, negate(parse_term()));
            else
                return v;
        }
    }

    ExprValue parse_term() {
        ExprValue v = parse_factor();
        for (;;) {
            if (eat('*'))
                v = mul(v, parse_factor());
            else if (eat('/'))
                v = div(v, parse_factor());
            else
                return v;
        }
    }

    ExprValue parse_factor() {
        ExprValue v = parse_atom();
        if (eat('^')) {
            std::uint64_t e = parse_uint();
            if (e > 64) fail("exponent too large");
            ExprValue acc = constant(1);
            for (std::uint64_t i = 0; i < e; ++i) acc = mul(acc, v);
            return acc;
        }
        return v;
    }

    ExprValue parse_atom() {
        skip_ws();
        if (eat('(')) {
            ExprValue v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (eat('-')) return negate(parse_atom());
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return constant(parse_uint());
        if (c == 't' || c == 'x') {
            if (curve_->is_p1() && c != 't') fail("use the variable t on the projective line");
            if (!curve_->is_p1() && c != 'x') fail("use the variables x, y on hyperelliptic models");
            ++pos_;
            const Field* F = curve_->field();
            return {Poly::variable(F), Poly::zero(F), Poly::one(F)};
        }
        if (c == 'y') {
            if (curve_->is_p1()) fail("y is not defined on the projective line");
            ++pos_;
            const Field* F = curve_->field();
            return {Poly::zero(F), Poly::one(F), Poly::one(F)};
        }
        fail("expected a number, a variable or '('");
    }

    std::uint64_t parse_uint() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail("expected an integer");
        std::uint64_t v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
            if (v > (1ULL << 62)) fail("integer literal too large");
            ++pos_;
        }
        return v;
    }

    ExprValue constant(std::uint64_t n) {
        const Field* F = curve_->field();
        return {Poly::constant(F, F->from_int(static_cast<std::int64_t>(n % F->characteristic()))),
                Poly::zero(F), Poly::one(F)};
    }

    ExprValue negate(ExprValue v) { return {-v.a, -v.b, v.den}; }

    ExprValue add(const ExprValue& x, const ExprValue& y) {
        return {x.a * y.den + y.a * x.den, x.b * y.den + y.b * x.den, x.den * y.den};
    }

    ExprValue mul(const ExprValue& x, const ExprValue& y) {
        Poly a = x.a * y.a;
        Poly b = x.a * y.b + x.b * y.a;
        if (!x.b.is_zero() && !y.b.is_zero()) a = a + curve_->fpoly() * x.b * y.b; // y^2 = f
        return {std::move(a), std::move(b), x.den * y.den};
    }

    ExprValue div(const ExprValue& x, const ExprValue& y) {
        if (!curve_->is_p1()) fail("division is not supported on hyperelliptic models");
        if (y.a.is_zero()) fail("division by zero");
        return {x.a * y.den, Poly::zero(curve_->field()), x.den * y.a};
    }

    FunctionElem finish(ExprValue v) {
        const Field* F = curve_->field();
        if (!curve_->is_p1()) {
            if (v.den.nterms() != 1) fail("nonconstant denominator on a hyperelliptic model");
            FieldElem c = inv(v.den.coeffs()[0]);
            return FunctionElem::hyper(curve_, c * v.a, c * v.b);
        }
        // reduce and split the denominator into rational points
        Poly g = gcd(v.a, v.den);
        if (g.nterms() > 1) {
            v.a = v.a / g;
            v.den = v.den / g;
        }
        FieldElem unit = v.den.is_zero() ? F->one() : v.den.lead();
        Poly num = inv(unit) * v.a;
        Poly den = v.den.monic();
        std::vector<std::pair<FieldElem, std::uint32_t>> poles;
        Rng rng(0);
        if (den.nterms() > 1) {
            for (const auto& [pi, mult] : factor(den, rng).factors) {
                if (pi.nterms() != 2)
                    fail("denominator must split into rational points over F_q");
                poles.emplace_back(-pi.coeffs()[0], mult);
            }
        }
        return FunctionElem::rational(curve_, std::move(num), std::move(poles));
    }

    CurvePtr curve_;
    const std::string& src_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse a function expression: integer coefficients and the variable t on
/// the projective line (with '/' building rational functions), or x and y
/// on hyperelliptic models. Operators + - * / ^ and parentheses.
inline FunctionElem parse_function(const CurvePtr& curve, const std::string& src) {
    return detail::ExprParser(curve, src).parse();
}

} // namespace ffint
