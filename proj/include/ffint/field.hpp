#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ffint/errors.hpp"

namespace ffint {

/// Extension degrees are capped so elements fit a fixed inline array.
inline constexpr std::uint32_t kMaxExtDegree = 8;

/// Characteristic bound: products (p-1)^2 + (p-1) must fit in 64 bits, so
/// arithmetic can reduce per term without overflow.
inline constexpr std::uint64_t kMaxCharacteristic = (1ULL << 31) - 1;

namespace zp {

// Arithmetic on F_p[u] as plain coefficient vectors, low degree first.
// Used for modulus validation/selection and extension-field inversion;
// kept separate from the general Poly type to avoid a layering cycle.

using Vec = std::vector<std::uint32_t>;

inline void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; } // -1 for zero

inline Vec mul(const Vec& a, const Vec& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Vec out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(a[i]) * b[j] + out[i + j]) % p);
        }
    }
    trim(out);
    return out;
}

inline std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
    // extended Euclid on integers; a nonzero mod p
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    while (new_r != 0) {
        std::int64_t qv = r / new_r;
        std::int64_t tmp = t - qv * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - qv * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

inline void divmod(const Vec& a, const Vec& b, std::uint64_t p, Vec& q, Vec& r) {
    r = a;
    trim(r);
    q.clear();
    if (b.empty()) raise(ErrorCode::DivisionByZero, "zero divisor in F_p[u]");
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    std::uint64_t lead_inv = inv_mod_p(b.back(), p);
    for (int i = static_cast<int>(r.size()) - static_cast<int>(b.size()); i >= 0; --i) {
        std::uint64_t c = r[i + b.size() - 1] % p;
        if (c == 0) continue;
        std::uint64_t factor = c * lead_inv % p;
        q[i] = static_cast<std::uint32_t>(factor);
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t sub = factor * b[j] % p;
            std::uint64_t cur = r[i + j];
            r[i + j] = static_cast<std::uint32_t>((cur + p - sub) % p);
        }
    }
    trim(r);
}

inline Vec mod(const Vec& a, const Vec& m, std::uint64_t p) {
    Vec q, r;
    divmod(a, m, p, q, r);
    return r;
}

inline Vec make_monic(Vec a, std::uint64_t p) {
    trim(a);
    if (a.empty()) return a;
    std::uint64_t li = inv_mod_p(a.back(), p);
    for (auto& c : a) c = static_cast<std::uint32_t>(c * li % p);
    return a;
}

inline Vec gcd(Vec a, Vec b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a), p);
}

inline Vec powmod(Vec base, std::uint64_t e, const Vec& m, std::uint64_t p) {
    Vec result{1};
    base = mod(base, m, p);
    while (e > 0) {
        if (e & 1) result = mod(mul(result, base, p), m, p);
        base = mod(mul(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

/// Extended Euclid: returns s with s*a = gcd(a, m) mod m. For invertible a
/// mod an irreducible m this yields the inverse once gcd is normalized to 1.
inline Vec invert(const Vec& a, const Vec& m, std::uint64_t p) {
    Vec r0 = m, r1 = mod(a, m, p);
    Vec s0{}, s1{1};
    while (!r1.empty()) {
        Vec q, r2;
        divmod(r0, r1, p, q, r2);
        Vec qs = mul(q, s1, p);
        Vec s2(std::max(s0.size(), qs.size()), 0);
        for (std::size_t i = 0; i < s2.size(); ++i) {
            std::uint64_t x = i < s0.size() ? s0[i] : 0;
            std::uint64_t y = i < qs.size() ? qs[i] : 0;
            s2[i] = static_cast<std::uint32_t>((x + p - y % p) % p);
        }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (deg(r0) != 0) raise(ErrorCode::DivisionByZero, "element not invertible");
    std::uint64_t li = inv_mod_p(r0[0], p);
    for (auto& c : s0) c = static_cast<std::uint32_t>(c * li % p);
    trim(s0);
    return mod(s0, m, p);
}

/// Rabin test for monic m of degree n over F_p: u^{p^n} = u mod m, and
/// gcd(u^{p^{n/r}} - u, m) = 1 for every prime r | n.
inline bool is_irreducible(const Vec& m, std::uint64_t p) {
    int n = deg(m);
    if (n < 1) return false;
    if (n == 1) return true;
    // Frobenius iterates u^{p^i} mod m
    std::vector<Vec> frob(static_cast<std::size_t>(n) + 1);
    frob[0] = mod(Vec{0, 1}, m, p);
    for (int i = 1; i <= n; ++i) frob[i] = powmod(frob[i - 1], p, m, p);
    if (frob[static_cast<std::size_t>(n)] != frob[0]) return false;
    std::vector<int> prime_divs;
    int rem = n;
    for (int r = 2; r * r <= rem; ++r) {
        if (rem % r == 0) {
            prime_divs.push_back(r);
            while (rem % r == 0) rem /= r;
        }
    }
    if (rem > 1) prime_divs.push_back(rem);
    for (int r : prime_divs) {
        Vec diff = frob[static_cast<std::size_t>(n / r)];
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
        trim(diff);
        if (deg(gcd(diff, m, p)) != 0) return false;
    }
    return true;
}

} // namespace zp

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Element of F_{p^e} in polynomial-basis coordinates, reduced mod p.
/// Plain value; equality is coordinate equality under a shared owner.
class FieldElem {
   public:
    FieldElem() : owner_(nullptr) { coords_.fill(0); }

    const Field* owner() const { return owner_; }
    bool is_zero() const {
        for (auto c : coords_)
            if (c != 0) return false;
        return true;
    }
    std::uint32_t coord(std::uint32_t i) const { return coords_[i]; }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.owner_ == b.owner_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    // Arithmetic operators are defined after Field below.

   private:
    friend class Field;
    const Field* owner_;
    std::array<std::uint32_t, kMaxExtDegree> coords_;
};

/// The finite field F_q, q = p^e. Immutable after construction and safely
/// shareable across threads. For e > 1 the representation is
/// F_p[u]/(modulus) with a monic irreducible modulus of degree e.
class Field {
   public:
    /// p must be prime (and <= 2^31 - 1, see kMaxCharacteristic); e in
    /// [1, kMaxExtDegree]; q = p^e must fit in 64 bits. When e > 1 and no
    /// modulus is supplied, the lexicographically least monic irreducible of
    /// degree e is selected, coefficients compared low degree first.
    static FieldPtr make(std::uint64_t p, std::uint32_t e,
                         std::optional<std::vector<std::int64_t>> modulus = std::nullopt) {
        if (p < 2 || !is_prime(p)) raise(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        if (p > kMaxCharacteristic)
            raise(ErrorCode::ConfigError, "characteristic exceeds machine-word bound 2^31-1");
        if (e < 1 || e > kMaxExtDegree)
            raise(ErrorCode::ConfigError,
                  "extension degree must be in [1, " + std::to_string(kMaxExtDegree) + "]");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            if (q > (std::uint64_t(1) << 62) / p)
                raise(ErrorCode::ConfigError, "field size p^e does not fit in 64 bits");
            q *= p;
        }
        zp::Vec mod;
        if (e == 1) {
            if (modulus) raise(ErrorCode::BadModulus, "modulus not allowed for prime fields");
        } else if (modulus) {
            mod.reserve(modulus->size());
            for (auto c : *modulus) {
                std::int64_t r = c % static_cast<std::int64_t>(p);
                if (r < 0) r += static_cast<std::int64_t>(p);
                mod.push_back(static_cast<std::uint32_t>(r));
            }
            zp::trim(mod);
            if (zp::deg(mod) != static_cast<int>(e))
                raise(ErrorCode::BadModulus, "modulus degree must equal e");
            if (mod.back() != 1) raise(ErrorCode::BadModulus, "modulus must be monic");
            if (!zp::is_irreducible(mod, p))
                raise(ErrorCode::BadModulus, "modulus is reducible over F_p");
        } else {
            mod = least_irreducible(p, e);
        }
        return FieldPtr(new Field(p, e, q, std::move(mod)));
    }

    std::uint64_t characteristic() const { return p_; }
    std::uint32_t ext_degree() const { return e_; }
    std::uint64_t size() const { return q_; }
    const zp::Vec& modulus() const { return mod_; }

    FieldElem zero() const { return raw({}); }
    FieldElem one() const { return from_int(1); }

    FieldElem from_int(std::int64_t n) const {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        FieldElem out;
        out.owner_ = this;
        out.coords_[0] = static_cast<std::uint32_t>(r);
        return out;
    }

    FieldElem elem(const std::vector<std::int64_t>& coords) const {
        if (coords.size() > e_) raise(ErrorCode::ConfigError, "too many coordinates for field element");
        FieldElem out;
        out.owner_ = this;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            std::int64_t r = coords[i] % static_cast<std::int64_t>(p_);
            if (r < 0) r += static_cast<std::int64_t>(p_);
            out.coords_[i] = static_cast<std::uint32_t>(r);
        }
        return out;
    }

    /// Canonical integer index: sum c_i p^i in [0, q). from_index inverts it;
    /// enumeration in index order is the field's canonical element order.
    std::uint64_t index_of(const FieldElem& a) const {
        std::uint64_t idx = 0;
        for (std::uint32_t i = e_; i-- > 0;) idx = idx * p_ + a.coords_[i];
        return idx;
    }

    FieldElem from_index(std::uint64_t idx) const {
        FieldElem out;
        out.owner_ = this;
        for (std::uint32_t i = 0; i < e_; ++i) {
            out.coords_[i] = static_cast<std::uint32_t>(idx % p_);
            idx /= p_;
        }
        return out;
    }

    /// All q elements in index order. Intended for small fields; guarded.
    std::vector<FieldElem> enumerate() const {
        if (q_ > (1ULL << 24)) raise(ErrorCode::BudgetExceeded, "field too large to enumerate");
        std::vector<FieldElem> out;
        out.reserve(static_cast<std::size_t>(q_));
        for (std::uint64_t i = 0; i < q_; ++i) out.push_back(from_index(i));
        return out;
    }

    FieldElem add(const FieldElem& a, const FieldElem& b) const {
        check_owner(a);
        check_owner(b);
        FieldElem out;
        out.owner_ = this;
        for (std::uint32_t i = 0; i < e_; ++i) {
            std::uint64_t s = static_cast<std::uint64_t>(a.coords_[i]) + b.coords_[i];
            if (s >= p_) s -= p_;
            out.coords_[i] = static_cast<std::uint32_t>(s);
        }
        return out;
    }

    FieldElem sub(const FieldElem& a, const FieldElem& b) const {
        check_owner(a);
        check_owner(b);
        FieldElem out;
        out.owner_ = this;
        for (std::uint32_t i = 0; i < e_; ++i) {
            std::uint64_t s = static_cast<std::uint64_t>(a.coords_[i]) + p_ - b.coords_[i];
            if (s >= p_) s -= p_;
            out.coords_[i] = static_cast<std::uint32_t>(s);
        }
        return out;
    }

    FieldElem neg(const FieldElem& a) const {
        check_owner(a);
        FieldElem out;
        out.owner_ = this;
        for (std::uint32_t i = 0; i < e_; ++i)
            out.coords_[i] = a.coords_[i] == 0 ? 0 : static_cast<std::uint32_t>(p_ - a.coords_[i]);
        return out;
    }

    FieldElem mul(const FieldElem& a, const FieldElem& b) const {
        check_owner(a);
        check_owner(b);
        if (e_ == 1) {
            FieldElem out;
            out.owner_ = this;
            out.coords_[0] = static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(a.coords_[0]) * b.coords_[0] % p_);
            return out;
        }
        std::array<std::uint64_t, 2 * kMaxExtDegree> buf{};
        for (std::uint32_t i = 0; i < e_; ++i) {
            if (a.coords_[i] == 0) continue;
            for (std::uint32_t j = 0; j < e_; ++j)
                buf[i + j] = (buf[i + j] + static_cast<std::uint64_t>(a.coords_[i]) * b.coords_[j]) % p_;
        }
        // reduce by the monic modulus
        for (std::uint32_t i = 2 * e_ - 2; i >= e_; --i) {
            std::uint64_t c = buf[i];
            if (c == 0) continue;
            buf[i] = 0;
            for (std::uint32_t j = 0; j < e_; ++j) {
                std::uint64_t sub = c * mod_[j] % p_;
                buf[i - e_ + j] = (buf[i - e_ + j] + p_ - sub) % p_;
            }
        }
        FieldElem out;
        out.owner_ = this;
        for (std::uint32_t i = 0; i < e_; ++i) out.coords_[i] = static_cast<std::uint32_t>(buf[i]);
        return out;
    }

    FieldElem inv(const FieldElem& a) const {
        check_owner(a);
        if (a.is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero field element");
        if (e_ == 1) {
            FieldElem out;
            out.owner_ = this;
            out.coords_[0] = static_cast<std::uint32_t>(zp::inv_mod_p(a.coords_[0], p_));
            return out;
        }
        zp::Vec av(a.coords_.begin(), a.coords_.begin() + e_);
        zp::trim(av);
        zp::Vec iv = zp::invert(av, mod_, p_);
        FieldElem out;
        out.owner_ = this;
        for (std::size_t i = 0; i < iv.size(); ++i) out.coords_[i] = iv[i];
        return out;
    }

    /// Square-and-multiply; negative exponents invert first (a nonzero).
    FieldElem pow(const FieldElem& a, std::int64_t exp) const {
        check_owner(a);
        FieldElem base = a;
        std::uint64_t e;
        if (exp < 0) {
            base = inv(a);
            e = static_cast<std::uint64_t>(-(exp + 1)) + 1;
        } else {
            e = static_cast<std::uint64_t>(exp);
        }
        FieldElem result = one();
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    /// Frobenius x -> x^p computed structurally as the linear extension of
    /// u -> u^p mod modulus (coordinates are F_p-fixed).
    FieldElem frobenius(const FieldElem& a) const {
        check_owner(a);
        if (e_ == 1) return a;
        zp::Vec up = zp::powmod({0, 1}, p_, mod_, p_);
        zp::Vec acc{1};
        zp::Vec result{};
        for (std::uint32_t i = 0; i < e_; ++i) {
            if (a.coords_[i] != 0) {
                if (result.size() < acc.size()) result.resize(acc.size(), 0);
                for (std::size_t j = 0; j < acc.size(); ++j)
                    result[j] = static_cast<std::uint32_t>(
                        (result[j] + static_cast<std::uint64_t>(a.coords_[i]) * acc[j]) % p_);
            }
            acc = zp::mod(zp::mul(acc, up, p_), mod_, p_);
        }
        zp::trim(result);
        FieldElem out;
        out.owner_ = this;
        for (std::size_t i = 0; i < result.size(); ++i) out.coords_[i] = result[i];
        return out;
    }

    std::string elem_str(const FieldElem& a) const {
        check_owner(a);
        if (e_ == 1) return std::to_string(a.coords_[0]);
        std::ostringstream os;
        bool first = true;
        for (std::uint32_t i = e_; i-- > 0;) {
            std::uint32_t c = a.coords_[i];
            if (c == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0) {
                os << c;
            } else {
                if (c != 1) os << c << "*";
                os << "u";
                if (i > 1) os << "^" << i;
            }
        }
        if (first) os << "0";
        return os.str();
    }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

   private:
    Field(std::uint64_t p, std::uint32_t e, std::uint64_t q, zp::Vec mod)
        : p_(p), e_(e), q_(q), mod_(std::move(mod)) {}

    void check_owner(const FieldElem& a) const {
        if (a.owner_ != this) raise(ErrorCode::FieldMismatch, "elements belong to different fields");
    }

    FieldElem raw(std::array<std::uint32_t, kMaxExtDegree> c) const {
        FieldElem out;
        out.owner_ = this;
        out.coords_ = c;
        return out;
    }

    static zp::Vec least_irreducible(std::uint64_t p, std::uint32_t e) {
        // Odometer over (c_0, ..., c_{e-1}) with c_0 the most significant
        // comparison position, i.e. low-degree-first lexicographic order.
        std::vector<std::uint32_t> c(e, 0);
        for (;;) {
            zp::Vec cand(c.begin(), c.end());
            cand.push_back(1); // monic
            if (zp::is_irreducible(cand, p)) return cand;
            std::uint32_t i = e;
            while (i-- > 0) {
                if (++c[i] < p) break;
                c[i] = 0;
                if (i == 0) raise(ErrorCode::InternalError, "no irreducible modulus found");
            }
        }
    }

    std::uint64_t p_;
    std::uint32_t e_;
    std::uint64_t q_;
    zp::Vec mod_; // empty for e == 1
};

inline FieldElem operator+(const FieldElem& a, const FieldElem& b) { return a.owner()->add(a, b); }
inline FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a.owner()->sub(a, b); }
inline FieldElem operator*(const FieldElem& a, const FieldElem& b) { return a.owner()->mul(a, b); }
inline FieldElem operator-(const FieldElem& a) { return a.owner()->neg(a); }

inline FieldElem inv(const FieldElem& a) { return a.owner()->inv(a); }
inline FieldElem pow(const FieldElem& a, std::int64_t e) { return a.owner()->pow(a, e); }

/// Canonical element order: by integer index.
inline bool elem_less(const FieldElem& a, const FieldElem& b) {
    return a.owner()->index_of(a) < b.owner()->index_of(b);
}

} // namespace ffint
