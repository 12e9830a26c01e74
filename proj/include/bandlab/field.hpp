#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bandlab {

using coeff_t = std::uint32_t;

namespace detail {

inline bool is_prime_u32(coeff_t n) {
    if (n < 2) return false;
    for (coeff_t d = 2; std::uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over the prime field F_p, as coefficient vectors with the
// constant term first.  Only what modulus generation and extension-field
// reduction need.

inline void pf_trim(std::vector<coeff_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<coeff_t> pf_mul(const std::vector<coeff_t>& a,
                                   const std::vector<coeff_t>& b, coeff_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<coeff_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = coeff_t((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    pf_trim(out);
    return out;
}

// a mod m with m monic.
inline std::vector<coeff_t> pf_mod(std::vector<coeff_t> a,
                                   const std::vector<coeff_t>& m, coeff_t p) {
    pf_trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const coeff_t lead = a.back();
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - dm;
            for (std::size_t i = 0; i + 1 < m.size(); ++i) {
                const coeff_t sub = coeff_t(std::uint64_t(lead) * m[i] % p);
                a[shift + i] = coeff_t((a[shift + i] + p - sub) % p);
            }
        }
        a.pop_back();
        pf_trim(a);
    }
    return a;
}

inline std::vector<coeff_t> pf_sub(std::vector<coeff_t> a,
                                   const std::vector<coeff_t>& b, coeff_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = coeff_t((a[i] + p - b[i]) % p);
    pf_trim(a);
    return a;
}

inline coeff_t pf_inv_scalar(coeff_t c, coeff_t p) {
    // Fermat; p is a small prime and c != 0.
    coeff_t r = 1;
    std::uint64_t base = c, e = p - 2;
    while (e) {
        if (e & 1) r = coeff_t(std::uint64_t(r) * base % p);
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

inline std::pair<std::vector<coeff_t>, std::vector<coeff_t>>
pf_divmod(std::vector<coeff_t> a, const std::vector<coeff_t>& b, coeff_t p) {
    pf_trim(a);
    std::vector<coeff_t> q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, 0);
    const coeff_t lead_inv = pf_inv_scalar(b.back(), p);
    for (std::size_t k = a.size(); k >= b.size(); --k) {
        const std::size_t top = k - 1;
        if (top >= a.size() || a[top] == 0) {
            if (k == b.size()) break;
            continue;
        }
        const coeff_t factor = coeff_t(std::uint64_t(a[top]) * lead_inv % p);
        const std::size_t shift = top - (b.size() - 1);
        q[shift] = factor;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const coeff_t sub = coeff_t(std::uint64_t(factor) * b[i] % p);
            a[shift + i] = coeff_t((a[shift + i] + p - sub) % p);
        }
        if (k == b.size()) break;
    }
    pf_trim(a);
    pf_trim(q);
    return {q, a};
}

// Inverse of a modulo the monic polynomial m, via extended Euclid.
inline std::vector<coeff_t> pf_inverse_mod(std::vector<coeff_t> a,
                                           const std::vector<coeff_t>& m,
                                           coeff_t p) {
    a = pf_mod(std::move(a), m, p);
    if (a.empty()) throw std::domain_error("division by zero in F_q");
    std::vector<coeff_t> r0 = m, r1 = a;
    std::vector<coeff_t> s0 = {}, s1 = {1};
    while (r1.size() > 1) {
        auto [q, r2] = pf_divmod(r0, r1, p);
        std::vector<coeff_t> s2 = pf_sub(s0, pf_mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::domain_error("division by zero in F_q");
    const coeff_t c_inv = pf_inv_scalar(r1[0], p);
    std::vector<coeff_t> inv;
    inv.reserve(s1.size());
    for (coeff_t x : s1) inv.push_back(coeff_t(std::uint64_t(x) * c_inv % p));
    return pf_mod(std::move(inv), m, p);
}

// Trial division; fine for the modulus degrees that occur here.
inline bool pf_irreducible(const std::vector<coeff_t>& f, coeff_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<coeff_t> g(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = coeff_t(c % p);
                c /= p;
            }
            g[d] = 1;
            if (pf_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

/// The coefficient field F_q, q = p^e with p an odd prime.  Immutable after
/// construction; elements keep a pointer to their spec, so a FieldSpec must
/// outlive every element created from it.
class FieldSpec {
public:
    FieldSpec(coeff_t p, coeff_t e, std::vector<coeff_t> modulus)
        : p_(p), e_(e), modulus_(std::move(modulus)) {
        if (p_ == 2 || !detail::is_prime_u32(p_))
            throw std::invalid_argument("FieldSpec: p must be an odd prime");
        if (e_ < 1) throw std::invalid_argument("FieldSpec: e must be >= 1");
        if (e_ == 1) {
            modulus_ = {0, 1};  // ignored for prime fields; keep t as canonical
        } else {
            if (modulus_.size() != std::size_t(e_) + 1 || modulus_.back() != 1)
                throw std::invalid_argument("FieldSpec: modulus must be monic of degree e");
            for (coeff_t c : modulus_)
                if (c >= p_) throw std::invalid_argument("FieldSpec: modulus coefficient out of range");
            if (!detail::pf_irreducible(modulus_, p_))
                throw std::invalid_argument("FieldSpec: modulus is reducible over F_p");
        }
        q_ = 1;
        for (coeff_t i = 0; i < e_; ++i) {
            q_ *= p_;
            if (q_ > (std::uint64_t(1) << 40))
                throw std::invalid_argument("FieldSpec: q too large for exhaustive work");
        }
    }

    /// Field with the deterministically generated modulus.
    static FieldSpec make(coeff_t p, coeff_t e) {
        return FieldSpec(p, e, generate_modulus(p, e));
    }

    /// Smallest monic irreducible of degree e over F_p, scanning coefficient
    /// tuples (c_0..c_{e-1}) in ascending base-p code order (c_0 least
    /// significant digit).  Deterministic, so fixtures are reproducible.
    static std::vector<coeff_t> generate_modulus(coeff_t p, coeff_t e) {
        if (p == 2 || !detail::is_prime_u32(p))
            throw std::invalid_argument("generate_modulus: p must be an odd prime");
        if (e < 1) throw std::invalid_argument("generate_modulus: e must be >= 1");
        if (e == 1) return {0, 1};
        std::uint64_t count = 1;
        for (coeff_t i = 0; i < e; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<coeff_t> f(e + 1, 0);
            std::uint64_t c = code;
            for (coeff_t i = 0; i < e; ++i) {
                f[i] = coeff_t(c % p);
                c /= p;
            }
            f[e] = 1;
            if (detail::pf_irreducible(f, p)) return f;
        }
        throw std::logic_error("generate_modulus: no irreducible found");  // unreachable
    }

    coeff_t p() const { return p_; }
    coeff_t e() const { return e_; }
    std::uint64_t q() const { return q_; }
    const std::vector<coeff_t>& modulus() const { return modulus_; }

    bool same(const FieldSpec& o) const {
        return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
    }
    friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.same(b); }

private:
    coeff_t p_;
    coeff_t e_;
    std::vector<coeff_t> modulus_;
    std::uint64_t q_;
};

/// Element of F_q as a length-e residue vector, always canonically reduced.
class Fq {
public:
    Fq() = default;  // detached placeholder; arithmetic on it throws

    Fq(const FieldSpec& field, std::vector<coeff_t> coords)
        : field_(&field), c_(std::move(coords)) {
        if (c_.size() != field.e())
            throw std::invalid_argument("Fq: coordinate vector must have length e");
        for (coeff_t x : c_)
            if (x >= field.p()) throw std::invalid_argument("Fq: coordinate out of range");
    }

    static Fq zero(const FieldSpec& field) {
        return Fq(field, std::vector<coeff_t>(field.e(), 0));
    }
    static Fq one(const FieldSpec& field) { return from_int(field, 1); }

    /// Element with base-p digits of idx as coordinates (c_0 least significant).
    static Fq from_index(const FieldSpec& field, std::uint64_t idx) {
        if (idx >= field.q()) throw std::invalid_argument("Fq: index out of range");
        std::vector<coeff_t> c(field.e());
        for (coeff_t i = 0; i < field.e(); ++i) {
            c[i] = coeff_t(idx % field.p());
            idx /= field.p();
        }
        return Fq(field, std::move(c));
    }

    /// Image of an integer under Z -> F_p c F_q.
    static Fq from_int(const FieldSpec& field, long long v) {
        long long r = v % field.p();
        if (r < 0) r += field.p();
        std::vector<coeff_t> c(field.e(), 0);
        c[0] = coeff_t(r);
        return Fq(field, std::move(c));
    }

    std::uint64_t index() const {
        std::uint64_t idx = 0;
        for (std::size_t i = c_.size(); i-- > 0;) idx = idx * field().p() + c_[i];
        return idx;
    }

    bool attached() const { return field_ != nullptr; }
    const FieldSpec& field() const {
        if (!field_) throw std::logic_error("Fq: detached element");
        return *field_;
    }
    const std::vector<coeff_t>& coords() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](coeff_t x) { return x == 0; });
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        return std::all_of(c_.begin() + 1, c_.end(), [](coeff_t x) { return x == 0; });
    }

    friend Fq operator+(const Fq& a, const Fq& b) {
        check_compatible(a, b);
        const coeff_t p = a.field().p();
        std::vector<coeff_t> c(a.c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff_t((a.c_[i] + b.c_[i]) % p);
        return Fq(a.field(), std::move(c));
    }

    friend Fq operator-(const Fq& a, const Fq& b) {
        check_compatible(a, b);
        const coeff_t p = a.field().p();
        std::vector<coeff_t> c(a.c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff_t((a.c_[i] + p - b.c_[i]) % p);
        return Fq(a.field(), std::move(c));
    }

    Fq operator-() const {
        const coeff_t p = field().p();
        std::vector<coeff_t> c(c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff_t((p - c_[i]) % p);
        return Fq(field(), std::move(c));
    }

    friend Fq operator*(const Fq& a, const Fq& b) {
        check_compatible(a, b);
        const FieldSpec& F = a.field();
        if (F.e() == 1)
            return Fq(F, {coeff_t(std::uint64_t(a.c_[0]) * b.c_[0] % F.p())});
        auto prod = detail::pf_mul(a.c_, b.c_, F.p());
        prod = detail::pf_mod(std::move(prod), F.modulus(), F.p());
        prod.resize(F.e(), 0);
        return Fq(F, std::move(prod));
    }

    Fq inverse() const {
        if (is_zero()) throw std::domain_error("division by zero in F_q");
        const FieldSpec& F = field();
        auto inv = detail::pf_inverse_mod(c_, F.modulus(), F.p());
        inv.resize(F.e(), 0);
        return Fq(F, std::move(inv));
    }

    friend Fq operator/(const Fq& a, const Fq& b) { return a * b.inverse(); }

    Fq pow(std::uint64_t n) const {
        Fq base = *this, acc = Fq::one(field());
        while (n) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }

    /// Tr(x) = sum of the e Frobenius conjugates, landing in F_p.
    coeff_t trace() const {
        const FieldSpec& F = field();
        if (F.e() == 1) return c_[0];
        Fq conj = *this, total = *this;
        for (coeff_t i = 1; i < F.e(); ++i) {
            conj = conj.pow(F.p());
            total = total + conj;
        }
        for (std::size_t i = 1; i < total.c_.size(); ++i)
            if (total.c_[i] != 0) throw std::logic_error("trace left the prime field");
        return total.c_[0];
    }

    friend bool operator==(const Fq& a, const Fq& b) {
        if (!a.field_ || !b.field_) return a.field_ == b.field_;
        if (a.field_ != b.field_ && !a.field_->same(*b.field_)) return false;
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

private:
    static void check_compatible(const Fq& a, const Fq& b) {
        if (!a.field_ || !b.field_)
            throw std::invalid_argument("Fq: arithmetic on detached element");
        if (a.field_ != b.field_ && !a.field_->same(*b.field_))
            throw std::invalid_argument("Fq: mismatched FieldSpec");
    }

    const FieldSpec* field_ = nullptr;
    std::vector<coeff_t> c_;
};

inline std::string to_string(const Fq& x) {
    if (x.field().e() == 1) return std::to_string(x.coords()[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(x.coords()[i]);
    }
    return s + ")";
}

/// Choice of a non-trivial additive character: psi(x) = exp(2 pi i Tr(a x)/p).
class CharacterSelector {
public:
    explicit CharacterSelector(Fq scale) : scale_(std::move(scale)) {
        if (scale_.is_zero())
            throw std::invalid_argument("CharacterSelector: scale must be nonzero");
    }
    const Fq& scale() const { return scale_; }

private:
    Fq scale_;
};

inline std::complex<double> unit_root(coeff_t p, coeff_t r) {
    const double angle = 2.0 * std::numbers::pi * double(r % p) / double(p);
    return {std::cos(angle), std::sin(angle)};
}

inline std::complex<double> char_value(const CharacterSelector& sel, const Fq& x) {
    const Fq arg = sel.scale() * x;
    return unit_root(x.field().p(), arg.trace());
}

}  // namespace bandlab
