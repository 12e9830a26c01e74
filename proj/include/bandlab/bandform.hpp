#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bandlab/poly.hpp"

namespace bandlab {

/// Finitely supported two-sided coefficient table A(z) = sum a_v z^v.
/// Normalized so both endpoint coefficients are nonzero; the zero symbol has
/// an empty table.
class LaurentSymbol {
public:
    explicit LaurentSymbol(const FieldSpec& field) : field_(&field) {}

    LaurentSymbol(const FieldSpec& field, int lo, std::vector<Fq> coeffs)
        : field_(&field), lo_(lo), c_(std::move(coeffs)) {
        for (const Fq& x : c_)
            if (!x.attached() || !x.field().same(field))
                throw std::invalid_argument("LaurentSymbol: coefficient from a different field");
        normalize();
    }

    static LaurentSymbol from_poly(const Poly& f) {
        return LaurentSymbol(f.field(), 0, f.coeffs());
    }
    static LaurentSymbol constant(const FieldSpec& field, const Fq& value) {
        return LaurentSymbol(field, 0, {value});
    }

    const FieldSpec& field() const { return *field_; }
    bool is_zero() const { return c_.empty(); }
    int lo() const {
        if (is_zero()) throw std::invalid_argument("LaurentSymbol: zero symbol has no support");
        return lo_;
    }
    int hi() const { return lo() + int(c_.size()) - 1; }

    Fq coeff(int v) const {
        if (c_.empty() || v < lo_ || v >= lo_ + int(c_.size())) return Fq::zero(*field_);
        return c_[v - lo_];
    }
    Fq constant_term() const { return coeff(0); }

    /// S(1/z): support reflected through 0.
    LaurentSymbol inverted() const {
        if (is_zero()) return *this;
        std::vector<Fq> rev(c_.rbegin(), c_.rend());
        return LaurentSymbol(*field_, -hi(), std::move(rev));
    }

    bool is_symmetric() const { return *this == inverted(); }

    LaurentSymbol shifted(int k) const {  // z^k * S(z)
        if (is_zero()) return *this;
        return LaurentSymbol(*field_, lo_ + k, c_);
    }

    /// Symbol with support in [0, inf) as a polynomial; throws otherwise.
    Poly to_poly() const {
        if (is_zero()) return Poly(*field_);
        if (lo_ < 0) throw std::invalid_argument("LaurentSymbol: negative support");
        std::vector<Fq> c(lo_, Fq::zero(*field_));
        c.insert(c.end(), c_.begin(), c_.end());
        return Poly(*field_, std::move(c));
    }

    friend LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b) {
        check_compatible(a, b);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const int lo = std::min(a.lo_, b.lo_);
        const int hi = std::max(a.hi(), b.hi());
        std::vector<Fq> c(hi - lo + 1, Fq::zero(a.field()));
        for (int v = lo; v <= hi; ++v) c[v - lo] = a.coeff(v) + b.coeff(v);
        return LaurentSymbol(a.field(), lo, std::move(c));
    }

    friend LaurentSymbol operator-(const LaurentSymbol& a, const LaurentSymbol& b) {
        return a + (-b);
    }

    LaurentSymbol operator-() const {
        std::vector<Fq> c(c_);
        for (Fq& x : c) x = -x;
        return LaurentSymbol(*field_, lo_, std::move(c));
    }

    friend LaurentSymbol operator*(const LaurentSymbol& a, const LaurentSymbol& b) {
        check_compatible(a, b);
        if (a.is_zero() || b.is_zero()) return LaurentSymbol(a.field());
        std::vector<Fq> c(a.c_.size() + b.c_.size() - 1, Fq::zero(a.field()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return LaurentSymbol(a.field(), a.lo_ + b.lo_, std::move(c));
    }

    friend bool operator==(const LaurentSymbol& a, const LaurentSymbol& b) {
        if (!a.field_->same(*b.field_)) return false;
        if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
        return a.lo_ == b.lo_ && a.c_ == b.c_;
    }
    friend bool operator!=(const LaurentSymbol& a, const LaurentSymbol& b) { return !(a == b); }

private:
    static void check_compatible(const LaurentSymbol& a, const LaurentSymbol& b) {
        if (!a.field_->same(*b.field_))
            throw std::invalid_argument("LaurentSymbol: mismatched FieldSpec");
    }
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        while (!c_.empty() && c_.front().is_zero()) {
            c_.erase(c_.begin());
            ++lo_;
        }
        if (c_.empty()) lo_ = 0;
    }

    const FieldSpec* field_;
    int lo_ = 0;
    std::vector<Fq> c_;
};

/// g(z) g(1/z) as a symbol; equals z^(-deg g) g*(z) g(z).
inline LaurentSymbol autocorrelation_symbol(const Poly& g) {
    const LaurentSymbol s = LaurentSymbol::from_poly(g);
    return s * s.inverted();
}

/// The fixed band data: bandwidth m, coefficients c_0..c_m with c_m != 0,
/// and one optional linear digit form per degree (absent degrees mean 0).
class BandSpec {
public:
    BandSpec(const FieldSpec& field, std::vector<Fq> c)
        : field_(&field), c_(std::move(c)) {
        if (c_.empty()) throw std::invalid_argument("BandSpec: band must have c_0..c_m");
        for (const Fq& x : c_)
            if (!x.attached() || !x.field().same(field))
                throw std::invalid_argument("BandSpec: coefficient from a different field");
        if (c_.back().is_zero()) throw std::invalid_argument("BandSpec: c_m must be nonzero");
    }

    static BandSpec from_indices(const FieldSpec& field, std::initializer_list<std::uint64_t> idx) {
        std::vector<Fq> c;
        for (std::uint64_t i : idx) c.push_back(Fq::from_index(field, i));
        return BandSpec(field, std::move(c));
    }

    const FieldSpec& field() const { return *field_; }
    int bandwidth() const { return int(c_.size()) - 1; }
    const std::vector<Fq>& band() const { return c_; }

    void set_linear_form(int n, std::vector<Fq> lambda) {
        if (n < 0 || lambda.size() != std::size_t(n) + 1)
            throw std::invalid_argument("BandSpec: linear form for degree n needs n+1 coefficients");
        linear_[n] = std::move(lambda);
    }
    /// Coefficients of ell_n, or empty when the form is zero.
    std::span<const Fq> linear_form(int n) const {
        const auto it = linear_.find(n);
        if (it == linear_.end()) return {};
        return it->second;
    }
    const std::map<int, std::vector<Fq>>& linear_forms() const { return linear_; }

private:
    const FieldSpec* field_;
    std::vector<Fq> c_;
    std::map<int, std::vector<Fq>> linear_;
};

/// S^(j)(f) = sum_{i >= j} f_i f_{i-j}, over an explicit digit vector.
inline Fq correlation_sj(const FieldSpec& F, std::span<const Fq> digits, int j) {
    if (j < 0) throw std::invalid_argument("correlation_sj: j must be >= 0");
    Fq acc = Fq::zero(F);
    for (std::size_t i = j; i < digits.size(); ++i)
        acc = acc + digits[i] * digits[i - j];
    return acc;
}

/// Digit vector of length n+1 for f (missing coefficients are zero).
inline std::vector<Fq> digits_of(const Poly& f, int n) {
    if (f.degree() > n) throw std::invalid_argument("digits_of: degree exceeds digit length");
    std::vector<Fq> d(n + 1, Fq::zero(f.field()));
    for (int i = 0; i <= f.degree(); ++i) d[i] = f.coeff(i);
    return d;
}

/// Q_A on an explicit digit vector f_0..f_n; the caller controls f_n, so both
/// monic inputs and padded products are fine.
inline Fq q_value(const BandSpec& spec, std::span<const Fq> digits) {
    if (digits.empty()) throw std::invalid_argument("q_value: empty digit vector");
    const FieldSpec& F = spec.field();
    const int n = int(digits.size()) - 1;
    Fq acc = Fq::zero(F);
    for (int j = 0; j <= spec.bandwidth(); ++j)
        acc = acc + spec.band()[j] * correlation_sj(F, digits, j);
    const auto lambda = spec.linear_form(n);
    for (std::size_t i = 0; i < lambda.size(); ++i) acc = acc + lambda[i] * digits[i];
    return acc;
}

inline Fq q_value(const BandSpec& spec, const Poly& f, int n) {
    const auto d = digits_of(f, n);
    return q_value(spec, d);
}

/// A(z) = c_0 + (1/2) sum_{l=1..m} c_l (z^l + z^-l); symmetric by construction.
inline LaurentSymbol symbol_A(const BandSpec& spec) {
    const FieldSpec& F = spec.field();
    const int m = spec.bandwidth();
    const Fq half = Fq::from_int(F, 2).inverse();
    std::vector<Fq> c(2 * m + 1, Fq::zero(F));
    c[m] = spec.band()[0];
    for (int l = 1; l <= m; ++l) {
        const Fq v = half * spec.band()[l];
        c[m + l] = v;
        c[m - l] = v;
    }
    return LaurentSymbol(F, -m, std::move(c));
}

/// P(z) = z^m A(z); P(0) = c_m/2 != 0 for m >= 1, and deg P = 2m.
inline Poly symbol_P(const BandSpec& spec) {
    return symbol_A(spec).shifted(spec.bandwidth()).to_poly();
}

/// Constant term of A(z) f(z) f(1/z) - the quadratic part of Q_A.
inline Fq quadratic_part_ct(const BandSpec& spec, const Poly& f) {
    return (symbol_A(spec) * autocorrelation_symbol(f)).constant_term();
}

/// Half-polar form B_A(f,h) = CT A(z) f(z) h(1/z).
inline Fq half_polar(const BandSpec& spec, const Poly& f, const Poly& h) {
    const LaurentSymbol prod =
        symbol_A(spec) * LaurentSymbol::from_poly(f) * LaurentSymbol::from_poly(h).inverted();
    return prod.constant_term();
}

/// H(z) = A(z) (g1(z) g1(1/z) - g2(z) g2(1/z)); zero exactly when
/// g1* g1 = g2* g2.
inline LaurentSymbol symbol_of_pair_difference(const BandSpec& spec, const Poly& g1,
                                               const Poly& g2) {
    if (g1.degree() != g2.degree())
        throw std::invalid_argument("symbol_of_pair_difference: degree mismatch");
    return symbol_A(spec) * (autocorrelation_symbol(g1) - autocorrelation_symbol(g2));
}

}  // namespace bandlab
