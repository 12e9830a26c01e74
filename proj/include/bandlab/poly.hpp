#pragma once

#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bandlab/field.hpp"

namespace bandlab {

using bigint = boost::multiprecision::cpp_int;

/// Dense polynomial over F_q, coefficients indexed from the constant term.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
public:
    explicit Poly(const FieldSpec& field) : field_(&field) {}

    Poly(const FieldSpec& field, std::vector<Fq> coeffs)
        : field_(&field), c_(std::move(coeffs)) {
        for (const Fq& x : c_)
            if (!x.attached() || !x.field().same(field))
                throw std::invalid_argument("Poly: coefficient from a different field");
        trim();
    }

    static Poly constant(const FieldSpec& field, const Fq& value) {
        return Poly(field, std::vector<Fq>{value});
    }

    static Poly monomial(const FieldSpec& field, int deg, const Fq& lead) {
        if (deg < 0) throw std::invalid_argument("Poly: negative degree");
        std::vector<Fq> c(deg + 1, Fq::zero(field));
        c[deg] = lead;
        return Poly(field, std::move(c));
    }
    static Poly monomial(const FieldSpec& field, int deg) {
        return monomial(field, deg, Fq::one(field));
    }

    /// Convenience for fixtures: coefficients given by element index, constant first.
    static Poly from_indices(const FieldSpec& field, std::initializer_list<std::uint64_t> idx) {
        std::vector<Fq> c;
        c.reserve(idx.size());
        for (std::uint64_t i : idx) c.push_back(Fq::from_index(field, i));
        return Poly(field, std::move(c));
    }

    const FieldSpec& field() const { return *field_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    Fq coeff(int i) const {
        if (i < 0 || std::size_t(i) >= c_.size()) return Fq::zero(*field_);
        return c_[i];
    }
    const std::vector<Fq>& coeffs() const { return c_; }
    Fq leading() const {
        if (c_.empty()) throw std::invalid_argument("Poly: zero polynomial has no leading coefficient");
        return c_.back();
    }
    Fq constant_term() const { return coeff(0); }

    Fq eval(const Fq& x) const {
        Fq acc = Fq::zero(*field_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        check_compatible(a, b);
        std::vector<Fq> c(std::max(a.c_.size(), b.c_.size()), Fq::zero(a.field()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < a.c_.size()) c[i] = c[i] + a.c_[i];
            if (i < b.c_.size()) c[i] = c[i] + b.c_[i];
        }
        return Poly(a.field(), std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        check_compatible(a, b);
        std::vector<Fq> c(std::max(a.c_.size(), b.c_.size()), Fq::zero(a.field()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < a.c_.size()) c[i] = c[i] + a.c_[i];
            if (i < b.c_.size()) c[i] = c[i] - b.c_[i];
        }
        return Poly(a.field(), std::move(c));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        check_compatible(a, b);
        if (a.is_zero() || b.is_zero()) return Poly(a.field());
        std::vector<Fq> c(a.c_.size() + b.c_.size() - 1, Fq::zero(a.field()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(a.field(), std::move(c));
    }

    friend Poly operator*(const Fq& s, const Poly& a) {
        std::vector<Fq> c = a.c_;
        for (Fq& x : c) x = s * x;
        return Poly(a.field(), std::move(c));
    }

    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        check_compatible(a, b);
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        const FieldSpec& F = a.field();
        if (a.degree() < b.degree()) return {Poly(F), a};
        const Fq lead_inv = b.leading().inverse();
        std::vector<Fq> rem = a.c_;
        std::vector<Fq> quot(a.degree() - b.degree() + 1, Fq::zero(F));
        for (int k = a.degree(); k >= b.degree(); --k) {
            const Fq top = rem[k];
            if (top.is_zero()) continue;
            const Fq factor = top * lead_inv;
            const int shift = k - b.degree();
            quot[shift] = factor;
            for (int i = 0; i <= b.degree(); ++i)
                rem[shift + i] = rem[shift + i] - factor * b.c_[i];
        }
        return {Poly(F, std::move(quot)), Poly(F, std::move(rem))};
    }

    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    bool divides(const Poly& a) const { return (a % *this).is_zero(); }

    Poly monic() const {
        if (is_zero()) return *this;
        return leading().inverse() * *this;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(*field_);
        std::vector<Fq> c(c_.size() - 1, Fq::zero(*field_));
        for (std::size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = Fq::from_int(*field_, (long long)i) * c_[i];
        return Poly(*field_, std::move(c));
    }

    Poly pow(std::uint64_t n) const {
        Poly acc = Poly::constant(*field_, Fq::one(*field_));
        Poly base = *this;
        while (n) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (!a.field_->same(*b.field_)) return false;
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    static void check_compatible(const Poly& a, const Poly& b) {
        if (!a.field_->same(*b.field_))
            throw std::invalid_argument("Poly: mismatched FieldSpec");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    const FieldSpec* field_;
    std::vector<Fq> c_;
};

/// Enumeration order: degree first, then coefficient tuples by ascending
/// base-q code with the constant term as the least significant digit.
inline bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        const std::uint64_t ai = a.coeff(i).index(), bi = b.coeff(i).index();
        if (ai != bi) return ai < bi;
    }
    return false;
}

struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const { return poly_less(a, b); }
};

inline std::string to_string(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        const Fq c = f.coeff(i);
        if (c.is_zero()) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += to_string(c);
        } else {
            if (!c.is_one()) s += to_string(c);
            s += (i == 1) ? "t" : "t^" + std::to_string(i);
        }
    }
    return s;
}

inline Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }

/// Monic gcd; gcd(0,0) = 0 and gcd(a,0) is the monic normalization of a.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// a*(t) = t^deg(a) a(1/t): the coefficient vector reversed, then trimmed.
inline Poly reciprocal_star(const Poly& a) {
    if (a.is_zero()) throw std::invalid_argument("reciprocal_star: zero polynomial");
    std::vector<Fq> c(a.coeffs().rbegin(), a.coeffs().rend());
    return Poly(a.field(), std::move(c));
}

inline int ord_at_zero(const Poly& g) {
    if (g.is_zero()) throw std::invalid_argument("ord_at_zero: zero polynomial");
    int r = 0;
    while (g.coeff(r).is_zero()) ++r;
    return r;
}

/// g = t^r g0 with g0(0) != 0.
inline std::pair<int, Poly> remove_zero_factor(const Poly& g) {
    const int r = ord_at_zero(g);
    std::vector<Fq> c(g.coeffs().begin() + r, g.coeffs().end());
    return {r, Poly(g.field(), std::move(c))};
}

inline Poly poly_powmod(Poly base, std::uint64_t n, const Poly& mod) {
    Poly acc = Poly::constant(base.field(), Fq::one(base.field()));
    base = base % mod;
    while (n) {
        if (n & 1) acc = acc * base % mod;
        base = base * base % mod;
        n >>= 1;
    }
    return acc;
}

namespace detail {

inline std::vector<int> prime_factors_int(int n) {
    std::vector<int> out;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

/// Rabin test: t^(q^n) = t mod f, and gcd(t^(q^(n/l)) - t, f) = 1 for each
/// prime l | n.
inline bool is_irreducible(const Poly& f) {
    if (!f.is_monic()) throw std::invalid_argument("is_irreducible: input must be monic");
    const int n = f.degree();
    if (n < 1) throw std::invalid_argument("is_irreducible: degree must be >= 1");
    if (n == 1) return true;
    const FieldSpec& F = f.field();
    const Poly t = Poly::monomial(F, 1);

    std::vector<int> checkpoints;
    for (int l : detail::prime_factors_int(n)) checkpoints.push_back(n / l);

    Poly frob = t;  // t^(q^j) mod f after j steps
    for (int j = 1; j <= n; ++j) {
        frob = poly_powmod(frob, F.q(), f);
        if (std::find(checkpoints.begin(), checkpoints.end(), j) != checkpoints.end()) {
            const Poly g = poly_gcd(frob - t, f);
            if (g.degree() != 0) return false;
        }
    }
    return frob == t;
}

inline std::uint64_t monic_count(const FieldSpec& F, int n) {
    if (n < 0) throw std::invalid_argument("monic_count: negative degree");
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) {
        if (c > (std::uint64_t(1) << 62) / F.q())
            throw std::overflow_error("monic_count: q^n too large");
        c *= F.q();
    }
    return c;
}

/// idx-th monic of degree n; coefficient tuple (f_0..f_{n-1}) is the base-q
/// expansion of idx with f_0 least significant.
inline Poly monic_at(const FieldSpec& F, int n, std::uint64_t idx) {
    std::vector<Fq> c;
    c.reserve(n + 1);
    for (int i = 0; i < n; ++i) {
        c.push_back(Fq::from_index(F, idx % F.q()));
        idx /= F.q();
    }
    c.push_back(Fq::one(F));
    return Poly(F, std::move(c));
}

namespace detail {

enum class MonicFilter { all, irreducible, nonzero_const };

inline bool monic_filter_pass(MonicFilter filter, const Poly& f) {
    switch (filter) {
        case MonicFilter::all: return true;
        case MonicFilter::irreducible: return f.degree() >= 1 && is_irreducible(f);
        case MonicFilter::nonzero_const: return !f.constant_term().is_zero();
    }
    return false;
}

}  // namespace detail

/// Restartable deterministic stream over monic polynomials of fixed degree,
/// optionally filtered.  Iteration order is the enumeration order above.
class MonicRange {
public:
    MonicRange(const FieldSpec& field, int n, detail::MonicFilter filter)
        : field_(&field), n_(n), size_(monic_count(field, n)), filter_(filter) {}

    class iterator {
    public:
        using value_type = Poly;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator(const MonicRange* r, std::uint64_t idx) : r_(r), idx_(idx) { settle(); }

        Poly operator*() const { return monic_at(*r_->field_, r_->n_, idx_); }
        iterator& operator++() {
            ++idx_;
            settle();
            return *this;
        }
        iterator operator++(int) {
            iterator tmp = *this;
            ++*this;
            return tmp;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.idx_ == b.idx_; }
        friend bool operator!=(const iterator& a, const iterator& b) { return !(a == b); }

    private:
        void settle() {
            while (idx_ < r_->size_ &&
                   !detail::monic_filter_pass(r_->filter_, monic_at(*r_->field_, r_->n_, idx_)))
                ++idx_;
        }
        const MonicRange* r_;
        std::uint64_t idx_;
    };

    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, size_); }
    std::uint64_t domain_size() const { return size_; }

private:
    const FieldSpec* field_;
    int n_;
    std::uint64_t size_;
    detail::MonicFilter filter_;
};

inline MonicRange monics(const FieldSpec& F, int n) {
    return MonicRange(F, n, detail::MonicFilter::all);
}
inline MonicRange irreducibles(const FieldSpec& F, int n) {
    if (n < 1) throw std::invalid_argument("irreducibles: degree must be >= 1");
    return MonicRange(F, n, detail::MonicFilter::irreducible);
}
inline MonicRange monics_nonzero_const(const FieldSpec& F, int k) {
    return MonicRange(F, k, detail::MonicFilter::nonzero_const);
}

inline int mobius_int(int n) {
    int mu = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

/// |P(n)| = (1/n) sum_{d|n} mu(d) q^(n/d), exactly.
inline bigint count_irreducible(const FieldSpec& F, int n) {
    if (n < 1) throw std::invalid_argument("count_irreducible: n must be >= 1");
    bigint total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const int mu = mobius_int(d);
        if (mu == 0) continue;
        bigint term = boost::multiprecision::pow(bigint(F.q()), unsigned(n / d));
        total += mu * term;
    }
    return total / n;
}

/// Complete factorization into monic irreducibles with multiplicities,
/// plus the unit leading coefficient.
struct FactorMultiset {
    Fq unit;
    std::vector<std::pair<Poly, int>> factors;  // sorted, pairwise distinct

    Poly reconstruct() const {
        Poly acc = Poly::constant(unit.field(), unit);
        for (const auto& [p, m] : factors) acc = acc * p.pow(m);
        return acc;
    }
};

inline constexpr std::uint64_t kFactorSeed = 0x5eedbeef;

namespace detail {

// (q^i - 1) / 2 with an overflow guard; desk-scale degrees keep this tiny.
inline std::uint64_t half_group_order(std::uint64_t q, int i) {
    std::uint64_t v = 1;
    for (int j = 0; j < i; ++j) {
        if (v > (std::uint64_t(1) << 62) / q)
            throw std::overflow_error("factorize: q^i too large");
        v *= q;
    }
    return (v - 1) / 2;
}

inline Poly random_poly_below(const FieldSpec& F, int deg_bound, std::mt19937_64& rng) {
    std::vector<Fq> c;
    c.reserve(deg_bound);
    for (int i = 0; i < deg_bound; ++i)
        c.push_back(Fq::from_index(F, rng() % F.q()));
    return Poly(F, std::move(c));
}

// Equal-degree splitting (Cantor-Zassenhaus, q odd): g is a product of
// distinct monic irreducibles of degree i.
inline void edf_split(const Poly& g, int i, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (g.degree() == i) {
        out.push_back(g);
        return;
    }
    const FieldSpec& F = g.field();
    const std::uint64_t exp = half_group_order(F.q(), i);
    for (;;) {
        const Poly r = random_poly_below(F, g.degree(), rng);
        if (r.is_zero()) continue;
        Poly d = poly_gcd(r, g);
        if (d.degree() == 0) {
            const Poly b = poly_powmod(r, exp, g);
            d = poly_gcd(b - Poly::constant(F, Fq::one(F)), g);
        }
        if (d.degree() > 0 && d.degree() < g.degree()) {
            edf_split(d, i, rng, out);
            edf_split(g / d, i, rng, out);
            return;
        }
    }
}

// Distinct-degree then equal-degree splitting of a monic squarefree w.
inline void ddf_edf(Poly w, std::mt19937_64& rng, std::vector<Poly>& out) {
    const FieldSpec& F = w.field();
    const Poly t = Poly::monomial(F, 1);
    Poly frob = t % w;
    for (int i = 1; w.degree() >= 2 * i; ++i) {
        frob = poly_powmod(frob, F.q(), w);
        const Poly g = poly_gcd(frob - t, w);
        if (g.degree() > 0) {
            edf_split(g, i, rng, out);
            w = w / g;
            frob = frob % w;
        }
    }
    if (w.degree() > 0) out.push_back(w);
}

// f = u(t)^p exactly when f' = 0; recover u by taking p-th roots of the
// coefficients at indices divisible by p.
inline Poly pth_root(const Poly& f) {
    const FieldSpec& F = f.field();
    std::uint64_t root_exp = 1;  // x^(p^(e-1)) inverts x -> x^p on F_q
    for (coeff_t i = 1; i < F.e(); ++i) root_exp *= F.p();
    std::vector<Fq> c;
    for (int i = 0; i <= f.degree(); i += F.p())
        c.push_back(f.coeff(i).pow(root_exp));
    return Poly(F, std::move(c));
}

inline void factor_monic_into(const Poly& f, bool fully_deterministic,
                              std::mt19937_64& rng,
                              std::map<Poly, int, PolyLess>& acc, int outer_mult);

inline void record_factor(const Poly& p, int mult, std::map<Poly, int, PolyLess>& acc) {
    acc[p] += mult;
}

inline void factor_monic_into(const Poly& f, bool fully_deterministic,
                              std::mt19937_64& rng,
                              std::map<Poly, int, PolyLess>& acc, int outer_mult) {
    if (f.degree() == 0) return;

    if (fully_deterministic && f.degree() <= 12) {
        // Trial division by enumerated irreducibles.
        Poly rest = f;
        for (int d = 1; rest.degree() >= 1 && d <= rest.degree() / 2; ++d) {
            for (const Poly& pi : irreducibles(f.field(), d)) {
                int m = 0;
                while (pi.divides(rest)) {
                    rest = rest / pi;
                    ++m;
                }
                if (m) record_factor(pi, m * outer_mult, acc);
                if (rest.degree() < 2 * d) break;
            }
        }
        if (rest.degree() >= 1) record_factor(rest, outer_mult, acc);
        return;
    }

    const Poly deriv = f.derivative();
    if (deriv.is_zero()) {
        factor_monic_into(pth_root(f), fully_deterministic, rng, acc,
                          outer_mult * int(f.field().p()));
        return;
    }

    Poly rest = f;
    const Poly w = f / poly_gcd(f, deriv);  // squarefree, misses p | mult factors
    std::vector<Poly> parts;
    ddf_edf(w, rng, parts);
    for (const Poly& pi : parts) {
        int m = 0;
        while (pi.divides(rest)) {
            rest = rest / pi;
            ++m;
        }
        record_factor(pi, m * outer_mult, acc);
    }
    if (rest.degree() > 0)
        factor_monic_into(rest, fully_deterministic, rng, acc, outer_mult);
}

}  // namespace detail

/// Factorization is deterministic: the splitting RNG is seeded per call and
/// the factor list is sorted canonically.  With fully_deterministic set,
/// degrees <= 12 avoid the RNG entirely via trial division.
inline FactorMultiset factorize(const Poly& f, bool fully_deterministic = false,
                                std::uint64_t seed = kFactorSeed) {
    if (f.is_zero()) throw std::invalid_argument("factorize: zero polynomial");
    std::mt19937_64 rng(seed);
    std::map<Poly, int, PolyLess> acc;
    detail::factor_monic_into(f.monic(), fully_deterministic, rng, acc, 1);
    FactorMultiset out{f.is_zero() ? Fq() : f.leading(), {}};
    out.factors.assign(acc.begin(), acc.end());
    return out;
}

/// Number of monic divisors.
inline long long tau(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("tau: zero polynomial");
    long long t = 1;
    for (const auto& [p, m] : factorize(f).factors) t *= (m + 1);
    return t;
}

/// All monic divisors, sorted in enumeration order.
inline std::vector<Poly> divisors(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("divisors: zero polynomial");
    const auto fac = factorize(f).factors;
    std::vector<Poly> out{Poly::constant(f.field(), Fq::one(f.field()))};
    for (const auto& [p, m] : fac) {
        std::vector<Poly> next;
        next.reserve(out.size() * (m + 1));
        Poly power = Poly::constant(f.field(), Fq::one(f.field()));
        for (int i = 0; i <= m; ++i) {
            for (const Poly& d : out) next.push_back(d * power);
            if (i < m) power = power * p;
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

/// deg(pi) when f = pi^j for a monic irreducible pi, else 0.
inline int von_mangoldt(const Poly& f) {
    if (!f.is_monic()) throw std::invalid_argument("von_mangoldt: input must be monic");
    if (f.degree() < 1) throw std::invalid_argument("von_mangoldt: degree must be >= 1");
    const auto fac = factorize(f).factors;
    if (fac.size() != 1) return 0;
    return fac.front().first.degree();
}

}  // namespace bandlab
