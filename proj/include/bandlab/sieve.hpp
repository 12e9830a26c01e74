#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bandlab/bandform.hpp"
#include "bandlab/budget.hpp"
#include "bandlab/parallel.hpp"
#include "bandlab/ranklab.hpp"

namespace bandlab {

/// Exact count-vector over F_p: multiplicities of each trace value taken by
/// the character argument.  Character sums stay exact until the final
/// conversion to a complex number.
struct TraceCounts {
    coeff_t p;
    std::vector<long long> counts;

    explicit TraceCounts(coeff_t p_) : p(p_), counts(p_, 0) {}

    void add(coeff_t slot, long long weight = 1) { counts[slot % p] += weight; }

    long long total() const {
        long long t = 0;
        for (long long c : counts) t += c;
        return t;
    }

    std::complex<double> value() const {
        std::complex<double> v = 0.0;
        for (coeff_t r = 0; r < p; ++r)
            if (counts[r] != 0) v += double(counts[r]) * unit_root(p, r);
        return v;
    }
    double magnitude() const { return std::abs(value()); }
    double phase() const { return std::arg(value()); }

    TraceCounts& operator+=(const TraceCounts& o) {
        for (coeff_t r = 0; r < p; ++r) counts[r] += o.counts[r];
        return *this;
    }
    friend bool operator==(const TraceCounts& a, const TraceCounts& b) {
        return a.p == b.p && a.counts == b.counts;
    }
};

/// Trivial character reached with an empty selector.
using CharacterChoice = std::optional<CharacterSelector>;

namespace detail {

// Trace slot of psi's argument; the trivial character always lands in slot 0.
inline coeff_t trace_slot(const CharacterChoice& sel, const Fq& value) {
    if (!sel) return 0;
    return (sel->scale() * value).trace();
}

inline coeff_t trace_slot_scaled(const Fq& scale, const Fq& value) {
    return (scale * value).trace();
}

inline std::uint64_t pow_u64(std::uint64_t base, int e) {
    std::uint64_t v = 1;
    while (e-- > 0) v *= base;
    return v;
}

}  // namespace detail

struct CharSumResult {
    TraceCounts counts;
    double magnitude;
    double phase;
    long long total_weight;  // sum of multiplicities = number of (weighted) summands
};

inline CharSumResult make_charsum_result(TraceCounts counts) {
    CharSumResult r{counts, counts.magnitude(), counts.phase(), counts.total()};
    return r;
}

struct ScanResult {
    int n;
    std::vector<long long> counts;  // indexed by the element index of gamma
    long long total;                // |P(n)|
    double reference;               // |P(n)| / q
};

/// Exact counts of f in P(n) with Q_A(f) = gamma, for every gamma at once.
inline ScanResult scan_counts(const BandSpec& spec, int n,
                              const Budget& budget = Budget{}, int jobs = 1) {
    if (n < 1) throw std::invalid_argument("scan_counts: n must be >= 1");
    const FieldSpec& F = spec.field();
    const std::uint64_t domain = monic_count(F, n);
    budget.require(domain * std::uint64_t((n + 1) * (n + 32 + spec.bandwidth())));

    using Counts = std::vector<long long>;
    Counts counts = chunked_reduce<Counts>(
        domain, jobs, Counts(F.q(), 0),
        [&](std::uint64_t lo, std::uint64_t hi) {
            Counts local(F.q(), 0);
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                const Poly f = monic_at(F, n, idx);
                if (!is_irreducible(f)) continue;
                ++local[q_value(spec, f, n).index()];
            }
            return local;
        },
        [&](Counts acc, Counts part) {
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
            return acc;
        });

    long long total = 0;
    for (long long c : counts) total += c;
    return ScanResult{n, std::move(counts), total, double(total) / double(F.q())};
}

namespace detail {

inline TraceCounts charsum_monics(const BandSpec& spec, int n, const Fq& scale,
                                  bool irreducible_only, bool von_mangoldt_weight,
                                  int jobs) {
    const FieldSpec& F = spec.field();
    const std::uint64_t domain = monic_count(F, n);
    return chunked_reduce<TraceCounts>(
        domain, jobs, TraceCounts(F.p()),
        [&](std::uint64_t lo, std::uint64_t hi) {
            TraceCounts local(F.p());
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                const Poly f = monic_at(F, n, idx);
                long long w = 1;
                if (von_mangoldt_weight) {
                    w = von_mangoldt(f);
                    if (w == 0) continue;
                } else if (irreducible_only && !is_irreducible(f)) {
                    continue;
                }
                local.add(trace_slot_scaled(scale, q_value(spec, f, n)), w);
            }
            return local;
        },
        [](TraceCounts acc, TraceCounts part) {
            acc += part;
            return acc;
        });
}

inline Fq scale_of(const FieldSpec& F, const CharacterChoice& sel) {
    return sel ? sel->scale() : Fq::zero(F);
}

}  // namespace detail

/// sum over P(n) of psi(Q_A(f)), as an exact count-vector.
inline CharSumResult charsum_irreducible(const BandSpec& spec, int n,
                                         const CharacterChoice& sel,
                                         const Budget& budget = Budget{}, int jobs = 1) {
    if (n < 1) throw std::invalid_argument("charsum_irreducible: n must be >= 1");
    const FieldSpec& F = spec.field();
    budget.require(monic_count(F, n) * std::uint64_t((n + 1) * (n + 32 + spec.bandwidth())));
    return make_charsum_result(
        detail::charsum_monics(spec, n, detail::scale_of(F, sel), true, false, jobs));
}

/// Lambda_vM-weighted sum over M(n).
inline CharSumResult charsum_vonmangoldt(const BandSpec& spec, int n,
                                         const CharacterChoice& sel,
                                         const Budget& budget = Budget{}, int jobs = 1) {
    if (n < 1) throw std::invalid_argument("charsum_vonmangoldt: n must be >= 1");
    const FieldSpec& F = spec.field();
    budget.require(monic_count(F, n) *
                   std::uint64_t((n + 1) * (n + 32 + spec.bandwidth()) + n * n * n));
    return make_charsum_result(
        detail::charsum_monics(spec, n, detail::scale_of(F, sel), false, true, jobs));
}

/// Vaughan cutoffs; the decomposition needs u + v < n.
struct VaughanParams {
    int n, u, v;
    VaughanParams(int n_, int u_, int v_) : n(n_), u(u_), v(v_) {
        if (u < 0 || v < 0) throw std::invalid_argument("VaughanParams: u, v must be >= 0");
        if (u + v >= n) throw std::invalid_argument("VaughanParams: need u + v < n");
    }
};

struct Sigma1Result {
    std::vector<double> per_k;  // T_k for k = 0..u+v
    double total;
};

/// Sigma_1 = sum_{0<=k<=u+v} sum_{g in M(k)} | sum_{h in M(n-k)} Psi(gh) |,
/// inner sums exact, absolute values taken at the end.
inline Sigma1Result sigma1(const BandSpec& spec, const VaughanParams& params,
                           const CharacterChoice& sel, const Budget& budget = Budget{}) {
    const FieldSpec& F = spec.field();
    const int n = params.n;
    budget.require(std::uint64_t(params.u + params.v + 1) * monic_count(F, n) *
                   std::uint64_t((n + 1) * (n + 2 + spec.bandwidth())));

    const Fq scale = detail::scale_of(F, sel);
    Sigma1Result out{{}, 0.0};
    for (int k = 0; k <= params.u + params.v; ++k) {
        double tk = 0.0;
        for (const Poly& g : monics(F, k)) {
            TraceCounts inner(F.p());
            for (const Poly& h : monics(F, n - k))
                inner.add(detail::trace_slot_scaled(scale, q_value(spec, g * h, n)));
            tk += inner.magnitude();
        }
        out.per_k.push_back(tk);
        out.total += tk;
    }
    return out;
}

struct Sigma2Result {
    double value;
    int witness_i;
    Poly witness_g1;
    long long witness_exceptional;   // reciprocal-equal partners of the witness g1
    bool exceptional_within_tau;     // every g1 saw at most tau(g1) exceptional g2
};

/// Sigma_2 = max over v<=i<=n-u and g1 of
/// sum_{g2} | sum_{h in M(i)} Psi(h g1) conj(Psi(h g2)) |.
inline Sigma2Result sigma2(const BandSpec& spec, const VaughanParams& params,
                           const CharacterChoice& sel, const Budget& budget = Budget{}) {
    const FieldSpec& F = spec.field();
    const int n = params.n;
    if (params.v > n - params.u)
        throw std::invalid_argument("sigma2: empty range, need v <= n - u");

    std::uint64_t cost = 0;
    for (int i = params.v; i <= n - params.u; ++i)
        cost += monic_count(F, n - i) * monic_count(F, n - i) * monic_count(F, i) *
                std::uint64_t(2 * (n + 2 + spec.bandwidth()) * (n + 1));
    budget.require(cost);

    const Fq scale = detail::scale_of(F, sel);
    Sigma2Result out{-1.0, -1, Poly(F), 0, true};
    for (int i = params.v; i <= n - params.u; ++i) {
        const int k = n - i;
        for (const Poly& g1 : monics(F, k)) {
            const Poly r1 = reciprocal_star(g1) * g1;
            double sum = 0.0;
            long long exceptional = 0;
            for (const Poly& g2 : monics(F, k)) {
                if (reciprocal_star(g2) * g2 == r1) ++exceptional;
                TraceCounts inner(F.p());
                for (const Poly& h : monics(F, i))
                    inner.add(detail::trace_slot_scaled(
                        scale, q_value(spec, h * g1, n) - q_value(spec, h * g2, n)));
                sum += inner.magnitude();
            }
            if (exceptional > tau(g1)) out.exceptional_within_tau = false;
            if (sum > out.value) {
                out.value = sum;
                out.witness_i = i;
                out.witness_g1 = g1;
                out.witness_exceptional = exceptional;
            }
        }
    }
    return out;
}

struct ReciprocalSolutions {
    Poly b;
    std::vector<Poly> solutions;  // all monic a of degree deg b with a* a = b* b
    std::vector<Poly> gcds;       // gcd(a, b) per solution
    long long tau_b;
    bool constructive_match;  // every a equals gcd(a,b) * (b1(0)^-1 b1*), b1 = b/gcd(a,b)
    bool injective;           // distinct solutions have distinct gcds
};

/// Exhaustive solutions of the reciprocal equation a* a = b* b, checked
/// against the constructive divisor form.
inline ReciprocalSolutions reciprocal_solutions(const Poly& b,
                                                const Budget& budget = Budget{}) {
    if (b.is_zero() || !b.is_monic())
        throw std::invalid_argument("reciprocal_solutions: b must be monic");
    const FieldSpec& F = b.field();
    const int k = b.degree();
    budget.require(monic_count(F, k) * std::uint64_t((k + 1) * (k + 1) * 4));

    ReciprocalSolutions out{b, {}, {}, tau(b), true, true};
    const Poly target = reciprocal_star(b) * b;
    for (const Poly& a : monics(F, k)) {
        if (reciprocal_star(a) * a != target) continue;
        const Poly d = poly_gcd(a, b);
        out.solutions.push_back(a);
        out.gcds.push_back(d);
        const Poly b1 = b / d;
        if (b1.constant_term().is_zero()) {
            out.constructive_match = false;
            continue;
        }
        const Poly expected = d * (b1.constant_term().inverse() * reciprocal_star(b1));
        if (a != expected) out.constructive_match = false;
    }
    for (std::size_t i = 0; i < out.gcds.size() && out.injective; ++i)
        for (std::size_t j = i + 1; j < out.gcds.size(); ++j)
            if (out.gcds[i] == out.gcds[j]) out.injective = false;
    return out;
}

struct GaussCheck {
    double magnitude;
    int rank;          // polar rank of x -> x^T C x
    double target;     // q^(N - r/2)
    bool dichotomy_ok;  // magnitude is 0 or the target, within 1e-6 relative
    bool bound_ok;      // magnitude <= target (with the same slack)
};

/// Complete sum of psi(Q(x) + M(x)) over F_q^N for Q(x) = x^T C x; the
/// magnitude must be 0 or q^(N - r/2).
inline GaussCheck gauss_sum_check(const MatrixFq& C, std::span<const Fq> linear,
                                  const CharacterSelector& sel,
                                  const Budget& budget = Budget{}) {
    if (C.rows() != C.cols()) throw std::invalid_argument("gauss_sum_check: square matrix required");
    const FieldSpec& F = C.field();
    const std::size_t N = C.rows();
    if (linear.size() != N) throw std::invalid_argument("gauss_sum_check: linear form length mismatch");
    const std::uint64_t points = monic_count(F, int(N));
    budget.require(points * std::uint64_t(N * N + N + 1));

    TraceCounts counts(F.p());
    std::vector<Fq> x(N, Fq::zero(F));
    for (std::uint64_t idx = 0; idx < points; ++idx) {
        std::uint64_t v = idx;
        for (std::size_t i = 0; i < N; ++i) {
            x[i] = Fq::from_index(F, v % F.q());
            v /= F.q();
        }
        Fq val = Fq::zero(F);
        for (std::size_t i = 0; i < N; ++i) {
            if (x[i].is_zero()) continue;
            Fq row = Fq::zero(F);
            for (std::size_t j = 0; j < N; ++j) row = row + C.at(i, j) * x[j];
            val = val + x[i] * row;
        }
        for (std::size_t i = 0; i < N; ++i) val = val + linear[i] * x[i];
        counts.add(detail::trace_slot_scaled(sel.scale(), val));
    }

    const int r = rank_fq(C + C.transpose());
    const double target = std::pow(double(F.q()), double(N) - 0.5 * r);
    const double mag = counts.magnitude();
    const bool is_zero = mag <= 1e-6 * target;
    const bool is_target = std::abs(mag - target) <= 1e-6 * target;
    return GaussCheck{mag, r, target, is_zero || is_target, mag <= target * (1.0 + 1e-6)};
}

/// a + b sqrt(q) with exact integer parts; q^(Delta/2) sums live here.
struct SqrtScaled {
    bigint integral;
    bigint root_part;

    SqrtScaled& add_half_power(std::uint64_t q, int delta) {
        const bigint step = boost::multiprecision::pow(bigint(q), unsigned(delta / 2));
        if (delta % 2 == 0)
            integral += step;
        else
            root_part += step;
        return *this;
    }
    double approx(double q) const {
        return double(integral) + double(root_part) * std::sqrt(q);
    }
    friend bool operator==(const SqrtScaled& a, const SqrtScaled& b) {
        return a.integral == b.integral && a.root_part == b.root_part;
    }
};

struct CentralHalfResult {
    SqrtScaled sum;            // sum over M^x(kappa) of q^(Delta_A(g;N)/2), exact
    double monitor_exponent;   // kappa + 3N/8, shape monitoring only
    long long max_fiber;       // largest multiplicity of g -> P g g*
    bool multiplicity_ok;      // every fiber is at most tau(T/P)
};

/// The central averaged half-moment, summed exactly.
inline CentralHalfResult central_half_sum(const BandSpec& spec, int kappa, int N,
                                          const Budget& budget = Budget{}) {
    if (kappa < 0 || N < 0)
        throw std::invalid_argument("central_half_sum: kappa, N must be >= 0");
    const FieldSpec& F = spec.field();
    budget.require(monic_count(F, kappa) *
                   std::uint64_t((N + 1) * (N + 1) * (N + 1) +
                                 (kappa + 1) * (kappa + 1) * 4));

    CentralHalfResult out{{}, kappa + 3.0 * N / 8.0, 0, true};
    const Poly P = symbol_P(spec);
    std::map<Poly, std::vector<Poly>, PolyLess> fibers;
    for (const Poly& g : monics_nonzero_const(F, kappa)) {
        const int delta = delta_A(spec, g, N).dimension;
        out.sum.add_half_power(F.q(), delta);
        fibers[P * g * reciprocal_star(g)].push_back(g);
    }
    for (const auto& [T, gs] : fibers) {
        out.max_fiber = std::max(out.max_fiber, (long long)gs.size());
        const Poly quotient = T / P;  // = g g*, nonzero
        if ((long long)gs.size() > tau(quotient)) out.multiplicity_ok = false;
    }
    return out;
}

struct OrthogonalityCheck {
    std::vector<long long> reconstructed;  // counts per gamma index
    bool exact;                            // rotation sums integral and divisible by q
};

/// Rebuilds the scan counts from the q character-sum count-vectors alone:
/// q * count(gamma) = sum over a in F_q of psi_a(-gamma) sum_f psi_a(Q(f)),
/// evaluated in the cyclotomic integers.  The combined vector must be
/// constant away from slot 0, and the integer it represents divisible by q.
inline OrthogonalityCheck counts_via_orthogonality(const BandSpec& spec, int n,
                                                   const Budget& budget = Budget{},
                                                   int jobs = 1) {
    const FieldSpec& F = spec.field();
    budget.require(F.q() * monic_count(F, n) *
                   std::uint64_t((n + 1) * (n + 32 + spec.bandwidth())));

    std::vector<TraceCounts> per_scale;
    per_scale.reserve(F.q());
    for (std::uint64_t a = 0; a < F.q(); ++a)
        per_scale.push_back(detail::charsum_monics(spec, n, Fq::from_index(F, a), true,
                                                   false, jobs));

    OrthogonalityCheck out{std::vector<long long>(F.q(), 0), true};
    for (std::uint64_t gi = 0; gi < F.q(); ++gi) {
        const Fq gamma = Fq::from_index(F, gi);
        std::vector<long long> combined(F.p(), 0);
        for (std::uint64_t a = 0; a < F.q(); ++a) {
            const coeff_t rot = (Fq::from_index(F, a) * gamma).trace();
            for (coeff_t s = 0; s < F.p(); ++s)
                combined[s] += per_scale[a].counts[(s + rot) % F.p()];
        }
        for (coeff_t s = 2; s < F.p(); ++s)
            if (combined[s] != combined[1]) out.exact = false;
        const long long numerator = combined[0] - (F.p() > 1 ? combined[1] : 0);
        if (numerator % (long long)F.q() != 0) out.exact = false;
        out.reconstructed[gi] = numerator / (long long)F.q();
    }
    return out;
}

struct VmDecomposition {
    TraceCounts weighted;     // V_n = sum over M(n) with Lambda weights
    TraceCounts irreducible;  // plain sum over P(n)
    TraceCounts correction;   // prime powers pi^j, j >= 2, of degree n
    bool exact;               // weighted - n * irreducible == correction
};

/// V_n(psi) minus n times the irreducible sum is exactly the prime-power
/// correction; all three sides are computed independently.
inline VmDecomposition vonmangoldt_decomposition(const BandSpec& spec, int n,
                                                 const CharacterChoice& sel,
                                                 const Budget& budget = Budget{}) {
    if (n < 1) throw std::invalid_argument("vonmangoldt_decomposition: n must be >= 1");
    const FieldSpec& F = spec.field();
    budget.require(monic_count(F, n) *
                   std::uint64_t(2 * (n + 1) * (n + 32 + spec.bandwidth()) + n * n * n));

    const Fq scale = detail::scale_of(F, sel);
    VmDecomposition out{detail::charsum_monics(spec, n, scale, false, true, 1),
                        detail::charsum_monics(spec, n, scale, true, false, 1),
                        TraceCounts(F.p()), true};

    for (int j = 2; j <= n; ++j) {
        if (n % j != 0) continue;
        for (const Poly& pi : irreducibles(F, n / j)) {
            const Poly f = pi.pow(j);
            out.correction.add(detail::trace_slot_scaled(scale, q_value(spec, f, n)),
                               n / j);
        }
    }

    for (coeff_t r = 0; r < F.p(); ++r)
        if (out.weighted.counts[r] - (long long)n * out.irreducible.counts[r] !=
            out.correction.counts[r])
            out.exact = false;
    return out;
}

}  // namespace bandlab
