#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bandlab/exponents.hpp"
#include "bandlab/sieve.hpp"

namespace bandlab {

/// One checked case inside a verification suite.
struct VerifyCase {
    std::string label;
    bool ok;
    std::string detail;  // e.g. "rank=4 floor=3 slack=1"
    std::vector<std::pair<std::string, long long>> metrics = {};  // for report records
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCase> cases;
    bool all_ok() const {
        for (const auto& c : cases)
            if (!c.ok) return false;
        return true;
    }
    long long failures() const {
        long long n = 0;
        for (const auto& c : cases) n += !c.ok;
        return n;
    }
};

/// Fixed band fixtures with m <= 2; valid over every odd q.
inline std::vector<BandSpec> fixture_bands(const FieldSpec& F) {
    return {
        BandSpec::from_indices(F, {1}),           // diagonal sum of squares
        BandSpec::from_indices(F, {0, 1}),        // nearest-neighbour correlation
        BandSpec::from_indices(F, {1, 1}),
        BandSpec::from_indices(F, {0, 0, 1}),
        BandSpec::from_indices(F, {1, 0, 2}),
        BandSpec::from_indices(F, {0, 1, 1}),
    };
}

namespace detail {

inline std::string band_label(const BandSpec& spec) {
    std::string s = "band(";
    for (std::size_t j = 0; j < spec.band().size(); ++j) {
        if (j) s += ",";
        s += to_string(spec.band()[j]);
    }
    return s + ")";
}

inline std::vector<std::vector<Fq>> basis_vectors(const RadicalReport& r, int N) {
    std::vector<std::vector<Fq>> out;
    out.reserve(r.basis.size());
    for (const Poly& p : r.basis) out.push_back(digits_of(p, N));
    return out;
}

}  // namespace detail

/// Radical of B_{g,N} computed twice: polar-matrix kernel vs the
/// middle-coefficient linear system.  Dimensions and spans must agree.
inline VerifyReport verify_gap(const FieldSpec& F, int max_deg = 3, int max_N = 5) {
    VerifyReport rep{"gap", {}};
    for (const BandSpec& spec : fixture_bands(F)) {
        for (int deg = 0; deg <= max_deg; ++deg) {
            for (const Poly& g : monics(F, deg)) {
                for (int N = 0; N <= max_N; ++N) {
                    const RadicalReport direct = delta_A(spec, g, N);
                    const RadicalReport gap = radical_via_gap(spec, g, N);
                    const bool ok =
                        direct.dimension == gap.dimension &&
                        same_span(F, detail::basis_vectors(direct, N),
                                  detail::basis_vectors(gap, N), N + 1);
                    std::ostringstream label;
                    label << detail::band_label(spec) << " g=" << to_string(g)
                          << " N=" << N;
                    std::ostringstream detail_s;
                    detail_s << "delta=" << direct.dimension << " gap=" << gap.dimension;
                    rep.cases.push_back({label.str(), ok, detail_s.str()});
                }
            }
        }
    }
    return rep;
}

/// Delta_A(g;N) = Delta(P g g*; N) for g(0) != 0, and invariance under
/// removing powers of t.
inline VerifyReport verify_delta_symbol(const FieldSpec& F, int max_deg = 3,
                                        int max_N = 5, int max_r = 3) {
    VerifyReport rep{"delta-symbol", {}};
    for (const BandSpec& spec : fixture_bands(F)) {
        const Poly P = symbol_P(spec);
        const int m = spec.bandwidth();
        for (int deg = 0; deg <= max_deg; ++deg) {
            for (const Poly& g : monics_nonzero_const(F, deg)) {
                const auto T = ReciprocalSymbol::from_poly(P * g * reciprocal_star(g),
                                                           deg + m);
                for (int N = 0; N <= max_N; ++N) {
                    const int da = delta_A(spec, g, N).dimension;
                    const int dt = delta_T(T, N);
                    bool ok = da == dt;
                    for (int r = 1; r <= max_r && ok; ++r)
                        ok = delta_A(spec, Poly::monomial(F, r) * g, N).dimension == da;
                    std::ostringstream label;
                    label << detail::band_label(spec) << " g=" << to_string(g)
                          << " N=" << N;
                    std::ostringstream detail_s;
                    detail_s << "delta_A=" << da << " delta_T=" << dt;
                    rep.cases.push_back({label.str(), ok, detail_s.str()});
                }
            }
        }
    }
    return rep;
}

/// Bilinear difference forms: rank >= max(0, i-k-m+1) for every
/// non-exceptional pair.
inline VerifyReport verify_typeII(const FieldSpec& F, int max_k = 3, int max_i = 6) {
    VerifyReport rep{"typeII-rank", {}};
    for (const BandSpec& spec : fixture_bands(F)) {
        for (int k = 0; k <= max_k; ++k) {
            const std::uint64_t total = monic_count(F, k);
            for (std::uint64_t a = 0; a < total; ++a) {
                const Poly g1 = monic_at(F, k, a);
                const Poly r1 = reciprocal_star(g1) * g1;
                for (std::uint64_t b = 0; b < total; ++b) {
                    const Poly g2 = monic_at(F, k, b);
                    if (reciprocal_star(g2) * g2 == r1) continue;  // exceptional pair
                    for (int i = 0; i <= max_i; ++i) {
                        const RankFloor rf = typeII_rank_check(spec, g1, g2, i);
                        std::ostringstream label;
                        label << detail::band_label(spec) << " g1=" << to_string(g1)
                              << " g2=" << to_string(g2) << " i=" << i;
                        std::ostringstream detail_s;
                        detail_s << "rank=" << rf.rank << " floor=" << rf.floor
                                 << " slack=" << rf.rank - rf.floor;
                        rep.cases.push_back({label.str(), rf.ok(), detail_s.str(),
                                             {{"rank", rf.rank}, {"floor", rf.floor}}});
                    }
                }
            }
        }
    }
    return rep;
}

/// Pointwise multiplier forms: rank >= max(0, N-k-m+1); and the
/// reciprocal-symbol map rank >= the explicit pivot count |J|.
inline VerifyReport verify_typeI(const FieldSpec& F, int max_k = 3, int max_N = 6,
                                 int lh_max_d = 4, int lh_max_N = 5) {
    VerifyReport rep{"typeI-rank", {}};
    for (const BandSpec& spec : fixture_bands(F)) {
        for (int k = 0; k <= max_k; ++k) {
            for (const Poly& g : monics(F, k)) {
                for (int N = 0; N <= max_N; ++N) {
                    const RankFloor rf = typeI_rank_check(spec, g, N);
                    std::ostringstream label;
                    label << detail::band_label(spec) << " g=" << to_string(g)
                          << " N=" << N;
                    std::ostringstream detail_s;
                    detail_s << "rank=" << rf.rank << " floor=" << rf.floor
                             << " slack=" << rf.rank - rf.floor;
                    rep.cases.push_back({label.str(), rf.ok(), detail_s.str(),
                                         {{"rank", rf.rank}, {"floor", rf.floor}}});
                }
            }
        }
    }
    for (int d = 0; d <= lh_max_d; ++d) {
        for (int N = 0; N <= lh_max_N; ++N) {
            for (std::uint64_t idx = 1; idx < monic_count(F, N + 1); ++idx) {
                std::vector<Fq> c;
                std::uint64_t v = idx;
                for (int i = 0; i <= N; ++i) {
                    c.push_back(Fq::from_index(F, v % F.q()));
                    v /= F.q();
                }
                const Poly H(F, std::move(c));
                const int rank = rank_fq(build_LH(H, d, N));
                const int floor = lh_rank_floor(H, d, N);
                std::ostringstream label;
                label << "L_H H=" << to_string(H) << " d=" << d << " N=" << N;
                std::ostringstream detail_s;
                detail_s << "rank=" << rank << " floor=" << floor
                         << " slack=" << rank - floor;
                rep.cases.push_back({label.str(), rank >= floor, detail_s.str(),
                                     {{"rank", rank}, {"floor", floor}}});
            }
        }
    }
    return rep;
}

/// Exhaustive reciprocal equation a* a = b* b: solution count within tau(b),
/// constructive form, injectivity of a -> gcd(a, b).
inline VerifyReport verify_reciprocal(const FieldSpec& F, int max_deg = 5,
                                      const Budget& budget = Budget{}) {
    VerifyReport rep{"reciprocal", {}};
    for (int k = 0; k <= max_deg; ++k) {
        for (const Poly& b : monics(F, k)) {
            const ReciprocalSolutions r = reciprocal_solutions(b, budget);
            const bool ok = (long long)r.solutions.size() <= r.tau_b &&
                            r.constructive_match && r.injective;
            std::ostringstream detail_s;
            detail_s << "solutions=" << r.solutions.size() << " tau=" << r.tau_b;
            rep.cases.push_back({"b=" + to_string(b), ok, detail_s.str()});
        }
    }
    return rep;
}

/// Random complete quadratic sums over F_3^N and F_5^N: the magnitude is
/// always 0 or q^(N - r/2).
inline VerifyReport verify_gauss(std::uint64_t seed = 12345, int trials = 1000,
                                 int max_N = 4, const Budget& budget = Budget{}) {
    VerifyReport rep{"gauss", {}};
    const FieldSpec F3 = FieldSpec::make(3, 1);
    const FieldSpec F5 = FieldSpec::make(5, 1);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const FieldSpec& F = (trial % 2 == 0) ? F3 : F5;
        const int N = 1 + int(rng() % max_N);
        MatrixFq Q(F, N, N);
        std::vector<Fq> lin(N, Fq::zero(F));
        for (int i = 0; i < N; ++i) {
            lin[i] = Fq::from_index(F, rng() % F.q());
            for (int j = 0; j < N; ++j) Q.at(i, j) = Fq::from_index(F, rng() % F.q());
        }
        const CharacterSelector sel{Fq::from_index(F, 1 + rng() % (F.q() - 1))};
        const GaussCheck check = gauss_sum_check(Q, lin, sel, budget);
        std::ostringstream label;
        label << "trial " << trial << " q=" << F.q() << " N=" << N;
        std::ostringstream detail_s;
        detail_s << "magnitude=" << check.magnitude << " rank=" << check.rank
                 << " target=" << check.target;
        rep.cases.push_back(
            {label.str(), check.dichotomy_ok && check.bound_ok, detail_s.str()});
    }
    return rep;
}

/// Restriction of random polar forms to every coordinate hyperplane drops the
/// rank by at most 2.
inline VerifyReport verify_monic_slice(std::uint64_t seed = 12345, int trials = 1000,
                                       int max_N = 4) {
    VerifyReport rep{"monic-slice", {}};
    const FieldSpec F3 = FieldSpec::make(3, 1);
    const FieldSpec F5 = FieldSpec::make(5, 1);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const FieldSpec& F = (trial % 2 == 0) ? F3 : F5;
        const std::size_t n = 1 + rng() % max_N;
        MatrixFq C(F, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) C.at(i, j) = Fq::from_index(F, rng() % F.q());
        const MatrixFq M = C + C.transpose();
        const int ambient = rank_fq(M);
        bool ok = true;
        int worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            AffineHyperplane plane{std::vector<Fq>(n, Fq::zero(F)), Fq::one(F)};
            plane.normal[i] = Fq::one(F);
            const int drop = ambient - monic_slice_rank(M, plane);
            worst = std::max(worst, drop);
            ok = ok && drop >= 0 && drop <= 2;
        }
        std::ostringstream label;
        label << "trial " << trial << " q=" << F.q() << " dim=" << n;
        std::ostringstream detail_s;
        detail_s << "ambient=" << ambient << " max_drop=" << worst;
        rep.cases.push_back({label.str(), ok, detail_s.str()});
    }
    return rep;
}

/// Incidence double counting over R_d x V_N.
inline VerifyReport verify_incidence(const FieldSpec& F, int max_d = 3, int max_N = 4,
                                     const Budget& budget = Budget{}) {
    VerifyReport rep{"incidence", {}};
    for (int d = 0; d <= max_d; ++d) {
        for (int N = 0; N <= max_N; ++N) {
            const IncidenceResult r = incidence_sum(F, d, N, budget);
            std::ostringstream label;
            label << "d=" << d << " N=" << N;
            std::ostringstream detail_s;
            detail_s << "by_symbol=" << r.by_symbol << " by_kernel=" << r.by_kernel;
            rep.cases.push_back({label.str(), r.by_symbol == r.by_kernel, detail_s.str()});
        }
    }
    return rep;
}

/// Fixed 7x7 low-rank regression: the multiplier t^4 - 1 against the
/// nearest-neighbour band over F_3 gives the printed checkerboard matrix, of
/// rank exactly 2.
inline VerifyReport verify_appendix_a() {
    VerifyReport rep{"appendix-A", {}};
    const FieldSpec F = FieldSpec::make(3, 1);
    const BandSpec spec = BandSpec::from_indices(F, {0, 1});
    const Poly g = Poly::from_indices(F, {2, 0, 0, 0, 1});  // t^4 - 1

    MatrixFq printed(F, 7, 7);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j)
            if ((i + j) % 2 == 1) printed.at(i, j) = Fq::one(F);

    const MatrixFq built = toeplitz_from_symbol(symbol_A(spec) * autocorrelation_symbol(g), 6);

    Fq scalar;
    for (std::size_t i = 0; i < 7 && !scalar.attached(); ++i)
        for (std::size_t j = 0; j < 7; ++j)
            if (!printed.at(i, j).is_zero()) {
                scalar = built.at(i, j) * printed.at(i, j).inverse();
                break;
            }
    const bool matches = scalar.attached() && !scalar.is_zero() && built == scalar * printed;
    rep.cases.push_back({"matrix matches up to the scalar " + to_string(scalar), matches,
                         "scalar=" + to_string(scalar)});

    const int rank = rank_fq(built);
    rep.cases.push_back({"rank is exactly 2", rank == 2, "rank=" + std::to_string(rank)});

    const int polar_rank = rank_fq(polar_matrix_multiplier(spec, g, 6));
    rep.cases.push_back(
        {"polar rank is exactly 2", polar_rank == 2, "rank=" + std::to_string(polar_rank)});

    const int delta = delta_A(spec, g, 6).dimension;
    rep.cases.push_back({"defect is 5", delta == 5, "delta=" + std::to_string(delta)});
    return rep;
}

namespace detail {

inline std::string rat_str(const Rat& r) {
    std::ostringstream s;
    s << r.numerator() << "/" << r.denominator();
    return s.str();
}

}  // namespace detail

/// The three proof exponents equal 19/20 at (1/5, 7/10), and no cutoff pair
/// with denominator <= max_den does strictly better.
inline VerifyReport verify_exponents(int max_den = 20) {
    VerifyReport rep{"exponents", {}};
    const ExponentAudit a = exponent_audit(Rat(1, 5), Rat(7, 10));
    const Rat target(19, 20);
    rep.cases.push_back({"type I exponent at (1/5,7/10)", a.type_one == target,
                         detail::rat_str(a.type_one)});
    rep.cases.push_back({"first type II exponent at (1/5,7/10)",
                         a.type_two_first == target, detail::rat_str(a.type_two_first)});
    rep.cases.push_back({"second type II exponent at (1/5,7/10)",
                         a.type_two_second == target, detail::rat_str(a.type_two_second)});
    rep.cases.push_back({"maximum is 19/20", a.maximum == target,
                         detail::rat_str(a.maximum)});

    const ExponentGridResult best = exponent_grid_search(max_den);
    std::ostringstream detail_s;
    detail_s << "best max " << detail::rat_str(best.maximum) << " at (u,v)=("
             << detail::rat_str(best.u) << "," << detail::rat_str(best.v) << ")";
    rep.cases.push_back({"denominator-bounded grid search finds nothing smaller",
                         best.maximum == target, detail_s.str()});
    return rep;
}

/// Experiment identities driven by the sieve: partition of P(n), exact
/// orthogonality reconstruction, and the von Mangoldt decomposition.
inline VerifyReport verify_experiments(const FieldSpec& F, int max_n = 5,
                                       const Budget& budget = Budget{}) {
    VerifyReport rep{"experiments", {}};
    for (const BandSpec& spec : fixture_bands(F)) {
        for (int n = 1; n <= max_n; ++n) {
            const ScanResult scan = scan_counts(spec, n, budget);
            long long sum = 0;
            for (long long c : scan.counts) sum += c;
            const bool partition_ok = sum == (long long)count_irreducible(F, n);

            const OrthogonalityCheck oc = counts_via_orthogonality(spec, n, budget);
            const bool ortho_ok = oc.exact && oc.reconstructed == scan.counts;

            bool vm_ok = vonmangoldt_decomposition(spec, n, std::nullopt, budget).exact;
            for (std::uint64_t s = 1; s < F.q() && vm_ok; ++s)
                vm_ok = vonmangoldt_decomposition(
                            spec, n, CharacterChoice{CharacterSelector{Fq::from_index(F, s)}},
                            budget)
                            .exact;

            std::ostringstream label;
            label << detail::band_label(spec) << " n=" << n;
            std::ostringstream detail_s;
            detail_s << "partition=" << partition_ok << " orthogonality=" << ortho_ok
                     << " von_mangoldt=" << vm_ok;
            rep.cases.push_back(
                {label.str(), partition_ok && ortho_ok && vm_ok, detail_s.str()});
        }
    }
    return rep;
}

/// Chebyshev identity: sum of Lambda_vM over M(n) is exactly q^n.
inline VerifyReport verify_chebyshev(const FieldSpec& F, int max_n = 7) {
    VerifyReport rep{"chebyshev", {}};
    for (int n = 1; n <= max_n; ++n) {
        long long total = 0;
        for (const Poly& f : monics(F, n)) total += von_mangoldt(f);
        const long long expect = (long long)monic_count(F, n);
        std::ostringstream detail_s;
        detail_s << "sum=" << total << " q^n=" << expect;
        rep.cases.push_back({"n=" + std::to_string(n), total == expect, detail_s.str()});
    }
    return rep;
}

}  // namespace bandlab
