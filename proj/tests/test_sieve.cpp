#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "bandlab/exponents.hpp"
#include "bandlab/jsonio.hpp"
#include "bandlab/sieve.hpp"

using namespace bandlab;

namespace {

const FieldSpec F3 = FieldSpec::make(3, 1);
const FieldSpec F5 = FieldSpec::make(5, 1);

BandSpec rudin_shapiro(const FieldSpec& F) { return BandSpec::from_indices(F, {0, 1}); }

std::complex<double> psi(const FieldSpec&, const CharacterChoice& sel, const Fq& v) {
    if (!sel) return {1.0, 0.0};
    return char_value(*sel, v);
}

}  // namespace

TEST_CASE("scan counts partition the irreducibles") {
    const BandSpec spec = rudin_shapiro(F3);

    const ScanResult r2 = scan_counts(spec, 2);
    CHECK(r2.total == 3);
    CHECK(r2.counts[0] + r2.counts[1] + r2.counts[2] == 3);

    const ScanResult r3 = scan_counts(spec, 3);
    CHECK(r3.total == 8);

    for (int n = 1; n <= 5; ++n) {
        const ScanResult r = scan_counts(spec, n);
        long long sum = 0;
        for (long long c : r.counts) {
            CHECK(c >= 0);
            sum += c;
        }
        REQUIRE(sum == (long long)count_irreducible(F3, n));
        CHECK(r.reference == Catch::Approx(double(r.total) / 3.0));
    }

    // independent of the worker count
    const ScanResult seq = scan_counts(spec, 5, Budget{}, 1);
    const ScanResult par = scan_counts(spec, 5, Budget{}, 4);
    CHECK(seq.counts == par.counts);

    CHECK_THROWS_AS(scan_counts(spec, 5, Budget{10}), BudgetExceeded);
}

TEST_CASE("character sums over irreducibles") {
    const BandSpec spec = rudin_shapiro(F3);

    // trivial character path counts every irreducible once
    const CharSumResult trivial = charsum_irreducible(spec, 4, std::nullopt);
    CHECK(trivial.counts.counts[0] == (long long)count_irreducible(F3, 4));
    CHECK(trivial.magnitude == Catch::Approx(double(trivial.total_weight)));

    // nontrivial character: strictly below |P(4)|, and matches a direct
    // complex-valued summation
    const CharacterChoice sel{CharacterSelector{Fq::one(F3)}};
    const CharSumResult s = charsum_irreducible(spec, 4, sel);
    CHECK(s.total_weight == (long long)count_irreducible(F3, 4));
    CHECK(s.magnitude < double(s.total_weight));

    std::complex<double> direct = 0.0;
    for (const Poly& f : irreducibles(F3, 4)) direct += psi(F3, sel, q_value(spec, f, 4));
    CHECK(std::abs(s.counts.value() - direct) < 1e-9);
    CHECK(s.magnitude == Catch::Approx(std::abs(direct)).margin(1e-9));
}

TEST_CASE("orthogonality reconstructs scan counts exactly") {
    for (const FieldSpec* Fp : {&F3, &F5}) {
        const FieldSpec& F = *Fp;
        const BandSpec spec = rudin_shapiro(F);
        const int max_n = (F.q() == 3) ? 4 : 3;
        for (int n = 1; n <= max_n; ++n) {
            const OrthogonalityCheck oc = counts_via_orthogonality(spec, n);
            REQUIRE(oc.exact);
            REQUIRE(oc.reconstructed == scan_counts(spec, n).counts);
        }
    }

    // extension field: the count-vector argument runs over traces to F_p
    const FieldSpec F9 = FieldSpec::make(3, 2);
    const BandSpec spec9 = rudin_shapiro(F9);
    const OrthogonalityCheck oc9 = counts_via_orthogonality(spec9, 2);
    REQUIRE(oc9.exact);
    REQUIRE(oc9.reconstructed == scan_counts(spec9, 2).counts);
}

TEST_CASE("von Mangoldt weighted sums") {
    const BandSpec spec = rudin_shapiro(F3);

    // n = 1: every monic linear is irreducible with weight 1
    const CharSumResult v1 = charsum_vonmangoldt(spec, 1, std::nullopt);
    CHECK(v1.total_weight == 3);

    // trivial path gives q^n exactly (Chebyshev)
    for (int n = 1; n <= 6; ++n) {
        const CharSumResult vn = charsum_vonmangoldt(spec, n, std::nullopt);
        REQUIRE(vn.total_weight == (long long)monic_count(F3, n));
        REQUIRE(vn.counts.counts[0] == (long long)monic_count(F3, n));
    }
}

TEST_CASE("von Mangoldt decomposition is exact") {
    const BandSpec spec = rudin_shapiro(F3);
    for (int n = 1; n <= 6; ++n) {
        for (std::uint64_t a = 1; a < 3; ++a) {
            const CharacterChoice sel{CharacterSelector{Fq::from_index(F3, a)}};
            const VmDecomposition d = vonmangoldt_decomposition(spec, n, sel);
            REQUIRE(d.exact);
        }
        REQUIRE(vonmangoldt_decomposition(spec, n, std::nullopt).exact);
    }

    // n = 4 correction is supported on squares of quadratics and fourth powers
    // of linears; recompute one slot by hand
    const CharacterChoice sel{CharacterSelector{Fq::one(F3)}};
    const VmDecomposition d4 = vonmangoldt_decomposition(spec, 4, sel);
    TraceCounts manual(3);
    for (const Poly& pi : irreducibles(F3, 2))
        manual.add((q_value(spec, pi * pi, 4)).trace(), 2);
    for (const Poly& pi : irreducibles(F3, 1))
        manual.add((q_value(spec, pi.pow(4), 4)).trace(), 1);
    CHECK(d4.correction == manual);
}

TEST_CASE("sigma1 per-degree table") {
    const BandSpec spec = rudin_shapiro(F3);
    const VaughanParams params(5, 1, 3);

    // trivial character: every inner term is 1, so T_k = q^n for each k
    const Sigma1Result trivial = sigma1(spec, params, std::nullopt);
    REQUIRE(trivial.per_k.size() == 5);
    for (double tk : trivial.per_k) CHECK(tk == Catch::Approx(243.0));

    // nontrivial character against a direct complex double loop
    const CharacterChoice sel{CharacterSelector{Fq::one(F3)}};
    const Sigma1Result s = sigma1(spec, params, sel);
    for (int k = 0; k <= 4; ++k) {
        double tk = 0.0;
        for (const Poly& g : monics(F3, k)) {
            std::complex<double> inner = 0.0;
            for (const Poly& h : monics(F3, 5 - k))
                inner += psi(F3, sel, q_value(spec, g * h, 5));
            tk += std::abs(inner);
        }
        REQUIRE(s.per_k[k] == Catch::Approx(tk).margin(1e-9));
    }
    // k = 0 slice is the full monic sum
    std::complex<double> full = 0.0;
    for (const Poly& h : monics(F3, 5)) full += psi(F3, sel, q_value(spec, h, 5));
    CHECK(s.per_k[0] == Catch::Approx(std::abs(full)).margin(1e-9));

    CHECK_THROWS_AS(VaughanParams(5, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(VaughanParams(5, -1, 2), std::invalid_argument);
}

TEST_CASE("sigma2 bilinear maximum") {
    const BandSpec spec = rudin_shapiro(F3);
    const VaughanParams params(5, 1, 3);
    const CharacterChoice sel{CharacterSelector{Fq::one(F3)}};

    const Sigma2Result s = sigma2(spec, params, sel);
    CHECK(s.exceptional_within_tau);
    CHECK(s.witness_i >= 3);
    CHECK(s.witness_i <= 4);

    // direct evaluation of the same maximum
    double best = -1.0;
    for (int i = 3; i <= 4; ++i) {
        const int k = 5 - i;
        for (const Poly& g1 : monics(F3, k)) {
            double sum = 0.0;
            for (const Poly& g2 : monics(F3, k)) {
                std::complex<double> inner = 0.0;
                for (const Poly& h : monics(F3, i))
                    inner += psi(F3, sel, q_value(spec, h * g1, 5)) *
                             std::conj(psi(F3, sel, q_value(spec, h * g2, 5)));
                sum += std::abs(inner);
            }
            best = std::max(best, sum);
        }
    }
    CHECK(s.value == Catch::Approx(best).margin(1e-6));

    // the diagonal term g1 = g2 contributes exactly q^i
    const Poly g = Poly::from_indices(F3, {1, 1});
    TraceCounts diag(3);
    for (const Poly& h : monics(F3, 4))
        diag.add(((Fq::one(F3)) * (q_value(spec, h * g, 5) - q_value(spec, h * g, 5))).trace());
    CHECK(diag.magnitude() == Catch::Approx(81.0));
}

TEST_CASE("reciprocal equation solutions") {
    const Poly t2 = Poly::monomial(F3, 2);
    const ReciprocalSolutions r = reciprocal_solutions(t2);
    REQUIRE(r.solutions == std::vector<Poly>{t2});
    CHECK(r.tau_b == 3);
    CHECK(r.constructive_match);
    CHECK(r.injective);

    // b is always a solution of its own equation
    for (std::uint64_t i = 0; i < 27; ++i) {
        const Poly b = monic_at(F3, 3, i);
        const ReciprocalSolutions rb = reciprocal_solutions(b);
        REQUIRE(std::count(rb.solutions.begin(), rb.solutions.end(), b) == 1);
        REQUIRE((long long)rb.solutions.size() <= rb.tau_b);
        REQUIRE(rb.constructive_match);
        REQUIRE(rb.injective);
    }

    CHECK_THROWS_AS(reciprocal_solutions(Poly::from_indices(F3, {1, 2})),
                    std::invalid_argument);
}

TEST_CASE("complete quadratic sums obey the dichotomy") {
    // Q(x) = x^2 over F_3, M = 0: |1 + 2 e^(2 pi i/3)| = sqrt(3)
    MatrixFq C(F3, 1, 1);
    C.at(0, 0) = Fq::one(F3);
    const CharacterSelector sel{Fq::one(F3)};
    const GaussCheck g = gauss_sum_check(C, std::vector<Fq>{Fq::zero(F3)}, sel);
    CHECK(g.rank == 1);
    CHECK(g.magnitude == Catch::Approx(std::sqrt(3.0)));
    CHECK(g.dichotomy_ok);
    CHECK(g.bound_ok);

    // zero quadratic part, nonzero linear form: the complete sum vanishes
    MatrixFq Z(F3, 2, 2);
    const GaussCheck z =
        gauss_sum_check(Z, std::vector<Fq>{Fq::one(F3), Fq::zero(F3)}, sel);
    CHECK(z.rank == 0);
    CHECK(z.magnitude == Catch::Approx(0.0).margin(1e-9));
    CHECK(z.dichotomy_ok);

    std::mt19937_64 rng(41);
    for (const FieldSpec* Fp : {&F3, &F5}) {
        const FieldSpec& F = *Fp;
        for (int trial = 0; trial < 100; ++trial) {
            const int N = 1 + int(rng() % 4);
            MatrixFq Q(F, N, N);
            std::vector<Fq> lin(N, Fq::zero(F));
            for (int i = 0; i < N; ++i) {
                lin[i] = Fq::from_index(F, rng() % F.q());
                for (int j = 0; j < N; ++j) Q.at(i, j) = Fq::from_index(F, rng() % F.q());
            }
            const CharacterSelector s{Fq::from_index(F, 1 + rng() % (F.q() - 1))};
            const GaussCheck check = gauss_sum_check(Q, lin, s);
            REQUIRE(check.dichotomy_ok);
            REQUIRE(check.bound_ok);
        }
    }
}

TEST_CASE("central half-moment sum") {
    const BandSpec spec = rudin_shapiro(F3);

    // kappa = 0: the single term g = 1
    const CentralHalfResult r0 = central_half_sum(spec, 0, 3);
    const int delta0 = delta_A(spec, Poly::constant(F3, Fq::one(F3)), 3).dimension;
    SqrtScaled expect0;
    expect0.add_half_power(3, delta0);
    CHECK(r0.sum == expect0);
    CHECK(r0.max_fiber == 1);
    CHECK(r0.multiplicity_ok);

    // kappa = 2, N = 3: exact sum over the six g in M^x(2)
    const CentralHalfResult r = central_half_sum(spec, 2, 3);
    SqrtScaled expect;
    for (const Poly& g : monics_nonzero_const(F3, 2))
        expect.add_half_power(3, delta_A(spec, g, 3).dimension);
    CHECK(r.sum == expect);
    CHECK(r.multiplicity_ok);
    CHECK(r.monitor_exponent == Catch::Approx(2.0 + 9.0 / 8.0));
}

TEST_CASE("exponent audit at the balanced cutoffs") {
    const ExponentAudit a = exponent_audit(Rat(1, 5), Rat(7, 10));
    CHECK(a.type_one == Rat(19, 20));
    CHECK(a.type_two_first == Rat(19, 20));
    CHECK(a.type_two_second == Rat(19, 20));
    CHECK(a.maximum == Rat(19, 20));
    CHECK(a.saving);

    // degenerate cutoffs: no saving, the first bilinear exponent is 3/2
    const ExponentAudit zero = exponent_audit(Rat(0), Rat(0));
    CHECK(zero.type_two_first == Rat(3, 2));
    CHECK(zero.type_two_second == Rat(7, 4));
    CHECK(!zero.saving);

    CHECK_THROWS_AS(exponent_audit(Rat(1, 2), Rat(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(exponent_audit(Rat(-1, 5), Rat(1, 2)), std::invalid_argument);
}

TEST_CASE("grid search finds no better cutoffs") {
    const ExponentGridResult best = exponent_grid_search(10);
    CHECK(best.maximum == Rat(19, 20));
    CHECK(best.u == Rat(1, 5));
    CHECK(best.v == Rat(7, 10));
}

TEST_CASE("json wire formats round trip") {
    const FieldSpec F9 = FieldSpec::make(3, 2);
    const json jf = to_json(F9);
    CHECK(jf.at("p") == 3);
    CHECK(jf.at("e") == 2);
    CHECK(field_from_json(jf).same(F9));

    const Poly f(F9, {Fq(F9, {1, 2}), Fq::zero(F9), Fq::one(F9)});
    const json jp = to_json(f);
    CHECK(jp == json::parse("[[1,2],[0,0],[1,0]]"));
    CHECK(poly_from_json(F9, jp) == f);

    BandSpec spec = rudin_shapiro(F9);
    spec.set_linear_form(2, {Fq::one(F9), Fq::zero(F9), Fq(F9, {1, 1})});
    const json jb = to_json(spec);
    CHECK(jb.at("m") == 1);
    const BandSpec back = band_from_json(F9, jb);
    CHECK(back.band() == spec.band());
    CHECK(back.linear_forms() == spec.linear_forms());
}
