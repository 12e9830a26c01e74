#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bandlab/ranklab.hpp"

using namespace bandlab;

namespace {

const FieldSpec F3 = FieldSpec::make(3, 1);

BandSpec rudin_shapiro(const FieldSpec& F) { return BandSpec::from_indices(F, {0, 1}); }

// The fixed 7x7 low-rank regression matrix: 1 on odd diagonals, 0 elsewhere.
MatrixFq checkerboard7(const FieldSpec& F) {
    MatrixFq m(F, 7, 7);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j)
            if ((i + j) % 2 == 1) m.at(i, j) = Fq::one(F);
    return m;
}

MatrixFq random_matrix(const FieldSpec& F, std::size_t n, std::mt19937_64& rng) {
    MatrixFq m(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Fq::from_index(F, rng() % F.q());
    return m;
}

}  // namespace

TEST_CASE("rank of simple matrices") {
    CHECK(rank_fq(MatrixFq::identity(F3, 5)) == 5);
    CHECK(rank_fq(MatrixFq(F3, 4, 6)) == 0);
    CHECK(rank_fq(checkerboard7(F3)) == 2);
}

TEST_CASE("nullspace is canonical and annihilates") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const MatrixFq m = random_matrix(F3, 5, rng);
        const auto basis = nullspace(m);
        CHECK(int(basis.size()) == 5 - rank_fq(m));
        for (const auto& v : basis)
            for (std::size_t r = 0; r < m.rows(); ++r) {
                Fq acc = Fq::zero(F3);
                for (std::size_t c = 0; c < m.cols(); ++c) acc = acc + m.at(r, c) * v[c];
                REQUIRE(acc.is_zero());
            }
    }
}

TEST_CASE("toeplitz matrices from symbols") {
    CHECK(toeplitz_from_symbol(LaurentSymbol::constant(F3, Fq::one(F3)), 4) ==
          MatrixFq::identity(F3, 5));

    const LaurentSymbol shift(F3, -1, {Fq::one(F3), Fq::zero(F3), Fq::one(F3)});
    const MatrixFq tri = toeplitz_from_symbol(shift, 3);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            CHECK(tri.at(a, b) == (std::abs(a - b) == 1 ? Fq::one(F3) : Fq::zero(F3)));
}

TEST_CASE("low-rank multiplier regression") {
    const BandSpec spec = rudin_shapiro(F3);
    const Poly g = Poly::from_indices(F3, {2, 0, 0, 0, 1});  // t^4 - 1

    const MatrixFq sym = toeplitz_from_symbol(symbol_A(spec) * autocorrelation_symbol(g), 6);
    const MatrixFq expected = checkerboard7(F3);

    // equal up to a nonzero scalar
    Fq scalar;
    for (std::size_t i = 0; i < 7 && !scalar.attached(); ++i)
        for (std::size_t j = 0; j < 7; ++j)
            if (!expected.at(i, j).is_zero()) {
                scalar = sym.at(i, j) * expected.at(i, j).inverse();
                break;
            }
    REQUIRE(scalar.attached());
    REQUIRE(!scalar.is_zero());
    CHECK(sym == scalar * expected);

    CHECK(rank_fq(sym) == 2);
    CHECK(rank_fq(polar_matrix_multiplier(spec, g, 6)) == 2);
    CHECK(delta_A(spec, g, 6).dimension == 5);
}

TEST_CASE("polar matrix of the identity multiplier") {
    const BandSpec diag = BandSpec::from_indices(F3, {2});  // A = c_0 = 2
    const Poly one = Poly::constant(F3, Fq::one(F3));
    const MatrixFq m = polar_matrix_multiplier(diag, one, 4);
    CHECK(m == Fq::from_int(F3, 4) * MatrixFq::identity(F3, 5));
    CHECK(rank_fq(m) == 5);
    CHECK(delta_A(diag, one, 4).dimension == 0);

    // powers of t do not change the rank
    for (int r = 1; r <= 3; ++r)
        CHECK(rank_fq(polar_matrix_multiplier(diag, Poly::monomial(F3, r), 4)) == 5);

    CHECK_THROWS_AS(polar_matrix_multiplier(diag, Poly(F3), 4), std::invalid_argument);
}

TEST_CASE("gap criterion reproduces the radical") {
    const BandSpec spec = rudin_shapiro(F3);
    const Poly g = Poly::from_indices(F3, {2, 0, 0, 0, 1});
    const RadicalReport direct = delta_A(spec, g, 6);
    const RadicalReport via_gap = radical_via_gap(spec, g, 6);
    CHECK(via_gap.dimension == 5);
    REQUIRE(direct.dimension == via_gap.dimension);

    // identical spans (and, with the canonical nullspace, identical bases)
    auto as_vectors = [](const RadicalReport& r, int N) {
        std::vector<std::vector<Fq>> out;
        for (const Poly& p : r.basis) out.push_back(digits_of(p, N));
        return out;
    };
    CHECK(same_span(F3, as_vectors(direct, 6), as_vectors(via_gap, 6), 7));

    // g = 1 with a constant band forces h = 0
    const BandSpec diag = BandSpec::from_indices(F3, {1});
    CHECK(radical_via_gap(diag, Poly::constant(F3, Fq::one(F3)), 5).dimension == 0);

    // radical vectors annihilate the polar form against all of V_N
    const MatrixFq M = polar_matrix_multiplier(spec, g, 6);
    for (const Poly& h : via_gap.basis) {
        const auto hv = digits_of(h, 6);
        for (int b = 0; b <= 6; ++b) {
            Fq acc = Fq::zero(F3);
            for (int a = 0; a <= 6; ++a) acc = acc + hv[a] * M.at(a, b);
            REQUIRE(acc.is_zero());
        }
    }
}

TEST_CASE("zero-factor removal leaves the defect unchanged") {
    std::mt19937_64 rng(19);
    const BandSpec spec = rudin_shapiro(F3);
    for (int trial = 0; trial < 40; ++trial) {
        const int deg = int(rng() % 3);
        Poly g0 = monic_at(F3, deg, rng() % monic_count(F3, deg));
        if (g0.constant_term().is_zero())
            g0 = g0 + Poly::constant(F3, Fq::one(F3));
        const int r = int(rng() % 4);
        const int N = int(rng() % 5);
        const Poly g = Poly::monomial(F3, r) * g0;
        REQUIRE(delta_A(spec, g, N).dimension == delta_A(spec, g0, N).dimension);
    }
}

TEST_CASE("reciprocal symbol space") {
    const auto T0 = ReciprocalSymbol::zero(F3, 2);
    CHECK(T0.is_zero());
    CHECK(delta_T(T0, 3) == 4);  // empty constraints

    // T = z^d: the system is triangular, kernel trivial
    std::vector<Fq> half(3, Fq::zero(F3));
    half[0] = Fq::one(F3);
    const ReciprocalSymbol Td(F3, 2, half);
    CHECK(delta_T(Td, 4) == 0);

    // round trip through the palindromic polynomial
    const auto T = ReciprocalSymbol::from_index(F3, 2, 17);
    const Poly p = T.to_poly();
    for (int s = 0; s <= 4; ++s) CHECK(p.coeff(s) == p.coeff(4 - s));
    CHECK(ReciprocalSymbol::from_poly(p, 2).half() == T.half());

    CHECK_THROWS_AS(ReciprocalSymbol::from_poly(Poly::from_indices(F3, {0, 1, 1}), 1),
                    std::invalid_argument);
}

TEST_CASE("defect equals the symbol defect for g(0) != 0") {
    const BandSpec spec = rudin_shapiro(F3);
    const int m = spec.bandwidth();
    for (int deg = 0; deg <= 3; ++deg) {
        for (const Poly& g : monics_nonzero_const(F3, deg)) {
            const Poly T = symbol_P(spec) * g * reciprocal_star(g);
            const auto sym = ReciprocalSymbol::from_poly(T, deg + m);
            for (int N = 0; N <= 5; ++N)
                REQUIRE(delta_A(spec, g, N).dimension == delta_T(sym, N));
        }
    }
}

TEST_CASE("the symbol-multiplication map L_H") {
    // H = 1: rows read off x_j directly, rank = min(N, d) + 1
    const Poly one = Poly::constant(F3, Fq::one(F3));
    CHECK(rank_fq(build_LH(one, 3, 5)) == 4);
    CHECK(rank_fq(build_LH(one, 5, 2)) == 3);
    CHECK(lh_rank_floor(one, 3, 5) == 0);  // R = 0: vacuous floor

    // R = 5, d = 4: J = {1, 2}
    const Poly h5 = Poly::from_indices(F3, {1, 0, 0, 0, 0, 1});  // t^5 + 1
    CHECK(lh_rank_floor(h5, 4, 5) == 2);
    CHECK(rank_fq(build_LH(h5, 4, 5)) >= 2);

    CHECK_THROWS_AS(lh_rank_floor(Poly(F3), 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(lh_rank_floor(Poly::monomial(F3, 4), 3, 3), std::invalid_argument);

    // floor <= rank for every nonzero H in V_N, small sweep
    for (int d = 0; d <= 4; ++d)
        for (int N = 0; N <= 4; ++N)
            for (std::uint64_t idx = 1; idx < monic_count(F3, N + 1); ++idx) {
                std::vector<Fq> c;
                std::uint64_t v = idx;
                for (int i = 0; i <= N; ++i) {
                    c.push_back(Fq::from_index(F3, v % 3));
                    v /= 3;
                }
                const Poly H(F3, std::move(c));
                REQUIRE(rank_fq(build_LH(H, d, N)) >= lh_rank_floor(H, d, N));
            }
}

TEST_CASE("incidence counted both ways") {
    const IncidenceResult tiny = incidence_sum(F3, 0, 0);
    CHECK(tiny.by_symbol == 5);  // T = 0 contributes q, two nonzero T contribute 1
    CHECK(tiny.by_kernel == 5);

    for (int d = 0; d <= 2; ++d)
        for (int N = 0; N <= 3; ++N) {
            const IncidenceResult r = incidence_sum(F3, d, N);
            REQUIRE(r.by_symbol == r.by_kernel);
        }

    CHECK_THROWS_AS(incidence_sum(F3, 3, 4, Budget{10}), BudgetExceeded);
}

TEST_CASE("type II rank floor") {
    const BandSpec spec = rudin_shapiro(F3);
    const Poly g1 = Poly::monomial(F3, 1);
    const Poly g2 = Poly::from_indices(F3, {1, 1});

    const RankFloor rf = typeII_rank_check(spec, g1, g2, 4);
    CHECK(rf.floor == 3);
    CHECK(rf.rank >= 3);

    CHECK_THROWS_AS(typeII_rank_check(spec, g1, g1, 4), ExceptionalPairError);

    // i <= k + m - 1 gives a vacuous floor
    CHECK(typeII_rank_check(spec, g1, g2, 1).floor == 0);
}

TEST_CASE("type I rank floor") {
    const BandSpec diag = BandSpec::from_indices(F3, {1});
    const Poly one = Poly::constant(F3, Fq::one(F3));
    const RankFloor rf = typeI_rank_check(diag, one, 5);
    CHECK(rf.rank == 6);
    CHECK(rf.floor == 6);

    const BandSpec spec = rudin_shapiro(F3);
    const Poly g = Poly::from_indices(F3, {2, 0, 0, 0, 1});
    const RankFloor sharp = typeI_rank_check(spec, g, 6);
    CHECK(sharp.rank == 2);
    CHECK(sharp.floor == 2);  // the floor is attained here

    CHECK_THROWS_AS(typeI_rank_check(spec, Poly(F3), 3), std::invalid_argument);
    CHECK_THROWS_AS(typeI_rank_check(spec, Poly::from_indices(F3, {0, 2}), 3),
                    std::invalid_argument);
}

TEST_CASE("restriction to a hyperplane drops the rank by at most 2") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        MatrixFq C = random_matrix(F3, n, rng);
        const MatrixFq M = C + C.transpose();  // symmetric polar
        const int ambient = rank_fq(M);
        for (std::size_t i = 0; i < n; ++i) {
            AffineHyperplane plane{std::vector<Fq>(n, Fq::zero(F3)), Fq::one(F3)};
            plane.normal[i] = Fq::one(F3);
            const int restricted = monic_slice_rank(M, plane);
            const int drop = ambient - restricted;
            REQUIRE(drop >= 0);
            REQUIRE(drop <= 2);
        }
    }

    const MatrixFq zero(F3, 4, 4);
    CHECK(monic_slice_rank(zero, monic_slice(F3, 3)) == 0);
    MatrixFq bad(F3, 3, 3);
    CHECK_THROWS_AS(
        monic_slice_rank(bad, AffineHyperplane{std::vector<Fq>(3, Fq::zero(F3)), Fq::one(F3)}),
        std::invalid_argument);
}

TEST_CASE("nonzero banded symbols have near-full Toeplitz rank") {
    // rank >= N - D + 1 for H != 0 supported in [-D, D], N >= D
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int D = int(rng() % 3);
        std::vector<Fq> c;
        for (int i = 0; i < 2 * D + 1; ++i) c.push_back(Fq::from_index(F3, rng() % 3));
        const LaurentSymbol H(F3, -D, std::move(c));
        if (H.is_zero()) continue;
        const int Dtrue = std::max(std::abs(H.lo()), std::abs(H.hi()));
        const int N = Dtrue + int(rng() % 4);
        REQUIRE(rank_fq(toeplitz_from_symbol(H, N)) >= N - Dtrue + 1);
    }
}
