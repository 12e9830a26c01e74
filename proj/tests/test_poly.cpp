#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "bandlab/poly.hpp"

using namespace bandlab;

namespace {

const FieldSpec F3 = FieldSpec::make(3, 1);
const FieldSpec F5 = FieldSpec::make(5, 1);

Poly random_poly(const FieldSpec& F, int max_deg, std::mt19937_64& rng) {
    std::vector<Fq> c;
    const int len = int(rng() % (max_deg + 2));  // allow zero polynomial
    for (int i = 0; i < len; ++i) c.push_back(Fq::from_index(F, rng() % F.q()));
    return Poly(F, std::move(c));
}

}  // namespace

TEST_CASE("polynomial arithmetic basics") {
    const Poly a = Poly::from_indices(F3, {1, 1});      // t + 1
    const Poly b = Poly::from_indices(F3, {2, 1});      // t + 2
    CHECK(a * b == Poly::from_indices(F3, {2, 0, 1}));  // t^2 + 2

    const Poly one = Poly::constant(F3, Fq::one(F3));
    const Poly f = Poly::from_indices(F3, {2, 0, 1, 2});
    CHECK(f * one == f);

    const auto [q, r] = divmod(f, a);
    CHECK(q * a + r == f);
    CHECK(r.degree() < a.degree());
    CHECK_THROWS_AS(divmod(f, Poly(F3)), std::domain_error);
}

TEST_CASE("gcd conventions") {
    const Poly t2m1 = Poly::from_indices(F3, {2, 0, 1});  // t^2 - 1
    const Poly tm1 = Poly::from_indices(F3, {2, 1});      // t - 1
    CHECK(poly_gcd(t2m1, tm1) == tm1);

    CHECK(poly_gcd(Poly(F3), Poly(F3)).is_zero());
    const Poly two_t = Poly::from_indices(F3, {0, 2});
    CHECK(poly_gcd(two_t, Poly(F3)) == Poly::monomial(F3, 1));  // monic normalization
}

TEST_CASE("reciprocal polynomial") {
    // a = t^3 + 2t + 1 -> a* = t^3 + 2t^2 + 1
    const Poly a = Poly::from_indices(F3, {1, 2, 0, 1});
    CHECK(reciprocal_star(a) == Poly::from_indices(F3, {1, 0, 2, 1}));

    CHECK(reciprocal_star(Poly::monomial(F3, 2)) == Poly::constant(F3, Fq::one(F3)));

    const Poly self = Poly::from_indices(F3, {1, 0, 1});  // t^2 + 1
    CHECK(reciprocal_star(self) == self);

    CHECK_THROWS_AS(reciprocal_star(Poly(F3)), std::invalid_argument);
}

TEST_CASE("reciprocal is multiplicative and involutive away from t = 0") {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 200) {
        const Poly a = random_poly(F3, 4, rng), b = random_poly(F3, 4, rng);
        if (a.is_zero() || b.is_zero()) continue;
        ++done;
        CHECK(reciprocal_star(a * b) == reciprocal_star(a) * reciprocal_star(b));
        if (!a.constant_term().is_zero())
            CHECK(reciprocal_star(reciprocal_star(a)) == a);
    }
    // Exhaustive over degree <= 2 pairs.
    for (std::uint64_t i = 0; i < 27; ++i)
        for (std::uint64_t j = 0; j < 27; ++j) {
            const Poly a = monic_at(F3, 3, i), b = monic_at(F3, 3, j);
            REQUIRE(reciprocal_star(a * b) == reciprocal_star(a) * reciprocal_star(b));
        }
}

TEST_CASE("order at zero") {
    const Poly g = Poly::monomial(F3, 2) * Poly::from_indices(F3, {1, 1});
    const auto [r, g0] = remove_zero_factor(g);
    CHECK(r == 2);
    CHECK(g0 == Poly::from_indices(F3, {1, 1}));

    const Poly h = Poly::from_indices(F3, {1, 2});
    CHECK(remove_zero_factor(h) == std::pair<int, Poly>{0, h});

    CHECK(remove_zero_factor(Poly::monomial(F3, 5)) ==
          std::pair<int, Poly>{5, Poly::constant(F3, Fq::one(F3))});

    CHECK_THROWS_AS(ord_at_zero(Poly(F3)), std::invalid_argument);
}

TEST_CASE("irreducibility test") {
    CHECK(is_irreducible(Poly::from_indices(F3, {1, 0, 1})));   // t^2 + 1
    CHECK(!is_irreducible(Poly::from_indices(F3, {2, 0, 1})));  // t^2 + 2 has roots +-1
    CHECK(is_irreducible(Poly::monomial(F3, 1)));

    CHECK_THROWS_AS(is_irreducible(Poly::from_indices(F3, {0, 2})), std::invalid_argument);

    // Against the root-count oracle in degree <= 3 over F_3 and F_5.
    for (const FieldSpec* Fp : {&F3, &F5}) {
        const FieldSpec& F = *Fp;
        for (int n = 2; n <= 3; ++n) {
            for (const Poly& f : monics(F, n)) {
                bool has_root = false;
                for (std::uint64_t i = 0; i < F.q(); ++i)
                    if (f.eval(Fq::from_index(F, i)).is_zero()) has_root = true;
                // for n <= 3 irreducible <=> no roots
                REQUIRE(is_irreducible(f) == !has_root);
            }
        }
    }
}

TEST_CASE("enumeration of monic families") {
    CHECK(monic_count(F3, 2) == 9);

    std::vector<Poly> p2;
    for (const Poly& f : irreducibles(F3, 2)) p2.push_back(f);
    REQUIRE(p2.size() == 3);
    CHECK(p2[0] == Poly::from_indices(F3, {1, 0, 1}));  // t^2 + 1
    CHECK(p2[1] == Poly::from_indices(F3, {2, 1, 1}));  // t^2 + t + 2
    CHECK(p2[2] == Poly::from_indices(F3, {2, 2, 1}));  // t^2 + 2t + 2

    std::size_t mx = 0;
    for (const Poly& f : monics_nonzero_const(F3, 2)) {
        CHECK(!f.constant_term().is_zero());
        ++mx;
    }
    CHECK(mx == 6);  // q^(k-1) (q-1)

    // Streams restart identically.
    const auto range = monics(F3, 3);
    std::vector<Poly> first(range.begin(), range.end());
    std::vector<Poly> second(range.begin(), range.end());
    CHECK(first == second);
    CHECK(first.size() == 27);
}

TEST_CASE("prime polynomial counts") {
    CHECK(count_irreducible(F3, 1) == 3);
    CHECK(count_irreducible(F3, 2) == 3);
    CHECK(count_irreducible(F3, 3) == 8);  // (27 - 3)/3

    for (const FieldSpec* Fp : {&F3, &F5}) {
        const FieldSpec& F = *Fp;
        for (int n = 1; n <= 6; ++n) {
            std::uint64_t seen = 0;
            for (const Poly& f : irreducibles(F, n)) {
                (void)f;
                ++seen;
            }
            REQUIRE(count_irreducible(F, n) == seen);
        }
    }
}

TEST_CASE("factorization reconstructs the input") {
    CHECK(factorize(Poly::from_indices(F3, {2, 0, 1})).factors ==
          std::vector<std::pair<Poly, int>>{{Poly::from_indices(F3, {1, 1}), 1},
                                            {Poly::from_indices(F3, {2, 1}), 1}});

    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 150) {
        const Poly f = random_poly(F3, 9, rng);
        if (f.is_zero()) continue;
        ++done;
        for (bool det : {false, true}) {
            const FactorMultiset fac = factorize(f, det);
            REQUIRE(fac.reconstruct() == f);
            for (const auto& [p, m] : fac.factors) {
                REQUIRE(m >= 1);
                REQUIRE(p.is_monic());
                REQUIRE(is_irreducible(p));
            }
        }
    }

    // Repeated and p-th power factors.
    const Poly t = Poly::monomial(F3, 1);
    const Poly tp1 = Poly::from_indices(F3, {1, 1});
    const Poly f = t.pow(3) * tp1.pow(6);
    const FactorMultiset fac = factorize(f);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0] == std::pair<Poly, int>{t, 3});
    CHECK(fac.factors[1] == std::pair<Poly, int>{tp1, 6});
}

TEST_CASE("divisor counts and streams") {
    const Poly t = Poly::monomial(F3, 1);
    CHECK(tau(t * t) == 3);
    CHECK(divisors(t * t) ==
          std::vector<Poly>{Poly::constant(F3, Fq::one(F3)), t, t * t});

    const Poly f = t * t * Poly::from_indices(F3, {1, 1});
    CHECK(tau(f) == 6);

    std::mt19937_64 rng(23);
    int done = 0;
    while (done < 60) {
        const Poly g = random_poly(F3, 7, rng);
        if (g.is_zero()) continue;
        ++done;
        const auto divs = divisors(g);
        REQUIRE((long long)divs.size() == tau(g));
        for (const Poly& d : divs) REQUIRE(d.divides(g));
        std::set<std::string> uniq;
        for (const Poly& d : divs) uniq.insert(to_string(d));
        REQUIRE(uniq.size() == divs.size());
    }
}

TEST_CASE("von Mangoldt weights") {
    CHECK(von_mangoldt(Poly::monomial(F3, 4)) == 1);
    CHECK(von_mangoldt(Poly::monomial(F3, 1) * Poly::from_indices(F3, {1, 1})) == 0);
    for (const Poly& pi : irreducibles(F3, 4)) CHECK(von_mangoldt(pi) == 4);
    CHECK_THROWS_AS(von_mangoldt(Poly::from_indices(F3, {0, 2})), std::invalid_argument);
}

TEST_CASE("Chebyshev identity: sum of von Mangoldt over M(n) equals q^n") {
    for (int n = 1; n <= 7; ++n) {
        long long total = 0;
        for (const Poly& f : monics(F3, n)) total += von_mangoldt(f);
        REQUIRE(total == (long long)monic_count(F3, n));
    }
}
