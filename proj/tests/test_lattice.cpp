#include <catch2/catch_amalgamated.hpp>

#include <ev8/lattice.hpp>

#include <random>

using namespace ev8;

TEST_CASE("lattice basis examples") {
    SECTION("(1, 1, -1)") {
        LatticeBasis b = lattice_basis({FieldElem(1), FieldElem(1), FieldElem(-1)});
        REQUIRE(b.rank() == 3);
        CHECK(b.rows[0] == std::vector<mpz_class>{1, 0, 0});
        CHECK(b.rows[1] == std::vector<mpz_class>{0, 1, 0});
        CHECK(b.rows[2] == std::vector<mpz_class>{0, 0, 2});
    }
    SECTION("(2)") {
        CHECK(lattice_basis({FieldElem(2)}).rank() == 0);
    }
    SECTION("(zeta8, i, -1) has full rank") {
        CHECK(lattice_basis({zeta8_pow(1), FieldElem::i(), FieldElem(-1)}).rank() == 3);
    }
    SECTION("non-decomposable input fails") {
        CHECK_THROWS_AS(lattice_basis({FieldElem(1) + FieldElem(2) * FieldElem::i()}), Error);
    }
    SECTION("zero entries pin their exponent") {
        LatticeBasis b = lattice_basis({FieldElem(0), FieldElem(-1)});
        CHECK(b.rank() == 1);
        CHECK(b.rows[0] == std::vector<mpz_class>{0, 2});
    }
}

TEST_CASE("lattice rows are relations (random decomposable tuples)") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(1, 6), kk(0, 7), h(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FieldElem> xs;
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) {
            Q q(num(rng), num(rng));
            q.canonicalize();
            FieldElem x = FieldElem(q) * zeta8_pow(kk(rng));
            if (h(rng)) x = x * FieldElem::sqrt2();
            xs.push_back(x);
        }
        LatticeBasis b = lattice_basis(xs);
        for (const auto& row : b.rows) {
            bool valid = true;
            CHECK(tuple_power(xs, row, &valid) == FieldElem(1));
            CHECK(valid);
        }
    }
}

TEST_CASE("full rank iff all roots of unity (exhaustive grid)") {
    std::vector<FieldElem> pool;
    for (int k = 0; k < 8; ++k) pool.push_back(zeta8_pow(k));
    pool.push_back(FieldElem(2));
    pool.push_back(FieldElem(3));
    pool.push_back(FieldElem(1) + FieldElem::i());
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = 0; j < pool.size(); ++j)
            for (size_t l = 0; l < pool.size(); ++l) {
                std::vector<FieldElem> xs = {pool[i], pool[j], pool[l]};
                bool all_roots = true;
                for (const auto& x : xs)
                    if (!is_root_of_unity(x).has_value()) all_roots = false;
                CHECK((lattice_basis(xs).rank() == 3) == all_roots);
            }
}

TEST_CASE("lattice subset examples") {
    std::vector<FieldElem> one_one_neg = {FieldElem(1), FieldElem(1), FieldElem(-1)};
    CHECK(lattice_subset(one_one_neg, one_one_neg));
    CHECK(lattice_subset({FieldElem(2)}, {FieldElem(5)}));  // rank-0 lattice
    CHECK_FALSE(lattice_subset(one_one_neg, {FieldElem(1), FieldElem(1), FieldElem::i()}));
}

TEST_CASE("vandermonde solve") {
    std::vector<FieldElem> nodes = {FieldElem(1), FieldElem(2), FieldElem(3)};
    std::vector<FieldElem> values = {FieldElem(1), FieldElem(4), FieldElem(9)};  // t^2
    auto c = vandermonde_solve(values, nodes);
    CHECK(c[0] == FieldElem(0));
    CHECK(c[1] == FieldElem(0));
    CHECK(c[2] == FieldElem(1));
    auto single = vandermonde_solve({FieldElem(7)}, {FieldElem(5)});
    CHECK(single[0] == FieldElem(7));
    CHECK_THROWS_AS(vandermonde_solve({FieldElem(1), FieldElem(2)},
                                      {FieldElem(3), FieldElem(3)}),
                    Error);
}

TEST_CASE("conformal interpolation round trips") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    auto rnd_coeffs = [&](int count) {
        std::vector<FieldElem> z;
        for (int i = 0; i < count; ++i) z.push_back(FieldElem(d(rng)) + FieldElem(d(rng)) * FieldElem::i());
        return z;
    };
    auto simplex_size = [](int k, int m) {
        std::vector<std::vector<int>> t;
        std::vector<int> cur;
        detail::enum_simplex(k, m, cur, t);
        return t.size();
    };
    SECTION("k=1 generic base, arbitrary target") {
        for (int m = 1; m <= 4; ++m) {
            auto z = rnd_coeffs(static_cast<int>(simplex_size(1, m)));
            InterpolationSystem sys{1, m, {FieldElem(2)}, {FieldElem(3)},
                                    forward_samples(1, m, {FieldElem(2)}, z)};
            CHECK(conformal_interpolate(sys) == direct_n1(1, m, {FieldElem(3)}, z));
        }
    }
    SECTION("identity target returns the supplied N1") {
        auto z = rnd_coeffs(static_cast<int>(simplex_size(2, 3)));
        std::vector<FieldElem> x = {FieldElem(2), FieldElem(Q(1, 3))};
        InterpolationSystem sys{2, 3, x, x, forward_samples(2, 3, x, z)};
        CHECK(conformal_interpolate(sys) == sys.samples[0]);
    }
    SECTION("coset collapse with x = (-1), target (1)") {
        for (int m = 2; m <= 4; ++m) {
            auto z = rnd_coeffs(static_cast<int>(simplex_size(1, m)));
            InterpolationSystem sys{1, m, {FieldElem(-1)}, {FieldElem(1)},
                                    forward_samples(1, m, {FieldElem(-1)}, z)};
            // target all-ones recovers the plain sum of the coefficients
            FieldElem expect(0);
            for (const auto& c : z) expect += c;
            CHECK(conformal_interpolate(sys) == expect);
        }
    }
    SECTION("k=3, m<=4 random bases with compatible targets") {
        std::vector<FieldElem> pool = {FieldElem(2), FieldElem(3), FieldElem(-1),
                                       FieldElem::i(), FieldElem(Q(1, 2))};
        for (int trial = 0; trial < 12; ++trial) {
            int m = 1 + static_cast<int>(rng() % 3);
            std::vector<FieldElem> x = {pool[rng() % pool.size()], pool[rng() % pool.size()],
                                        pool[rng() % pool.size()]};
            // y = componentwise square keeps every multiplicative relation
            std::vector<FieldElem> y = {x[0] * x[0], x[1] * x[1], x[2] * x[2]};
            if (!lattice_subset(x, y)) continue;
            auto z = rnd_coeffs(static_cast<int>(simplex_size(3, m)));
            InterpolationSystem sys{3, m, x, y, forward_samples(3, m, x, z)};
            CHECK(conformal_interpolate(sys) == direct_n1(3, m, y, z));
        }
    }
    SECTION("precondition violation is reported") {
        InterpolationSystem sys{1, 2, {FieldElem(-1)}, {FieldElem::i()}, {}};
        CHECK_THROWS_AS(conformal_interpolate(sys), Error);
    }
}

TEST_CASE("moebius orbits") {
    SECTION("disk automorphism with |delta| != 1 stays on the circle") {
        MobiusMap psi = MobiusMap::disk_automorphism(FieldElem(Q(1, 2)));
        CHECK(psi.unit_circle_form());
        OrbitReport rep = mobius_orbit(psi, FieldElem::i(), 10);
        CHECK(rep.all_distinct);
        CHECK(rep.all_unimodular);
        CHECK(rep.period == 0);
    }
    SECTION("delta = 0 gives the identity map") {
        MobiusMap psi = MobiusMap::disk_automorphism(FieldElem(0));
        OrbitReport rep = mobius_orbit(psi, FieldElem::i(), 5);
        CHECK(rep.period == 1);
        CHECK_FALSE(rep.all_distinct);
    }
    SECTION("projective order two is detected as period two") {
        FieldElem lam = FieldElem::i() * FieldElem(Q(1, 2));
        MobiusMap psi{FieldElem(1), lam, lam, FieldElem(-1)};
        OrbitReport rep = mobius_orbit(psi, FieldElem::i(), 6);
        CHECK(rep.period == 2);
    }
    SECTION("pole raises") {
        MobiusMap psi{FieldElem(1), FieldElem(1), FieldElem(1), FieldElem(-1)};
        CHECK_THROWS_AS(mobius_orbit(psi, FieldElem(1), 3), Error);
    }
    SECTION("approx mode orbits") {
        MobiusMap psi{FieldElem::approx({1, 0}), FieldElem::approx({0.5, 0}),
                      FieldElem::approx({0.5, 0}), FieldElem::approx({1, 0})};
        OrbitReport rep = mobius_orbit(psi, FieldElem::approx({0, 1}), 8);
        CHECK(rep.all_unimodular);
        CHECK(rep.all_distinct);
    }
}

TEST_CASE("unit circle necessary condition") {
    FieldElem one(1), zero(0);
    // z^2 - 1: coefficients (-1, 0, 1)
    CHECK(unit_circle_necessary({-one, zero, one}));
    // z - 2
    CHECK_FALSE(unit_circle_necessary({FieldElem(-2), one}));
    // z^2 + z + 1
    CHECK(unit_circle_necessary({one, one, one}));
    // z^2 - z - 1 (golden ratio root lies off the circle)
    CHECK_FALSE(unit_circle_necessary({-one, -one, one}));
    // cyclotomic polynomials up to order 8
    CHECK(unit_circle_necessary({-one, one}));                    // n=1
    CHECK(unit_circle_necessary({one, one}));                     // n=2
    CHECK(unit_circle_necessary({one, one, one}));                // n=3
    CHECK(unit_circle_necessary({one, zero, one}));               // n=4
    CHECK(unit_circle_necessary({one, one, one, one, one}));      // n=5
    CHECK(unit_circle_necessary({one, -one, one}));               // n=6
    CHECK(unit_circle_necessary({one, one, one, one, one, one, one}));  // n=7
    CHECK(unit_circle_necessary({one, zero, zero, zero, one}));   // n=8
    // laurent shift does not change the verdict
    CHECK(unit_circle_necessary({-one, zero, one}, 1));
    CHECK_THROWS_AS(unit_circle_necessary({zero, one}), Error);
}
