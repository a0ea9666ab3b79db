#include <catch2/catch_amalgamated.hpp>

#include <ev8/gadget.hpp>

#include <random>

using namespace ev8;

namespace {
Sig4 rnd_eightv(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    auto p = [&] { return FieldElem(d(rng)); };
    return make_eight_vertex({p(), p(), p(), p(), p(), p(), p(), p()});
}
}  // namespace

TEST_CASE("every named gadget matches its expected value and its contraction") {
    for (const auto& ng : named_gadget_table()) {
        INFO(ng.name);
        if (ng.expr) {
            GadgetValue v = eval_gadget(ng.expr);
            REQUIRE(v.arity == ng.expected.arity);
            if (v.arity == 4) {
                CHECK(v.s4 == ng.expected.s4);
            } else {
                CHECK(v.s2 == ng.expected.s2);
            }
            CHECK(gadget_matches_contraction(ng.expr));
        } else {
            auto vals = contract_gadget(ng.raw);
            REQUIRE(vals.size() == 16);
            for (size_t m = 0; m < 16; ++m) {
                INFO("entry " << m);
                CHECK(vals[m] == ng.expected.s4.v[m]);
            }
        }
    }
}

TEST_CASE("three-chain closed form on the opposite-pairs family") {
    // b3 = b(3 - b^2) / (1 - 3 b^2), with d on the unit circle
    FieldElem b(2), d = FieldElem::i();
    FieldElem b3 = b * (FieldElem(3) - b * b) * (FieldElem(1) - FieldElem(3) * b * b).inv();
    Sig4 f = make_eight_vertex({1, b, -b, d, -d, 1, -b, b});
    Sig4 f3 = connect(f, connect(f.rotate(2), f));
    EightV p = eightv_params(f3);
    FieldElem corner = p.a;
    REQUIRE(!corner.is_zero());
    CHECK(p.b / corner == b3);
    CHECK(p.c / corner == b3);
    CHECK(p.x == p.a);
    CHECK(p.y == -p.b);
    CHECK(p.z == -p.c);
}

TEST_CASE("Moebius step inner block closed form") {
    FieldElem lam(Q(1, 2)), eith = FieldElem::i();
    Sig4 f = make_eight_vertex({FieldElem(1), FieldElem(2), eith, eith * lam, lam.conj(),
                                FieldElem(1), FieldElem(3), FieldElem(1)});
    EightV p = eightv_params(connect(f, f.rotate(2)));
    CHECK(p.c == eith * (lam + lam.conj()));
    CHECK(p.d == eith * eith * (lam * lam + FieldElem(1)));
    CHECK(p.w == lam.conj() * lam.conj() + FieldElem(1));
    CHECK(p.z == p.c);
}

TEST_CASE("connect associativity through N") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 30; ++n) {
        Sig4 f1 = rnd_eightv(rng), f2 = rnd_eightv(rng), f3 = rnd_eightv(rng);
        CHECK(connect(f1, connect(f2, f3)) == connect(connect(f1, f2), f3));
    }
}

TEST_CASE("inner determinant bookkeeping under connection") {
    std::mt19937_64 rng(6);
    for (int n = 0; n < 50; ++n) {
        Sig4 f1 = rnd_eightv(rng), f2 = rnd_eightv(rng);
        Sig4 f3 = connect(f1, f2);
        CHECK(inner_matrix(f3).det() ==
              -(inner_matrix(f1).det() * inner_matrix(f2).det()));
        CHECK(outer_matrix(f3).det() ==
              -(outer_matrix(f1).det() * outer_matrix(f2).det()));
    }
}

TEST_CASE("loop shortcut precondition") {
    Sig4 f = rnd_eightv(*new std::mt19937_64(7));
    CHECK_THROWS_AS(loop(f, LoopPair::X3X4, Sig2{1, 0, 0, 2}, true), Error);
    CHECK_NOTHROW(loop(f, LoopPair::X3X4, Sig2{3, 1, 2, 3}, true));
    // shortcut and honest contraction agree when allowed
    Sig2 g{3, 1, 2, 3};
    CHECK(loop(f, LoopPair::X3X4, g, true) == loop(f, LoopPair::X3X4, g, false));
}

TEST_CASE("binary modification identity at t=1") {
    std::mt19937_64 rng(8);
    Sig4 f = rnd_eightv(rng);
    for (int var = 1; var <= 4; ++var)
        CHECK(binary_modify(f, var, Sig2::weighted_neq(FieldElem(1))) == f);
}

TEST_CASE("random expressions match their contraction") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> pick(0, 4), small(-2, 2), var(1, 4);
    for (int trial = 0; trial < 60; ++trial) {
        GadgetPtr e = gd_leaf(rnd_eightv(rng));
        int leaves = 1;
        int ops = 1 + static_cast<int>(rng() % 3);
        bool is4 = true;
        for (int k = 0; k < ops && is4 && leaves < 5; ++k) {
            switch (pick(rng)) {
                case 0: e = gd_rotate(e, 1 + static_cast<int>(rng() % 3)); break;
                case 1:
                    e = gd_connect(e, gd_leaf(rnd_eightv(rng)));
                    ++leaves;
                    break;
                case 2:
                    e = gd_bmod(e, var(rng), Sig2::weighted_neq(FieldElem(small(rng))));
                    ++leaves;
                    break;
                case 3:
                    e = gd_loop(e, (rng() % 2) ? LoopPair::X1X2 : LoopPair::X3X4,
                                Sig2{FieldElem(small(rng)), FieldElem(small(rng)),
                                     FieldElem(small(rng)), FieldElem(small(rng))});
                    is4 = false;
                    break;
                default:
                    e = gd_chain(e, 1);
                    leaves += 2;
                    break;
            }
        }
        CHECK(gadget_matches_contraction(e));
    }
}

TEST_CASE("even-coloring maps on the displayed parameter rows") {
    // Z-map of (-1, c, d, 1) -> (-2-c+d, c+d, c+d, -2+c-d) up to the global
    // scalar 1/2 carried by the map matrix
    FieldElem c(3), d(5), two(2);
    auto z = even_coloring_map({FieldElem(-1), c, d, FieldElem(1)}, EvenColoringMap::Z);
    CHECK(two * z[0] == FieldElem(-2) - c + d);
    CHECK(two * z[1] == c + d);
    CHECK(two * z[2] == c + d);
    CHECK(two * z[3] == FieldElem(-2) + c - d);
    // Z-map of (b, b, 1, 1) -> (0, 0, 1+b, -1+b)
    FieldElem b(7);
    auto z2 = even_coloring_map({b, b, FieldElem(1), FieldElem(1)}, EvenColoringMap::Z);
    CHECK(z2[0] == FieldElem(0));
    CHECK(z2[1] == FieldElem(0));
    CHECK(z2[2] == FieldElem(1) + b);
    CHECK(z2[3] == FieldElem(-1) + b);
    // HZ-map of (b, -b, 1, 1) -> (1+b, 1-b, 0, 0)
    auto hz = even_coloring_map({b, -b, FieldElem(1), FieldElem(1)}, EvenColoringMap::HZ);
    CHECK(hz[0] == FieldElem(1) + b);
    CHECK(hz[1] == FieldElem(1) - b);
    CHECK(hz[2] == FieldElem(0));
    CHECK(hz[3] == FieldElem(0));
}

TEST_CASE("even-coloring transform preserves the planar holant") {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 6; ++trial) {
        FieldElem a(d(rng)), b(d(rng)), c(d(rng)), dd(d(rng));
        Sig4 f = make_eight_vertex({a, b, c, dd, dd, a, b, c});
        for (auto which : {EvenColoringMap::Z, EvenColoringMap::HZ}) {
            Sig4 f2 = even_coloring_transform(f, which);
            PlanarGrid g1 = octahedron(f), g2 = octahedron(f2);
            CHECK(brute_holant(g1) == brute_holant(g2));
        }
    }
}

TEST_CASE("table size covers the required constructions") {
    CHECK(named_gadget_table().size() >= 15);
}
