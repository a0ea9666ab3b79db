#include <catch2/catch_amalgamated.hpp>

#include <ev8/grid.hpp>

#include <random>

using namespace ev8;

namespace {

Sig4 rnd_eightv(std::mt19937_64& rng, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    auto p = [&] { return FieldElem(d(rng)); };
    return make_eight_vertex({p(), p(), p(), p(), p(), p(), p(), p()});
}

}  // namespace

TEST_CASE("generator embeddings satisfy Euler") {
    Sig4 f = sig_EQ4();
    PlanarGrid oct = octahedron(f);
    CHECK(oct.vertices.size() == 6);
    CHECK(oct.edges.size() == 12);
    CHECK(trace_faces(oct).face_darts.size() == 8);
    CHECK(euler_check(oct));
    CHECK(euler_check(parallel_multi(4, f)));
    CHECK(euler_check(ring_doubled(3, f)));
    CHECK(euler_check(ring_doubled(5, f)));
    PlanarGrid med = grid_medial(1, 1, f);
    CHECK(med.vertices.size() == 4);
    CHECK(med.edges.size() == 8);
    CHECK(euler_check(med));
    PlanarGrid med22 = grid_medial(2, 2, f);
    CHECK(med22.vertices.size() == 12);
    CHECK(med22.edges.size() == 24);
    CHECK(euler_check(med22));
    CHECK(euler_check(grid_medial(2, 3, f)));
}

TEST_CASE("brute holant on tiny instances") {
    Sig4 f = make_eight_vertex({1, 2, 3, 5, 7, 1, 11, 13});
    PlanarGrid g;
    g.add_vertex(f);
    // self-pair (x1,x4) and (x2,x3) via NEQ2
    g.add_edge(0, 0, 0, 3);
    g.add_edge(0, 1, 0, 2);
    // hand expansion: f(0,0,1,1)+f(0,1,0,1)+f(1,0,1,0)+f(1,1,0,0) = b+d+w+y
    CHECK(brute_holant(g) == FieldElem(2 + 5 + 7 + 11));
}

TEST_CASE("even and eulerian orientation counts") {
    Sig4 f = make_eight_vertex({1, 1, 1, 1, 1, 1, 1, 1});
    PlanarGrid two = parallel_multi(4, f);
    CHECK(count_even_orientations(two) == 8);        // C(4,0)+C(4,2)+C(4,4)
    CHECK(count_even_orientations(two, true) == 6);  // C(4,2)
    PlanarGrid oct = octahedron(f);
    long n_even = count_even_orientations(oct);
    long n_euler = count_even_orientations(oct, true);
    // regression constants from exhaustive enumeration over 2^12 directions
    // (even count also matches 2^(E-V+1) = 2^7 for a connected even-degree graph)
    CHECK(n_even == 128);
    CHECK(n_euler == 38);
    CHECK(brute_holant(oct) == FieldElem(n_even));
}

TEST_CASE("orientation evaluator equals brute holant") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        Sig4 f = rnd_eightv(rng);
        PlanarGrid g;
        switch (trial % 3) {
            case 0: g = octahedron(f); break;
            case 1: g = ring_doubled(3 + trial % 3, f); break;
            default: g = parallel_multi(4, f); break;
        }
        CHECK(brute_holant(g) == holant_by_orientations(g));
    }
}

TEST_CASE("canonical orientation is Eulerian and alternating") {
    Sig4 f = sig_EQ4();
    for (const PlanarGrid& g :
         {octahedron(f), grid_medial(2, 2, f), ring_doubled(4, f), parallel_multi(4, f)}) {
        Orientation o = canonical_orientation(g);
        for (int id : orientation_indegrees(g, o)) CHECK(id == 2);
        std::vector<int> dart_val(static_cast<size_t>(g.dart_count()), -1);
        for (size_t e = 0; e < g.edges.size(); ++e) {
            dart_val[static_cast<size_t>(g.edges[e].da)] = o.bit[e];
            dart_val[static_cast<size_t>(g.edges[e].db)] = 1 - o.bit[e];
        }
        for (size_t v = 0; v < g.vertices.size(); ++v)
            for (size_t s = 0; s < 4; ++s)
                CHECK(dart_val[4 * v + s] != dart_val[4 * v + (s + 1) % 4]);
    }
}

TEST_CASE("orientation enumeration rejects non 4-regular graphs") {
    Sig4 f = sig_EQ4();
    PlanarGrid g;
    g.add_vertex(f);
    g.add_edge(0, 0, 0, 1);
    g.add_edge(0, 2, 0, 3);
    CHECK_NOTHROW(count_even_orientations(g));
    PlanarGrid bad;
    bad.add_vertex(f);
    bad.add_edge(0, 0, 0, 1);
    bad.danglings.push_back(2);
    bad.danglings.push_back(3);
    CHECK_THROWS_AS(count_even_orientations(bad), Error);
}

TEST_CASE("face two-coloring fails on odd-degree embeddings") {
    // two vertices joined by three edges plus one self-loop each: degrees are
    // odd, the dual has an odd cycle, and the coloring must be rejected
    Sig4 f = sig_EQ4();
    PlanarGrid g;
    g.add_vertex(f);
    g.add_vertex(f);
    g.add_edge(0, 0, 1, 2);
    g.add_edge(0, 1, 1, 1);
    g.add_edge(0, 2, 1, 0);
    g.add_edge(0, 3, 0, 3);  // degenerate self-loop on one dart pair is not
    // allowed by dart_edge(); close the remaining darts pairwise instead
    g.edges.pop_back();
    g.add_edge(1, 3, 0, 3);
    CHECK_THROWS_AS(canonical_orientation(g), Error);
}

TEST_CASE("xor bijection between even orientations and even colorings") {
    // exhaustive on graphs with <= 12 edges
    for (const PlanarGrid& g : {octahedron(sig_EQ4()), ring_doubled(4, sig_EQ4())}) {
        Orientation tau = canonical_orientation(g);
        long colorings = 0;
        size_t e = g.edges.size();
        for (size_t mask = 0; mask < (1u << e); ++mask) {
            std::vector<int> gdeg(g.vertices.size(), 0);
            for (size_t i = 0; i < e; ++i)
                if ((mask >> i) & 1) {
                    ++gdeg[static_cast<size_t>(PlanarGrid::dart_vertex(g.edges[i].da))];
                    ++gdeg[static_cast<size_t>(PlanarGrid::dart_vertex(g.edges[i].db))];
                }
            bool even = true;
            for (int d : gdeg) even &= (d % 2 == 0);
            colorings += even;
        }
        CHECK(colorings == count_even_orientations(g));
        for_each_even_orientation(g, false, [&](const Orientation& o) {
            std::vector<int> gdeg(g.vertices.size(), 0);
            for (size_t i = 0; i < g.edges.size(); ++i)
                if (o.bit[i] != tau.bit[i]) {
                    ++gdeg[static_cast<size_t>(PlanarGrid::dart_vertex(g.edges[i].da))];
                    ++gdeg[static_cast<size_t>(PlanarGrid::dart_vertex(g.edges[i].db))];
                }
            for (int d : gdeg) CHECK(d % 2 == 0);
        });
    }
}

TEST_CASE("holant equivalence under the alternate-flip (even coloring)") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        FieldElem a(d(rng)), b(d(rng)), c(d(rng)), dd(d(rng));
        Sig4 f = make_eight_vertex({a, b, c, dd, dd, a, b, c});  // arrow-symmetric
        Sig4 g = flip_alternate_inputs(f);
        CHECK(xor_bijection_check(octahedron(sig_EQ4()), f, g));
    }
    Sig4 f = make_eight_vertex({1, 2, 3, 5, 5, 1, 2, 3});
    Sig4 g = flip_alternate_inputs(f);
    g.v[0] += FieldElem(1);
    CHECK_FALSE(xor_bijection_check(octahedron(sig_EQ4()), f, g));
}

TEST_CASE("product of (a,x) leaves the holant unchanged") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 12; ++trial) {
        Sig4 f = rnd_eightv(rng);
        EightV p = eightv_params(f);
        EightV q = p;
        q.a = FieldElem(2) * p.a;
        q.x = p.x / FieldElem(2);
        CHECK(brute_holant(octahedron(make_eight_vertex(p))) ==
              brute_holant(octahedron(make_eight_vertex(q))));
    }
}

TEST_CASE("rotation invariance of the holant") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 8; ++trial) {
        Sig4 f = rnd_eightv(rng);
        PlanarGrid g = octahedron(f);
        PlanarGrid h = g;
        int v = 2;
        for (auto& e : h.edges)
            for (int* dp : {&e.da, &e.db})
                if (PlanarGrid::dart_vertex(*dp) == v)
                    *dp = 4 * v + (PlanarGrid::dart_slot(*dp) + 1) % 4;
        // moving each dart one slot counterclockwise renames x_i as x_{i+1}
        h.vertices[static_cast<size_t>(v)].sig = f.rotate(3);
        CHECK(brute_holant(g) == brute_holant(h));
    }
}

TEST_CASE("grid file round trip") {
    Sig4 f = make_eight_vertex({1, 2, FieldElem(Q(1, 2)), FieldElem::i(), 0, 1,
                                FieldElem(3) * FieldElem::sqrt2(), -2});
    PlanarGrid g = octahedron(f);
    g.edges[3].med = Sig2::eq2();
    g.edges[3].med_name = "EQ2";
    g.edges[5].med = Sig2{0, FieldElem(1), FieldElem(Q(2, 3)), 0};
    g.edges[5].med_name = "gw";
    std::string text = serialize_grid(g);
    PlanarGrid h = parse_grid(text);
    REQUIRE(h.vertices.size() == g.vertices.size());
    REQUIRE(h.edges.size() == g.edges.size());
    for (size_t v = 0; v < g.vertices.size(); ++v)
        CHECK(h.vertices[v].sig == g.vertices[v].sig);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        CHECK(h.edges[e].da == g.edges[e].da);
        CHECK(h.edges[e].db == g.edges[e].db);
        CHECK(h.edges[e].med == g.edges[e].med);
    }
    CHECK(brute_holant(h) == brute_holant(g));
    CHECK_THROWS_AS(parse_grid("[edges]\nv0.0 - v1.0\n"), Error);
    CHECK_THROWS_AS(parse_grid("junk\n"), Error);
}

TEST_CASE("gadget contraction with danglings") {
    Sig4 f = make_eight_vertex({1, 2, 3, 5, 7, 11, 13, 17});
    PlanarGrid g;
    g.add_vertex(f);
    g.danglings = {0, 1, 2, 3};
    auto vals = contract_gadget(g);
    REQUIRE(vals.size() == 16);
    for (size_t m = 0; m < 16; ++m) CHECK(vals[m] == f.v[m]);
}

TEST_CASE("brute cap") {
    CHECK_THROWS_AS(brute_holant(octahedron(sig_EQ4()), 5), Error);
}
