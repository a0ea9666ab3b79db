#pragma once

// The acceptance suite: ten property-based criteria with exact oracles at
// desk scale.  Shared between the test binary and the CLI selftest command.

#include <chrono>
#include <sstream>

#include "gen.hpp"

namespace ev8 {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double budget = 0;
    std::string detail;
};

namespace detail {

struct Check {
    int failures = 0;
    int total = 0;
    std::ostringstream log;
    void expect(bool ok, const std::string& what) {
        ++total;
        if (!ok) {
            ++failures;
            if (failures <= 5) log << "    failed: " << what << "\n";
        }
    }
};

// engine-vs-brute check for a classifier result on a small instance
inline bool engine_check(const ClassLabel& r, std::string* why = nullptr) {
    auto instance = [&](const Sig4& sig, const Sig2& med) {
        PlanarGrid g = parallel_multi(4, sig);
        for (auto& e : g.edges) e.med = med;
        return g;
    };
    try {
        switch (r.engine) {
            case EngineHint::Product: {
                PlanarGrid g = instance(r.check_sig, r.check_med);
                return eval_product_instance(g) == brute_holant(g);
            }
            case EngineHint::Affine: {
                PlanarGrid g = instance(r.check_sig, r.check_med);
                return eval_affine_instance(g) == brute_holant(g);
            }
            case EngineHint::Matchgate: {
                PlanarGrid g = instance(r.check_sig, r.check_med);
                return eval_matchgate_instance(g) == brute_holant(g);
            }
            case EngineHint::Brute: {
                PlanarGrid g1 = instance(r.check_sig, r.check_med);
                PlanarGrid g2 = instance(r.check_sig2, r.check_med2);
                return brute_holant(g1) == brute_holant(g2);
            }
            case EngineHint::None:
                return true;  // membership-certified families without engines
        }
    } catch (const Error& e) {
        if (why) *why = e.what();
        return false;
    }
    return false;
}

}  // namespace detail

// --- criterion 1: engines agree with brute force ----------------------------

inline CriterionResult criterion_engines(uint64_t seed) {
    detail::Check ck;
    Rng rng(seed * 2 + 1);
    for (int engine = 0; engine < 3; ++engine) {
        for (int n = 0; n < 100; ++n) {
            Sig4 f = engine == 0 ? gen_affine(rng)
                                 : (engine == 1 ? gen_product(rng) : gen_matchgate(rng));
            // keep a handful of 24-edge instances, mostly small ones
            PlanarGrid g = gen_grid(rng, f, n % 25 == 0 ? 24 : 12);
            FieldElem brute = brute_holant(g);
            FieldElem eng;
            try {
                eng = engine == 0 ? eval_affine_instance(g)
                                  : (engine == 1 ? eval_product_instance(g)
                                                 : eval_matchgate_instance(g));
            } catch (const Error& e) {
                ck.expect(false, std::string("engine raised: ") + e.what());
                continue;
            }
            ck.expect(eng == brute, "engine " + std::to_string(engine) + " instance " +
                                        std::to_string(n));
        }
    }
    return {1, "engine oracle equivalence (affine/product/matchgate vs brute)",
            ck.failures == 0, 0, 60, std::to_string(ck.total) + " instances" + ck.log.str()};
}

// --- criterion 2: FKT correctness -------------------------------------------

namespace detail {
inline MatchGraph corpus_grid(int rows, int cols, Rng* rng = nullptr) {
    MatchGraph g;
    for (int i = 0; i < rows * cols; ++i) g.add_node();
    auto node = [&](int r, int c) { return r * cols + c; };
    std::map<std::pair<int, int>, int> eid;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            FieldElem w1 = rng ? FieldElem(rng->rational(-3, 3, true)) : FieldElem(1);
            FieldElem w2 = rng ? FieldElem(rng->rational(-3, 3, true)) : FieldElem(1);
            if (c + 1 < cols)
                eid[{node(r, c), node(r, c + 1)}] = g.add_edge(node(r, c), node(r, c + 1), w1);
            if (r + 1 < rows)
                eid[{node(r, c), node(r + 1, c)}] = g.add_edge(node(r, c), node(r + 1, c), w2);
        }
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            auto& lst = g.rot[static_cast<size_t>(node(r, c))];
            if (c + 1 < cols) lst.push_back(eid[{node(r, c), node(r, c + 1)}]);
            if (r + 1 < rows) lst.push_back(eid[{node(r, c), node(r + 1, c)}]);
            if (c - 1 >= 0) lst.push_back(eid[{node(r, c - 1), node(r, c)}]);
            if (r - 1 >= 0) lst.push_back(eid[{node(r - 1, c), node(r, c)}]);
        }
    return g;
}

inline MatchGraph corpus_prism() {
    MatchGraph g;
    for (int i = 0; i < 6; ++i) g.add_node();
    int e01 = g.add_edge(0, 1, FieldElem(1)), e12 = g.add_edge(1, 2, FieldElem(1)),
        e20 = g.add_edge(2, 0, FieldElem(1)), e34 = g.add_edge(3, 4, FieldElem(1)),
        e45 = g.add_edge(4, 5, FieldElem(1)), e53 = g.add_edge(5, 3, FieldElem(1)),
        e03 = g.add_edge(0, 3, FieldElem(1)), e14 = g.add_edge(1, 4, FieldElem(1)),
        e25 = g.add_edge(2, 5, FieldElem(1));
    g.rot[0] = {e01, e03, e20};
    g.rot[1] = {e12, e14, e01};
    g.rot[2] = {e20, e25, e12};
    g.rot[3] = {e03, e34, e53};
    g.rot[4] = {e45, e34, e14};
    g.rot[5] = {e53, e45, e25};
    return g;
}
}  // namespace detail

inline CriterionResult criterion_fkt(uint64_t seed) {
    detail::Check ck;
    Rng rng(seed * 2 + 2);
    // corpus of planar graphs with at most 14 vertices
    std::vector<std::pair<std::string, MatchGraph>> corpus;
    corpus.push_back({"grid 2x2 (4-cycle)", detail::corpus_grid(2, 2)});
    corpus.push_back({"grid 2x3", detail::corpus_grid(2, 3)});
    corpus.push_back({"grid 2x4", detail::corpus_grid(2, 4)});
    corpus.push_back({"grid 2x5", detail::corpus_grid(2, 5)});
    corpus.push_back({"grid 2x7", detail::corpus_grid(2, 7)});
    corpus.push_back({"grid 3x4", detail::corpus_grid(3, 4)});
    corpus.push_back({"prism", detail::corpus_prism()});
    for (int n = 0; n < 6; ++n)
        corpus.push_back({"weighted grid", detail::corpus_grid(2, 3 + n % 3, &rng)});
    for (auto& [name, g] : corpus)
        ck.expect(count_pm(g) == count_pm_exhaustive(g), "count_pm on " + name);
    ck.expect(count_pm(detail::corpus_grid(2, 3)) == FieldElem(3), "2x3 grid has 3 matchings");
    ck.expect(count_pm(detail::corpus_grid(2, 2)) == FieldElem(2), "4-cycle has 2 matchings");
    // pfaffian squared equals determinant
    for (int n = 0; n < 50; ++n) {
        int dim = 2 * rng.uniform(1, 5);
        MatN m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) {
                FieldElem v = rng.small_elem();
                m.at(i, j) = v;
                m.at(j, i) = -v;
            }
        FieldElem pf = pfaffian(m);
        ck.expect(pf * pf == m.det(), "pf^2 = det at dim " + std::to_string(dim));
    }
    return {2, "FKT: count_pm vs enumeration, Pf^2 = det", ck.failures == 0, 0, 10,
            std::to_string(ck.total) + " checks" + ck.log.str()};
}

// --- criterion 3: Valiant invariance ----------------------------------------

inline CriterionResult criterion_valiant(uint64_t seed) {
    detail::Check ck;
    Rng rng(seed * 2 + 3);
    for (int n = 0; n < 50; ++n) {
        Sig4 f = gen_eightv(rng);
        // transformed signatures are dense, so instances stay small
        PlanarGrid g = (rng.uniform(0, 2) == 0) ? ring_doubled(3, f) : parallel_multi(4, f);
        FieldElem base = brute_holant(g);
        for (int k = 0; k < 5; ++k) {
            Transform2 t = gen_transform(rng);
            PlanarGrid h = g;
            Mat4 ti2 = tensor2(t.tinv, t.tinv);
            Mat4 ti2t = tensor2(t.tinv.transpose(), t.tinv.transpose());
            for (auto& v : h.vertices) v.sig = Sig4::from_matrix(ti2 * v.sig.matrix() * ti2t);
            for (auto& e : h.edges) e.med = transform_sig2_row(e.med, t.t);
            ck.expect(brute_holant(h) == base, "grid " + std::to_string(n) + " transform " +
                                                   std::to_string(k));
        }
    }
    return {3, "Valiant invariance on random grids and exact transforms", ck.failures == 0, 0,
            30, std::to_string(ck.total) + " identities" + ck.log.str()};
}

// --- criterion 4: gadget table vs contraction --------------------------------

inline CriterionResult criterion_gadgets(uint64_t) {
    detail::Check ck;
    auto table = named_gadget_table();
    ck.expect(table.size() >= 15, "table holds at least 15 constructions");
    for (const auto& ng : table) {
        if (ng.expr) {
            GadgetValue sym = eval_gadget(ng.expr);
            bool same = sym.arity == ng.expected.arity &&
                        (sym.arity == 4 ? sym.s4 == ng.expected.s4 : sym.s2 == ng.expected.s2);
            ck.expect(same, ng.name + ": symbolic value matches the recorded form");
            ck.expect(gadget_matches_contraction(ng.expr), ng.name + ": contraction agrees");
        } else {
            auto vals = contract_gadget(ng.raw);
            bool same = vals.size() == 16;
            for (size_t m = 0; same && m < 16; ++m)
                if (vals[m] != ng.expected.s4.v[m]) same = false;
            ck.expect(same, ng.name + ": raw gadget contraction agrees");
        }
    }
    return {4, "named gadget constructions vs brute-force contraction", ck.failures == 0, 0, 20,
            std::to_string(ck.total) + " checks" + ck.log.str()};
}

// --- criterion 5: even-coloring equivalences ---------------------------------

inline CriterionResult criterion_even_coloring(uint64_t seed) {
    detail::Check ck;
    Rng rng(seed * 2 + 5);
    std::vector<PlanarGrid> grids = {octahedron(sig_EQ4()), grid_medial(2, 2, sig_EQ4())};
    for (int n = 0; n < 20; ++n) {
        FieldElem a{rng.rational()}, b{rng.rational()}, c{rng.rational()}, d{rng.rational()};
        Sig4 f = make_eight_vertex({a, b, c, d, d, a, b, c});
        Sig4 flip = flip_alternate_inputs(f);
        for (auto& g : grids)
            ck.expect(xor_bijection_check(g, f, flip), "xor bijection, tuple " +
                                                           std::to_string(n));
        for (auto which : {EvenColoringMap::Z, EvenColoringMap::HZ}) {
            Sig4 f2 = even_coloring_transform(f, which);
            for (auto& g : grids) {
                PlanarGrid g1 = g, g2 = g;
                for (auto& v : g1.vertices) v.sig = f;
                for (auto& v : g2.vertices) v.sig = f2;
                ck.expect(brute_holant(g1) == brute_holant(g2),
                          "parameter map equivalence, tuple " + std::to_string(n));
            }
        }
    }
    return {5, "even-coloring bijection and parameter-map equivalences", ck.failures == 0, 0,
            60, std::to_string(ck.total) + " instances" + ck.log.str()};
}

// --- criterion 6: corner-product invariance ----------------------------------

inline CriterionResult criterion_corner_product(uint64_t seed) {
    detail::Check ck;
    Rng rng(seed * 2 + 6);
    for (int n = 0; n < 20; ++n) {
        Sig4 f = gen_eightv(rng);
        PlanarGrid g = gen_grid(rng, f, 12);
        FieldElem base = brute_holant(g);
        EightV p = eightv_params(f);
        FieldElem prod = p.a * p.x;
        std::vector<std::pair<FieldElem, FieldElem>> factorizations = {
            {FieldElem(1), prod},
            {FieldElem(2), prod / FieldElem(2)},
            {FieldElem(-3), prod / FieldElem(-3)},
            {FieldElem(Q(1, 2)), prod * FieldElem(2)},
            {FieldElem::i(), prod / FieldElem::i()}};
        for (auto& [na, nx] : factorizations) {
            EightV q = p;
            q.a = na;
            q.x = nx;
            PlanarGrid h = g;
            for (auto& v : h.vertices) v.sig = make_eight_vertex(q);
            ck.expect(brute_holant(h) == base, "factorization at instance " +
                                                   std::to_string(n));
        }
    }
    return {6, "holant depends on the corner pair only through its product", ck.failures == 0,
            0, 60, std::to_string(ck.total) + " evaluations" + ck.log.str()};
}

// --- criterion 7: lattice machinery -------------------------------------------

inline CriterionResult criterion_lattice(uint64_t seed) {
    detail::Check ck;
    Rng rng(seed * 2 + 7);
    std::vector<FieldElem> pool;
    for (int k = 0; k < 8; ++k) pool.push_back(zeta8_pow(k));
    pool.push_back(FieldElem(2));
    pool.push_back(FieldElem(3));
    pool.push_back(FieldElem(1) + FieldElem::i());
    for (const auto& x1 : pool)
        for (const auto& x2 : pool)
            for (const auto& x3 : pool) {
                bool roots = is_root_of_unity(x1) && is_root_of_unity(x2) && is_root_of_unity(x3);
                bool full = lattice_basis({x1, x2, x3}).rank() == 3;
                ck.expect(full == roots, "full rank iff roots of unity");
            }
    // conformal interpolation round trips for k <= 3, m <= 4
    std::vector<FieldElem> bases = {FieldElem(2), FieldElem(-1), FieldElem(3), FieldElem::i(),
                                    FieldElem(Q(1, 2))};
    for (int k = 1; k <= 3; ++k)
        for (int m = 1; m <= 4 - k; ++m)
            for (int trial = 0; trial < 6; ++trial) {
                std::vector<FieldElem> x, y;
                for (int i = 0; i < k; ++i) {
                    FieldElem xi = bases[static_cast<size_t>(rng.uniform(0, static_cast<int>(bases.size()) - 1))];
                    x.push_back(xi);
                    y.push_back(xi * xi);  // squares keep every relation
                }
                std::vector<std::vector<int>> tuples;
                std::vector<int> cur;
                detail::enum_simplex(k, m, cur, tuples);
                std::vector<FieldElem> z;
                for (size_t i = 0; i < tuples.size(); ++i) z.push_back(rng.small_elem());
                InterpolationSystem sys{k, m, x, y, forward_samples(k, m, x, z)};
                try {
                    ck.expect(conformal_interpolate(sys) == direct_n1(k, m, y, z),
                              "round trip k=" + std::to_string(k) + " m=" + std::to_string(m));
                } catch (const Error& e) {
                    ck.expect(false, std::string("interpolation raised: ") + e.what());
                }
            }
    return {7, "lattice rank criterion and conformal interpolation round trips",
            ck.failures == 0, 0, 30, std::to_string(ck.total) + " checks" + ck.log.str()};
}

// --- criterion 8: classifier regression and soundness -------------------------

namespace detail {

struct RegressionPoint {
    std::string name;
    EightVertexParams p;
    Label expect;
};

inline std::vector<RegressionPoint> regression_points() {
    FieldElem one(1), zero(0), i = FieldElem::i(), r2 = FieldElem::sqrt2();
    auto P = [&](FieldElem a, FieldElem b, FieldElem c, FieldElem d, FieldElem w, FieldElem x,
                 FieldElem y, FieldElem z) {
        return EightVertexParams{a, b, c, d, w, x, y, z};
    };
    std::vector<RegressionPoint> out;
    auto add = [&](std::string name, EightVertexParams p, Label l) {
        out.push_back({std::move(name), std::move(p), l});
    };
    // diagonal family boundaries
    add("diag cz=1", P(one, zero, FieldElem(2), zero, zero, one, zero, FieldElem(Q(1, 2))),
        Label::GeneralTractable);
    add("diag cz=-1 with c4=z4", P(one, zero, one, zero, zero, one, zero, -one),
        Label::GeneralTractable);
    add("diag c=z", P(one, zero, FieldElem(3), zero, zero, one, zero, FieldElem(3)),
        Label::PlanarTractable);
    add("diag c=-z", P(one, zero, FieldElem(3), zero, zero, one, zero, FieldElem(-3)),
        Label::PlanarTractable);
    add("diag generic", P(one, zero, FieldElem(2), zero, zero, one, zero, FieldElem(3)),
        Label::PlanarHard);
    // inner-swap family boundaries
    add("inner d=w=1", P(one, zero, zero, one, one, one, zero, zero), Label::GeneralTractable);
    add("inner d=w=i", P(one, zero, zero, i, i, one, zero, zero), Label::GeneralTractable);
    add("inner dw=-1 non-affine", P(one, zero, zero, FieldElem(2), FieldElem(Q(-1, 2)), one,
                                     zero, zero),
        Label::PlanarTractable);
    add("inner d=w=0", P(FieldElem(2), zero, zero, zero, zero, FieldElem(3), zero, zero),
        Label::GeneralTractable);
    add("inner dw=6", P(one, zero, zero, FieldElem(2), FieldElem(3), one, zero, zero),
        Label::PlanarHard);
    add("inner d=w=2", P(one, zero, zero, FieldElem(2), FieldElem(2), one, zero, zero),
        Label::PlanarHard);
    add("inner d=w=i(1+sqrt2)", P(one, zero, zero, i * (one + r2), i * (one + r2), one, zero,
                                   zero),
        Label::PlanarHard);
    // six-vertex cases through the corner reduction
    add("six-vertex zero in each pair", P(zero, zero, zero, zero, FieldElem(3), zero, zero,
                                          FieldElem(5)),
        Label::GeneralTractable);
    add("six-vertex squared products", P(zero, one, FieldElem(2), zero, zero, zero,
                                         FieldElem(-4), FieldElem(2)),
        Label::PlanarTractable);
    add("six-vertex zeta powers", P(zero, one, zeta8_pow(1), zero, zero, zero, i, zeta8_pow(3)),
        Label::PlanarTractable);
    add("six-vertex generic", P(zero, one, FieldElem(2), FieldElem(3), FieldElem(4), zero,
                                FieldElem(5), FieldElem(6)),
        Label::PlanarHard);
    // new tractable type, all odd beta
    for (int beta : {1, 3, 5, 7}) {
        FieldElem tan;
        switch (beta) {
            case 1: tan = r2 - one; break;
            case 3: tan = r2 + one; break;
            case 5: tan = -(r2 + one); break;
            default: tan = -(r2 - one); break;
        }
        FieldElem b = i * tan;
        add("tan point beta=" + std::to_string(beta), P(one, b, -b, one, one, one, b, -b),
            Label::PlanarTractable);
    }
    add("tan point d=-1", P(one, i * (r2 - one), -(i * (r2 - one)), -one, -one, one,
                            i * (r2 - one), -(i * (r2 - one))),
        Label::PlanarTractable);
    // one-zero cases
    add("one-zero matchgate", P(one, FieldElem(2), one, one, one, one, one, zero),
        Label::PlanarTractable);
    add("one-zero generic", P(one, FieldElem(2), one, one, FieldElem(3), one, one, zero),
        Label::PlanarHard);
    add("four zeros one pair", P(one, FieldElem(2), zero, FieldElem(3), zero, one, zero, zero),
        Label::PlanarHard);
    // arrow-symmetric equality criteria
    add("symmetric d=bc", P(one, FieldElem(2), FieldElem(3), FieldElem(6), FieldElem(6), one,
                            FieldElem(2), FieldElem(3)),
        Label::PlanarTractable);
    add("symmetric d=-bc", P(one, FieldElem(2), FieldElem(3), FieldElem(-6), FieldElem(-6), one,
                             FieldElem(2), FieldElem(3)),
        Label::PlanarTractable);
    add("symmetric matchgate", P(one, one, FieldElem(5), FieldElem(5), FieldElem(5), one, one,
                                 FieldElem(5)),
        Label::PlanarTractable);
    add("symmetric b=-1 hard", P(one, -one, FieldElem(2), FieldElem(3), FieldElem(3), one, -one,
                                 FieldElem(2)),
        Label::PlanarHard);
    add("symmetric b=-1 c=d", P(one, -one, FieldElem(2), FieldElem(2), FieldElem(2), one, -one,
                                FieldElem(2)),
        Label::PlanarTractable);
    add("boundary b=c=2 d=1", P(one, FieldElem(2), FieldElem(2), one, one, one, FieldElem(2),
                                FieldElem(2)),
        Label::PlanarHard);
    add("boundary b=-c=2i d=1", P(one, FieldElem(2) * i, FieldElem(-2) * i, one, one, one,
                                  FieldElem(2) * i, FieldElem(-2) * i),
        Label::PlanarHard);
    add("symmetric generic lattice", P(one, FieldElem(2), FieldElem(3), FieldElem(5),
                                       FieldElem(5), one, FieldElem(2), FieldElem(3)),
        Label::PlanarHard);
    // arrow-symmetric disequality criteria
    add("disequality d=ibc", P(one, FieldElem(2), FieldElem(3), FieldElem(6) * i,
                               FieldElem(-6) * i, one, FieldElem(-2), FieldElem(-3)),
        Label::PlanarTractable);
    add("disequality d=-ibc", P(one, FieldElem(2), FieldElem(3), FieldElem(-6) * i,
                                FieldElem(6) * i, one, FieldElem(-2), FieldElem(-3)),
        Label::PlanarTractable);
    add("disequality b=i hard", P(one, i, FieldElem(2) * i, FieldElem(4) * i, FieldElem(-4) * i,
                                  one, -i, FieldElem(-2) * i),
        Label::PlanarHard);
    // degenerate inner matrices
    add("degenerate inner by=1", P(one, FieldElem(2), -one, one, one, one, FieldElem(Q(1, 2)),
                                   -one),
        Label::PlanarTractable);
    add("degenerate inner hard", P(one, one, one, one, FieldElem(2), one, FieldElem(2),
                                   FieldElem(2)),
        Label::PlanarHard);
    // asymmetric full-support cases
    add("asymmetric generic", P(one, FieldElem(2), FieldElem(3), FieldElem(4), FieldElem(5),
                                one, FieldElem(6), FieldElem(7)),
        Label::PlanarHard);
    add("asymmetric matchgate", P(one, FieldElem(2), FieldElem(4), FieldElem(2), FieldElem(2),
                                  FieldElem(22), FieldElem(3), FieldElem(5)),
        Label::PlanarTractable);
    return out;
}

}  // namespace detail

inline CriterionResult criterion_classifier(uint64_t seed, int grid_points = 10000) {
    detail::Check ck;
    auto points = detail::regression_points();
    ck.expect(points.size() >= 30, "at least 30 regression points");
    for (const auto& rp : points) {
        ClassLabel r = classify_eight_vertex(rp.p);
        ck.expect(r.label == rp.expect,
                  rp.name + ": got " + label_name(r.label) + ", want " + label_name(rp.expect));
        if (r.label == Label::GeneralTractable || r.label == Label::PlanarTractable) {
            std::string why;
            bool checked = detail::engine_check(r, &why);
            ck.expect(checked, rp.name + ": engine check (" + why + ")");
        }
    }
    // seeded random grid: soundness of tractable labels, unresolved rate
    Rng rng(seed * 2 + 8);
    int unresolved = 0, tractable = 0, hard = 0, engine_checked = 0;
    for (int n = 0; n < grid_points; ++n) {
        EightVertexParams p = gen_params(rng);
        ClassLabel r = classify_eight_vertex(p);
        switch (r.label) {
            case Label::Unresolved: ++unresolved; break;
            case Label::PlanarHard: ++hard; break;
            default: {
                ++tractable;
                if (r.engine != EngineHint::None) {
                    ++engine_checked;
                    std::string why;
                    ck.expect(detail::engine_check(r, &why),
                              "random point " + std::to_string(n) + " engine check (" + why +
                                  ")");
                }
                break;
            }
        }
    }
    std::ostringstream os;
    os << points.size() << " regression points; random grid: " << tractable << " tractable ("
       << engine_checked << " engine-checked), " << hard << " hard, " << unresolved
       << " unresolved (rate " << (100.0 * unresolved / grid_points) << "%)" << ck.log.str();
    return {8, "classifier regression, soundness and unresolved rate", ck.failures == 0, 0, 300,
            os.str()};
}

// --- criterion 9: Moebius orbits ----------------------------------------------

inline CriterionResult criterion_mobius(uint64_t) {
    detail::Check ck;
    FieldElem i = FieldElem::i();
    std::vector<FieldElem> deltas = {FieldElem(Q(1, 2)),
                                     FieldElem(Q(1, 3)),
                                     FieldElem(2),
                                     FieldElem(3) * i,
                                     (FieldElem(1) + i) * FieldElem(Q(1, 2)),
                                     (FieldElem(1) - i) * FieldElem(Q(1, 3)),
                                     FieldElem(2) * i,
                                     FieldElem(Q(5, 2)),
                                     i * FieldElem(Q(1, 3)),
                                     (FieldElem(2) + i) * FieldElem(Q(1, 2))};
    for (const auto& d : deltas) {
        ck.expect(!is_unimodular(d), "delta off the unit circle");
        MobiusMap psi = MobiusMap::disk_automorphism(d);
        ck.expect(psi.unit_circle_form(), "unit-circle form");
        // start away from the two fixed points z^2 = delta / conj(delta)
        FieldElem t0 = i;
        for (const FieldElem& cand : {i, FieldElem(1), zeta8_pow(1)})
            if (!(psi.apply(cand) == cand)) {
                t0 = cand;
                break;
            }
        OrbitReport rep = mobius_orbit(psi, t0, 50);
        ck.expect(rep.all_unimodular, "orbit stays on the circle for delta " + d.str());
        ck.expect(rep.all_distinct, "orbit pairwise distinct for delta " + d.str());
    }
    FieldElem lam = i * FieldElem(Q(1, 2));
    MobiusMap order2{FieldElem(1), lam, lam, FieldElem(-1)};
    OrbitReport rep = mobius_orbit(order2, i, 8);
    ck.expect(rep.period == 2, "projective order two detected as period 2");
    return {9, "Moebius orbits: unit circle closure, distinctness, period detection",
            ck.failures == 0, 0, 5, std::to_string(ck.total) + " checks" + ck.log.str()};
}

// --- criterion 10: unit-circle coefficient condition ---------------------------

inline CriterionResult criterion_unit_circle(uint64_t) {
    detail::Check ck;
    FieldElem one(1), zero(0);
    ck.expect(unit_circle_necessary({-one, zero, one}), "z^2 - 1 accepted");
    ck.expect(unit_circle_necessary({one, one, one}), "z^2 + z + 1 accepted");
    std::vector<std::pair<std::string, std::vector<FieldElem>>> cyclotomic = {
        {"n=1", {-one, one}},
        {"n=2", {one, one}},
        {"n=3", {one, one, one}},
        {"n=4", {one, zero, one}},
        {"n=5", {one, one, one, one, one}},
        {"n=6", {one, -one, one}},
        {"n=7", {one, one, one, one, one, one, one}},
        {"n=8", {one, zero, zero, zero, one}}};
    for (auto& [name, coeffs] : cyclotomic)
        ck.expect(unit_circle_necessary(coeffs), "cyclotomic " + name + " accepted");
    ck.expect(!unit_circle_necessary({FieldElem(-2), one}), "z - 2 rejected");
    // z^2 - z - 1: the golden ratio (1 + sqrt5)/2 > 1 lies off the circle
    ck.expect(!unit_circle_necessary({-one, -one, one}), "z^2 - z - 1 rejected");
    return {10, "unit-circle necessary condition on coefficient lists", ck.failures == 0, 0, 1,
            std::to_string(ck.total) + " checks" + ck.log.str()};
}

// --- driver -------------------------------------------------------------------

inline std::vector<CriterionResult> run_acceptance(uint64_t seed, int classifier_grid = 10000) {
    std::vector<CriterionResult> out;
    auto timed = [&](CriterionResult (*fn)(uint64_t)) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = fn(seed);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.budget) {
            r.pass = false;
            r.detail += " [budget " + std::to_string(r.budget) + "s exceeded]";
        }
        out.push_back(std::move(r));
    };
    timed(criterion_engines);
    timed(criterion_fkt);
    timed(criterion_valiant);
    timed(criterion_gadgets);
    timed(criterion_even_coloring);
    timed(criterion_corner_product);
    timed(criterion_lattice);
    {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = criterion_classifier(seed, classifier_grid);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.budget) {
            r.pass = false;
            r.detail += " [budget exceeded]";
        }
        out.push_back(std::move(r));
    }
    timed(criterion_mobius);
    timed(criterion_unit_circle);
    return out;
}

}  // namespace ev8
