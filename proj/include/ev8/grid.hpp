#pragma once

// Planar signature grids with combinatorial (rotation-system) embeddings,
// brute-force Holant evaluation, even/Eulerian orientation enumeration, the
// face-two-coloring canonical orientation, and documented generators.
//
// Convention: the grid is the bipartite instance Pl-Holant(med | F): every
// 4-ary vertex dart is matched to another dart through a binary mediator
// (NEQ2 unless stated).  Mediators live on the edge records; degree-2
// mediator vertices are not materialized.

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "io.hpp"
#include "signature.hpp"

namespace ev8 {

struct PlanarGrid {
    struct Vertex {
        std::string sig_name;  // for serialization; may be empty
        Sig4 sig;
    };
    struct Edge {
        int da, db;  // dart ids (4*vertex + slot); da carries mediator var x1
        std::string med_name;
        Sig2 med = Sig2::neq2();
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<int> danglings;  // external darts in ccw signature order

    int dart_count() const { return 4 * static_cast<int>(vertices.size()); }
    static int dart_vertex(int d) { return d / 4; }
    static int dart_slot(int d) { return d % 4; }

    int add_vertex(const Sig4& f, std::string name = "") {
        vertices.push_back({std::move(name), f});
        return static_cast<int>(vertices.size()) - 1;
    }
    void add_edge(int va, int sa, int vb, int sb, Sig2 med = Sig2::neq2(),
                  std::string med_name = "NEQ2") {
        edges.push_back({4 * va + sa, 4 * vb + sb, std::move(med_name), std::move(med)});
    }

    // dart -> edge index (or -1), and dangling check
    std::vector<int> dart_edge() const {
        std::vector<int> de(static_cast<size_t>(dart_count()), -1);
        for (size_t e = 0; e < edges.size(); ++e) {
            for (int d : {edges[e].da, edges[e].db}) {
                if (d < 0 || d >= dart_count()) fail("BadGrid", "dart out of range");
                if (de[static_cast<size_t>(d)] != -1) fail("BadGrid", "dart used twice");
                de[static_cast<size_t>(d)] = static_cast<int>(e);
            }
        }
        for (int d : danglings) {
            if (de[static_cast<size_t>(d)] != -1) fail("BadGrid", "dangling dart also on an edge");
            de[static_cast<size_t>(d)] = -2;
        }
        for (int d = 0; d < dart_count(); ++d)
            if (de[static_cast<size_t>(d)] == -1) fail("BadGrid", "uncovered dart " + std::to_string(d));
        return de;
    }

    bool all_neq2() const {
        for (const auto& e : edges)
            if (!(e.med == Sig2::neq2())) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Brute-force contraction (the oracle).  Sums over all dart assignments the
// product of mediator and vertex evaluations, with DFS pruning on completed
// zero vertices.  Cap is on the edge count (2^cap leaves worst case).

namespace detail {

struct BruteState {
    const PlanarGrid* g;
    std::vector<int> order;           // edge visit order
    std::vector<int> vmask;           // accumulated variable mask per vertex
    std::vector<int> vcount;          // assigned darts per vertex
    std::vector<std::array<int, 2>> options_count;
};

inline std::vector<int> plan_edge_order(const PlanarGrid& g) {
    std::vector<int> remaining(g.vertices.size(), 0);
    for (const auto& e : g.edges) {
        ++remaining[static_cast<size_t>(PlanarGrid::dart_vertex(e.da))];
        ++remaining[static_cast<size_t>(PlanarGrid::dart_vertex(e.db))];
    }
    std::vector<bool> used(g.edges.size(), false);
    std::vector<int> order;
    order.reserve(g.edges.size());
    for (size_t step = 0; step < g.edges.size(); ++step) {
        int best = -1, best_score = 1 << 30;
        for (size_t e = 0; e < g.edges.size(); ++e) {
            if (used[e]) continue;
            int va = PlanarGrid::dart_vertex(g.edges[e].da);
            int vb = PlanarGrid::dart_vertex(g.edges[e].db);
            int score = remaining[static_cast<size_t>(va)] + remaining[static_cast<size_t>(vb)];
            if (score < best_score) {
                best_score = score;
                best = static_cast<int>(e);
            }
        }
        used[static_cast<size_t>(best)] = true;
        int va = PlanarGrid::dart_vertex(g.edges[static_cast<size_t>(best)].da);
        int vb = PlanarGrid::dart_vertex(g.edges[static_cast<size_t>(best)].db);
        --remaining[static_cast<size_t>(va)];
        --remaining[static_cast<size_t>(vb)];
        order.push_back(best);
    }
    return order;
}

inline void brute_dfs(const PlanarGrid& g, const std::vector<int>& order, size_t step,
                      std::vector<int>& vmask, std::vector<int>& vcount,
                      const FieldElem& acc, FieldElem& total) {
    if (step == order.size()) {
        total += acc;
        return;
    }
    const auto& e = g.edges[static_cast<size_t>(order[step])];
    int va = PlanarGrid::dart_vertex(e.da), sa = PlanarGrid::dart_slot(e.da);
    int vb = PlanarGrid::dart_vertex(e.db), sb = PlanarGrid::dart_slot(e.db);
    for (int xa = 0; xa < 2; ++xa)
        for (int xb = 0; xb < 2; ++xb) {
            const FieldElem& w = e.med.v[static_cast<size_t>(xa * 2 + xb)];
            if (w.is_zero()) continue;
            int save_ma = vmask[static_cast<size_t>(va)], save_ca = vcount[static_cast<size_t>(va)];
            vmask[static_cast<size_t>(va)] |= xa << (3 - sa);
            vcount[static_cast<size_t>(va)] += 1;
            int save_mb = vmask[static_cast<size_t>(vb)], save_cb = vcount[static_cast<size_t>(vb)];
            vmask[static_cast<size_t>(vb)] |= xb << (3 - sb);
            vcount[static_cast<size_t>(vb)] += 1;

            FieldElem acc2 = acc;
            bool dead = false;
            bool w_is_one = (w == FieldElem(1));
            if (!w_is_one) acc2 *= w;
            for (int v : {va, vb}) {
                if (vcount[static_cast<size_t>(v)] == 4) {
                    const FieldElem& fv =
                        g.vertices[static_cast<size_t>(v)].sig.v[static_cast<size_t>(vmask[static_cast<size_t>(v)])];
                    if (fv.is_zero()) {
                        dead = true;
                        break;
                    }
                    if (!(fv == FieldElem(1))) acc2 *= fv;
                }
                if (va == vb) break;  // self-loop: evaluate once
            }
            if (!dead) brute_dfs(g, order, step + 1, vmask, vcount, acc2, total);

            // undo in reverse application order (va may equal vb)
            vmask[static_cast<size_t>(vb)] = save_mb;
            vcount[static_cast<size_t>(vb)] = save_cb;
            vmask[static_cast<size_t>(va)] = save_ma;
            vcount[static_cast<size_t>(va)] = save_ca;
        }
}

}  // namespace detail

inline FieldElem brute_holant_pinned(const PlanarGrid& g, const std::vector<int>& pin_values,
                                     int cap = 40) {
    if (static_cast<int>(g.edges.size()) > cap)
        fail("TooLarge", "edge count " + std::to_string(g.edges.size()) + " exceeds cap " +
                             std::to_string(cap));
    g.dart_edge();  // validates coverage
    if (pin_values.size() != g.danglings.size())
        fail("BadGrid", "pin count does not match dangling count");
    std::vector<int> vmask(g.vertices.size(), 0), vcount(g.vertices.size(), 0);
    for (size_t i = 0; i < g.danglings.size(); ++i) {
        int d = g.danglings[i];
        int v = PlanarGrid::dart_vertex(d), s = PlanarGrid::dart_slot(d);
        vmask[static_cast<size_t>(v)] |= pin_values[i] << (3 - s);
        vcount[static_cast<size_t>(v)] += 1;
    }
    FieldElem base(1);
    // vertices may already be complete (all darts dangling)
    for (size_t v = 0; v < g.vertices.size(); ++v)
        if (vcount[v] == 4) {
            base *= g.vertices[v].sig.v[static_cast<size_t>(vmask[v])];
            if (base.is_zero()) return FieldElem(0);
        }
    FieldElem total(0);
    auto order = detail::plan_edge_order(g);
    detail::brute_dfs(g, order, 0, vmask, vcount, base, total);
    return total;
}

inline FieldElem brute_holant(const PlanarGrid& g, int cap = 40) {
    if (!g.danglings.empty()) fail("BadGrid", "instance has dangling darts");
    return brute_holant_pinned(g, {}, cap);
}

// F-gate contraction: the signature of a gadget graph with dangling edges.
inline std::vector<FieldElem> contract_gadget(const PlanarGrid& g, int cap = 40) {
    size_t n = g.danglings.size();
    std::vector<FieldElem> out(static_cast<size_t>(1) << n);
    for (size_t m = 0; m < out.size(); ++m) {
        std::vector<int> pins(n);
        for (size_t i = 0; i < n; ++i) pins[i] = (m >> (n - 1 - i)) & 1;
        out[m] = brute_holant_pinned(g, pins, cap);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Orientations.  An orientation assigns each edge a direction, encoded as the
// value of dart `da` (1 = outgoing at da's vertex); the mate dart gets the
// complement.  In-degree of v = number of its darts valued 0.

struct Orientation {
    std::vector<int> bit;  // per edge: value of dart da
};

namespace detail {
inline void orientation_dfs(const PlanarGrid& g, size_t e, std::vector<int>& indeg,
                            std::vector<int>& left, std::vector<int>& bits, bool eulerian,
                            const std::function<void(const Orientation&)>& emit) {
    if (e == g.edges.size()) {
        emit(Orientation{bits});
        return;
    }
    const auto& ed = g.edges[e];
    int va = PlanarGrid::dart_vertex(ed.da), vb = PlanarGrid::dart_vertex(ed.db);
    for (int xa = 0; xa < 2; ++xa) {
        int xb = 1 - xa;
        indeg[static_cast<size_t>(va)] += 1 - xa;
        indeg[static_cast<size_t>(vb)] += 1 - xb;
        --left[static_cast<size_t>(va)];
        --left[static_cast<size_t>(vb)];
        bool ok = true;
        for (int v : {va, vb}) {
            int id = indeg[static_cast<size_t>(v)], lf = left[static_cast<size_t>(v)];
            if (eulerian) {
                if (id > 2 || id + lf < 2) ok = false;
            } else {
                if (lf == 0 && id % 2 != 0) ok = false;
            }
            if (va == vb) break;
        }
        if (ok) {
            bits.push_back(xa);
            orientation_dfs(g, e + 1, indeg, left, bits, eulerian, emit);
            bits.pop_back();
        }
        indeg[static_cast<size_t>(va)] -= 1 - xa;
        indeg[static_cast<size_t>(vb)] -= 1 - xb;
        ++left[static_cast<size_t>(va)];
        ++left[static_cast<size_t>(vb)];
    }
}
}  // namespace detail

inline void for_each_even_orientation(const PlanarGrid& g, bool eulerian,
                                      const std::function<void(const Orientation&)>& emit,
                                      int cap = 40) {
    if (static_cast<int>(g.edges.size()) > cap) fail("TooLarge", "too many edges");
    std::vector<int> degree(g.vertices.size(), 0);
    for (const auto& e : g.edges) {
        ++degree[static_cast<size_t>(PlanarGrid::dart_vertex(e.da))];
        ++degree[static_cast<size_t>(PlanarGrid::dart_vertex(e.db))];
    }
    for (int d : degree)
        if (d != 4) fail("BadGrid", "orientation enumeration requires a 4-regular graph");
    std::vector<int> indeg(g.vertices.size(), 0), left = degree, bits;
    detail::orientation_dfs(g, 0, indeg, left, bits, eulerian, emit);
}

inline long count_even_orientations(const PlanarGrid& g, bool eulerian = false) {
    long n = 0;
    for_each_even_orientation(g, eulerian, [&](const Orientation&) { ++n; });
    return n;
}

// Independent evaluator: sum over even orientations of prod_v f_v(out-bits).
// Matches brute_holant exactly when every mediator is NEQ2.
inline FieldElem holant_by_orientations(const PlanarGrid& g) {
    if (!g.all_neq2()) fail("BadGrid", "orientation evaluator requires NEQ2 mediators");
    FieldElem total(0);
    for_each_even_orientation(g, false, [&](const Orientation& o) {
        std::vector<int> vmask(g.vertices.size(), 0);
        for (size_t e = 0; e < g.edges.size(); ++e) {
            const auto& ed = g.edges[e];
            int xa = o.bit[e], xb = 1 - xa;
            vmask[static_cast<size_t>(PlanarGrid::dart_vertex(ed.da))] |= xa << (3 - PlanarGrid::dart_slot(ed.da));
            vmask[static_cast<size_t>(PlanarGrid::dart_vertex(ed.db))] |= xb << (3 - PlanarGrid::dart_slot(ed.db));
        }
        FieldElem w(1);
        for (size_t v = 0; v < g.vertices.size(); ++v)
            w *= g.vertices[v].sig.v[static_cast<size_t>(vmask[v])];
        total += w;
    });
    return total;
}

// ---------------------------------------------------------------------------
// Faces from the rotation system (darts 0..3 ccw at each vertex), Euler check,
// face two-coloring and the canonical (black faces counterclockwise)
// orientation.

struct FaceStructure {
    std::vector<std::vector<int>> face_darts;  // per face, traversal darts
    std::vector<int> dart_face;                // dart -> face id
};

inline FaceStructure trace_faces(const PlanarGrid& g) {
    auto de = g.dart_edge();
    if (!g.danglings.empty()) fail("BadGrid", "face tracing requires a closed grid");
    std::vector<int> mate(static_cast<size_t>(g.dart_count()), -1);
    for (const auto& e : g.edges) {
        mate[static_cast<size_t>(e.da)] = e.db;
        mate[static_cast<size_t>(e.db)] = e.da;
    }
    (void)de;
    FaceStructure fs;
    fs.dart_face.assign(static_cast<size_t>(g.dart_count()), -1);
    for (int d0 = 0; d0 < g.dart_count(); ++d0) {
        if (fs.dart_face[static_cast<size_t>(d0)] != -1) continue;
        int face = static_cast<int>(fs.face_darts.size());
        fs.face_darts.emplace_back();
        int d = d0;
        do {
            fs.dart_face[static_cast<size_t>(d)] = face;
            fs.face_darts.back().push_back(d);
            int m = mate[static_cast<size_t>(d)];
            int v = PlanarGrid::dart_vertex(m), s = PlanarGrid::dart_slot(m);
            d = 4 * v + ((s + 1) % 4);  // next ccw dart after the mate
        } while (d != d0);
    }
    return fs;
}

inline bool euler_check(const PlanarGrid& g) {
    // connected components via union-find over vertices
    std::vector<int> parent(g.vertices.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    for (const auto& e : g.edges)
        parent[static_cast<size_t>(find(PlanarGrid::dart_vertex(e.da)))] =
            find(PlanarGrid::dart_vertex(e.db));
    int comps = 0;
    for (size_t i = 0; i < parent.size(); ++i)
        if (find(static_cast<int>(i)) == static_cast<int>(i)) ++comps;
    long v = static_cast<long>(g.vertices.size());
    long e = static_cast<long>(g.edges.size());
    long f = static_cast<long>(trace_faces(g).face_darts.size());
    // face tracing yields sphere faces per component: V - E + F = 2 per component
    return v - e + f == 2 * comps;
}

// Proper 2-coloring of faces (colors 0 = white, 1 = black), outer face white.
// Fails with NotFaceTwoColorable when the dual has an odd cycle.
inline std::vector<int> face_two_coloring(const PlanarGrid& g, const FaceStructure& fs,
                                          int outer_face = 0) {
    size_t nf = fs.face_darts.size();
    std::vector<int> color(nf, -1);
    std::vector<int> queue{outer_face};
    color[static_cast<size_t>(outer_face)] = 0;
    std::vector<int> mate(static_cast<size_t>(g.dart_count()), -1);
    for (const auto& e : g.edges) {
        mate[static_cast<size_t>(e.da)] = e.db;
        mate[static_cast<size_t>(e.db)] = e.da;
    }
    while (!queue.empty()) {
        int f = queue.back();
        queue.pop_back();
        for (int d : fs.face_darts[static_cast<size_t>(f)]) {
            int g2 = fs.dart_face[static_cast<size_t>(mate[static_cast<size_t>(d)])];
            if (color[static_cast<size_t>(g2)] == -1) {
                color[static_cast<size_t>(g2)] = 1 - color[static_cast<size_t>(f)];
                queue.push_back(g2);
            } else if (color[static_cast<size_t>(g2)] == color[static_cast<size_t>(f)]) {
                fail("NotFaceTwoColorable", "dual graph is not bipartite");
            }
        }
    }
    for (size_t f = 0; f < nf; ++f)
        if (color[f] == -1) fail("BadGrid", "disconnected face structure");
    return color;
}

// Canonical orientation: 2-color faces with the outer face white and direct
// every edge so that its black side traverses it via the stored dart; the
// result is Eulerian and alternates in/out around every vertex.
inline Orientation canonical_orientation(const PlanarGrid& g, int outer_face = 0) {
    FaceStructure fs = trace_faces(g);
    std::vector<int> color = face_two_coloring(g, fs, outer_face);
    Orientation o;
    o.bit.resize(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        int fa = fs.dart_face[static_cast<size_t>(ed.da)];
        // value of dart da: 1 (outgoing) iff da's face is black
        o.bit[e] = color[static_cast<size_t>(fa)] == 1 ? 1 : 0;
    }
    return o;
}

inline std::vector<int> orientation_indegrees(const PlanarGrid& g, const Orientation& o) {
    std::vector<int> indeg(g.vertices.size(), 0);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        indeg[static_cast<size_t>(PlanarGrid::dart_vertex(ed.da))] += 1 - o.bit[e];
        indeg[static_cast<size_t>(PlanarGrid::dart_vertex(ed.db))] += o.bit[e];
    }
    return indeg;
}

// ---------------------------------------------------------------------------
// Even-coloring cross-check: Pl-Holant(neq2 | f) = Pl-Holant(eq2 | g) where g
// is f with alternate inputs flipped (valid for the arrow-symmetric family).

inline Sig4 flip_alternate_inputs(const Sig4& f) {
    Sig4 g;
    for (int m = 0; m < 16; ++m) g.v[static_cast<size_t>(m)] = f.v[static_cast<size_t>(m ^ 0b0101)];
    return g;
}

inline bool xor_bijection_check(const PlanarGrid& grid, const Sig4& f, const Sig4& g,
                                int cap = 40) {
    PlanarGrid a = grid, b = grid;
    for (auto& v : a.vertices) v.sig = f;
    for (auto& e : a.edges) e.med = Sig2::neq2();
    for (auto& v : b.vertices) v.sig = g;
    for (auto& e : b.edges) e.med = Sig2::eq2();
    return brute_holant(a, cap) == brute_holant(b, cap);
}

// ---------------------------------------------------------------------------
// Generators (documented embeddings).

// Two vertices joined by k parallel edges (4-regular when k = 4): arcs are
// nested, so the rotation at the second vertex is reversed.
inline PlanarGrid parallel_multi(int k, const Sig4& f) {
    if (k != 4) fail("BadGrid", "parallel_multi is 4-regular only for k=4");
    PlanarGrid g;
    g.add_vertex(f, "f");
    g.add_vertex(f, "f");
    for (int i = 0; i < 4; ++i) g.add_edge(0, i, 1, 3 - i);
    return g;
}

// Cycle of k vertices, consecutive vertices joined by two parallel arcs.
inline PlanarGrid ring_doubled(int k, const Sig4& f) {
    if (k < 3) fail("BadGrid", "ring_doubled needs k >= 3");
    PlanarGrid g;
    for (int v = 0; v < k; ++v) g.add_vertex(f, "f");
    // slots at v: 0 = outer arc to v+1, 1 = inner arc to v+1,
    //             2 = inner arc to v-1, 3 = outer arc to v-1   (ccw order)
    for (int v = 0; v < k; ++v) {
        int u = (v + 1) % k;
        g.add_edge(v, 0, u, 3);  // outer arcs
        g.add_edge(v, 1, u, 2);  // inner arcs
    }
    return g;
}

// Octahedron: outer triangle 0,1,2 (ccw), inner triangle 3,4,5, with
// 0 ~ {3,4}, 1 ~ {4,5}, 2 ~ {5,3}.  Rotation lists derived from the
// standard drawing (0 top, 1 bottom-left, 2 bottom-right, inner triangle
// inside), darts listed counterclockwise:
//   v0: [1, 4, 3, 2]   v1: [2, 5, 4, 0]   v2: [0, 3, 5, 1]
//   v3: [0, 4, 5, 2]   v4: [1, 5, 3, 0]   v5: [2, 3, 4, 1]
inline PlanarGrid octahedron(const Sig4& f) {
    PlanarGrid g;
    for (int v = 0; v < 6; ++v) g.add_vertex(f, "f");
    g.add_edge(0, 0, 1, 3);  // 0-1
    g.add_edge(1, 0, 2, 3);  // 1-2
    g.add_edge(2, 0, 0, 3);  // 2-0
    g.add_edge(0, 1, 4, 3);  // 0-4
    g.add_edge(0, 2, 3, 0);  // 0-3
    g.add_edge(1, 1, 5, 3);  // 1-5
    g.add_edge(1, 2, 4, 0);  // 1-4
    g.add_edge(2, 1, 3, 3);  // 2-3
    g.add_edge(2, 2, 5, 0);  // 2-5
    g.add_edge(3, 1, 4, 2);  // 3-4
    g.add_edge(3, 2, 5, 1);  // 3-5
    g.add_edge(4, 1, 5, 2);  // 4-5
    return g;
}

// Medial graph of the (m+1) x (n+1) grid graph: one 4-valent vertex per base
// edge, medial edges between ccw-consecutive base edges around each base
// node.  4-regular and planar for all m, n >= 1.
inline PlanarGrid grid_medial(int m, int n, const Sig4& f) {
    if (m < 1 || n < 1) fail("BadGrid", "grid_medial needs m, n >= 1");
    const int R = m + 1, C = n + 1;  // base nodes R x C
    auto node = [&](int r, int c) { return r * C + c; };
    // base edges: horizontal (r, c)-(r, c+1), vertical (r, c)-(r+1, c)
    struct BaseEdge {
        int u, v;
    };
    std::vector<BaseEdge> base;
    std::map<std::pair<int, int>, int> base_id;
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c) {
            if (c + 1 < C) {
                base_id[{node(r, c), node(r, c + 1)}] = static_cast<int>(base.size());
                base.push_back({node(r, c), node(r, c + 1)});
            }
            if (r + 1 < R) {
                base_id[{node(r, c), node(r + 1, c)}] = static_cast<int>(base.size());
                base.push_back({node(r, c), node(r + 1, c)});
            }
        }
    auto eid = [&](int a, int b) {
        auto it = base_id.find({std::min(a, b), std::max(a, b)});
        return it->second;
    };
    // ccw rotation of base edges around each node (E, N, W, S order filtered)
    std::vector<std::vector<int>> rot(static_cast<size_t>(R * C));
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c) {
            auto& lst = rot[static_cast<size_t>(node(r, c))];
            // ccw starting east, with rows drawn increasing upward
            if (c + 1 < C) lst.push_back(eid(node(r, c), node(r, c + 1)));  // E
            if (r + 1 < R) lst.push_back(eid(node(r, c), node(r + 1, c)));  // N
            if (c - 1 >= 0) lst.push_back(eid(node(r, c - 1), node(r, c)));  // W
            if (r - 1 >= 0) lst.push_back(eid(node(r - 1, c), node(r, c)));  // S
        }
    PlanarGrid g;
    for (size_t e = 0; e < base.size(); ++e) g.add_vertex(f, "f");
    // at medial vertex m(e) with base endpoints P < Q (P = base.u):
    // slots [0] next@P, [1] prev@P, [2] next@Q, [3] prev@Q
    auto slot_of = [&](int medial_vertex, int base_node, bool next_side) {
        const BaseEdge& be = base[static_cast<size_t>(medial_vertex)];
        if (base_node == be.u) return next_side ? 0 : 1;
        return next_side ? 2 : 3;
    };
    for (int p = 0; p < R * C; ++p) {
        const auto& lst = rot[static_cast<size_t>(p)];
        int d = static_cast<int>(lst.size());
        for (int i = 0; i < d; ++i) {
            int e1 = lst[static_cast<size_t>(i)], e2 = lst[static_cast<size_t>((i + 1) % d)];
            // medial edge from m(e1) (its next@p dart) to m(e2) (its prev@p dart)
            g.add_edge(e1, slot_of(e1, p, true), e2, slot_of(e2, p, false));
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Serialization: sections [signatures], [vertices], [edges], [danglings].

std::string serialize_grid(const PlanarGrid& g);
PlanarGrid parse_grid(const std::string& text);

inline std::string serialize_grid(const PlanarGrid& g) {
    std::ostringstream out;
    out << "[signatures]\n";
    std::map<std::string, std::string> sigs;  // name -> literal list
    auto sig4_lit = [](const Sig4& f) {
        std::string s;
        for (int i = 0; i < 16; ++i) {
            if (i) s += ", ";
            s += f.v[static_cast<size_t>(i)].str();
        }
        return s;
    };
    auto sig2_lit = [](const Sig2& f) {
        std::string s;
        for (int i = 0; i < 4; ++i) {
            if (i) s += ", ";
            s += f.v[static_cast<size_t>(i)].str();
        }
        return s;
    };
    std::vector<std::string> vnames;
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        std::string name = g.vertices[v].sig_name.empty() ? "f" + std::to_string(v)
                                                          : g.vertices[v].sig_name;
        auto it = sigs.find(name);
        std::string lit = sig4_lit(g.vertices[v].sig);
        if (it != sigs.end() && it->second != lit) name = "f" + std::to_string(v);
        sigs[name] = lit;
        vnames.push_back(name);
    }
    int medn = 0;
    std::vector<std::string> enames;
    for (const auto& e : g.edges) {
        if (e.med == Sig2::neq2()) {
            enames.push_back("NEQ2");
        } else if (e.med == Sig2::eq2()) {
            enames.push_back("EQ2");
        } else {
            std::string name = "g" + std::to_string(medn++);
            sigs[name] = sig2_lit(e.med);
            enames.push_back(name);
        }
    }
    for (const auto& [name, lit] : sigs) out << name << " = " << lit << "\n";
    out << "[vertices]\n";
    for (size_t v = 0; v < g.vertices.size(); ++v)
        out << "v" << v << " = " << vnames[v] << "\n";
    out << "[edges]\n";
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        out << "v" << PlanarGrid::dart_vertex(ed.da) << "." << PlanarGrid::dart_slot(ed.da)
            << " - v" << PlanarGrid::dart_vertex(ed.db) << "." << PlanarGrid::dart_slot(ed.db)
            << " : " << enames[e] << "\n";
    }
    if (!g.danglings.empty()) {
        out << "[danglings]\n";
        for (int d : g.danglings)
            out << "v" << PlanarGrid::dart_vertex(d) << "." << PlanarGrid::dart_slot(d) << "\n";
    }
    return out.str();
}

namespace detail {
[[noreturn]] inline void parse_fail(int line, const std::string& what) {
    fail("ParseError", "line " + std::to_string(line) + ": " + what);
}

inline std::pair<int, int> parse_dart(const std::string& tok, int line,
                                      const std::map<std::string, int>& vid) {
    auto dot = tok.find('.');
    if (dot == std::string::npos) parse_fail(line, "expected vertex.slot, got '" + tok + "'");
    auto it = vid.find(tok.substr(0, dot));
    if (it == vid.end()) parse_fail(line, "unknown vertex '" + tok.substr(0, dot) + "'");
    int slot;
    try {
        slot = std::stoi(tok.substr(dot + 1));
    } catch (...) {
        parse_fail(line, "bad slot in '" + tok + "'");
    }
    if (slot < 0 || slot > 3) parse_fail(line, "slot out of range in '" + tok + "'");
    return {it->second, slot};
}

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}
}  // namespace detail

inline PlanarGrid parse_grid(const std::string& text) {
    PlanarGrid g;
    std::map<std::string, std::vector<FieldElem>> sigs;
    std::map<std::string, int> vid;
    enum { None, Sigs, Verts, Edges, Dangs } section = None;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = detail::strip(raw);
        if (s.empty()) continue;
        if (s == "[signatures]") {
            section = Sigs;
            continue;
        }
        if (s == "[vertices]") {
            section = Verts;
            continue;
        }
        if (s == "[edges]") {
            section = Edges;
            continue;
        }
        if (s == "[danglings]") {
            section = Dangs;
            continue;
        }
        if (s[0] == '[') detail::parse_fail(line, "unknown section " + s);
        switch (section) {
            case Sigs: {
                auto eq = s.find('=');
                if (eq == std::string::npos) detail::parse_fail(line, "expected name = values");
                std::string name = detail::strip(s.substr(0, eq));
                auto vals = parse_field_elem_list(s.substr(eq + 1));
                if (vals.size() != 16 && vals.size() != 4)
                    detail::parse_fail(line, "signature needs 16 or 4 values, got " +
                                                 std::to_string(vals.size()));
                sigs[name] = vals;
                break;
            }
            case Verts: {
                auto eq = s.find('=');
                if (eq == std::string::npos) detail::parse_fail(line, "expected vN = sig");
                std::string vname = detail::strip(s.substr(0, eq));
                std::string sname = detail::strip(s.substr(eq + 1));
                auto it = sigs.find(sname);
                if (it == sigs.end()) detail::parse_fail(line, "unknown signature " + sname);
                if (it->second.size() != 16)
                    detail::parse_fail(line, "vertex signature must have arity 4");
                Sig4 f;
                std::copy(it->second.begin(), it->second.end(), f.v.begin());
                vid[vname] = g.add_vertex(f, sname);
                break;
            }
            case Edges: {
                auto dash = s.find('-');
                if (dash == std::string::npos) detail::parse_fail(line, "expected a - b [: med]");
                std::string a = detail::strip(s.substr(0, dash));
                std::string rest = detail::strip(s.substr(dash + 1));
                std::string medname = "NEQ2";
                auto colon = rest.find(':');
                std::string b = rest;
                if (colon != std::string::npos) {
                    b = detail::strip(rest.substr(0, colon));
                    medname = detail::strip(rest.substr(colon + 1));
                }
                auto [va, sa] = detail::parse_dart(a, line, vid);
                auto [vb, sb] = detail::parse_dart(b, line, vid);
                Sig2 med;
                if (medname == "NEQ2") {
                    med = Sig2::neq2();
                } else if (medname == "EQ2") {
                    med = Sig2::eq2();
                } else {
                    auto it = sigs.find(medname);
                    if (it == sigs.end() || it->second.size() != 4)
                        detail::parse_fail(line, "unknown binary mediator " + medname);
                    std::copy(it->second.begin(), it->second.end(), med.v.begin());
                }
                g.add_edge(va, sa, vb, sb, med, medname);
                break;
            }
            case Dangs: {
                auto [v, slot] = detail::parse_dart(s, line, vid);
                g.danglings.push_back(4 * v + slot);
                break;
            }
            case None:
                detail::parse_fail(line, "content before any section");
        }
    }
    g.dart_edge();  // validate
    return g;
}

}  // namespace ev8
