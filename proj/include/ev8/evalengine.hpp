#pragma once

// Polynomial-time partition-function engines for the tractable classes:
//  - FKT: Kasteleyn orientation + exact Pfaffian for planar perfect matching,
//  - matchgate instances via a curated realization table (theta gadget),
//  - affine instances via iterated quadratic Gauss-sum elimination,
//  - product-type instances via parity union-find propagation.

#include <map>

#include "holo.hpp"

namespace ev8 {

// ---------------------------------------------------------------------------
// Planar weighted graphs for matching.

struct MatchGraph {
    struct MEdge {
        int u, v;
        FieldElem w;
    };
    int n = 0;
    std::vector<MEdge> edges;
    // rotation system: edge ids counterclockwise around each node
    std::vector<std::vector<int>> rot;

    int add_node() {
        rot.emplace_back();
        return n++;
    }
    int add_edge(int u, int v, FieldElem w) {
        edges.push_back({u, v, std::move(w)});
        return static_cast<int>(edges.size()) - 1;
    }
};

namespace detail {

// darts for match graphs: 2*edge + end (0 at u, 1 at v)
inline int mg_dart_node(const MatchGraph& g, int d) {
    const auto& e = g.edges[static_cast<size_t>(d / 2)];
    return (d % 2) ? e.v : e.u;
}

struct MgFaces {
    std::vector<std::vector<int>> face_darts;
    std::vector<int> dart_face;
};

inline MgFaces mg_trace_faces(const MatchGraph& g) {
    // position of each dart within its node's rotation
    std::vector<std::vector<int>> darts_at(static_cast<size_t>(g.n));
    for (int node = 0; node < g.n; ++node)
        for (int e : g.rot[static_cast<size_t>(node)]) {
            const auto& ed = g.edges[static_cast<size_t>(e)];
            int d = 2 * e + (ed.u == node ? 0 : 1);
            if (ed.u == ed.v) fail("BadGraph", "self loops unsupported in match graphs");
            darts_at[static_cast<size_t>(node)].push_back(d);
        }
    std::vector<int> pos(g.edges.size() * 2, -1);
    for (int node = 0; node < g.n; ++node)
        for (size_t i = 0; i < darts_at[static_cast<size_t>(node)].size(); ++i)
            pos[static_cast<size_t>(darts_at[static_cast<size_t>(node)][i])] = static_cast<int>(i);
    MgFaces fs;
    fs.dart_face.assign(g.edges.size() * 2, -1);
    for (int d0 = 0; d0 < static_cast<int>(g.edges.size()) * 2; ++d0) {
        if (fs.dart_face[static_cast<size_t>(d0)] != -1) continue;
        int face = static_cast<int>(fs.face_darts.size());
        fs.face_darts.emplace_back();
        int d = d0;
        do {
            fs.dart_face[static_cast<size_t>(d)] = face;
            fs.face_darts.back().push_back(d);
            int mate = (d % 2) ? d - 1 : d + 1;
            int node = mg_dart_node(g, mate);
            const auto& lst = darts_at[static_cast<size_t>(node)];
            int p = pos[static_cast<size_t>(mate)];
            d = lst[static_cast<size_t>((p + 1) % lst.size())];
        } while (d != d0);
    }
    return fs;
}

}  // namespace detail

// Kasteleyn orientation: +1 directs edge u -> v.  Spanning-tree start, then
// leaf-peeling of inner faces so each gets an odd number of clockwise edges.
inline std::vector<int> kasteleyn_orient(const MatchGraph& g, int outer_face = -1) {
    if (g.edges.empty()) return {};
    // connectivity
    std::vector<int> comp(static_cast<size_t>(g.n), -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(g.n));
    for (size_t e = 0; e < g.edges.size(); ++e) {
        adj[static_cast<size_t>(g.edges[e].u)].push_back({g.edges[e].v, static_cast<int>(e)});
        adj[static_cast<size_t>(g.edges[e].v)].push_back({g.edges[e].u, static_cast<int>(e)});
    }
    std::vector<int> tree_edge;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (auto [v, e] : adj[static_cast<size_t>(u)])
            if (comp[static_cast<size_t>(v)] == -1) {
                comp[static_cast<size_t>(v)] = 0;
                tree_edge.push_back(e);
                stack.push_back(v);
            }
    }
    for (int c : comp)
        if (c == -1) fail("NotConnected", "kasteleyn orientation needs a connected graph");

    detail::MgFaces fs = detail::mg_trace_faces(g);
    if (outer_face < 0) outer_face = 0;
    std::vector<int> orient(g.edges.size(), 0);  // 0 = undecided, else +-1
    std::vector<bool> in_tree(g.edges.size(), false);
    for (int e : tree_edge) in_tree[static_cast<size_t>(e)] = true;
    for (size_t e = 0; e < g.edges.size(); ++e)
        if (in_tree[e]) orient[e] = 1;

    // Kasteleyn condition: every inner face has an odd number of clockwise
    // boundary edges.  Our face trace runs counterclockwise around inner
    // faces, so the clockwise edges are the darts running *against* the
    // traversal: require len - agree odd, i.e. agree = len + 1 (mod 2).
    size_t nf = fs.face_darts.size();
    std::vector<bool> face_done(nf, false);
    face_done[static_cast<size_t>(outer_face)] = true;
    while (true) {
        bool progress = false, all_done = true;
        for (size_t f = 0; f < nf; ++f) {
            if (face_done[f]) continue;
            int undecided = -1, agree = 0;
            bool two_undecided = false;
            for (int d : fs.face_darts[f]) {
                int e = d / 2;
                if (orient[static_cast<size_t>(e)] == 0) {
                    if (undecided >= 0 && undecided != e) two_undecided = true;
                    undecided = e;
                    continue;
                }
                // dart d agrees with orientation +1 iff d is the u-end dart
                int dir = (d % 2 == 0) ? 1 : -1;
                if (dir == orient[static_cast<size_t>(e)]) ++agree;
            }
            if (two_undecided) {
                all_done = false;
                continue;
            }
            int target = (static_cast<int>(fs.face_darts[f].size()) + 1) % 2;
            if (undecided < 0) {
                face_done[f] = true;
                progress = true;
                continue;
            }
            int dart_on_face = -1;
            for (int d : fs.face_darts[f])
                if (d / 2 == undecided) dart_on_face = d;
            int dir_for_agree = (dart_on_face % 2 == 0) ? 1 : -1;
            orient[static_cast<size_t>(undecided)] =
                (agree % 2 != target) ? dir_for_agree : -dir_for_agree;
            face_done[f] = true;
            progress = true;
        }
        if (all_done) break;
        if (!progress) fail("InternalError", "kasteleyn peeling stalled");
    }
    return orient;
}

// verification helper: every inner face satisfies the odd-clockwise rule
// (agree = len + 1 mod 2 under the counterclockwise inner-face trace).
inline bool kasteleyn_check(const MatchGraph& g, const std::vector<int>& orient,
                            int outer_face = 0) {
    detail::MgFaces fs = detail::mg_trace_faces(g);
    for (size_t f = 0; f < fs.face_darts.size(); ++f) {
        if (static_cast<int>(f) == outer_face) continue;
        int agree = 0;
        for (int d : fs.face_darts[f]) {
            int dir = (d % 2 == 0) ? 1 : -1;
            if (dir == orient[static_cast<size_t>(d / 2)]) ++agree;
        }
        if (agree % 2 != (static_cast<int>(fs.face_darts[f].size()) + 1) % 2) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Exact Pfaffian.

inline FieldElem pfaffian(MatN a) {
    if (a.rows != a.cols) fail("BadShape", "pfaffian needs a square matrix");
    int n = a.rows;
    if (n % 2 != 0) fail("OddDimension", "pfaffian needs even dimension");
    for (int i = 0; i < n; ++i) {
        if (!a.at(i, i).is_zero()) fail("NotSkew", "diagonal must vanish");
        for (int j = i + 1; j < n; ++j)
            if (a.at(i, j) != -a.at(j, i)) fail("NotSkew", "matrix is not skew-symmetric");
    }
    FieldElem result(1);
    // eliminate two rows/cols at a time
    std::vector<int> alive(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) alive[static_cast<size_t>(i)] = i;
    MatN w = a;
    int sign = 1;
    while (!alive.empty()) {
        int i = alive[0];
        // find j with w(i, j) != 0 among alive
        int jpos = -1;
        for (size_t k = 1; k < alive.size(); ++k)
            if (!w.at(i, alive[k]).is_zero()) {
                jpos = static_cast<int>(k);
                break;
            }
        if (jpos < 0) return FieldElem(0);
        // swap alive[1] and alive[jpos]: swapping rows+cols flips the sign
        if (jpos != 1) {
            std::swap(alive[1], alive[static_cast<size_t>(jpos)]);
            sign = -sign;
        }
        int j = alive[1];
        FieldElem piv = w.at(i, j);
        result *= piv;
        FieldElem inv = piv.inv();
        // schur update: b_kl = a_kl - (a_ik a_jl - a_il a_jk) / a_ij
        for (size_t p = 2; p < alive.size(); ++p)
            for (size_t q = p + 1; q < alive.size(); ++q) {
                int k = alive[p], l = alive[q];
                FieldElem upd = (w.at(i, k) * w.at(j, l) - w.at(i, l) * w.at(j, k)) * inv;
                w.at(k, l) -= upd;
                w.at(l, k) += upd;
            }
        alive.erase(alive.begin(), alive.begin() + 2);
    }
    return FieldElem(sign) * result;
}

// combinatorial expansion, for cross-checks and small matrices
inline FieldElem pfaffian_expansion(const MatN& a) {
    int n = a.rows;
    if (n % 2 != 0) fail("OddDimension", "pfaffian needs even dimension");
    std::vector<int> items(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) items[static_cast<size_t>(i)] = i;
    std::function<FieldElem(std::vector<int>&)> rec = [&](std::vector<int>& v) -> FieldElem {
        if (v.empty()) return FieldElem(1);
        FieldElem total(0);
        int i = v[0];
        for (size_t k = 1; k < v.size(); ++k) {
            int j = v[static_cast<size_t>(k)];
            if (a.at(i, j).is_zero()) continue;
            std::vector<int> rest;
            for (size_t t = 1; t < v.size(); ++t)
                if (t != k) rest.push_back(v[t]);
            FieldElem term = a.at(i, j) * rec(rest);
            // sign: (-1)^(k-1) for pairing the first item with position k
            if ((k - 1) % 2 == 1) term = -term;
            total += term;
        }
        return total;
    };
    return rec(items);
}

// ---------------------------------------------------------------------------
// Weighted perfect matchings of a planar embedded graph.

namespace detail {

inline bool find_one_matching(const MatchGraph& g, std::vector<int>& out) {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(g.n));
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].w.is_zero()) continue;
        adj[static_cast<size_t>(g.edges[e].u)].push_back({g.edges[e].v, static_cast<int>(e)});
        adj[static_cast<size_t>(g.edges[e].v)].push_back({g.edges[e].u, static_cast<int>(e)});
    }
    std::vector<bool> used(static_cast<size_t>(g.n), false);
    std::function<bool(int)> rec = [&](int from) -> bool {
        int u = -1;
        for (int x = from; x < g.n; ++x)
            if (!used[static_cast<size_t>(x)]) {
                u = x;
                break;
            }
        if (u < 0) return true;
        used[static_cast<size_t>(u)] = true;
        for (auto [v, e] : adj[static_cast<size_t>(u)]) {
            if (used[static_cast<size_t>(v)]) continue;
            used[static_cast<size_t>(v)] = true;
            out.push_back(e);
            if (rec(u + 1)) return true;
            out.pop_back();
            used[static_cast<size_t>(v)] = false;
        }
        used[static_cast<size_t>(u)] = false;
        return false;
    };
    return rec(0);
}

}  // namespace detail

// Weighted perfect-matching sum via the Pfaffian of the Kasteleyn-signed
// skew adjacency matrix; the global sign is fixed with one reference
// matching found by backtracking.
inline FieldElem count_pm(const MatchGraph& g) {
    if (g.n == 0) return FieldElem(1);
    if (g.n % 2 != 0) return FieldElem(0);
    std::vector<int> orient = kasteleyn_orient(g);
    MatN a(g.n, g.n);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        int u = ed.u, v = ed.v;
        FieldElem w = ed.w;
        if (orient[e] < 0) std::swap(u, v);
        a.at(u, v) += w;
        a.at(v, u) -= w;
    }
    FieldElem pf = pfaffian(a);
    if (pf.is_zero()) {
        // either no matchings or exact cancellation: both give sum 0 only if
        // the sign is consistent, which Kasteleyn guarantees
        return FieldElem(0);
    }
    std::vector<int> m0;
    if (!detail::find_one_matching(g, m0))
        fail("InternalError", "nonzero pfaffian but no perfect matching found");
    // sign of the reference matching's pfaffian term
    std::vector<std::pair<int, int>> pairs;
    FieldElem term(1);
    for (int e : m0) {
        int u = g.edges[static_cast<size_t>(e)].u, v = g.edges[static_cast<size_t>(e)].v;
        if (orient[static_cast<size_t>(e)] < 0) std::swap(u, v);
        pairs.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(pairs.begin(), pairs.end());
    // permutation (i1 j1 i2 j2 ...): sign = parity of inversions; term value
    // sign relative to prod weights is prod of a-entry signs
    std::vector<int> perm;
    for (auto [u, v] : pairs) {
        perm.push_back(u);
        perm.push_back(v);
    }
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    int eps = (inv % 2 == 0) ? 1 : -1;
    for (auto [u, v] : pairs) {
        // a.at(u,v) = +w if oriented u->v else -w
        bool positive = false;
        for (int e : m0) {
            int eu = g.edges[static_cast<size_t>(e)].u, ev = g.edges[static_cast<size_t>(e)].v;
            if (orient[static_cast<size_t>(e)] < 0) std::swap(eu, ev);
            if (eu == u && ev == v) positive = true;
            if (eu == v && ev == u) positive = false;
            if ((eu == u && ev == v) || (eu == v && ev == u)) break;
        }
        if (!positive) eps = -eps;
    }
    (void)term;
    return FieldElem(eps) * pf;
}

// exhaustive matching enumeration (independent oracle for tests)
inline FieldElem count_pm_exhaustive(const MatchGraph& g) {
    std::function<FieldElem(std::vector<bool>&, int)> rec = [&](std::vector<bool>& used,
                                                                int from) -> FieldElem {
        int u = -1;
        for (int x = from; x < g.n; ++x)
            if (!used[static_cast<size_t>(x)]) {
                u = x;
                break;
            }
        if (u < 0) return FieldElem(1);
        used[static_cast<size_t>(u)] = true;
        FieldElem total(0);
        for (size_t e = 0; e < g.edges.size(); ++e) {
            const auto& ed = g.edges[e];
            int v = -1;
            if (ed.u == u) v = ed.v;
            if (ed.v == u) v = ed.u;
            if (v < 0 || used[static_cast<size_t>(v)] || ed.w.is_zero()) continue;
            used[static_cast<size_t>(v)] = true;
            total += ed.w * rec(used, u + 1);
            used[static_cast<size_t>(v)] = false;
        }
        used[static_cast<size_t>(u)] = false;
        return total;
    };
    std::vector<bool> used(static_cast<size_t>(g.n), false);
    return rec(used, 0);
}

// ---------------------------------------------------------------------------
// Matchgate realization of eight-vertex-form signatures: the theta gadget.
//
//   externals 1..4 at the square corners (ccw), internal hubs a (lower) and
//   b (upper); boundary edges p=(1,2), q=(2,3), r=(3,4), s=(4,1); spokes
//   alpha=(1,a), delta=(2,a), gamma=(3,b), eps=(4,b); bridge tau=(a,b).
//   Exposure variable x_i = 1 means external i is left to the connector.

struct ThetaRealization {
    // the gadget realizes f(x ^ flip_mask); the flips are absorbed into the
    // connectors leg by leg (mask bit 3 is x1, bit 0 is x4)
    int flip_mask = 0;
    FieldElem p, q, r, s, alpha, delta, gamma, eps, tau;
};

namespace detail {
inline std::optional<ThetaRealization> realize_theta_even(const Sig4& f, int flip_mask);
}

// Realize an arity-4 matchgate signature (even or odd parity) as the theta
// gadget, flipping input legs through the connectors as needed.
inline std::optional<ThetaRealization> realize_matchgate(const Sig4& f0) {
    if (!is_matchgate(view(f0))) return std::nullopt;
    if (support(f0).empty()) {
        ThetaRealization th;  // all weights zero realize the zero signature
        return th;
    }
    for (int mask = 0; mask < 16; ++mask) {
        Sig4 f;
        for (int m = 0; m < 16; ++m)
            f.v[static_cast<size_t>(m)] = f0.v[static_cast<size_t>(m ^ mask)];
        if (!is_eight_vertex_form(f)) continue;
        if (f.at(1, 1, 1, 1).is_zero()) continue;
        if (auto th = detail::realize_theta_even(f, mask)) return th;
    }
    return std::nullopt;
}

namespace detail {

inline std::optional<ThetaRealization> realize_theta_even(const Sig4& f, int flip_mask) {
    EightV t = eightv_params(f);
    ThetaRealization th;
    th.flip_mask = flip_mask;
    th.tau = t.x;
    FieldElem X = t.x;
    th.p = t.b / X;
    th.r = t.y / X;
    // solve C q + Z s - X q s = A - B Y / X
    FieldElem D0 = t.a - t.b * t.y / X;
    FieldElem qq(0), ss(0);
    if (!t.c.is_zero()) {
        qq = D0 / t.c;
    } else if (!t.z.is_zero()) {
        ss = D0 / t.z;
    } else {
        qq = FieldElem(1);
        ss = -(D0 / X);
    }
    th.q = qq;
    th.s = ss;
    FieldElem ae = t.c - X * ss;  // alpha * eps
    FieldElem dg = t.z - X * qq;  // delta * gamma
    if (!t.d.is_zero()) {
        th.alpha = FieldElem(1);
        th.gamma = t.d;
        th.eps = ae;
        th.delta = dg / t.d;
    } else if (!t.w.is_zero()) {
        th.delta = FieldElem(1);
        th.eps = t.w;
        th.gamma = dg;
        th.alpha = ae / t.w;
    } else if (ae.is_zero()) {
        th.alpha = FieldElem(0);
        th.gamma = FieldElem(1);
        th.delta = dg;
        th.eps = FieldElem(0);
    } else {
        th.delta = FieldElem(0);
        th.eps = FieldElem(1);
        th.alpha = ae;
        th.gamma = FieldElem(0);
    }
    // verify against the closed matching sums of the theta gadget
    Sig4 realized;
    {
        auto& R = realized;
        R.at(1, 1, 1, 1) = th.tau;
        R.at(0, 0, 1, 1) = th.tau * th.p;
        R.at(1, 0, 0, 1) = th.tau * th.q + th.delta * th.gamma;
        R.at(1, 1, 0, 0) = th.tau * th.r;
        R.at(0, 1, 1, 0) = th.tau * th.s + th.alpha * th.eps;
        R.at(0, 0, 0, 0) = th.tau * (th.p * th.r + th.q * th.s) +
                           th.alpha * th.eps * th.q + th.delta * th.gamma * th.s;
        R.at(0, 1, 0, 1) = th.alpha * th.gamma;
        R.at(1, 0, 1, 0) = th.delta * th.eps;
    }
    if (!(realized == f)) return std::nullopt;
    return th;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matchgate instance evaluation: splice realizations and connectors into one
// match graph and run count_pm.

inline FieldElem eval_matchgate_instance(const PlanarGrid& grid) {
    // per-vertex realizations
    std::vector<ThetaRealization> th;
    for (const auto& v : grid.vertices) {
        auto r = realize_matchgate(v.sig);
        if (!r)
            fail("NoRealization",
                 "no matchgate realization for vertex signature " + v.sig_name);
        th.push_back(*r);
    }
    MatchGraph g;
    // node layout per vertex k: ext(k,i) = 6k + i (i = 0..3), a = 6k+4, b = 6k+5
    std::vector<std::array<int, 6>> nodes;
    for (size_t k = 0; k < grid.vertices.size(); ++k) {
        std::array<int, 6> ns;
        for (int i = 0; i < 6; ++i) ns[static_cast<size_t>(i)] = g.add_node();
        nodes.push_back(ns);
    }
    // per-external rotation lists with a connector slot; filled later
    // gadget edges; remember ids for rotation lists
    struct VertexEdgeIds {
        int p, q, r, s, alpha, delta, gamma, eps, tau;
    };
    std::vector<VertexEdgeIds> ids;
    for (size_t k = 0; k < grid.vertices.size(); ++k) {
        const auto& t = th[k];
        const auto& ns = nodes[k];
        VertexEdgeIds id;
        id.p = g.add_edge(ns[0], ns[1], t.p);
        id.q = g.add_edge(ns[1], ns[2], t.q);
        id.r = g.add_edge(ns[2], ns[3], t.r);
        id.s = g.add_edge(ns[3], ns[0], t.s);
        id.alpha = g.add_edge(ns[0], ns[4], t.alpha);
        id.delta = g.add_edge(ns[1], ns[4], t.delta);
        id.gamma = g.add_edge(ns[2], ns[5], t.gamma);
        id.eps = g.add_edge(ns[3], ns[5], t.eps);
        id.tau = g.add_edge(ns[4], ns[5], t.tau);
        ids.push_back(id);
    }
    // connectors: effective mediator after absorbing reversal flips
    std::vector<std::array<int, 4>> conn_edge(grid.vertices.size(), {-1, -1, -1, -1});
    for (const auto& e : grid.edges) {
        int va = PlanarGrid::dart_vertex(e.da), sa = PlanarGrid::dart_slot(e.da);
        int vb = PlanarGrid::dart_vertex(e.db), sb = PlanarGrid::dart_slot(e.db);
        Sig2 m = e.med;
        // exposure variable y relates to the holant variable x by x = bar y
        // on flipped gadget legs (mask bit 3-slot)
        if ((th[static_cast<size_t>(va)].flip_mask >> (3 - sa)) & 1)
            m = Sig2{m.v[2], m.v[3], m.v[0], m.v[1]};
        if ((th[static_cast<size_t>(vb)].flip_mask >> (3 - sb)) & 1)
            m = Sig2{m.v[1], m.v[0], m.v[3], m.v[2]};
        int eu = nodes[static_cast<size_t>(va)][static_cast<size_t>(sa)];
        int ev = nodes[static_cast<size_t>(vb)][static_cast<size_t>(sb)];
        Parity par = parity(m);
        if (par == Parity::Odd) {
            // weighted disequality (0, g01, g10, 0): path of two edges
            int mid = g.add_node();
            int e1 = g.add_edge(eu, mid, m.v[2]);  // eu matched <=> x_u = 1: weight g10
            int e2 = g.add_edge(mid, ev, m.v[1]);
            g.rot[static_cast<size_t>(mid)] = {e1, e2};
            conn_edge[static_cast<size_t>(va)][static_cast<size_t>(sa)] = e1;
            conn_edge[static_cast<size_t>(vb)][static_cast<size_t>(sb)] = e2;
        } else if (par == Parity::Even) {
            // weighted equality (g00, 0, 0, g11): path of three edges
            int m1 = g.add_node(), m2 = g.add_node();
            int e1 = g.add_edge(eu, m1, m.v[3]);
            int e2 = g.add_edge(m1, m2, m.v[0]);
            int e3 = g.add_edge(m2, ev, FieldElem(1));
            g.rot[static_cast<size_t>(m1)] = {e1, e2};
            g.rot[static_cast<size_t>(m2)] = {e2, e3};
            conn_edge[static_cast<size_t>(va)][static_cast<size_t>(sa)] = e1;
            conn_edge[static_cast<size_t>(vb)][static_cast<size_t>(sb)] = e3;
        } else {
            fail("NoRealization", "mediator is neither parity type");
        }
    }
    // rotations: externals and hubs, connector edge inserted at the derived
    // position (ccw lists from the standard drawing)
    for (size_t k = 0; k < grid.vertices.size(); ++k) {
        const auto& ns = nodes[k];
        const auto& id = ids[k];
        const auto& ce = conn_edge[k];
        for (int i = 0; i < 4; ++i)
            if (ce[static_cast<size_t>(i)] < 0) fail("BadGrid", "vertex dart without a connector");
        g.rot[static_cast<size_t>(ns[0])] = {id.p, id.alpha, id.s, ce[0]};
        g.rot[static_cast<size_t>(ns[1])] = {id.q, id.delta, id.p, ce[1]};
        g.rot[static_cast<size_t>(ns[2])] = {ce[2], id.r, id.gamma, id.q};
        g.rot[static_cast<size_t>(ns[3])] = {id.r, ce[3], id.s, id.eps};
        g.rot[static_cast<size_t>(ns[4])] = {id.tau, id.alpha, id.delta};
        g.rot[static_cast<size_t>(ns[5])] = {id.gamma, id.eps, id.tau};
    }
    return count_pm(g);
}

// ---------------------------------------------------------------------------
// Affine instance evaluation: compose witnesses over the dart space, then
// evaluate the quadratic exponential sum by variable elimination.

namespace detail {

struct BigQuad {
    int n = 0;
    int a0 = 0;
    std::vector<int> lin;                 // mod 4
    std::map<std::pair<int, int>, int> cross;  // i<j -> {0,2}

    explicit BigQuad(int vars = 0) : n(vars), lin(static_cast<size_t>(vars), 0) {}
    void add_const(int c) { a0 = ((a0 + c) % 4 + 4) % 4; }
    void add_lin(int i, int c) {
        lin[static_cast<size_t>(i)] = ((lin[static_cast<size_t>(i)] + c) % 4 + 4) % 4;
    }
    void add_cross(int i, int j, int c) {
        if (i == j) {
            add_lin(i, c);
            return;
        }
        if (i > j) std::swap(i, j);
        auto& e = cross[{i, j}];
        e = ((e + c) % 4 + 4) % 4;
        if (e == 0) cross.erase({i, j});
    }
    void add_xor_times(int coeff, const std::vector<int>& vars, int cst) {
        add_const(coeff * cst);
        for (size_t i = 0; i < vars.size(); ++i) {
            add_lin(vars[i], coeff);
            if (cst) add_lin(vars[i], -2 * coeff);
            for (size_t j = i + 1; j < vars.size(); ++j)
                add_cross(vars[i], vars[j], -2 * coeff);
        }
    }
    void add_two_xor_product(const std::vector<int>& v1, int c1, const std::vector<int>& v2,
                             int c2) {
        add_const(2 * c1 * c2);
        for (int p : v1) add_lin(p, 2 * c2);
        for (int r : v2) add_lin(r, 2 * c1);
        for (int p : v1)
            for (int r : v2) add_cross(p, r, 2);
    }
};

// GF(2) affine system over up to 63 variables, rows as bitmasks with the
// constant in bit `nv`.
struct Gf2System {
    int nv;
    std::vector<uint64_t> rows;
    bool add_row(uint64_t row) {  // returns false when inconsistent
        // gaussian insert with leading-bit reduction over variable bits
        for (uint64_t r : rows) {
            uint64_t vr = r & ((1ull << nv) - 1);
            uint64_t vrow = row & ((1ull << nv) - 1);
            if (vr == 0) continue;
            int lead = 63 - __builtin_clzll(vr);
            if ((vrow >> lead) & 1) row ^= r;
        }
        uint64_t vbits = row & ((1ull << nv) - 1);
        if (vbits == 0) return ((row >> nv) & 1) == 0;  // 0 = c
        rows.push_back(row);
        std::sort(rows.begin(), rows.end(), [&](uint64_t a, uint64_t b) {
            return (a & ((1ull << nv) - 1)) > (b & ((1ull << nv) - 1));
        });
        return true;
    }
};

}  // namespace detail

// Evaluate lambda * sum over GF(2)-solutions of i^Q exactly.
inline FieldElem affine_sum(const FieldElem& lambda, const detail::Gf2System& sys,
                            detail::BigQuad q) {
    const int nv = sys.nv;
    // parametrize solutions: find pivots, express x = x0 xor B t
    std::vector<int> pivot_of_row;
    std::vector<bool> is_pivot(static_cast<size_t>(nv), false);
    for (uint64_t r : sys.rows) {
        uint64_t v = r & ((1ull << nv) - 1);
        int lead = 63 - __builtin_clzll(v);
        pivot_of_row.push_back(lead);
        is_pivot[static_cast<size_t>(lead)] = true;
    }
    // back-substitute to reduced echelon form
    std::vector<uint64_t> rows = sys.rows;
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows.size(); ++j)
            if (i != j && ((rows[j] >> pivot_of_row[i]) & 1)) rows[j] ^= rows[i];
    std::vector<int> free_vars;
    for (int v = 0; v < nv; ++v)
        if (!is_pivot[static_cast<size_t>(v)]) free_vars.push_back(v);
    const int k = static_cast<int>(free_vars.size());
    std::vector<int> free_index(static_cast<size_t>(nv), -1);
    for (int t = 0; t < k; ++t) free_index[static_cast<size_t>(free_vars[static_cast<size_t>(t)])] = t;
    // x_v as xor form over t: pivot rows give x_p = c xor sum of free vars
    std::vector<std::vector<int>> expr_vars(static_cast<size_t>(nv));
    std::vector<int> expr_const(static_cast<size_t>(nv), 0);
    for (int v = 0; v < nv; ++v)
        if (free_index[static_cast<size_t>(v)] >= 0)
            expr_vars[static_cast<size_t>(v)] = {free_index[static_cast<size_t>(v)]};
    for (size_t i = 0; i < rows.size(); ++i) {
        int p = pivot_of_row[i];
        expr_const[static_cast<size_t>(p)] = static_cast<int>((rows[i] >> nv) & 1);
        for (int v = 0; v < nv; ++v)
            if (v != p && ((rows[i] >> v) & 1)) {
                if (free_index[static_cast<size_t>(v)] < 0)
                    fail("InternalError", "echelon form leak");
                expr_vars[static_cast<size_t>(p)].push_back(free_index[static_cast<size_t>(v)]);
            }
    }
    // push q through the substitution into t-space
    detail::BigQuad qt(k);
    qt.add_const(q.a0);
    for (int v = 0; v < nv; ++v)
        if (q.lin[static_cast<size_t>(v)])
            qt.add_xor_times(q.lin[static_cast<size_t>(v)], expr_vars[static_cast<size_t>(v)],
                             expr_const[static_cast<size_t>(v)]);
    for (const auto& [ij, c] : q.cross) {
        if (c == 0) continue;
        // c = 2: 2 * x_i * x_j
        qt.add_two_xor_product(expr_vars[static_cast<size_t>(ij.first)],
                               expr_const[static_cast<size_t>(ij.first)],
                               expr_vars[static_cast<size_t>(ij.second)],
                               expr_const[static_cast<size_t>(ij.second)]);
    }
    // eliminate t-variables one by one
    FieldElem total = lambda;
    std::vector<bool> dead(static_cast<size_t>(k), false);
    detail::BigQuad cur = qt;
    for (int rounds = 0; rounds < k; ++rounds) {
        int v = -1;
        for (int x = 0; x < k; ++x)
            if (!dead[static_cast<size_t>(x)]) {
                v = x;
                break;
            }
        if (v < 0) break;
        dead[static_cast<size_t>(v)] = true;
        int a = cur.lin[static_cast<size_t>(v)];
        std::vector<int> ell;
        for (int u = 0; u < k; ++u) {
            if (u == v || dead[static_cast<size_t>(u)]) continue;
            auto it = cur.cross.find({std::min(u, v), std::max(u, v)});
            if (it != cur.cross.end() && it->second == 2) ell.push_back(u);
        }
        // clear v's terms from cur
        cur.lin[static_cast<size_t>(v)] = 0;
        for (int u : ell) cur.cross.erase({std::min(u, v), std::max(u, v)});
        if (a % 2 == 0) {
            int target = (a / 2) % 2;  // need ell(t) = target
            if (ell.empty()) {
                if (target != 0) return FieldElem(0);
                total *= FieldElem(2);
            } else {
                total *= FieldElem(2);
                // substitute t_j = target xor xor(rest)
                int j = ell[0];
                std::vector<int> rest(ell.begin() + 1, ell.end());
                // collect j's terms, then re-add with the substitution
                int aj = cur.lin[static_cast<size_t>(j)];
                cur.lin[static_cast<size_t>(j)] = 0;
                std::vector<std::pair<int, int>> jcross;
                for (auto it = cur.cross.begin(); it != cur.cross.end();) {
                    if (it->first.first == j || it->first.second == j) {
                        int other = it->first.first == j ? it->first.second : it->first.first;
                        jcross.push_back({other, it->second});
                        it = cur.cross.erase(it);
                    } else {
                        ++it;
                    }
                }
                dead[static_cast<size_t>(j)] = true;
                if (aj) cur.add_xor_times(aj, rest, target);
                for (auto [other, cc] : jcross) {
                    if (cc == 0) continue;
                    cur.add_two_xor_product(rest, target, {other}, 0);
                }
            }
        } else {
            // factor (1 + i^a), exponent shift (3a mod 4) * ell(t)
            total *= FieldElem(1) + FieldElem::i().pow(a);
            int coeff = (3 * a) % 4;
            if (!ell.empty()) cur.add_xor_times(coeff, ell, 0);
            // when ell is empty the factor is complete
        }
        if (total.is_zero()) return FieldElem(0);
    }
    total *= FieldElem::i().pow(((cur.a0 % 4) + 4) % 4);
    return total;
}

inline FieldElem eval_affine_instance(const PlanarGrid& grid) {
    const int nv = 2 * static_cast<int>(grid.edges.size());
    if (nv > 62) fail("TooLarge", "affine engine supports up to 31 edges");
    // dart -> variable index (mediator ends)
    std::map<int, int> var_of_dart;
    for (size_t e = 0; e < grid.edges.size(); ++e) {
        var_of_dart[grid.edges[e].da] = static_cast<int>(2 * e);
        var_of_dart[grid.edges[e].db] = static_cast<int>(2 * e + 1);
    }
    detail::Gf2System sys{nv, {}};
    detail::BigQuad q(nv);
    FieldElem lambda(1);
    auto add_witness = [&](SigView sig, const std::vector<int>& vars,
                           const std::string& what) {
        auto w = affine_witness(sig);
        if (!w) fail("NotAffine", "signature is not affine: " + what);
        if (w->lambda.is_zero()) {
            lambda = FieldElem(0);
            return;
        }
        lambda *= w->lambda;
        const int n = sig.arity;
        for (int row : w->constraints) {
            uint64_t r = 0;
            if (row & 1) r |= 1ull << nv;
            for (int i = 0; i < n; ++i)
                if ((row >> (n - i)) & 1) r |= 1ull << vars[static_cast<size_t>(i)];
            if (!sys.add_row(r)) lambda = FieldElem(0);
        }
        q.add_const(w->q.a0);
        for (int i = 0; i < n; ++i)
            q.add_lin(vars[static_cast<size_t>(i)], w->q.lin[static_cast<size_t>(i)]);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                q.add_cross(vars[static_cast<size_t>(i)], vars[static_cast<size_t>(j)],
                            w->q.cross[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    };
    for (size_t k = 0; k < grid.vertices.size(); ++k) {
        std::vector<int> vars;
        for (int s = 0; s < 4; ++s) {
            auto it = var_of_dart.find(4 * static_cast<int>(k) + s);
            if (it == var_of_dart.end()) fail("BadGrid", "dangling dart in instance");
            vars.push_back(it->second);
        }
        add_witness(view(grid.vertices[k].sig), vars, "vertex " + std::to_string(k));
        if (lambda.is_zero()) return FieldElem(0);
    }
    for (size_t e = 0; e < grid.edges.size(); ++e) {
        std::vector<int> vars = {static_cast<int>(2 * e), static_cast<int>(2 * e + 1)};
        add_witness(view(grid.edges[e].med), vars, "mediator " + std::to_string(e));
        if (lambda.is_zero()) return FieldElem(0);
    }
    return affine_sum(lambda, sys, q);
}

// ---------------------------------------------------------------------------
// Product-type instance evaluation.

namespace detail {

struct ProductBlock {
    std::vector<int> vars;  // global variable indices
    int alpha;              // support pattern, bit i = vars[i] (LSB-first)
    FieldElem w_alpha, w_antipode;
};

// value vectors here are LSB-first: index bit i corresponds to var_names[i]
inline bool product_blocks_rec(int arity, const std::vector<FieldElem>& v,
                               const std::vector<int>& var_names,
                               std::vector<ProductBlock>& out) {
    std::vector<int> supp;
    for (int m = 0; m < (1 << arity); ++m)
        if (!v[static_cast<size_t>(m)].is_zero()) supp.push_back(m);
    if (supp.empty()) {
        out.push_back({var_names, 0, FieldElem(0), FieldElem(0)});
        return true;
    }
    if (arity == 0) return true;  // constant absorbed elsewhere (should not occur)
    if (supp.size() == 1 || (supp.size() == 2 && (supp[0] ^ supp[1]) == (1 << arity) - 1)) {
        ProductBlock b;
        b.vars = var_names;
        b.alpha = supp[0];
        b.w_alpha = v[static_cast<size_t>(supp[0])];
        b.w_antipode = supp.size() == 2 ? v[static_cast<size_t>(supp[1])] : FieldElem(0);
        out.push_back(b);
        return true;
    }
    const int full = (1 << arity) - 1;
    for (int smask = 1; smask < full; ++smask) {
        if (smask > (full ^ smask)) continue;
        std::vector<int> sbits, tbits;
        for (int i = 0; i < arity; ++i)
            (((smask >> i) & 1) ? sbits : tbits).push_back(i);
        auto compose = [&](int sa, int ta) {
            int m = 0;
            for (size_t i = 0; i < sbits.size(); ++i)
                if ((sa >> i) & 1) m |= 1 << sbits[i];
            for (size_t i = 0; i < tbits.size(); ++i)
                if ((ta >> i) & 1) m |= 1 << tbits[i];
            return m;
        };
        const int ns = 1 << sbits.size(), nt = 1 << tbits.size();
        int pr = -1, pc = -1;
        for (int rr = 0; rr < ns && pr < 0; ++rr)
            for (int cc = 0; cc < nt; ++cc)
                if (!v[static_cast<size_t>(compose(rr, cc))].is_zero()) {
                    pr = rr;
                    pc = cc;
                    break;
                }
        bool rank1 = true;
        for (int rr = 0; rr < ns && rank1; ++rr)
            for (int cc = 0; cc < nt && rank1; ++cc)
                if (!(v[static_cast<size_t>(compose(rr, cc))] * v[static_cast<size_t>(compose(pr, pc))] ==
                      v[static_cast<size_t>(compose(rr, pc))] * v[static_cast<size_t>(compose(pr, cc))]))
                    rank1 = false;
        if (!rank1) continue;
        std::vector<FieldElem> gv(static_cast<size_t>(ns)), hv(static_cast<size_t>(nt));
        for (int rr = 0; rr < ns; ++rr) gv[static_cast<size_t>(rr)] = v[static_cast<size_t>(compose(rr, pc))];
        FieldElem inv = v[static_cast<size_t>(compose(pr, pc))].inv();
        for (int cc = 0; cc < nt; ++cc) hv[static_cast<size_t>(cc)] = v[static_cast<size_t>(compose(pr, cc))] * inv;
        std::vector<int> gnames, hnames;
        for (int i : sbits) gnames.push_back(var_names[static_cast<size_t>(i)]);
        for (int i : tbits) hnames.push_back(var_names[static_cast<size_t>(i)]);
        std::vector<ProductBlock> tmp;
        if (product_blocks_rec(static_cast<int>(sbits.size()), gv, gnames, tmp) &&
            product_blocks_rec(static_cast<int>(tbits.size()), hv, hnames, tmp)) {
            out.insert(out.end(), tmp.begin(), tmp.end());
            return true;
        }
    }
    return false;
}

}  // namespace detail

inline FieldElem eval_product_instance(const PlanarGrid& grid) {
    const int nv = 2 * static_cast<int>(grid.edges.size());
    std::map<int, int> var_of_dart;
    for (size_t e = 0; e < grid.edges.size(); ++e) {
        var_of_dart[grid.edges[e].da] = static_cast<int>(2 * e);
        var_of_dart[grid.edges[e].db] = static_cast<int>(2 * e + 1);
    }
    std::vector<detail::ProductBlock> blocks;
    auto add_blocks = [&](SigView sig, const std::vector<int>& vars, const std::string& what) {
        // convert to the LSB-first indexing the block machinery uses
        std::vector<FieldElem> v(static_cast<size_t>(sig.size()));
        for (int m = 0; m < sig.size(); ++m) {
            int rev = 0;
            for (int i = 0; i < sig.arity; ++i)
                if ((m >> i) & 1) rev |= 1 << (sig.arity - 1 - i);
            v[static_cast<size_t>(m)] = sig.v[rev];
        }
        std::vector<detail::ProductBlock> out;
        if (!detail::product_blocks_rec(sig.arity, v, vars, out))
            fail("NotProduct", "signature is not product type: " + what);
        blocks.insert(blocks.end(), out.begin(), out.end());
    };
    for (size_t k = 0; k < grid.vertices.size(); ++k) {
        std::vector<int> vars;
        for (int s = 0; s < 4; ++s) {
            auto it = var_of_dart.find(4 * static_cast<int>(k) + s);
            if (it == var_of_dart.end()) fail("BadGrid", "dangling dart in instance");
            vars.push_back(it->second);
        }
        add_blocks(view(grid.vertices[k].sig), vars, "vertex " + std::to_string(k));
    }
    for (size_t e = 0; e < grid.edges.size(); ++e)
        add_blocks(view(grid.edges[e].med),
                   {static_cast<int>(2 * e), static_cast<int>(2 * e + 1)},
                   "mediator " + std::to_string(e));

    // union-find with parity over variables plus a ground node
    const int ground = nv;
    std::vector<int> parent(static_cast<size_t>(nv + 1));
    std::vector<int> par(static_cast<size_t>(nv + 1), 0);  // parity to parent
    for (int i = 0; i <= nv; ++i) parent[static_cast<size_t>(i)] = i;
    std::function<std::pair<int, int>(int)> find = [&](int x) -> std::pair<int, int> {
        if (parent[static_cast<size_t>(x)] == x) return {x, 0};
        auto [r, p] = find(parent[static_cast<size_t>(x)]);
        parent[static_cast<size_t>(x)] = r;
        par[static_cast<size_t>(x)] ^= p;
        return {r, par[static_cast<size_t>(x)]};
    };
    bool contradiction = false;
    auto unite = [&](int a, int b, int parity_ab) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if ((pa ^ pb) != parity_ab) contradiction = true;
            return;
        }
        parent[static_cast<size_t>(ra)] = rb;
        par[static_cast<size_t>(ra)] = pa ^ pb ^ parity_ab;
    };
    for (const auto& b : blocks) {
        if (b.w_alpha.is_zero() && b.w_antipode.is_zero()) return FieldElem(0);
        const int n = static_cast<int>(b.vars.size());
        if (b.w_antipode.is_zero()) {
            // pinned block: tie every variable to ground with its alpha bit
            for (int i = 0; i < n; ++i)
                unite(b.vars[static_cast<size_t>(i)], ground, (b.alpha >> i) & 1);
        } else {
            for (int i = 1; i < n; ++i) {
                int bit0 = b.alpha & 1;
                int biti = (b.alpha >> i) & 1;
                unite(b.vars[0], b.vars[static_cast<size_t>(i)], bit0 ^ biti);
            }
        }
    }
    if (contradiction) return FieldElem(0);
    // per component, accumulate the two orientation weights
    std::map<int, std::pair<FieldElem, FieldElem>> comp;  // root -> (W0, W1)
    auto touch = [&](int root) {
        if (!comp.count(root)) comp[root] = {FieldElem(1), FieldElem(1)};
    };
    auto [groot, gpar] = find(ground);
    touch(groot);
    for (const auto& b : blocks) {
        if (b.vars.empty()) continue;
        auto [root, p0] = find(b.vars[0]);
        touch(root);
        int bit0 = b.alpha & 1;
        // when the root variable takes value r, variable0 = r xor p0; the
        // block weight is w_alpha if variable0 == bit0 else w_antipode
        FieldElem w_if_root0 = ((0 ^ p0) == bit0) ? b.w_alpha : b.w_antipode;
        FieldElem w_if_root1 = ((1 ^ p0) == bit0) ? b.w_alpha : b.w_antipode;
        comp[root].first *= w_if_root0;
        comp[root].second *= w_if_root1;
    }
    FieldElem total(1);
    for (auto& [root, w] : comp) {
        if (root == groot) {
            // ground is fixed to 0, so the root is fixed to gpar
            total *= (gpar == 0) ? w.first : w.second;
        } else {
            total *= w.first + w.second;
        }
    }
    return total;
}

}  // namespace ev8
