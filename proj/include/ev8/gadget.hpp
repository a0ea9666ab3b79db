#pragma once

// Gadget constructions: connection through double disequality, loops,
// binary modification, chains, and the even-coloring parameter maps.
// Every GadgetExpr evaluates symbolically (matrix products) and compiles to
// a gadget graph whose brute-force contraction must agree exactly.

#include <memory>

#include "grid.hpp"

namespace ev8 {

// --- symbolic operations ---------------------------------------------------

// Connect x4, x3 of f1 with x1, x2 of f2, all through NEQ2:
// M(f3) = M(f1) N M(f2).
inline Sig4 connect(const Sig4& f1, const Sig4& f2) {
    return Sig4::from_matrix(f1.matrix() * mat_N() * f2.matrix());
}

enum class LoopPair { X1X2, X3X4 };

// Loop a binary signature g onto a pair of adjacent variables of f (two NEQ2
// mediators through g).  The honest contraction is used for every g; the
// direct-connect shortcut may be requested only when g00 = g11.
inline Sig2 loop(const Sig4& f, LoopPair pair, const Sig2& g, bool shortcut = false) {
    if (shortcut && !(g.v[0] == g.v[3]))
        fail("PreconditionViolated", "loop shortcut needs g00 = g11");
    Sig2 h;
    if (pair == LoopPair::X3X4) {
        // h(x1,x2) = sum_{x3,x4} f(x1,x2,x3,x4) g(bar x4, bar x3)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int x2 = 0; x2 < 2; ++x2) {
                FieldElem s(0);
                for (int x3 = 0; x3 < 2; ++x3)
                    for (int x4 = 0; x4 < 2; ++x4)
                        s += f.at(x1, x2, x3, x4) * g.v[static_cast<size_t>((1 - x4) * 2 + (1 - x3))];
                h.v[static_cast<size_t>(x1 * 2 + x2)] = s;
            }
    } else {
        // h(x4,x3) = sum_{x1,x2} f(x1,x2,x3,x4) g(bar x1, bar x2)
        for (int x4 = 0; x4 < 2; ++x4)
            for (int x3 = 0; x3 < 2; ++x3) {
                FieldElem s(0);
                for (int x1 = 0; x1 < 2; ++x1)
                    for (int x2 = 0; x2 < 2; ++x2)
                        s += f.at(x1, x2, x3, x4) * g.v[static_cast<size_t>((1 - x1) * 2 + (1 - x2))];
                h.v[static_cast<size_t>(x4 * 2 + x3)] = s;
            }
    }
    return h;
}

// Binary modification at variable i (1..4): connect x_i of f to x_t of g by
// NEQ2; the new external variable is g's x_s.
inline Sig4 binary_modify(const Sig4& f, int var, const Sig2& g) {
    if (var < 1 || var > 4) fail("BadVar", "variable index must be 1..4");
    Sig4 r;
    for (int m = 0; m < 16; ++m) {
        int bitpos = 4 - var;  // x1 is the top bit
        int y = (m >> bitpos) & 1;
        FieldElem s(0);
        for (int u = 0; u < 2; ++u) {
            int fm = (m & ~(1 << bitpos)) | (u << bitpos);
            s += f.v[static_cast<size_t>(fm)] * g.v[static_cast<size_t>(y * 2 + (1 - u))];
        }
        r.v[static_cast<size_t>(m)] = s;
    }
    return r;
}

// Chain of 2s+1 copies with odd-indexed copies rotated a quarter turn:
// M = (M(f^{pi/2}) N M(f) N)^s M(f^{pi/2}).
inline Sig4 chain(const Sig4& f, int s) {
    if (s < 0) fail("BadVar", "chain length must be nonnegative");
    Mat4 rot = f.rotate(1).matrix(), n = mat_N();
    Mat4 step = rot * n * f.matrix() * n;
    Mat4 acc = rot;
    for (int k = 0; k < s; ++k) acc = step * acc;
    return Sig4::from_matrix(acc);
}

// --- even-coloring parameter maps (symmetric family (b,c,d,a)) --------------

enum class EvenColoringMap { Z, HZ };

inline std::array<FieldElem, 4> even_coloring_map(const std::array<FieldElem, 4>& bcda,
                                                  EvenColoringMap which) {
    static const int MZ[4][4] = {{1, -1, 1, -1}, {-1, 1, 1, -1}, {1, 1, 1, 1}, {1, 1, -1, -1}};
    static const int MHZ[4][4] = {{1, -1, 1, 1}, {-1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -1, 1}};
    const auto& M = (which == EvenColoringMap::Z) ? MZ : MHZ;
    std::array<FieldElem, 4> out;
    FieldElem half(Q(1, 2));
    for (int i = 0; i < 4; ++i) {
        FieldElem s(0);
        for (int j = 0; j < 4; ++j) s += FieldElem(M[i][j]) * bcda[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = half * s;
    }
    return out;
}

// Apply the map to a full arrow-symmetric signature.
inline Sig4 even_coloring_transform(const Sig4& f, EvenColoringMap which) {
    EightV p = eightv_params(f);
    if (!(p.a == p.x && p.b == p.y && p.c == p.z && p.d == p.w))
        fail("PreconditionViolated", "even-coloring map needs the arrow-symmetric family");
    auto [b2, c2, d2, a2] = even_coloring_map({p.b, p.c, p.d, p.a}, which);
    return make_eight_vertex({a2, b2, c2, d2, d2, a2, b2, c2});
}

// --- expression trees --------------------------------------------------------

struct GadgetExpr;
using GadgetPtr = std::shared_ptr<const GadgetExpr>;

struct GadgetExpr {
    enum class Kind { Leaf, Rotate, Connect, Loop, BinaryModify, Chain };
    Kind kind;
    Sig4 leaf;
    GadgetPtr a, b;
    int k = 0;  // turns / variable index / chain length
    Sig2 g;
    LoopPair pair = LoopPair::X3X4;
    bool shortcut = false;
};

inline GadgetPtr gd_leaf(const Sig4& f) {
    auto e = std::make_shared<GadgetExpr>();
    e->kind = GadgetExpr::Kind::Leaf;
    e->leaf = f;
    return e;
}
inline GadgetPtr gd_rotate(GadgetPtr a, int k) {
    auto e = std::make_shared<GadgetExpr>();
    e->kind = GadgetExpr::Kind::Rotate;
    e->a = std::move(a);
    e->k = ((k % 4) + 4) % 4;
    return e;
}
inline GadgetPtr gd_connect(GadgetPtr a, GadgetPtr b) {
    auto e = std::make_shared<GadgetExpr>();
    e->kind = GadgetExpr::Kind::Connect;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}
inline GadgetPtr gd_loop(GadgetPtr a, LoopPair pair, const Sig2& g, bool shortcut = false) {
    auto e = std::make_shared<GadgetExpr>();
    e->kind = GadgetExpr::Kind::Loop;
    e->a = std::move(a);
    e->pair = pair;
    e->g = g;
    e->shortcut = shortcut;
    return e;
}
inline GadgetPtr gd_bmod(GadgetPtr a, int var, const Sig2& g) {
    auto e = std::make_shared<GadgetExpr>();
    e->kind = GadgetExpr::Kind::BinaryModify;
    e->a = std::move(a);
    e->k = var;
    e->g = g;
    return e;
}
inline GadgetPtr gd_chain(GadgetPtr a, int s) {
    auto e = std::make_shared<GadgetExpr>();
    e->kind = GadgetExpr::Kind::Chain;
    e->a = std::move(a);
    e->k = s;
    return e;
}

struct GadgetValue {
    int arity;  // 2 or 4
    Sig4 s4;
    Sig2 s2;
};

inline GadgetValue eval_gadget(const GadgetPtr& e) {
    switch (e->kind) {
        case GadgetExpr::Kind::Leaf:
            return {4, e->leaf, {}};
        case GadgetExpr::Kind::Rotate: {
            GadgetValue v = eval_gadget(e->a);
            if (v.arity != 4) fail("BadGadget", "rotate needs an arity-4 operand");
            return {4, v.s4.rotate(e->k), {}};
        }
        case GadgetExpr::Kind::Connect: {
            GadgetValue va = eval_gadget(e->a), vb = eval_gadget(e->b);
            if (va.arity != 4 || vb.arity != 4)
                fail("BadGadget", "connect needs arity-4 operands");
            return {4, connect(va.s4, vb.s4), {}};
        }
        case GadgetExpr::Kind::Loop: {
            GadgetValue v = eval_gadget(e->a);
            if (v.arity != 4) fail("BadGadget", "loop needs an arity-4 operand");
            return {2, {}, loop(v.s4, e->pair, e->g, e->shortcut)};
        }
        case GadgetExpr::Kind::BinaryModify: {
            GadgetValue v = eval_gadget(e->a);
            if (v.arity != 4) fail("BadGadget", "binary modification needs arity 4");
            return {4, binary_modify(v.s4, e->k, e->g), {}};
        }
        case GadgetExpr::Kind::Chain: {
            GadgetValue v = eval_gadget(e->a);
            if (v.arity != 4) fail("BadGadget", "chain needs an arity-4 operand");
            return {4, chain(v.s4, e->k), {}};
        }
    }
    fail("BadGadget", "unknown expression kind");
}

// --- compilation to gadget graphs -------------------------------------------

namespace detail {

struct Compiled {
    PlanarGrid grid;       // with danglings unset; we track them separately
    std::vector<int> ext;  // external darts in variable order
};

inline Compiled compile_rec(const GadgetPtr& e) {
    switch (e->kind) {
        case GadgetExpr::Kind::Leaf: {
            Compiled c;
            int v = c.grid.add_vertex(e->leaf);
            c.ext = {4 * v + 0, 4 * v + 1, 4 * v + 2, 4 * v + 3};
            return c;
        }
        case GadgetExpr::Kind::Rotate: {
            Compiled c = compile_rec(e->a);
            if (c.ext.size() != 4) fail("BadGadget", "rotate needs arity 4");
            std::vector<int> ext(4);
            // one turn: new x1 is the old x2
            for (int j = 0; j < 4; ++j) ext[static_cast<size_t>(j)] = c.ext[static_cast<size_t>((j + e->k) % 4)];
            c.ext = ext;
            return c;
        }
        case GadgetExpr::Kind::Connect: {
            Compiled ca = compile_rec(e->a), cb = compile_rec(e->b);
            if (ca.ext.size() != 4 || cb.ext.size() != 4)
                fail("BadGadget", "connect needs arity 4");
            int off = 4 * static_cast<int>(ca.grid.vertices.size());
            for (const auto& v : cb.grid.vertices) ca.grid.vertices.push_back(v);
            for (auto ed : cb.grid.edges) {
                ed.da += off;
                ed.db += off;
                ca.grid.edges.push_back(ed);
            }
            std::vector<int> bext;
            for (int d : cb.ext) bext.push_back(d + off);
            ca.grid.edges.push_back({ca.ext[3], bext[0], "NEQ2", Sig2::neq2()});
            ca.grid.edges.push_back({ca.ext[2], bext[1], "NEQ2", Sig2::neq2()});
            ca.ext = {ca.ext[0], ca.ext[1], bext[2], bext[3]};
            return ca;
        }
        case GadgetExpr::Kind::Loop: {
            Compiled c = compile_rec(e->a);
            if (c.ext.size() != 4) fail("BadGadget", "loop needs arity 4");
            if (e->shortcut && !(e->g.v[0] == e->g.v[3]))
                fail("PreconditionViolated", "loop shortcut needs g00 = g11");
            // composite mediator m(u, v) = g(bar u, bar v)
            Sig2 m{e->g.v[3], e->g.v[2], e->g.v[1], e->g.v[0]};
            if (e->pair == LoopPair::X3X4) {
                c.grid.edges.push_back({c.ext[3], c.ext[2], "loopmed", m});
                c.ext = {c.ext[0], c.ext[1]};
            } else {
                c.grid.edges.push_back({c.ext[0], c.ext[1], "loopmed", m});
                c.ext = {c.ext[3], c.ext[2]};
            }
            return c;
        }
        case GadgetExpr::Kind::BinaryModify: {
            // desugar: rotate so the variable sits at x1, attach the helper
            // A(y1, y2, s, t) = g(y1, t) * [y2 != s], connect, rotate back
            int i = e->k;
            Sig4 helper;
            for (int m = 0; m < 16; ++m) {
                int y1 = (m >> 3) & 1, y2 = (m >> 2) & 1, s = (m >> 1) & 1, t = m & 1;
                if (y2 == s) continue;
                helper.v[static_cast<size_t>(m)] = e->g.v[static_cast<size_t>(y1 * 2 + t)];
            }
            GadgetPtr desugared = gd_rotate(
                gd_connect(gd_leaf(helper), gd_rotate(e->a, i - 1)), -(i - 1));
            return compile_rec(desugared);
        }
        case GadgetExpr::Kind::Chain: {
            GadgetPtr cur = gd_rotate(e->a, 1);
            for (int s = 0; s < e->k; ++s)
                cur = gd_connect(gd_rotate(e->a, 1), gd_connect(e->a, cur));
            return compile_rec(cur);
        }
    }
    fail("BadGadget", "unknown expression kind");
}

}  // namespace detail

inline PlanarGrid compile_gadget(const GadgetPtr& e) {
    detail::Compiled c = detail::compile_rec(e);
    c.grid.danglings = c.ext;
    return c.grid;
}

// Contract the compiled gadget graph and compare with the symbolic value.
inline bool gadget_matches_contraction(const GadgetPtr& e, int cap = 40) {
    GadgetValue sym = eval_gadget(e);
    PlanarGrid g = compile_gadget(e);
    auto vals = contract_gadget(g, cap);
    if (sym.arity == 4) {
        if (vals.size() != 16) return false;
        for (size_t m = 0; m < 16; ++m)
            if (vals[m] != sym.s4.v[m]) return false;
        return true;
    }
    if (vals.size() != 4) return false;
    for (size_t m = 0; m < 4; ++m)
        if (vals[m] != sym.s2.v[m]) return false;
    return true;
}

// --- the named construction table -------------------------------------------
// Concrete lemma-level constructions used across the test suite; each entry
// carries a gadget and its independently stated expected value.

struct NamedGadget {
    std::string name;
    GadgetPtr expr;             // null when the gadget is a raw graph
    PlanarGrid raw;             // used when expr is null
    GadgetValue expected;       // from the displayed closed forms
};

namespace detail {
inline Sig4 ev(int a, int b, int c, int d, int w, int x, int y, int z) {
    return make_eight_vertex({FieldElem(a), FieldElem(b), FieldElem(c), FieldElem(d),
                              FieldElem(w), FieldElem(x), FieldElem(y), FieldElem(z)});
}
inline GadgetValue val4(const Sig4& f) { return {4, f, {}}; }
inline GadgetValue val2(const Sig2& g) { return {2, {}, g}; }
}  // namespace detail

inline std::vector<NamedGadget> named_gadget_table() {
    using detail::ev;
    using detail::val2;
    using detail::val4;
    std::vector<NamedGadget> t;
    auto F = [](const EightV& p) { return make_eight_vertex(p); };

    {  // connect with the half-rotated copy: M(f) N M(f^pi)
        int b = 2, c = 3, d = 5, w = 7;
        Sig4 f = ev(1, b, c, d, w, 1, 0, 0);
        GadgetPtr e = gd_connect(gd_leaf(f), gd_rotate(gd_leaf(f), 2));
        Sig4 expect = F({FieldElem(2 * b), FieldElem(1), FieldElem(c * w),
                         FieldElem(c * c + d * d), FieldElem(w * w), FieldElem(0),
                         FieldElem(1), FieldElem(c * w)});
        t.push_back({"connect_half_rotated_pair", e, {}, val4(expect)});
    }
    {  // crossover absorbs one disequality: M(S) N M(f) = M(S') M(f)
        Sig4 f = ev(1, -2, 3, 4, 5, 6, 7, 8);
        GadgetPtr e = gd_connect(gd_leaf(sig_S()), gd_leaf(f));
        t.push_back({"crossover_absorbs_neq", e, {},
                     val4(Sig4::from_matrix(sig_SPRIME().matrix() * f.matrix()))});
    }
    {  // connecting the disequality crossover permutes f: M(f) N M(S') = M(f) M(S)
        Sig4 f = ev(1, -2, 3, 4, 5, 6, 7, 8);
        GadgetPtr e = gd_connect(gd_leaf(f), gd_leaf(sig_SPRIME()));
        t.push_back({"connect_disequality_crossover", e, {},
                     val4(Sig4::from_matrix(f.matrix() * sig_S().matrix()))});
    }
    {  // loop on (x3,x4): (0, c+d, w+z, 0)
        Sig4 f = ev(1, 2, 3, 5, 7, 1, 2, 11);
        GadgetPtr e = gd_loop(gd_leaf(f), LoopPair::X3X4, Sig2::neq2());
        t.push_back({"loop_x3x4_inner_sums", e, {},
                     val2(Sig2{0, FieldElem(3 + 5), FieldElem(7 + 11), 0})});
    }
    {  // loop on (x1,x2): (0, c+w, d+z, 0)
        Sig4 f = ev(1, 2, 3, 5, 7, 1, 2, 11);
        GadgetPtr e = gd_loop(gd_leaf(f), LoopPair::X1X2, Sig2::neq2());
        t.push_back({"loop_x1x2_inner_sums", e, {},
                     val2(Sig2{0, FieldElem(3 + 7), FieldElem(5 + 11), 0})});
    }
    {  // loop on the symmetric-disequality family: (c+d)(0,1,-1,0)
        int b = 2, c = 3, d = 5;
        Sig4 f = F({FieldElem(1), FieldElem(b), FieldElem(c), FieldElem(d), FieldElem(-d),
                    FieldElem(1), FieldElem(-b), FieldElem(-c)});
        GadgetPtr e = gd_loop(gd_leaf(f), LoopPair::X3X4, Sig2::neq2());
        t.push_back({"loop_symmetric_disequality", e, {},
                     val2(Sig2{0, FieldElem(c + d), FieldElem(-(c + d)), 0})});
    }
    {  // rotated chain with s=1: entries (2s+1)k
        int k = 3;
        Sig4 f = F({FieldElem(1), FieldElem(k), FieldElem(k), FieldElem(1), FieldElem(1),
                    FieldElem(1), FieldElem(0), FieldElem(0)});
        GadgetPtr e = gd_chain(gd_leaf(f), 1);
        Sig4 expect = F({FieldElem(1), FieldElem(0), FieldElem(3 * k), FieldElem(1),
                         FieldElem(1), FieldElem(1), FieldElem(3 * k), FieldElem(0)});
        t.push_back({"chain_rotated_s1", e, {}, val4(expect)});
    }
    {  // zero-length chain is a single quarter turn
        Sig4 f = ev(1, 2, 3, 5, 7, 11, 13, 17);
        t.push_back({"chain_s0_quarter_turn", gd_chain(gd_leaf(f), 0), {},
                     val4(f.rotate(1))});
    }
    {  // plain chain of 3 copies of the inner-swap signature: d^3
        FieldElem d(5);
        Sig4 f = F({1, 0, 0, d, d, 1, 0, 0});
        GadgetPtr e = gd_connect(gd_leaf(f), gd_connect(gd_leaf(f), gd_leaf(f)));
        Sig4 expect = F({1, 0, 0, d * d * d, d * d * d, 1, 0, 0});
        t.push_back({"chain_plain_inner_swap_cubed", e, {}, val4(expect)});
    }
    {  // binary modification scales the x1 = 1 entries
        Sig4 f = ev(1, 2, 3, 5, 7, 11, 13, 17);
        FieldElem tt(4);
        GadgetPtr e = gd_bmod(gd_leaf(f), 1, Sig2::weighted_neq(tt));
        Sig4 expect = F({FieldElem(1), FieldElem(2), FieldElem(3), FieldElem(5),
                         tt * FieldElem(7), tt * FieldElem(11), tt * FieldElem(13),
                         tt * FieldElem(17)});
        t.push_back({"bmod_x1_scales_upper_rows", e, {}, val4(expect)});
    }
    {  // binary modification on x3
        Sig4 f = ev(1, 2, 3, 5, 7, 11, 13, 17);
        FieldElem tt(-3);
        GadgetPtr e = gd_bmod(gd_leaf(f), 3, Sig2::weighted_neq(tt));
        Sig4 expect = F({FieldElem(1), tt * FieldElem(2), tt * FieldElem(3), FieldElem(5),
                         tt * FieldElem(7), tt * FieldElem(11), FieldElem(13),
                         FieldElem(17)});
        t.push_back({"bmod_x3_scales", e, {}, val4(expect)});
    }
    {  // inverse binary modification is the identity
        Sig4 f = ev(1, 2, 3, 5, 7, 11, 13, 17);
        FieldElem tt(Q(3, 2));
        GadgetPtr e = gd_bmod(gd_bmod(gd_leaf(f), 2, Sig2::weighted_neq(tt)), 2,
                              Sig2::weighted_neq(tt.inv()));
        t.push_back({"bmod_inverse_identity", e, {}, val4(f)});
    }
    {  // degenerate-inner hardening chain ending in a redundant signature
        FieldElem a(1), b(3), y(5), c(2), d(7);
        FieldElem k(4);  // inner matrix rows (c, d), (ck, dk)
        Sig4 f = F({a, b, c, d, c * k, a, y, d * k});
        GadgetPtr base = gd_leaf(f);
        GadgetPtr f1 = gd_bmod(base, 1, Sig2::weighted_neq(k.inv()));
        GadgetPtr f2 = gd_bmod(f1, 3, Sig2::weighted_neq(d / c));
        Sig4 expect = F({a, b * d / c, d, d, d, a * d / (k * c), y / k, d});
        t.push_back({"degenerate_inner_to_redundant", f2, {}, val4(expect)});
    }
    {  // quarter-turn modification then connect (N = 1 hardness step), t = 2
        FieldElem b(2), c(3), d(5), w(7), y(11), tt(2);
        Sig4 f = F({1, b, c, d, w, 1, y, 0});
        GadgetPtr ft = gd_bmod(gd_rotate(gd_leaf(f), 1), 4, Sig2::weighted_neq(tt));
        GadgetPtr e = gd_connect(ft, gd_rotate(gd_leaf(f), 3));
        Sig4 expect = F({FieldElem(0), FieldElem(1), b * d + tt * w * y,
                         b * b + tt * w * w, d * d + tt * y * y, c + c * tt, tt,
                         b * d + tt * w * y});
        t.push_back({"quarter_mod_connect", e, {}, val4(expect)});
    }
    {  // three-copy chain on the opposite-pairs family (closed form asserted in tests)
        FieldElem b(2), d = FieldElem::i();
        Sig4 f = F({1, b, -b, d, -d, 1, -b, b});
        GadgetPtr e = gd_connect(gd_leaf(f), gd_connect(gd_rotate(gd_leaf(f), 2), gd_leaf(f)));
        t.push_back({"three_chain_opposite_pairs", e, {}, eval_gadget(e)});
    }
    {  // unit-circle step: inner of M(f) N M(f^pi) for the Moebius form
        FieldElem lam(Q(1, 2));
        FieldElem eitheta = FieldElem::i();
        Sig4 f = F({FieldElem(1), FieldElem(2), eitheta, eitheta * lam, lam.conj(),
                    FieldElem(1), FieldElem(3), FieldElem(1)});
        GadgetPtr e = gd_connect(gd_leaf(f), gd_rotate(gd_leaf(f), 2));
        t.push_back({"mobius_step_inner_block", e, {}, eval_gadget(e)});
    }
    {  // boxtimes: square of four copies plus a fifth at the diagonal
       // crossing (f is itself crossover-supported, keeping the gadget planar)
        FieldElem d(3);
        Sig4 f = F({1, 0, 0, d, d, 1, 0, 0});
        PlanarGrid g;
        for (int v = 0; v < 5; ++v) g.add_vertex(f);  // 0..3 corners, 4 center
        // corner slots: 0 dangling, 1 side to next, 2 half-diagonal, 3 side to prev
        g.add_edge(0, 1, 1, 3);  // side 0-1
        g.add_edge(1, 1, 2, 3);  // side 1-2
        g.add_edge(2, 1, 3, 3);  // side 2-3
        g.add_edge(3, 1, 0, 3);  // side 3-0
        for (int v = 0; v < 4; ++v) g.add_edge(v, 2, 4, v);  // half-diagonals
        g.danglings = {0, 4, 8, 12};
        FieldElem two_d2 = FieldElem(2) * d * d;
        FieldElem dd5 = d + d.pow(5);
        Sig4 expect = F({two_d2, 0, 0, dd5, dd5, two_d2, 0, 0});
        t.push_back({"boxtimes_crossover_square", nullptr, g, val4(expect)});
    }
    {  // equality tensor from three copies of the corner signature
        FieldElem w(2);
        Sig4 h = F({1, 1, 0, 0, w * w, 1, 1, 0});
        GadgetPtr e = gd_connect(gd_leaf(h), gd_connect(gd_rotate(gd_leaf(h), 1), gd_leaf(h)));
        Sig4 expect;
        expect.v[0b0000] = FieldElem(2);
        expect.v[0b0011] = FieldElem(2);
        expect.v[0b1100] = FieldElem(2);
        expect.v[0b1111] = FieldElem(2);
        t.push_back({"equality_tensor_from_corners", e, {}, val4(expect)});
    }
    return t;
}

}  // namespace ev8
