#pragma once

// The complexity classifier for Pl-Holant(neq2 | f) over eight-vertex-form
// signatures: a decision tree of exact field criteria.  Output is a label
// plus a certificate trace naming the rule that fired; Unresolved is a
// first-class outcome carrying the residual condition (the classifier is
// sound, and complete on the explicitly-criterioned families).

#include "evalengine.hpp"
#include "lattice.hpp"

namespace ev8 {

enum class Label { GeneralTractable, PlanarTractable, PlanarHard, Unresolved };

inline const char* label_name(Label l) {
    switch (l) {
        case Label::GeneralTractable: return "GeneralTractable";
        case Label::PlanarTractable: return "PlanarTractable";
        case Label::PlanarHard: return "PlanarHard";
        case Label::Unresolved: return "Unresolved";
    }
    return "?";
}

enum class EngineHint { None, Product, Affine, Matchgate, Brute };

struct CertEntry {
    std::string rule;       // stable rule id
    std::string condition;  // the condition that fired, in parameter terms
    std::string witness;    // transform or value witness, when one exists
};

struct ClassLabel {
    Label label = Label::Unresolved;
    std::vector<CertEntry> certificate;
    std::string residual;  // set for Unresolved
    // engine backing for tractable labels: evaluate check_sig with check_med
    // mediators and compare against brute force.  Hint Brute compares two
    // brute evaluations (check_sig vs check_sig2), used by the combinatorial
    // transformation boundaries.
    EngineHint engine = EngineHint::None;
    Sig4 check_sig;
    Sig2 check_med = Sig2::neq2();
    Sig4 check_sig2;
    Sig2 check_med2 = Sig2::neq2();

    static ClassLabel make(Label l, std::string rule, std::string cond,
                           std::string witness = "") {
        ClassLabel r;
        r.label = l;
        r.certificate.push_back({std::move(rule), std::move(cond), std::move(witness)});
        return r;
    }
    static ClassLabel unresolved(std::string rule, std::string cond, std::string residual) {
        ClassLabel r = make(Label::Unresolved, std::move(rule), std::move(cond));
        r.residual = std::move(residual);
        return r;
    }
    ClassLabel& backed(EngineHint e, const Sig4& sig, const Sig2& med = Sig2::neq2()) {
        engine = e;
        check_sig = sig;
        check_med = med;
        return *this;
    }
    ClassLabel& backed_pair(const Sig4& sig1, const Sig2& med1, const Sig4& sig2,
                            const Sig2& med2) {
        engine = EngineHint::Brute;
        check_sig = sig1;
        check_med = med1;
        check_sig2 = sig2;
        check_med2 = med2;
        return *this;
    }
    ClassLabel& also(std::string rule, std::string cond, std::string witness = "") {
        certificate.push_back({std::move(rule), std::move(cond), std::move(witness)});
        return *this;
    }
};

using EightVertexParams = EightV;

namespace detail {

inline std::optional<int> zeta8_exponent(const FieldElem& x) {
    for (int k = 0; k < 8; ++k)
        if (x == zeta8_pow(k)) return k;
    return std::nullopt;
}

inline ClassLabel backed_by_transform(ClassLabel r, EngineHint engine, const Sig4& canonical,
                                      const Transform2& t) {
    Mat4 ti2 = tensor2(t.tinv, t.tinv);
    Mat4 ti2t = tensor2(t.tinv.transpose(), t.tinv.transpose());
    Sig4 g = Sig4::from_matrix(ti2 * canonical.matrix() * ti2t);
    Sig2 med = transform_sig2_row(Sig2::neq2(), t.t);
    return r.backed(engine, g, med);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Six-vertex classifier (corners zero).

inline ClassLabel classify_six_vertex(const FieldElem& b, const FieldElem& c,
                                      const FieldElem& d, const FieldElem& w,
                                      const FieldElem& y, const FieldElem& z) {
    Sig4 f = make_eight_vertex({FieldElem(0), b, c, d, w, FieldElem(0), y, z});
    if (is_product(f))
        return ClassLabel::make(Label::GeneralTractable, "six-vertex/product",
                                "signature is product type")
            .backed(EngineHint::Product, f);
    if (is_affine(f))
        return ClassLabel::make(Label::GeneralTractable, "six-vertex/affine",
                                "signature is affine")
            .backed(EngineHint::Affine, f);
    bool zero_each_pair = (b.is_zero() || y.is_zero()) && (c.is_zero() || z.is_zero()) &&
                          (d.is_zero() || w.is_zero());
    if (zero_each_pair)
        return ClassLabel::make(Label::GeneralTractable, "six-vertex/zero-in-each-pair",
                                "each of (b,y), (c,z), (d,w) has a zero");
    if (is_matchgate(f))
        return ClassLabel::make(Label::PlanarTractable, "six-vertex/matchgate",
                                "by = cz - dw")
            .backed(EngineHint::Matchgate, f);
    if (is_matchgate_hat(f))
        return detail::backed_by_transform(
            ClassLabel::make(Label::PlanarTractable, "six-vertex/matchgate-hat",
                             "H-transformed signature is a matchgate", "H"),
            EngineHint::Matchgate, f, make_transform(mat_H(), "H"));
    if (d.is_zero() && w.is_zero()) {
        FieldElem by = b * y, cz = c * z;
        if (by * by == cz * cz)
            return ClassLabel::make(Label::PlanarTractable, "six-vertex/squared-products",
                                    "(by)^2 = (cz)^2");
        if (!b.is_zero()) {
            auto ya = detail::zeta8_exponent(y / b);
            auto cb = detail::zeta8_exponent(c / b);
            auto zb = detail::zeta8_exponent(z / b);
            if (ya && *ya % 2 == 0 && cb && zb && (*cb - *zb) % 2 == 0)
                return ClassLabel::make(Label::PlanarTractable, "six-vertex/zeta-powers",
                                        "y/b in mu4, c/b and z/b zeta8 powers of equal parity");
        }
    }
    return ClassLabel::make(Label::PlanarHard, "six-vertex/hard",
                            "outside every six-vertex tractable case");
}

// ---------------------------------------------------------------------------
// Trigger binary: a gadget-realized (0,1,t,0) with t != +-1 whenever the
// signature is not arrow symmetric up to a global sign.

struct TriggerBinary {
    FieldElem t;
    GadgetPtr witness;  // evaluates to a nonzero multiple of (0,1,t,0)
};

namespace detail {

inline bool trigger_is_generic(const FieldElem& t) {
    if (t.is_zero()) return false;
    FieldElem tp(1);
    for (int k = 1; k <= 4; ++k) {
        tp *= t;
        if (tp == FieldElem(1)) return false;
    }
    return true;
}

}  // namespace detail

// Collects every loop-realizable weighted disequality across all rotations
// and prefers a t with t, t^2, ..., t^5 pairwise distinct (the generic
// interpolation trigger); falls back to any t outside {1, -1}.
inline std::optional<TriggerBinary> trigger_binary(const EightVertexParams& p) {
    Sig4 f0 = make_eight_vertex(p);
    for (int eps : {1, -1}) {
        FieldElem e(eps);
        if (p.b == e * p.y && p.c == e * p.z && p.d == e * p.w) return std::nullopt;
    }
    std::vector<TriggerBinary> found;
    auto consider = [&](const Sig2& h, const GadgetPtr& expr) {
        if (!h.v[0].is_zero() || !h.v[3].is_zero()) return;
        if (!h.v[1].is_zero()) {
            FieldElem t = h.v[2] / h.v[1];
            if (!(t == FieldElem(1)) && !(t == FieldElem(-1))) found.push_back({t, expr});
        } else if (!h.v[2].is_zero()) {
            found.push_back({FieldElem(0), expr});  // rotated reading (0,1,0,0)
        }
    };
    for (int rot = 0; rot < 4; ++rot) {
        Sig4 f = f0.rotate(rot);
        GadgetPtr leaf = gd_rotate(gd_leaf(f0), rot);
        std::vector<Sig2> loops;
        for (LoopPair pair : {LoopPair::X3X4, LoopPair::X1X2}) {
            Sig2 h = loop(f, pair, Sig2::neq2());
            consider(h, gd_loop(leaf, pair, Sig2::neq2()));
            loops.push_back(h);
        }
        bool have_minus = false;
        for (const auto& h : loops)
            if (h.v[0].is_zero() && h.v[3].is_zero() && !h.v[1].is_zero() &&
                h.v[2] / h.v[1] == FieldElem(-1))
                have_minus = true;
        if (have_minus) {
            Sig2 minus = Sig2::weighted_neq(FieldElem(-1));
            for (LoopPair pair : {LoopPair::X3X4, LoopPair::X1X2})
                consider(loop(f, pair, minus), gd_loop(leaf, pair, minus));
        }
    }
    for (const auto& tb : found)
        if (detail::trigger_is_generic(tb.t)) return tb;
    if (!found.empty()) return found.front();
    fail("InternalError", "trigger binary not found for an asymmetric signature");
}

// ---------------------------------------------------------------------------
// Degenerate inner case: all six entries nonzero and by = cz = dw.

enum class DegenerateInnerOutcome { InM, Hard, ArrowReversal };

inline DegenerateInnerOutcome degenerate_inner_case(const EightVertexParams& p) {
    FieldElem by = p.b * p.y, cz = p.c * p.z, dw = p.d * p.w;
    if ((p.b * p.c * p.d * p.w * p.y * p.z).is_zero() || !(by == cz) || !(cz == dw))
        fail("PreconditionViolated", "needs all six entries nonzero and by = cz = dw");
    if (p.a * p.x == by) return DegenerateInnerOutcome::InM;
    if (!(p.c + p.d).is_zero() || !(p.z + p.d).is_zero()) return DegenerateInnerOutcome::Hard;
    // now c = z = -d and w = d; rotate and repeat
    if (!(p.b + p.d).is_zero() || !(p.y + p.d).is_zero()) {
        if (p.b == p.y) return DegenerateInnerOutcome::ArrowReversal;  // symmetric already
        return DegenerateInnerOutcome::Hard;
    }
    return DegenerateInnerOutcome::ArrowReversal;  // b = y = -d: arrow symmetric
}

// ---------------------------------------------------------------------------
// Symmetric-family subclassifiers (all six entries nonzero).

namespace detail {

struct LatticeRoute {
    enum Kind { Hard, EquivGeneral, MTrans, InM, FullRank, Unknown } kind = Unknown;
    std::string note;
};

// resolve a rank <= 1 relation lattice per the symmetric-equality analysis
inline LatticeRoute rank_le1_route(const std::vector<FieldElem>& uvw, const LatticeBasis& L) {
    if (L.rank() == 0) return {LatticeRoute::Hard, "relation lattice has rank 0"};
    if (lattice_subset(uvw, {FieldElem(1), FieldElem(1), FieldElem(-1)}))
        return {LatticeRoute::EquivGeneral, "lattice contained in L(1,1,-1)"};
    // rank 1 basis (p, q, s) with s odd (the even case is the subset above)
    const auto& row = L.rows[0];
    long pp = row[0].get_si(), qq = row[1].get_si(), ss = row[2].get_si();
    if (pp < 0 || (pp == 0 && qq < 0) || (pp == 0 && qq == 0 && ss < 0)) {
        pp = -pp;
        qq = -qq;
        ss = -ss;
    }
    if (pp + ss != 0 && pp - ss != 0) return {LatticeRoute::Hard, "generic rank-1 basis"};
    if (pp >= 3) return {LatticeRoute::Hard, "rank-1 basis with |p| >= 3"};
    if (pp == 1 && std::abs(ss) == 1) {
        if (std::abs(qq) >= 2) return {LatticeRoute::Hard, "rank-1 basis with |q| >= 2"};
        if (qq == 1 && ss == -1) return {LatticeRoute::MTrans, "relation u v / w = 1"};
        if (qq == -1 && ss == -1) return {LatticeRoute::MTrans, "relation u / (v w) = 1"};
        if (qq == -1 && ss == 1) return {LatticeRoute::InM, "relation u w / v = 1"};
        if (qq == 1 && ss == 1) return {LatticeRoute::Hard, "basis (1,1,1)"};
        return {LatticeRoute::Unknown, "rank-1 basis with q = 0"};
    }
    return {LatticeRoute::Unknown, "unlisted rank-1 basis"};
}

// resolve a rank-2 lattice; valid only under the c != +-bd hypothesis
inline LatticeRoute rank2_route(const std::vector<FieldElem>& uvw) {
    if (lattice_subset(uvw, {FieldElem(1), FieldElem(1), FieldElem(-1)}))
        return {LatticeRoute::EquivGeneral, "lattice contained in L(1,1,-1)"};
    return {LatticeRoute::Hard, "rank-2 lattice outside L(1,1,-1)"};
}

}  // namespace detail

// forward declaration for the disequality -> equality reduction
inline ClassLabel classify_sym_eq(const FieldElem& b, const FieldElem& c, const FieldElem& d,
                                  const FieldElem& ax, int depth = 0);

inline ClassLabel classify_sym_eq(const FieldElem& b, const FieldElem& c, const FieldElem& d,
                                  const FieldElem& ax, int depth) {
    Sig4 canonical = make_eight_vertex({ax, b, c, d, d, FieldElem(1), b, c});
    // matchgate: ax - b^2 = c^2 - d^2
    if (ax - b * b == c * c - d * d)
        return ClassLabel::make(Label::PlanarTractable, "symmetric-equality/matchgate",
                                "ax - b^2 = c^2 - d^2")
            .backed(EngineHint::Matchgate, canonical);
    // matchgate transformable: d = +- b c after corner normalization
    if (d * d * ax == (b * c) * (b * c)) {
        bool undecided = false;
        auto s = sqrt_in_field(ax, &undecided);
        ClassLabel r = ClassLabel::make(Label::PlanarTractable,
                                        "symmetric-equality/matchgate-transformable",
                                        "d^2 ax = (bc)^2");
        if (s) {
            FieldElem bs = b / *s, cs = c / *s, ds = d / *s;
            auto mt = m_transformable_sym_eq(bs, cs, ds);
            if (mt.witness) {
                Sig4 norm = make_eight_vertex({FieldElem(1), bs, cs, ds, ds, FieldElem(1), bs, cs});
                return detail::backed_by_transform(std::move(r), EngineHint::Matchgate, norm,
                                                   *mt.witness);
            }
        }
        return r;  // criterion holds; witness needs sqrt(ax) in the field
    }
    // tan-type boundary: d^2 = ax, b = -c, b^2 = -(3 -+ 2 sqrt2) ax; backed by
    // the even-coloring equivalence (d itself is a square root of ax)
    FieldElem r2 = FieldElem::sqrt2();
    if (d * d == ax && b == -c &&
        (b * b == -((FieldElem(3) - FieldElem(2) * r2) * ax) ||
         b * b == -((FieldElem(3) + FieldElem(2) * r2) * ax))) {
        FieldElem bs = b / d, cs = c / d;  // normalized by s = d, so d/s = 1
        Sig4 norm = make_eight_vertex(
            {FieldElem(1), bs, cs, FieldElem(1), FieldElem(1), FieldElem(1), bs, cs});
        Sig4 image = even_coloring_transform(norm, EvenColoringMap::HZ);
        return ClassLabel::make(Label::PlanarTractable, "symmetric-equality/tan-boundary",
                                "d^2 = ax and b = -c with b^2 = -(3 -+ 2 sqrt2) ax")
            .backed_pair(norm, Sig2::neq2(), image, Sig2::neq2());
    }
    bool s_undecided = false;
    auto s = sqrt_in_field(ax, &s_undecided);
    if (s) {
        FieldElem bs = b / *s, cs = c / *s, ds = d / *s;
        Sig4 norm = make_eight_vertex({FieldElem(1), bs, cs, ds, ds, FieldElem(1), bs, cs});
        // general-graph tractable memberships after normalization
        if (is_affine(norm))
            return ClassLabel::make(Label::GeneralTractable, "symmetric-equality/affine",
                                    "normalized signature is affine")
                .backed(EngineHint::Affine, norm);
        if (is_product(norm))
            return ClassLabel::make(Label::GeneralTractable, "symmetric-equality/product",
                                    "normalized signature is product type")
                .backed(EngineHint::Product, norm);
        if (is_local_affine(norm))
            return ClassLabel::make(Label::GeneralTractable, "symmetric-equality/local-affine",
                                    "normalized signature is local affine");
        for (TractClass cls : {TractClass::A, TractClass::P, TractClass::L}) {
            auto t = transformable_search(norm, cls);
            if (!t) continue;
            const char* names[] = {"affine", "product", "", "local-affine"};
            ClassLabel r = ClassLabel::make(
                Label::GeneralTractable,
                std::string("symmetric-equality/") + names[static_cast<int>(cls)] +
                    "-transformable",
                "curated transform witness", t->name);
            if (cls == TractClass::A)
                return detail::backed_by_transform(std::move(r), EngineHint::Affine, norm, *t);
            if (cls == TractClass::P)
                return detail::backed_by_transform(std::move(r), EngineHint::Product, norm, *t);
            return r;  // local-affine evaluation is delegated to brute force
        }
        // b or c equal to -1 after normalization: hard (matchgate ruled out)
        if (bs == FieldElem(-1) || cs == FieldElem(-1))
            return ClassLabel::make(Label::PlanarHard, "symmetric-equality/negative-unit",
                                    "b = -1 or c = -1 after normalization");
        // the even-coloring boundary b = +-c, d = +-1: every tractable value
        // of b was caught by the criteria above, so the rest is hard
        if ((bs == cs || bs == -cs) && ds * ds == FieldElem(1))
            return ClassLabel::make(Label::PlanarHard, "symmetric-equality/pm-boundary",
                                    "b = +-c and d = +-1 with no tractable value of b");
        // lattice analysis of the normalized eigenvalues; the rank-2 argument
        // carries a c != +-bd hypothesis, so dispatch primary/rotated tuples
        // accordingly (the rotation swaps the roles of b and c)
        auto tuple_of = [&](const FieldElem& bb, const FieldElem& cc)
            -> std::optional<std::vector<FieldElem>> {
            FieldElem den = FieldElem(1) + bb;
            std::vector<FieldElem> uvw = {(cc + ds) / den, (FieldElem(-1) + bb) / den,
                                          (-cc + ds) / den};
            for (const auto& e : uvw)
                if (!e.is_zero() && !is_decomposable(e)) return std::nullopt;
            return uvw;
        };
        auto finish = [&](const detail::LatticeRoute& rt,
                          const std::string& which) -> ClassLabel {
            switch (rt.kind) {
                case detail::LatticeRoute::Hard:
                    return ClassLabel::make(Label::PlanarHard,
                                            "symmetric-equality/lattice-" + which, rt.note);
                case detail::LatticeRoute::MTrans:
                case detail::LatticeRoute::InM:
                    // equivalent to the explicit criteria above; defensive
                    return ClassLabel::make(Label::PlanarTractable,
                                            "symmetric-equality/lattice-" + which, rt.note);
                case detail::LatticeRoute::EquivGeneral:
                    return ClassLabel::unresolved(
                        "symmetric-equality/equivalent-to-general", rt.note,
                        "planar problem equals the general-graph problem; "
                        "A/P/L-transformability beyond the curated search is undecided");
                default:
                    return ClassLabel::unresolved("symmetric-equality/lattice-" + which,
                                                  rt.note, rt.note);
            }
        };
        auto primary = tuple_of(bs, cs);
        auto rotated = tuple_of(cs, bs);
        if (!primary || !rotated)
            return ClassLabel::unresolved("symmetric-equality/lattice-unknown",
                                          "eigenvalue tuple is not mag-phase decomposable",
                                          "relation lattice uncomputable in the restricted form");
        LatticeBasis L1 = lattice_basis(*primary), L2 = lattice_basis(*rotated);
        bool c_generic = !(cs == bs * ds) && !(cs == -(bs * ds));
        bool b_generic = !(bs == cs * ds) && !(bs == -(cs * ds));
        if (L1.rank() <= 1) return finish(detail::rank_le1_route(*primary, L1), "primary");
        if (L1.rank() == 2 && c_generic) return finish(detail::rank2_route(*primary), "primary");
        // primary is rank 2 with c = +-bd, or rank 3: dispatch the rotation
        if (L2.rank() <= 1) return finish(detail::rank_le1_route(*rotated, L2), "rotated");
        if (L2.rank() == 2 && b_generic) return finish(detail::rank2_route(*rotated), "rotated");
        // both tuples are rank >= 2 with the degenerate product relations or
        // full rank; every such point reduces to b = +-c, d = +-1 (caught by
        // the boundary test above) or to the matchgate criteria
        return ClassLabel::unresolved("symmetric-equality/lattice-degenerate",
                                      "both eigenvalue lattices resist the generic analysis",
                                      "degenerate lattice shape beyond the explicit criteria");
    }
    (void)depth;
    std::string why = s_undecided ? "existence of sqrt(ax) in Q(zeta8) undecided"
                                  : "sqrt(ax) does not exist in Q(zeta8)";
    return ClassLabel::unresolved("symmetric-equality/no-normalization", why, why);
}

inline ClassLabel classify_sym_neq(const FieldElem& b, const FieldElem& c, const FieldElem& d,
                                   const FieldElem& ax) {
    Sig4 canonical = make_eight_vertex({ax, b, c, d, -d, FieldElem(1), -b, -c});
    if (ax + b * b == d * d - c * c)
        return ClassLabel::make(Label::PlanarTractable, "symmetric-disequality/matchgate",
                                "ax + b^2 = d^2 - c^2")
            .backed(EngineHint::Matchgate, canonical);
    if (d * d * ax == -((b * c) * (b * c))) {
        bool und = false;
        auto s = sqrt_in_field(ax, &und);
        ClassLabel r = ClassLabel::make(Label::PlanarTractable,
                                        "symmetric-disequality/matchgate-transformable",
                                        "d^2 ax = -(bc)^2");
        if (s) {
            auto mt = m_transformable_sym_neq(b / *s, c / *s, d / *s);
            if (mt.witness) {
                Sig4 norm = make_eight_vertex({FieldElem(1), b / *s, c / *s, d / *s,
                                               -(d / *s), FieldElem(1), -(b / *s), -(c / *s)});
                return detail::backed_by_transform(std::move(r), EngineHint::Matchgate, norm,
                                                   *mt.witness);
            }
        }
        return r;
    }
    bool und = false;
    auto s = sqrt_in_field(ax, &und);
    if (!s) {
        std::string why = und ? "existence of sqrt(ax) in Q(zeta8) undecided"
                              : "sqrt(ax) does not exist in Q(zeta8)";
        return ClassLabel::unresolved("symmetric-disequality/no-normalization", why, why);
    }
    FieldElem bs = b / *s, cs = c / *s, ds = d / *s, i = FieldElem::i();
    Sig4 norm = make_eight_vertex({FieldElem(1), bs, cs, ds, -ds, FieldElem(1), -bs, -cs});
    // direct memberships and curated search on the normalized signature
    if (is_affine(norm))
        return ClassLabel::make(Label::GeneralTractable, "symmetric-disequality/affine",
                                "normalized signature is affine")
            .backed(EngineHint::Affine, norm);
    for (TractClass cls : {TractClass::A, TractClass::P, TractClass::L}) {
        auto t = transformable_search(norm, cls);
        if (!t) continue;
        const char* names[] = {"affine", "product", "", "local-affine"};
        ClassLabel r = ClassLabel::make(
            Label::GeneralTractable,
            std::string("symmetric-disequality/") + names[static_cast<int>(cls)] +
                "-transformable",
            "curated transform witness", t->name);
        if (cls == TractClass::A)
            return detail::backed_by_transform(std::move(r), EngineHint::Affine, norm, *t);
        if (cls == TractClass::P)
            return detail::backed_by_transform(std::move(r), EngineHint::Product, norm, *t);
        return r;
    }
    // reduce to the equality family through a diag(1, sqrt i) transform plus
    // one binary modification: parameters become (i b, i c, i d)
    ClassLabel eq = classify_sym_eq(i * bs, i * cs, i * ds, FieldElem(1), 1);
    if (eq.label == Label::PlanarHard)
        return ClassLabel::make(Label::PlanarHard, "symmetric-disequality/via-equality",
                                "derived equality-family signature is hard: " +
                                    eq.certificate[0].rule);
    if (eq.label == Label::PlanarTractable &&
        (eq.certificate[0].rule == "symmetric-equality/matchgate" ||
         eq.certificate[0].rule == "symmetric-equality/matchgate-transformable"))
        // equivalent to the criteria already tested above; defensive
        return ClassLabel::make(Label::PlanarTractable, "symmetric-disequality/via-equality",
                                eq.certificate[0].condition);
    if (eq.label == Label::PlanarTractable &&
        eq.certificate[0].rule == "symmetric-equality/tan-boundary") {
        // iterate the three-copy chain once; the derived signature leaves the
        // boundary and decides the original
        FieldElem b3 =
            bs * (FieldElem(3) - bs * bs) * (FieldElem(1) - FieldElem(3) * bs * bs).inv();
        ClassLabel it = classify_sym_eq(i * b3, i * b3, -(i * ds), FieldElem(1), 1);
        if (it.label == Label::PlanarHard)
            return ClassLabel::make(Label::PlanarHard, "symmetric-disequality/tan-iteration",
                                    "three-copy chain leaves every tractable case");
        return ClassLabel::unresolved("symmetric-disequality/tan-iteration",
                                      "iterated signature classification: " +
                                          it.certificate[0].rule,
                                      "tan-boundary iteration did not settle the instance");
    }
    return ClassLabel::unresolved("symmetric-disequality/residual",
                                  "equality-family reduction returned: " + eq.certificate[0].rule,
                                  eq.residual.empty() ? "undecided beyond explicit criteria"
                                                      : eq.residual);
}

// ---------------------------------------------------------------------------
// The main classifier.

inline ClassLabel classify_eight_vertex(const EightVertexParams& p) {
    FieldElem ax = p.a * p.x;
    if (ax.is_zero()) {
        ClassLabel r = classify_six_vertex(p.b, p.c, p.d, p.w, p.y, p.z);
        return r.also("eight-vertex/corner-product-zero",
                      "ax = 0 reduces to the six-vertex model");
    }
    Sig4 canonical = make_eight_vertex({ax, p.b, p.c, p.d, p.w, FieldElem(1), p.y, p.z});
    bool zb = p.b.is_zero(), zy = p.y.is_zero(), zc = p.c.is_zero(), zz = p.z.is_zero(),
         zd = p.d.is_zero(), zw = p.w.is_zero();
    int zero_pairs = (zb && zy) + (zc && zz) + (zd && zw);
    int zeros = zb + zy + zc + zz + zd + zw;

    if (zero_pairs >= 2) {
        if (zd && zw) {
            // inner pair zero plus an outer zero pair: rotate so the live
            // outer pair sits at (c, z)
            FieldElem c = p.c, z = p.z;
            if (zc && zz) {
                c = p.b;
                z = p.y;
            }
            Sig4 diag = make_eight_vertex(
                {ax, FieldElem(0), c, FieldElem(0), FieldElem(0), FieldElem(1), FieldElem(0), z});
            if (is_product(diag))
                return ClassLabel::make(Label::GeneralTractable, "two-zero-pairs/product",
                                        "cz = ax")
                    .backed(EngineHint::Product, diag);
            if (is_affine(diag))
                return ClassLabel::make(Label::GeneralTractable, "two-zero-pairs/affine",
                                        "diagonal signature is affine")
                    .backed(EngineHint::Affine, diag);
            if (c * z == -ax && c.pow(4) == z.pow(4)) {
                ClassLabel r = ClassLabel::make(Label::GeneralTractable,
                                                "two-zero-pairs/affine-transformable",
                                                "cz = -ax and c^4 = z^4");
                if (auto t = transformable_search(diag, TractClass::A))
                    return detail::backed_by_transform(std::move(r), EngineHint::Affine, diag,
                                                       *t);
                return r;
            }
            if (c == z) {
                ClassLabel r = ClassLabel::make(Label::PlanarTractable,
                                                "two-zero-pairs/matchgate-hat", "c = z", "H");
                // the Hadamard criterion needs equal corners, so back the
                // check with the sqrt(ax)-normalized signature when possible
                if (auto s = sqrt_in_field(ax)) {
                    Sig4 norm = make_eight_vertex({FieldElem(1), FieldElem(0), c / *s,
                                                   FieldElem(0), FieldElem(0), FieldElem(1),
                                                   FieldElem(0), z / *s});
                    return detail::backed_by_transform(std::move(r), EngineHint::Matchgate,
                                                       norm, make_transform(mat_H(), "H"));
                }
                return r;
            }
            if (c == -z) {
                Transform2 t = make_transform(mat_rows(zeta8_pow(1), FieldElem(1), FieldElem(1),
                                                       FieldElem::i() * zeta8_pow(1))
                                                  .inv(),
                                              "inv[a,1;1,ia]");
                ClassLabel r =
                    ClassLabel::make(Label::PlanarTractable,
                                     "two-zero-pairs/matchgate-transformable", "c = -z",
                                     t.name);
                Sig4 target = diag;
                if (auto s = sqrt_in_field(ax))
                    target = make_eight_vertex({FieldElem(1), FieldElem(0), c / *s,
                                                FieldElem(0), FieldElem(0), FieldElem(1),
                                                FieldElem(0), z / *s});
                if (is_class_transformable_by(target, TractClass::M, t))
                    return detail::backed_by_transform(std::move(r), EngineHint::Matchgate,
                                                       target, t);
                return r;
            }
            return ClassLabel::make(Label::PlanarHard, "two-zero-pairs/diagonal-hard",
                                    "cz not in {ax, -ax with c^4 = z^4} and c != +-z");
        }
        // both outer pairs zero, inner pair alive
        FieldElem dw = p.d * p.w;
        Sig4 inner = make_eight_vertex(
            {ax, FieldElem(0), FieldElem(0), p.d, p.w, FieldElem(1), FieldElem(0), FieldElem(0)});
        if (dw == ax)
            return ClassLabel::make(Label::GeneralTractable, "two-zero-pairs/inner-product",
                                    "dw = ax")
                .backed(EngineHint::Product, inner);
        if (is_affine(inner))
            return ClassLabel::make(Label::GeneralTractable, "two-zero-pairs/inner-affine",
                                    "inner-swap signature is affine")
                .backed(EngineHint::Affine, inner);
        if (dw == -ax)
            return ClassLabel::make(Label::PlanarTractable, "two-zero-pairs/inner-matchgate",
                                    "dw = -ax")
                .backed(EngineHint::Matchgate, inner);
        return ClassLabel::make(Label::PlanarHard, "two-zero-pairs/inner-hard",
                                "dw outside {0, ax, -ax}");
    }

    if (zeros >= 1) {
        if (is_matchgate(canonical))
            return ClassLabel::make(Label::PlanarTractable, "one-zero/matchgate",
                                    "ax - by = cz - dw")
                .backed(EngineHint::Matchgate, canonical);
        return ClassLabel::make(Label::PlanarHard, "one-zero/hard",
                                "a zero entry with at most one zero pair and no matchgate");
    }

    // all six entries nonzero
    FieldElem r2 = FieldElem::sqrt2();
    if (p.d == p.w && p.d * p.d == ax && p.b == p.y && p.c == p.z && p.b == -p.c &&
        (p.b * p.b == -((FieldElem(3) - FieldElem(2) * r2) * ax) ||
         p.b * p.b == -((FieldElem(3) + FieldElem(2) * r2) * ax))) {
        FieldElem bs = p.b / p.d, cs = p.c / p.d;
        Sig4 norm = make_eight_vertex(
            {FieldElem(1), bs, cs, FieldElem(1), FieldElem(1), FieldElem(1), bs, cs});
        Sig4 image = even_coloring_transform(norm, EvenColoringMap::HZ);
        return ClassLabel::make(Label::PlanarTractable, "case5/tan-point",
                                "d = w = +-sqrt(ax), b = y = -c = -z, "
                                "b^2 = -(3 -+ 2 sqrt2) ax")
            .backed_pair(norm, Sig2::neq2(), image, Sig2::neq2());
    }

    bool sym_eq = (p.b == p.y && p.c == p.z && p.d == p.w);
    bool sym_neq = (p.b == -p.y && p.c == -p.z && p.d == -p.w);
    if (sym_eq) {
        ClassLabel r = classify_sym_eq(p.b, p.c, p.d, ax, 0);
        return r.also("symmetric-equality/dispatch", "b = y, c = z, d = w");
    }
    if (sym_neq) {
        ClassLabel r = classify_sym_neq(p.b, p.c, p.d, ax);
        return r.also("symmetric-disequality/dispatch", "b = -y, c = -z, d = -w");
    }

    FieldElem by = p.b * p.y, cz = p.c * p.z, dw = p.d * p.w;
    if (by == cz && cz == dw) {
        switch (degenerate_inner_case(p)) {
            case DegenerateInnerOutcome::InM:
                return ClassLabel::make(Label::PlanarTractable, "degenerate-inner/matchgate",
                                        "by = cz = dw = ax")
                    .backed(EngineHint::Matchgate, canonical);
            case DegenerateInnerOutcome::Hard:
                return ClassLabel::make(Label::PlanarHard, "degenerate-inner/hard",
                                        "outer matrix full rank, inner degenerate");
            case DegenerateInnerOutcome::ArrowReversal:
                // unreachable: arrow symmetry was dispatched above
                return ClassLabel::unresolved("degenerate-inner/unexpected",
                                              "arrow-reversal fallthrough", "unexpected shape");
        }
    }

    // full-rank inner after a possible quarter rotation, then the trigger
    EightVertexParams q = p;
    if (cz == dw) q = eightv_params(make_eight_vertex(p).rotate(1));
    auto trig = trigger_binary(q);
    if (!trig)
        return ClassLabel::unresolved("asymmetric/no-trigger",
                                      "trigger vanished unexpectedly", "unexpected shape");
    if (detail::trigger_is_generic(trig->t)) {
        if (is_matchgate(canonical))
            return ClassLabel::make(Label::PlanarTractable, "asymmetric/matchgate",
                                    "ax - by = cz - dw")
                .backed(EngineHint::Matchgate, canonical);
        return ClassLabel::make(Label::PlanarHard, "asymmetric/hard",
                                "generic trigger binary, not a matchgate; t = " +
                                    trig->t.str());
    }
    if (is_matchgate(canonical))
        return ClassLabel::make(Label::PlanarTractable, "asymmetric/matchgate",
                                "ax - by = cz - dw")
            .backed(EngineHint::Matchgate, canonical);
    auto t = transformable_search(canonical, TractClass::A);
    if (t) {
        ClassLabel r = ClassLabel::make(Label::GeneralTractable,
                                        "asymmetric/affine-transformable",
                                        "curated transform witness", t->name);
        return detail::backed_by_transform(std::move(r), EngineHint::Affine, canonical, *t);
    }
    return ClassLabel::unresolved("asymmetric/degenerate-trigger",
                                  "trigger t is zero or a low-order root of unity (t = " +
                                      trig->t.str() + ")",
                                  "affine-transformability beyond the curated search is undecided");
}

}  // namespace ev8
