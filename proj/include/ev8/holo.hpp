#pragma once

// Holographic transformations: the Valiant identity as an executable check,
// the constant transforms H, Z, HZ, and the explicit matchgate
// transformability criteria for the arrow-symmetric families.

#include <optional>

#include "gadget.hpp"

namespace ev8 {

struct Transform2 {
    Mat2 t, tinv;
    std::string name;
};

inline Transform2 make_transform(const Mat2& m, std::string name = "") {
    if (m.det().is_zero()) fail("SingularMatrix", "transforms must be invertible");
    return Transform2{m, m.inv(), std::move(name)};
}

inline Mat2 mat_Z() {
    FieldElem s = FieldElem::sqrt2().inv();
    Mat2 z;
    z.m[0][0] = s;
    z.m[0][1] = s;
    z.m[1][0] = s * FieldElem::i();
    z.m[1][1] = -s * FieldElem::i();
    return z;
}
inline Mat2 mat_HZ() { return mat_H() * mat_Z(); }

inline Mat2 mat_diag(const FieldElem& a, const FieldElem& b) {
    Mat2 m;
    m.m[0][0] = a;
    m.m[1][1] = b;
    return m;
}
inline Mat2 mat_rows(const FieldElem& a, const FieldElem& b, const FieldElem& c,
                     const FieldElem& d) {
    Mat2 m;
    m.m[0][0] = a;
    m.m[0][1] = b;
    m.m[1][0] = c;
    m.m[1][1] = d;
    return m;
}

// Column action on 4-ary signatures: M(T f) = T^{(x)2} M(f) (T^T)^{(x)2}.
inline Sig4 transform_sig4(const Transform2& t, const Sig4& f) {
    return transform_sig4_mat(t.t, f);
}

// Covariant (row) action on binaries: g -> g T^{(x)2}.
inline Sig2 transform_sig2_row(const Sig2& g, const Mat2& t) {
    Sig2 r;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) {
            FieldElem s(0);
            for (int u1 = 0; u1 < 2; ++u1)
                for (int u2 = 0; u2 < 2; ++u2)
                    s += g.v[static_cast<size_t>(u1 * 2 + u2)] * t.m[u1][x1] * t.m[u2][x2];
            r.v[static_cast<size_t>(x1 * 2 + x2)] = s;
        }
    return r;
}

// Valiant's identity on a concrete grid: transform mediators covariantly and
// vertex signatures contravariantly, evaluate both sides by brute force.
inline bool verify_valiant(const PlanarGrid& g, const Transform2& t, int cap = 40) {
    PlanarGrid h = g;
    Mat4 ti2 = tensor2(t.tinv, t.tinv);
    Mat4 ti2t = tensor2(t.tinv.transpose(), t.tinv.transpose());
    for (auto& v : h.vertices) v.sig = Sig4::from_matrix(ti2 * v.sig.matrix() * ti2t);
    for (auto& e : h.edges) e.med = transform_sig2_row(e.med, t.t);
    return brute_holant(g, cap) == brute_holant(h, cap);
}

// ---------------------------------------------------------------------------
// Matchgate transformability criteria for the symmetric families.

enum class MTransKind { InM, CriterionPlus, CriterionMinus, No };

struct MTransResult {
    MTransKind kind;
    std::optional<Transform2> witness;
};

// Witnesses are reported in the orientation the engines consume: S such that
// (neq2) S^{(x)2} is a matchgate binary and (S^{-1})^{(x)4} f is a matchgate
// (the criterion lemmas state the inverse matrix, so we invert here).
inline Transform2 inverse_witness(const Mat2& t, const std::string& name) {
    return make_transform(t.inv(), name);
}

// family M(f) = [[1,0,0,b],[0,c,d,0],[0,d,c,0],[b,0,0,1]]:
// in M iff 1 - b^2 = c^2 - d^2; transformable iff d = +-bc.
inline MTransResult m_transformable_sym_eq(const FieldElem& b, const FieldElem& c,
                                           const FieldElem& d) {
    if (FieldElem(1) - b * b == c * c - d * d) return {MTransKind::InM, std::nullopt};
    FieldElem i = FieldElem::i();
    if (d == b * c)
        return {MTransKind::CriterionPlus,
                inverse_witness(mat_rows(1, i, 1, -i), "inv[1,i;1,-i]")};
    if (d == -(b * c))
        return {MTransKind::CriterionMinus,
                inverse_witness(mat_rows(1, 1, 1, -1), "inv[1,1;1,-1]")};
    return {MTransKind::No, std::nullopt};
}

// family M(f) = [[1,0,0,b],[0,c,d,0],[0,-d,-c,0],[-b,0,0,1]]:
// in M iff 1 + b^2 = d^2 - c^2; transformable iff d = +-i bc.
inline MTransResult m_transformable_sym_neq(const FieldElem& b, const FieldElem& c,
                                            const FieldElem& d) {
    if (FieldElem(1) + b * b == d * d - c * c) return {MTransKind::InM, std::nullopt};
    FieldElem i = FieldElem::i(), sqi = zeta8_pow(1);
    if (d == i * b * c)
        return {MTransKind::CriterionPlus,
                inverse_witness(mat_rows(1, i * sqi, 1, -(i * sqi)), "inv[1,iri;1,-iri]")};
    if (d == -(i * b * c))
        return {MTransKind::CriterionMinus,
                inverse_witness(mat_rows(1, sqi, 1, -sqi), "inv[1,ri;1,-ri]")};
    return {MTransKind::No, std::nullopt};
}

// ---------------------------------------------------------------------------
// Curated transformability search.  Sound but explicitly incomplete: absent
// means "no witness found in the curated set", never "impossible".

enum class TractClass { A, P, M, L };

inline bool binary_in_class(const Sig2& g, TractClass c) {
    switch (c) {
        case TractClass::A: return is_affine(g);
        case TractClass::P: return is_product(g);
        case TractClass::M: return is_matchgate(g);
        case TractClass::L: {
            for (int s : support(g)) {
                Sig2 h = g;
                for (int m = 0; m < 4; ++m) {
                    int dot = __builtin_popcount(static_cast<unsigned>(s & m)) % 8;
                    h.v[static_cast<size_t>(m)] = zeta8_pow(dot) * g.v[static_cast<size_t>(m)];
                }
                if (!is_affine(h)) return false;
            }
            return true;
        }
    }
    return false;
}

inline bool sig4_in_class(const Sig4& f, TractClass c) {
    switch (c) {
        case TractClass::A: return is_affine(f);
        case TractClass::P: return is_product(f);
        case TractClass::M: return is_matchgate(f);
        case TractClass::L: return is_local_affine(f);
    }
    return false;
}

inline std::vector<Transform2> curated_transforms() {
    std::vector<Transform2> base;
    FieldElem i = FieldElem::i(), z8 = zeta8_pow(1);
    base.push_back(make_transform(Mat2::identity(), "I"));
    base.push_back(make_transform(mat_H(), "H"));
    base.push_back(make_transform(mat_Z(), "Z"));
    base.push_back(make_transform(mat_HZ(), "HZ"));
    for (int k = 0; k < 8; ++k)
        base.push_back(make_transform(mat_diag(FieldElem(1), zeta8_pow(k)),
                                      "diag(1,Z8^" + std::to_string(k) + ")"));
    base.push_back(make_transform(mat_rows(1, i, 1, -i), "[1,i;1,-i]"));
    base.push_back(make_transform(mat_rows(1, 1, 1, -1), "[1,1;1,-1]"));
    base.push_back(make_transform(mat_rows(1, z8, 1, -z8), "[1,ri;1,-ri]"));
    base.push_back(make_transform(mat_rows(1, i * z8, 1, -(i * z8)), "[1,iri;1,-iri]"));
    base.push_back(make_transform(mat_rows(z8, 1, 1, i * z8), "[a,1;1,ia]"));
    return base;
}

inline bool is_class_transformable_by(const Sig4& f, TractClass cls, const Transform2& t) {
    Sig2 lhs = transform_sig2_row(Sig2::neq2(), t.t);
    if (!binary_in_class(lhs, cls)) return false;
    Mat4 ti2 = tensor2(t.tinv, t.tinv);
    Mat4 ti2t = tensor2(t.tinv.transpose(), t.tinv.transpose());
    Sig4 g = Sig4::from_matrix(ti2 * f.matrix() * ti2t);
    return sig4_in_class(g, cls);
}

inline std::optional<Transform2> transformable_search(const Sig4& f, TractClass cls) {
    static const std::vector<Transform2> base = curated_transforms();
    for (const auto& t : base)
        if (is_class_transformable_by(f, cls, t)) return t;
    for (const auto& t1 : base)
        for (const auto& t2 : base) {
            Mat2 prod = t1.t * t2.t;
            Transform2 t = make_transform(prod, t1.name + "*" + t2.name);
            if (is_class_transformable_by(f, cls, t)) return t;
        }
    return std::nullopt;
}

}  // namespace ev8
