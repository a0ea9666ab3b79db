#pragma once

// Arity-2/4 signatures, their signature matrices under the row x1x2 /
// column x4x3 convention (note the order reversal), rotations, and the
// membership predicates for the tractable classes A, P, M, M-hat, L plus
// the redundant-signature test.

#include <algorithm>
#include <optional>
#include <vector>

#include "linalg.hpp"

namespace ev8 {

struct Sig2 {
    // values indexed x1*2 + x2: (g00, g01, g10, g11)
    std::array<FieldElem, 4> v{};

    Sig2() = default;
    Sig2(FieldElem g00, FieldElem g01, FieldElem g10, FieldElem g11)
        : v{std::move(g00), std::move(g01), std::move(g10), std::move(g11)} {}

    static Sig2 eq2() { return {1, 0, 0, 1}; }
    static Sig2 neq2() { return {0, 1, 1, 0}; }
    static Sig2 weighted_neq(const FieldElem& t) { return {0, 1, t, 0}; }

    Mat2 matrix() const {
        Mat2 m;
        m.m[0][0] = v[0];
        m.m[0][1] = v[1];
        m.m[1][0] = v[2];
        m.m[1][1] = v[3];
        return m;
    }
    Sig2 swapped() const { return {v[0], v[2], v[1], v[3]}; }  // g(x2, x1)
    friend bool operator==(const Sig2& a, const Sig2& b) { return a.v == b.v; }
};

struct Sig4 {
    // values indexed by mask x1*8 + x2*4 + x3*2 + x4 (lexicographic)
    std::array<FieldElem, 16> v{};

    const FieldElem& at(int x1, int x2, int x3, int x4) const {
        return v[static_cast<size_t>(x1 * 8 + x2 * 4 + x3 * 2 + x4)];
    }
    FieldElem& at(int x1, int x2, int x3, int x4) {
        return v[static_cast<size_t>(x1 * 8 + x2 * 4 + x3 * 2 + x4)];
    }

    // Signature matrix M_{x1x2, x4x3}.
    Mat4 matrix() const {
        Mat4 m;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m.m[r][c] = at(r >> 1, r & 1, c & 1, c >> 1);
        return m;
    }
    static Sig4 from_matrix(const Mat4& m) {
        Sig4 f;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) f.at(r >> 1, r & 1, c & 1, c >> 1) = m.m[r][c];
        return f;
    }

    // Quarter turns of the input edges: one turn sends f to
    // f'(y1,y2,y3,y4) = f(y4,y1,y2,y3).
    Sig4 rotate(int quarter_turns = 1) const {
        int t = ((quarter_turns % 4) + 4) % 4;
        Sig4 g = *this;
        while (t--) {
            Sig4 h;
            for (int m = 0; m < 16; ++m) {
                int y1 = (m >> 3) & 1, y2 = (m >> 2) & 1, y3 = (m >> 1) & 1, y4 = m & 1;
                h.v[static_cast<size_t>(m)] = g.at(y4, y1, y2, y3);
            }
            g = h;
        }
        return g;
    }

    friend bool operator==(const Sig4& a, const Sig4& b) { return a.v == b.v; }
};

// Named built-ins.
inline Sig4 sig_EQ4() {
    Sig4 f;
    f.v[0] = f.v[15] = FieldElem(1);
    return f;
}
// Crossover: indicator of (x1 = x3) and (x2 = x4).
inline Sig4 sig_S() {
    Sig4 f;
    for (int m = 0; m < 16; ++m) {
        int x1 = (m >> 3) & 1, x2 = (m >> 2) & 1, x3 = (m >> 1) & 1, x4 = m & 1;
        if (x1 == x3 && x2 == x4) f.v[static_cast<size_t>(m)] = FieldElem(1);
    }
    return f;
}
// Disequality crossover: indicator of (x1 != x3) and (x2 != x4).
inline Sig4 sig_SPRIME() {
    Sig4 f;
    for (int m = 0; m < 16; ++m) {
        int x1 = (m >> 3) & 1, x2 = (m >> 2) & 1, x3 = (m >> 1) & 1, x4 = m & 1;
        if (x1 != x3 && x2 != x4) f.v[static_cast<size_t>(m)] = FieldElem(1);
    }
    return f;
}
// Double disequality matrix N = M(neq2) (x) M(neq2).
inline Mat4 mat_N() {
    return tensor2(Sig2::neq2().matrix(), Sig2::neq2().matrix());
}

// Eight-vertex parameter block of M(f) = [[a,0,0,b],[0,c,d,0],[0,w,z,0],[y,0,0,x]].
struct EightV {
    FieldElem a, b, c, d, w, x, y, z;
};

inline Sig4 make_eight_vertex(const EightV& p) {
    Sig4 f;
    f.at(0, 0, 0, 0) = p.a;
    f.at(0, 0, 1, 1) = p.b;
    f.at(0, 1, 1, 0) = p.c;
    f.at(0, 1, 0, 1) = p.d;
    f.at(1, 0, 1, 0) = p.w;
    f.at(1, 0, 0, 1) = p.z;
    f.at(1, 1, 0, 0) = p.y;
    f.at(1, 1, 1, 1) = p.x;
    return f;
}

inline EightV eightv_params(const Sig4& f) {
    return {f.at(0, 0, 0, 0), f.at(0, 0, 1, 1), f.at(0, 1, 1, 0), f.at(0, 1, 0, 1),
            f.at(1, 0, 1, 0), f.at(1, 1, 1, 1), f.at(1, 1, 0, 0), f.at(1, 0, 0, 1)};
}

inline bool is_eight_vertex_form(const Sig4& f) {
    for (int m = 0; m < 16; ++m)
        if (__builtin_popcount(static_cast<unsigned>(m)) % 2 == 1 &&
            !f.v[static_cast<size_t>(m)].is_zero())
            return false;
    return true;
}

inline Mat2 outer_matrix(const Sig4& f) {
    Mat2 r;
    r.m[0][0] = f.at(0, 0, 0, 0);
    r.m[0][1] = f.at(0, 0, 1, 1);
    r.m[1][0] = f.at(1, 1, 0, 0);
    r.m[1][1] = f.at(1, 1, 1, 1);
    return r;
}
inline Mat2 inner_matrix(const Sig4& f) {
    Mat2 r;
    r.m[0][0] = f.at(0, 1, 1, 0);
    r.m[0][1] = f.at(0, 1, 0, 1);
    r.m[1][0] = f.at(1, 0, 1, 0);
    r.m[1][1] = f.at(1, 0, 0, 1);
    return r;
}

// ---------------------------------------------------------------------------
// Generic views over 2^n value tables, n <= 4.

struct SigView {
    int arity;
    const FieldElem* v;
    int size() const { return 1 << arity; }
};
inline SigView view(const Sig2& g) { return {2, g.v.data()}; }
inline SigView view(const Sig4& f) { return {4, f.v.data()}; }

inline std::vector<int> support(SigView f) {
    std::vector<int> s;
    for (int m = 0; m < f.size(); ++m)
        if (!f.v[m].is_zero()) s.push_back(m);
    return s;
}
inline std::vector<int> support(const Sig4& f) { return support(view(f)); }
inline std::vector<int> support(const Sig2& g) { return support(view(g)); }

enum class Parity { Even, Odd, Mixed };

inline Parity parity(SigView f) {
    bool even = false, odd = false;
    for (int m : support(f))
        (__builtin_popcount(static_cast<unsigned>(m)) % 2 ? odd : even) = true;
    if (even && odd) return Parity::Mixed;
    if (odd) return Parity::Odd;
    return Parity::Even;  // empty support counts as even
}
inline Parity parity(const Sig4& f) { return parity(view(f)); }
inline Parity parity(const Sig2& g) { return parity(view(g)); }

// ---------------------------------------------------------------------------
// Affine signatures: f = lambda * chi_{AX=0} * i^Q(X), Q a multilinear
// quadratic over Z4 whose cross terms all have even coefficients.

struct QuadForm {
    int n = 0;
    int a0 = 0;                          // mod 4
    std::array<int, 4> lin{};            // mod 4
    std::array<std::array<int, 4>, 4> cross{};  // i<j, values in {0,2}

    void add_const(int c) { a0 = ((a0 + c) % 4 + 4) % 4; }
    void add_lin(int i, int c) { lin[static_cast<size_t>(i)] = ((lin[static_cast<size_t>(i)] + c) % 4 + 4) % 4; }
    void add_cross(int i, int j, int c) {
        if (i == j) {
            add_lin(i, c);  // x^2 = x on bits
            return;
        }
        if (i > j) std::swap(i, j);
        auto& e = cross[static_cast<size_t>(i)][static_cast<size_t>(j)];
        e = ((e + c) % 4 + 4) % 4;
    }
    int eval(int mask) const {
        int q = a0;
        for (int i = 0; i < n; ++i) {
            if (!((mask >> (n - 1 - i)) & 1)) continue;
            q += lin[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j)
                if ((mask >> (n - 1 - j)) & 1) q += cross[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        return ((q % 4) + 4) % 4;
    }
    bool cross_terms_even() const {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (cross[static_cast<size_t>(i)][static_cast<size_t>(j)] % 2 != 0) return false;
        return true;
    }
};

struct AffineWitness {
    FieldElem lambda;
    // constraint rows over (x_1..x_n, 1): bit n-1-i is x_i, lowest bit the 1
    std::vector<int> constraints;
    QuadForm q;
};

namespace detail {

// mod-4 exponent k with x == i^k, if any
inline std::optional<int> i_power_of(const FieldElem& x) {
    for (int k = 0; k < 4; ++k)
        if (x == FieldElem::i().pow(k)) return k;
    return std::nullopt;
}

// XOR of selected t-bits plus a constant, as a Z4 quadratic with even cross
// terms: parity(v_1..v_m) = sum v_i - 2 sum_{i<j} v_i v_j (mod 4).
inline void add_xor_times(QuadForm& q, int coeff, const std::vector<int>& vars, int cst) {
    std::vector<int> items = vars;  // constant handled as an extra "bit"
    q.add_const(coeff * cst);
    for (size_t i = 0; i < items.size(); ++i) {
        q.add_lin(items[i], coeff);
        if (cst) q.add_lin(items[i], -2 * coeff);
        for (size_t j = i + 1; j < items.size(); ++j)
            q.add_cross(items[i], items[j], -2 * coeff);
    }
}

// 2 * (xor form 1) * (xor form 2) mod 4
inline void add_two_xor_product(QuadForm& q, const std::vector<int>& v1, int c1,
                                const std::vector<int>& v2, int c2) {
    q.add_const(2 * c1 * c2);
    for (int p : v1) q.add_lin(p, 2 * c2);
    for (int r : v2) q.add_lin(r, 2 * c1);
    for (int p : v1)
        for (int r : v2) q.add_cross(p, r, 2);  // p==r folds into linear
}

}  // namespace detail

inline std::optional<AffineWitness> affine_witness(SigView f) {
    const int n = f.arity;
    std::vector<int> supp = support(f);
    if (supp.empty()) {
        AffineWitness w;
        w.lambda = FieldElem(0);
        w.q.n = n;
        w.constraints = {1};  // 0 = 1, unsatisfiable: empty support
        return w;
    }
    // support must be an affine subspace of Z2^n
    int x0 = supp[0];
    std::vector<bool> in_supp(static_cast<size_t>(f.size()), false);
    for (int m : supp) in_supp[static_cast<size_t>(m)] = true;
    for (int a : supp)
        for (int b : supp)
            if (!in_supp[static_cast<size_t>(a ^ b ^ x0)]) return std::nullopt;

    // reduced basis of the difference subspace
    std::vector<int> basis;
    for (int m : supp) {
        int d = m ^ x0;
        for (int b : basis) d = std::min(d, d ^ b);
        if (d) basis.push_back(d);
    }
    // full reduction so each basis vector owns its pivot bit
    std::sort(basis.begin(), basis.end(), std::greater<int>());
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j)
            if (i != j) {
                int pivot = 1 << (31 - __builtin_clz(static_cast<unsigned>(basis[i])));
                if (basis[j] & pivot) basis[j] ^= basis[i];
            }
    const int k = static_cast<int>(basis.size());
    if (static_cast<int>(supp.size()) != (1 << k)) return std::nullopt;

    // exponents on the support relative to the basepoint
    const FieldElem inv0 = f.v[x0].inv();
    auto point = [&](int tmask) {
        int m = x0;
        for (int t = 0; t < k; ++t)
            if ((tmask >> t) & 1) m ^= basis[static_cast<size_t>(t)];
        return m;
    };
    std::vector<int> q_t(static_cast<size_t>(1) << k);
    for (int tm = 0; tm < (1 << k); ++tm) {
        auto e = detail::i_power_of(f.v[point(tm)] * inv0);
        if (!e) return std::nullopt;
        q_t[static_cast<size_t>(tm)] = *e;
    }
    // fit the t-space quadratic from points of weight <= 2, then verify
    std::vector<int> lin_t(static_cast<size_t>(k));
    std::vector<std::vector<int>> cross_t(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k), 0));
    for (int i = 0; i < k; ++i) lin_t[static_cast<size_t>(i)] = q_t[static_cast<size_t>(1) << i];
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int c = (q_t[(1u << i) | (1u << j)] - lin_t[static_cast<size_t>(i)] - lin_t[static_cast<size_t>(j)]) % 4;
            c = (c + 4) % 4;
            if (c % 2 != 0) return std::nullopt;
            cross_t[static_cast<size_t>(i)][static_cast<size_t>(j)] = c;
        }
    for (int tm = 0; tm < (1 << k); ++tm) {
        int val = 0;
        for (int i = 0; i < k; ++i) {
            if (!((tm >> i) & 1)) continue;
            val += lin_t[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                if ((tm >> j) & 1) val += cross_t[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        if (((val % 4) + 4) % 4 != q_t[static_cast<size_t>(tm)]) return std::nullopt;
    }

    // push the t-space form to x-space: t_i = x_{pivot(i)} xor x0_{pivot(i)}
    AffineWitness w;
    w.lambda = f.v[x0];
    w.q.n = n;
    std::vector<int> pivot_var(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        int pbit = 31 - __builtin_clz(static_cast<unsigned>(basis[static_cast<size_t>(i)]));
        pivot_var[static_cast<size_t>(i)] = n - 1 - pbit;  // variable index 0..n-1
    }
    auto pivot_const = [&](int i) {
        return (x0 >> (n - 1 - pivot_var[static_cast<size_t>(i)])) & 1;
    };
    for (int i = 0; i < k; ++i)
        detail::add_xor_times(w.q, lin_t[static_cast<size_t>(i)], {pivot_var[static_cast<size_t>(i)]}, pivot_const(i));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (cross_t[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
                for (int rep = 0; rep < cross_t[static_cast<size_t>(i)][static_cast<size_t>(j)] / 2; ++rep)
                    detail::add_two_xor_product(w.q, {pivot_var[static_cast<size_t>(i)]}, pivot_const(i),
                                                {pivot_var[static_cast<size_t>(j)]}, pivot_const(j));
            }
    // lambda absorbs i^{Q(x0)} so that f(x0) = lambda * i^{Q(x0)}
    w.lambda = f.v[x0] * FieldElem::i().pow(w.q.eval(x0)).inv();

    // constraint rows: independent v with v.b = 0 for every basis vector b
    std::vector<int> rows, row_basis;
    for (int v = 1; v < (1 << n); ++v) {
        bool orth = true;
        for (int b : basis)
            if (__builtin_popcount(static_cast<unsigned>(v & b)) % 2) {
                orth = false;
                break;
            }
        if (!orth) continue;
        int reduced = v;
        for (int b : row_basis) reduced = std::min(reduced, reduced ^ b);
        if (!reduced) continue;
        row_basis.push_back(reduced);
        std::sort(row_basis.begin(), row_basis.end(), std::greater<int>());
        rows.push_back((v << 1) | (__builtin_popcount(static_cast<unsigned>(v & x0)) % 2));
    }
    w.constraints = rows;

    // final self-check: the witness reproduces f
    for (int m = 0; m < f.size(); ++m) {
        bool sat = true;
        for (int r : w.constraints) {
            int rv = r >> 1, rc = r & 1;
            if (__builtin_popcount(static_cast<unsigned>(rv & m)) % 2 != rc) {
                sat = false;
                break;
            }
        }
        FieldElem expect = sat ? w.lambda * FieldElem::i().pow(w.q.eval(m)) : FieldElem(0);
        if (expect != f.v[m]) return std::nullopt;  // should not happen
    }
    return w;
}

inline bool is_affine(const Sig4& f) { return affine_witness(view(f)).has_value(); }
inline bool is_affine(const Sig2& g) { return affine_witness(view(g)).has_value(); }

// ---------------------------------------------------------------------------
// Product type: tensor products of blocks supported on two antipodal points
// (equivalently products of unary, weighted equality and disequality factors).

namespace detail {

inline bool is_product_rec(int arity, const std::vector<FieldElem>& v);

// try to split off the variable subset S as a tensor factor
inline bool try_split(int arity, const std::vector<FieldElem>& v, int smask) {
    const int n = arity;
    std::vector<int> sbits, tbits;
    for (int i = 0; i < n; ++i)
        ((smask >> (n - 1 - i)) & 1 ? sbits : tbits).push_back(n - 1 - i);
    auto compose = [&](int sa, int ta) {
        int m = 0;
        for (size_t i = 0; i < sbits.size(); ++i)
            if ((sa >> i) & 1) m |= 1 << sbits[i];
        for (size_t i = 0; i < tbits.size(); ++i)
            if ((ta >> i) & 1) m |= 1 << tbits[i];
        return m;
    };
    const int ns = 1 << sbits.size(), nt = 1 << tbits.size();
    // rank-1 test of the ns x nt value matrix
    int pr = -1, pc = -1;
    for (int r = 0; r < ns && pr < 0; ++r)
        for (int c = 0; c < nt; ++c)
            if (!v[static_cast<size_t>(compose(r, c))].is_zero()) {
                pr = r;
                pc = c;
                break;
            }
    if (pr < 0) return true;  // zero signature
    const FieldElem& pivot = v[static_cast<size_t>(compose(pr, pc))];
    for (int r = 0; r < ns; ++r)
        for (int c = 0; c < nt; ++c) {
            FieldElem lhs = v[static_cast<size_t>(compose(r, c))] * pivot;
            FieldElem rhs = v[static_cast<size_t>(compose(r, pc))] * v[static_cast<size_t>(compose(pr, c))];
            if (lhs != rhs) return false;
        }
    std::vector<FieldElem> g(static_cast<size_t>(ns)), h(static_cast<size_t>(nt));
    for (int r = 0; r < ns; ++r) g[static_cast<size_t>(r)] = v[static_cast<size_t>(compose(r, pc))];
    FieldElem inv = pivot.inv();
    for (int c = 0; c < nt; ++c) h[static_cast<size_t>(c)] = v[static_cast<size_t>(compose(pr, c))] * inv;
    return is_product_rec(static_cast<int>(sbits.size()), g) &&
           is_product_rec(static_cast<int>(tbits.size()), h);
}

inline bool is_product_rec(int arity, const std::vector<FieldElem>& v) {
    // antipodal support block?
    std::vector<int> supp;
    for (int m = 0; m < (1 << arity); ++m)
        if (!v[static_cast<size_t>(m)].is_zero()) supp.push_back(m);
    if (supp.empty() || arity <= 1) return true;
    if (supp.size() == 1) return true;
    if (supp.size() == 2 && (supp[0] ^ supp[1]) == (1 << arity) - 1) return true;
    // otherwise a nontrivial tensor split must exist
    for (int smask = 1; smask < (1 << arity) - 1; ++smask) {
        if (smask > (((1 << arity) - 1) ^ smask)) continue;  // unordered pairs
        if (try_split(arity, v, smask)) return true;
    }
    return false;
}

}  // namespace detail

inline bool is_product(SigView f) {
    return detail::is_product_rec(f.arity, std::vector<FieldElem>(f.v, f.v + f.size()));
}
inline bool is_product(const Sig4& f) { return is_product(view(f)); }
inline bool is_product(const Sig2& g) { return is_product(view(g)); }

// ---------------------------------------------------------------------------
// Matchgate signatures (arity <= 4).

inline bool is_matchgate(SigView f) {
    Parity p = parity(f);
    if (p == Parity::Mixed) return false;
    if (f.arity <= 3) return true;  // parity condition suffices
    const FieldElem* v = f.v;
    auto V = [&](int m) { return v[m]; };
    if (p == Parity::Even) {
        // det M_Out = det M_In
        FieldElem out = V(0b0000) * V(0b1111) - V(0b0011) * V(0b1100);
        FieldElem in = V(0b0110) * V(0b1001) - V(0b0101) * V(0b1010);
        return out == in;
    }
    return V(0b0010) * V(0b1101) - V(0b0001) * V(0b1110) ==
           V(0b0100) * V(0b1011) - V(0b0111) * V(0b1000);
}
inline bool is_matchgate(const Sig4& f) { return is_matchgate(view(f)); }
inline bool is_matchgate(const Sig2& g) { return is_matchgate(view(g)); }

inline Mat2 mat_H() {
    FieldElem s = FieldElem::sqrt2().inv();
    Mat2 h;
    h.m[0][0] = s;
    h.m[0][1] = s;
    h.m[1][0] = s;
    h.m[1][1] = -s;
    return h;
}

// M(T tensor-4 f) = T^{(x)2} M(f) (T^T)^{(x)2}
inline Sig4 transform_sig4_mat(const Mat2& t, const Sig4& f) {
    Mat4 tt = tensor2(t, t);
    Mat4 tt_t = tensor2(t.transpose(), t.transpose());
    return Sig4::from_matrix(tt * f.matrix() * tt_t);
}

// Membership in M-hat = H M, decided by transforming and testing.
inline bool is_matchgate_hat(const Sig4& f) {
    return is_matchgate(transform_sig4_mat(mat_H(), f));
}

// ---------------------------------------------------------------------------
// Local affine: for every sigma in the support, multiplying entry x by
// sqrt(i)^(sum_i sigma_i x_i) (sum taken mod 8) yields an affine signature.

inline bool is_local_affine(const Sig4& f) {
    for (int s : support(f)) {
        Sig4 g = f;
        for (int m = 0; m < 16; ++m) {
            int dot = __builtin_popcount(static_cast<unsigned>(s & m)) % 8;
            g.v[static_cast<size_t>(m)] = zeta8_pow(dot) * f.v[static_cast<size_t>(m)];
        }
        if (!is_affine(g)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Non-singular redundant signatures: some rotation has identical middle rows
// and columns, and the compressed 3x3 matrix is non-singular.

inline std::optional<int> redundant_nonsingular_rotation(const Sig4& f) {
    for (int r = 0; r < 4; ++r) {
        Mat4 m = f.rotate(r).matrix();
        bool rows_eq = true, cols_eq = true;
        for (int c = 0; c < 4; ++c) {
            if (m.m[1][c] != m.m[2][c]) rows_eq = false;
            if (m.m[c][1] != m.m[c][2]) cols_eq = false;
        }
        if (!rows_eq || !cols_eq) continue;
        MatN comp(3, 3);
        int idx[3] = {0, 1, 3};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) comp.at(i, j) = m.m[idx[i]][idx[j]];
        if (!comp.det().is_zero()) return r;
    }
    return std::nullopt;
}

inline bool is_redundant_nonsingular(const Sig4& f) {
    return redundant_nonsingular_rotation(f).has_value();
}

}  // namespace ev8
