#pragma once

// Multiplicative-relation lattices L_x = { j : prod x_i^{j_i} = 1 } for
// tuples of decomposable field elements, the conformal-lattice interpolation
// solver, exact Vandermonde solving, Moebius orbits on the unit circle, and
// the all-roots-on-the-unit-circle coefficient condition.

#include "linalg.hpp"

namespace ev8 {

// --- integer matrices (gmp-backed to dodge intermediate growth) -------------

using ZMat = std::vector<std::vector<mpz_class>>;

namespace detail {

// Row-style Hermite reduction of M, tracking U with U*M = H (U unimodular).
inline void hermite_rows(ZMat& m, ZMat& u) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    u.assign(rows, std::vector<mpz_class>(rows, 0));
    for (size_t i = 0; i < rows; ++i) u[i][i] = 1;
    size_t pivot_row = 0;
    for (size_t col = 0; col < cols && pivot_row < rows; ++col) {
        // euclidean elimination within the column
        while (true) {
            size_t best = rows;
            for (size_t r = pivot_row; r < rows; ++r) {
                if (m[r][col] == 0) continue;
                if (best == rows || abs(m[r][col]) < abs(m[best][col])) best = r;
            }
            if (best == rows) break;
            std::swap(m[best], m[pivot_row]);
            std::swap(u[best], u[pivot_row]);
            bool clean = true;
            for (size_t r = pivot_row + 1; r < rows; ++r) {
                if (m[r][col] == 0) continue;
                mpz_class qv = m[r][col] / m[pivot_row][col];
                for (size_t c = 0; c < cols; ++c) m[r][c] -= qv * m[pivot_row][c];
                for (size_t c = 0; c < rows; ++c) u[r][c] -= qv * u[pivot_row][c];
                if (m[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (m[pivot_row][col] == 0) continue;
        if (m[pivot_row][col] < 0) {
            for (auto& x : m[pivot_row]) x = -x;
            for (auto& x : u[pivot_row]) x = -x;
        }
        // reduce the rows above
        for (size_t r = 0; r < pivot_row; ++r) {
            mpz_class qv;
            mpz_fdiv_q(qv.get_mpz_t(), m[r][col].get_mpz_t(), m[pivot_row][col].get_mpz_t());
            if (qv != 0) {
                for (size_t c = 0; c < cols; ++c) m[r][c] -= qv * m[pivot_row][c];
                for (size_t c = 0; c < rows; ++c) u[r][c] -= qv * u[pivot_row][c];
            }
        }
        ++pivot_row;
    }
}

// basis (rows) of { x in Z^k : x^T A = 0 } for A in Z^{k x p}
inline ZMat left_kernel(ZMat a) {
    const size_t k = a.size();
    ZMat u;
    hermite_rows(a, u);
    ZMat out;
    for (size_t r = 0; r < k; ++r) {
        bool zero = true;
        for (const auto& x : a[r])
            if (x != 0) zero = false;
        if (zero) out.push_back(u[r]);
    }
    return out;
}

// canonical form of a lattice given by spanning rows
inline ZMat hnf_rows(ZMat m) {
    ZMat u;
    hermite_rows(m, u);
    ZMat out;
    for (auto& row : m) {
        bool zero = true;
        for (const auto& x : row)
            if (x != 0) zero = false;
        if (!zero) out.push_back(row);
    }
    return out;
}

}  // namespace detail

struct LatticeBasis {
    int k = 0;
    ZMat rows;  // Z-independent basis rows, Hermite-normalized
    int rank() const { return static_cast<int>(rows.size()); }
};

// prod x_i^{e_i} with negative exponents through exact inversion; the 0^0 = 1
// convention applies (zero base demands zero exponent to stay valid).
inline FieldElem tuple_power(const std::vector<FieldElem>& xs, const std::vector<mpz_class>& e,
                             bool* valid = nullptr) {
    if (valid) *valid = true;
    FieldElem r(1);
    for (size_t i = 0; i < xs.size(); ++i) {
        if (e[i] == 0) continue;
        if (xs[i].is_zero()) {
            if (valid) *valid = false;
            return FieldElem(0);
        }
        long ei = mpz_class(abs(e[i])).get_si();
        FieldElem p = xs[i].pow(ei);
        r *= (e[i] < 0) ? p.inv() : p;
    }
    return r;
}

inline LatticeBasis lattice_basis(const std::vector<FieldElem>& xs) {
    const int k = static_cast<int>(xs.size());
    // decompose; zero entries force exponent 0
    std::vector<std::optional<MagPhase>> mp(xs.size());
    std::vector<long> primes;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].is_zero()) continue;
        mp[i] = mag_phase(xs[i]);  // raises NotDecomposable
        for (auto [p, e2] : mp[i]->doubled_exp)
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    // constraint matrix A: variables = (j_1..j_k, t) where t handles mod 16
    // phases; columns: one per prime (doubled exponents), one phase column.
    // L = projection to j of the left kernel of A^T... we build A with rows
    // indexed by variables directly: rows r = k+1 vars, cols = constraints.
    const size_t nvar = static_cast<size_t>(k) + 1;
    const size_t ncon = primes.size() + 1 + static_cast<size_t>(k);  // + zero pins
    ZMat a(nvar, std::vector<mpz_class>(ncon, 0));
    for (int i = 0; i < k; ++i) {
        if (!mp[static_cast<size_t>(i)]) {
            // zero element: pin j_i = 0 through its own constraint column
            a[static_cast<size_t>(i)][primes.size() + 1 + static_cast<size_t>(i)] = 1;
            continue;
        }
        for (size_t pidx = 0; pidx < primes.size(); ++pidx) {
            auto it = mp[static_cast<size_t>(i)]->doubled_exp.find(primes[pidx]);
            if (it != mp[static_cast<size_t>(i)]->doubled_exp.end())
                a[static_cast<size_t>(i)][pidx] = it->second;
        }
        a[static_cast<size_t>(i)][primes.size()] = mp[static_cast<size_t>(i)]->phase_sixteenth;
    }
    a[static_cast<size_t>(k)][primes.size()] = 16;  // phase is mod 16
    ZMat ker = detail::left_kernel(std::move(a));
    // project out the auxiliary variable and renormalize
    ZMat proj;
    for (auto& row : ker) proj.push_back(std::vector<mpz_class>(row.begin(), row.begin() + k));
    LatticeBasis basis;
    basis.k = k;
    basis.rows = detail::hnf_rows(std::move(proj));
    // sanity: every basis row is a genuine relation
    for (const auto& row : basis.rows) {
        bool valid = true;
        if (!(tuple_power(xs, row, &valid) == FieldElem(1)) || !valid)
            fail("InternalError", "lattice basis row is not a relation");
    }
    return basis;
}

inline bool lattice_subset(const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys) {
    if (xs.size() != ys.size()) fail("BadShape", "tuples must have equal length");
    LatticeBasis lx = lattice_basis(xs);
    for (const auto& row : lx.rows) {
        bool valid = true;
        FieldElem p = tuple_power(ys, row, &valid);
        if (!valid || !(p == FieldElem(1))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Exact Vandermonde interpolation: p(nodes[l]) = values[l].

inline std::vector<FieldElem> vandermonde_solve(const std::vector<FieldElem>& values,
                                                const std::vector<FieldElem>& nodes) {
    const int n = static_cast<int>(nodes.size());
    if (values.size() != nodes.size()) fail("BadShape", "values/nodes size mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (nodes[static_cast<size_t>(i)] == nodes[static_cast<size_t>(j)])
                fail("DuplicateNodes", "interpolation nodes must be pairwise distinct");
    MatN m(n, n);
    for (int r = 0; r < n; ++r) {
        FieldElem p(1);
        for (int c = 0; c < n; ++c) {
            m.at(r, c) = p;
            p *= nodes[static_cast<size_t>(r)];
        }
    }
    return m.solve(values);
}

// ---------------------------------------------------------------------------
// Conformal lattice interpolation (index simplex j >= 0, sum <= m).

struct InterpolationSystem {
    int k = 0, m = 0;
    std::vector<FieldElem> base_x, target_y;
    std::vector<FieldElem> samples;  // N_l for l = 1..binom(m+k, k)
};

namespace detail {
inline void enum_simplex(int k, int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int v : cur) used += v;
    for (int j = 0; j + used <= m; ++j) {
        cur.push_back(j);
        enum_simplex(k, m, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

// Recover N_1(y) from the samples N_l(x); requires L_x subset of L_y.
inline FieldElem conformal_interpolate(const InterpolationSystem& sys) {
    if (static_cast<int>(sys.base_x.size()) != sys.k ||
        static_cast<int>(sys.target_y.size()) != sys.k)
        fail("BadShape", "tuple length mismatch");
    if (!lattice_subset(sys.base_x, sys.target_y))
        fail("PreconditionViolated", "L_x is not contained in L_y");
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    detail::enum_simplex(sys.k, sys.m, cur, tuples);
    if (sys.samples.size() < tuples.size())
        fail("MissingSamples", "need " + std::to_string(tuples.size()) + " samples");
    // group tuples by the exact value of x^j (coset collapse)
    std::map<FieldElem, std::vector<size_t>> groups;
    std::vector<FieldElem> xpow(tuples.size());
    for (size_t t = 0; t < tuples.size(); ++t) {
        std::vector<mpz_class> e(tuples[t].begin(), tuples[t].end());
        xpow[t] = tuple_power(sys.base_x, e);
        groups[xpow[t]].push_back(t);
    }
    std::vector<FieldElem> node;
    std::vector<std::vector<size_t>> members;
    for (auto& [val, idx] : groups) {
        if (val.is_zero())
            fail("RankDeficient", "zero monomial value collapses distinct cosets");
        node.push_back(val);
        members.push_back(idx);
    }
    const int T = static_cast<int>(node.size());
    // rows l = 1..T: sum_T node^l Z_T = N_l
    MatN m(T, T);
    std::vector<FieldElem> rhs(static_cast<size_t>(T));
    for (int l = 1; l <= T; ++l) {
        for (int c = 0; c < T; ++c) m.at(l - 1, c) = node[static_cast<size_t>(c)].pow(l);
        rhs[static_cast<size_t>(l - 1)] = sys.samples[static_cast<size_t>(l - 1)];
    }
    std::vector<FieldElem> z;
    try {
        z = m.solve(rhs);
    } catch (const Error&) {
        fail("RankDeficient", "collapsed Vandermonde system is singular");
    }
    FieldElem out(0);
    for (int c = 0; c < T; ++c) {
        const auto& rep = tuples[members[static_cast<size_t>(c)][0]];
        std::vector<mpz_class> e(rep.begin(), rep.end());
        out += tuple_power(sys.target_y, e) * z[static_cast<size_t>(c)];
    }
    return out;
}

// forward generator for tests: N_l(x) from explicit simplex coefficients
inline std::vector<FieldElem> forward_samples(int k, int m, const std::vector<FieldElem>& xs,
                                              const std::vector<FieldElem>& zcoef) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    detail::enum_simplex(k, m, cur, tuples);
    if (zcoef.size() != tuples.size()) fail("BadShape", "coefficient count mismatch");
    std::vector<FieldElem> out;
    for (size_t l = 1; l <= tuples.size(); ++l) {
        FieldElem s(0);
        for (size_t t = 0; t < tuples.size(); ++t) {
            std::vector<mpz_class> e(tuples[t].begin(), tuples[t].end());
            s += tuple_power(xs, e).pow(static_cast<long>(l)) * zcoef[t];
        }
        out.push_back(s);
    }
    return out;
}

inline FieldElem direct_n1(int k, int m, const std::vector<FieldElem>& ys,
                           const std::vector<FieldElem>& zcoef) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    detail::enum_simplex(k, m, cur, tuples);
    FieldElem s(0);
    for (size_t t = 0; t < tuples.size(); ++t) {
        std::vector<mpz_class> e(tuples[t].begin(), tuples[t].end());
        s += tuple_power(ys, e) * zcoef[t];
    }
    return s;
}

// ---------------------------------------------------------------------------
// Moebius maps and orbits.

struct MobiusMap {
    FieldElem a, b, c, d;  // z -> (a z + b) / (c z + d)

    void check() const {
        if ((a * d - b * c).is_zero()) fail("SingularMatrix", "Moebius map needs det != 0");
    }
    FieldElem apply(const FieldElem& z) const {
        FieldElem den = c * z + d;
        if (den.is_zero()) fail("PoleHit", "Moebius map hit its pole");
        return (a * z + b) / den;
    }
    // unit-circle-preserving form e^{i t}(z + lambda)/(1 + conj(lambda) z)
    bool unit_circle_form() const {
        if (d.is_zero()) return false;
        FieldElem alpha = a / d, beta = b / d, gamma = c / d;
        if (!is_unimodular(alpha)) return false;
        return gamma == beta.conj() * alpha;
    }
    static MobiusMap disk_automorphism(const FieldElem& delta) {
        return MobiusMap{FieldElem(1), delta, delta.conj(), FieldElem(1)};
    }
};

struct OrbitReport {
    std::vector<FieldElem> points;  // psi^1(t0) .. psi^n(t0)
    bool all_distinct = true;
    bool all_unimodular = true;
    int period = 0;  // smallest p with psi^p(t0) = t0, 0 when none observed
};

inline OrbitReport mobius_orbit(const MobiusMap& map, const FieldElem& t0, int n) {
    map.check();
    OrbitReport rep;
    FieldElem z = t0;
    for (int k = 1; k <= n; ++k) {
        z = map.apply(z);
        if (!is_unimodular(z)) rep.all_unimodular = false;
        if (rep.period == 0 && z == t0) rep.period = k;
        for (const auto& prev : rep.points)
            if (prev == z) rep.all_distinct = false;
        rep.points.push_back(z);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Necessary condition for all zeros of a Laurent polynomial to lie on the
// unit circle: a_k = mu * conj(a_{n-r-k}) for some unimodular mu.

inline bool unit_circle_necessary(const std::vector<FieldElem>& coeffs, int r = 0) {
    // coeffs[j] is the coefficient of z^{j - r}, j = 0..n+r
    if (coeffs.empty()) fail("BadShape", "empty coefficient list");
    if (coeffs.front().is_zero() || coeffs.back().is_zero())
        fail("ZeroLeadingCoefficient", "lowest and highest coefficients must be nonzero");
    (void)r;  // the condition only involves the reversal symmetry of the list
    const size_t s = coeffs.size() - 1;
    FieldElem mu = coeffs[s] / coeffs[0].conj();
    if (!is_unimodular(mu)) return false;
    for (size_t j = 0; j <= s; ++j)
        if (!(coeffs[j] == mu * coeffs[s - j].conj())) return false;
    return true;
}

}  // namespace ev8
