#pragma once

// Seeded random generators for signatures, instances and transforms; shared
// by the selftest harness and the CLI's gen subcommand.

#include <random>

#include "classify.hpp"

namespace ev8 {

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(uint64_t seed) : engine(seed) {}
    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine);
    }
    Q rational(int lo = -3, int hi = 3, bool nonzero = false) {
        int num = uniform(lo, hi);
        while (nonzero && num == 0) num = uniform(lo, hi);
        int den = uniform(1, 3);
        Q q(num, den);
        q.canonicalize();
        return q;
    }
    FieldElem small_elem(bool gaussian = true) {
        FieldElem r{rational()};
        if (gaussian && uniform(0, 2) == 0) r += FieldElem(rational()) * FieldElem::i();
        return r;
    }
};

inline Sig4 gen_eightv(Rng& rng, bool full_support = false) {
    auto pick = [&] {
        FieldElem e{rng.rational()};
        while (full_support && e.is_zero()) e = FieldElem{rng.rational()};
        return e;
    };
    return make_eight_vertex({pick(), pick(), pick(), pick(), pick(), pick(), pick(), pick()});
}

// random affine signature from a quadratic form and optional constraints
inline Sig4 gen_affine(Rng& rng) {
    QuadForm q;
    q.n = 4;
    q.a0 = rng.uniform(0, 3);
    for (int i = 0; i < 4; ++i) q.lin[static_cast<size_t>(i)] = rng.uniform(0, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            q.cross[static_cast<size_t>(i)][static_cast<size_t>(j)] = 2 * rng.uniform(0, 1);
    std::vector<int> rows;
    int nrows = rng.uniform(0, 1);
    for (int k = 0; k < nrows; ++k) rows.push_back(rng.uniform(1, 15) * 2 + rng.uniform(0, 1));
    FieldElem lambda{rng.rational(-3, 3, true)};
    Sig4 f;
    for (int m = 0; m < 16; ++m) {
        bool sat = true;
        for (int row : rows) {
            int rv = row >> 1, rc = row & 1;
            if (__builtin_popcount(static_cast<unsigned>(rv & m)) % 2 != rc) sat = false;
        }
        if (sat) f.v[static_cast<size_t>(m)] = lambda * FieldElem::i().pow(q.eval(m));
    }
    return f;
}

// random product-type signature: antipodal blocks over a random partition
inline Sig4 gen_product(Rng& rng) {
    static const std::vector<std::vector<int>> partitions = {
        {0b1111},          {0b1100, 0b0011},       {0b1010, 0b0101},
        {0b1001, 0b0110},  {0b1000, 0b0111},       {0b1110, 0b0001},
        {0b1000, 0b0100, 0b0011}, {0b1000, 0b0100, 0b0010, 0b0001}};
    const auto& part = partitions[static_cast<size_t>(rng.uniform(0, static_cast<int>(partitions.size()) - 1))];
    Sig4 f;
    for (int m = 0; m < 16; ++m) f.v[static_cast<size_t>(m)] = FieldElem(1);
    for (int blockmask : part) {
        int nbits = __builtin_popcount(static_cast<unsigned>(blockmask));
        int alpha_local = rng.uniform(0, (1 << nbits) - 1);
        FieldElem w0{rng.rational()}, w1{rng.rational()};
        int alpha = 0, bit = 0;
        for (int p = 3; p >= 0; --p)
            if ((blockmask >> p) & 1) {
                if ((alpha_local >> bit) & 1) alpha |= 1 << p;
                ++bit;
            }
        for (int m = 0; m < 16; ++m) {
            int mb = m & blockmask;
            if (mb == alpha) {
                f.v[static_cast<size_t>(m)] *= w0;
            } else if (mb == (alpha ^ blockmask)) {
                f.v[static_cast<size_t>(m)] *= w1;
            } else {
                f.v[static_cast<size_t>(m)] = FieldElem(0);
            }
        }
    }
    return f;
}

// random matchgate signature: free entries with x chosen for det balance
inline Sig4 gen_matchgate(Rng& rng) {
    while (true) {
        FieldElem a{rng.rational(-3, 3, true)}, b{rng.rational()}, c{rng.rational()},
            d{rng.rational()}, w{rng.rational()}, y{rng.rational()}, z{rng.rational()};
        FieldElem x = (c * z - d * w + b * y) / a;
        Sig4 f = make_eight_vertex({a, b, c, d, w, x, y, z});
        if (support(f).size() >= 2) return f;
    }
}

// random small planar 4-regular instance; max_edges limits the brute cost
inline PlanarGrid gen_grid(Rng& rng, const Sig4& f, int max_edges = 24) {
    while (true) {
        switch (rng.uniform(0, 4)) {
            case 0: return parallel_multi(4, f);
            case 1: return ring_doubled(rng.uniform(3, 5), f);
            case 2: {
                PlanarGrid g = octahedron(f);
                if (12 <= max_edges) return g;
                break;
            }
            case 3: {
                int m = rng.uniform(1, 2), n = rng.uniform(1, 2);
                PlanarGrid g = grid_medial(m, n, f);
                if (static_cast<int>(g.edges.size()) <= max_edges) return g;
                break;
            }
            default: return ring_doubled(3, f);
        }
    }
}

inline Transform2 gen_transform(Rng& rng) {
    while (true) {
        Mat2 m = mat_rows(rng.small_elem() + zeta8_pow(rng.uniform(0, 7)), rng.small_elem(),
                          rng.small_elem(), rng.small_elem() + FieldElem(rng.uniform(1, 2)));
        if (!m.det().is_zero()) return make_transform(m, "random");
    }
}

inline EightVertexParams gen_params(Rng& rng, int lo = -2, int hi = 2) {
    auto pick = [&] { return FieldElem(rng.uniform(lo, hi)); };
    return EightVertexParams{pick(), pick(), pick(), pick(), pick(), pick(), pick(), pick()};
}

}  // namespace ev8
