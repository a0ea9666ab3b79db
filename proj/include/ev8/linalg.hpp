#pragma once

// Small exact matrices over Q(zeta8): fixed 2x2 / 4x4 plus a dynamic matrix
// with plain Gaussian elimination (the field is exact, no pivot growth
// concerns at desk scale).

#include <vector>

#include "field.hpp"

namespace ev8 {

struct Mat2 {
    std::array<std::array<FieldElem, 2>, 2> m{};

    static Mat2 identity() {
        Mat2 r;
        r.m[0][0] = r.m[1][1] = FieldElem(1);
        return r;
    }
    FieldElem det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    Mat2 transpose() const {
        Mat2 r = *this;
        std::swap(r.m[0][1], r.m[1][0]);
        return r;
    }
    Mat2 inv() const {
        FieldElem d = det();
        if (d.is_zero()) fail("SingularMatrix", "2x2 inverse of singular matrix");
        Mat2 r;
        FieldElem di = d.inv();
        r.m[0][0] = m[1][1] * di;
        r.m[0][1] = -m[0][1] * di;
        r.m[1][0] = -m[1][0] * di;
        r.m[1][1] = m[0][0] * di;
        return r;
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) r.m[i][j] += a.m[i][k] * b.m[k][j];
        return r;
    }
    friend Mat2 operator*(const FieldElem& s, const Mat2& a) {
        Mat2 r = a;
        for (auto& row : r.m)
            for (auto& x : row) x = s * x;
        return r;
    }
    friend bool operator==(const Mat2& a, const Mat2& b) { return a.m == b.m; }
};

struct Mat4 {
    std::array<std::array<FieldElem, 4>, 4> m{};

    static Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r.m[i][i] = FieldElem(1);
        return r;
    }
    Mat4 transpose() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
        return r;
    }
    friend Mat4 operator*(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) {
                if (a.m[i][k].is_zero()) continue;
                for (int j = 0; j < 4; ++j) r.m[i][j] += a.m[i][k] * b.m[k][j];
            }
        return r;
    }
    friend Mat4 operator*(const FieldElem& s, const Mat4& a) {
        Mat4 r = a;
        for (auto& row : r.m)
            for (auto& x : row) x = s * x;
        return r;
    }
    friend bool operator==(const Mat4& a, const Mat4& b) { return a.m == b.m; }
};

// Kronecker product of 2x2 matrices, row/col index bits (i1 i2), (j1 j2).
inline Mat4 tensor2(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int j2 = 0; j2 < 2; ++j2)
                    r.m[i1 * 2 + i2][j1 * 2 + j2] = a.m[i1][j1] * b.m[i2][j2];
    return r;
}

struct MatN {
    int rows = 0, cols = 0;
    std::vector<FieldElem> a;

    MatN() = default;
    MatN(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    FieldElem& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const FieldElem& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    FieldElem det() const {
        if (rows != cols) fail("BadShape", "determinant of non-square matrix");
        MatN w = *this;
        FieldElem d(1);
        for (int col = 0; col < cols; ++col) {
            int piv = -1;
            for (int r = col; r < rows; ++r)
                if (!w.at(r, col).is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) return FieldElem(0);
            if (piv != col) {
                for (int c = 0; c < cols; ++c) std::swap(w.at(piv, c), w.at(col, c));
                d = -d;
            }
            d *= w.at(col, col);
            FieldElem inv = w.at(col, col).inv();
            for (int r = col + 1; r < rows; ++r) {
                if (w.at(r, col).is_zero()) continue;
                FieldElem f = w.at(r, col) * inv;
                for (int c = col; c < cols; ++c) w.at(r, c) -= f * w.at(col, c);
            }
        }
        return d;
    }

    // Solve A x = b; A must be square nonsingular.
    std::vector<FieldElem> solve(std::vector<FieldElem> b) const {
        if (rows != cols || static_cast<int>(b.size()) != rows)
            fail("BadShape", "solve shape mismatch");
        MatN w = *this;
        for (int col = 0; col < cols; ++col) {
            int piv = -1;
            for (int r = col; r < rows; ++r)
                if (!w.at(r, col).is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) fail("RankDeficient", "singular linear system");
            if (piv != col) {
                for (int c = 0; c < cols; ++c) std::swap(w.at(piv, c), w.at(col, c));
                std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(col)]);
            }
            FieldElem inv = w.at(col, col).inv();
            for (int r = 0; r < rows; ++r) {
                if (r == col || w.at(r, col).is_zero()) continue;
                FieldElem f = w.at(r, col) * inv;
                for (int c = col; c < cols; ++c) w.at(r, c) -= f * w.at(col, c);
                b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
            }
        }
        std::vector<FieldElem> x(static_cast<size_t>(cols));
        for (int r = 0; r < rows; ++r) x[static_cast<size_t>(r)] = b[static_cast<size_t>(r)] / w.at(r, r);
        return x;
    }
};

}  // namespace ev8
