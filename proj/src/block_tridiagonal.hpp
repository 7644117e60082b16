#pragma once

// 2x2 block-tridiagonal solver used by the banded implicit backend.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace swlp::detail {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    double det() const { return a11 * a22 - a12 * a21; }
    Mat2 inverse() const {
        const double d = det();
        if (d == 0.0 || !std::isfinite(d)) throw std::runtime_error("singular 2x2 pivot block");
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
};

inline Mat2 operator*(const Mat2& A, const Mat2& B) {
    return {A.a11 * B.a11 + A.a12 * B.a21, A.a11 * B.a12 + A.a12 * B.a22,
            A.a21 * B.a11 + A.a22 * B.a21, A.a21 * B.a12 + A.a22 * B.a22};
}
inline Mat2 operator-(const Mat2& A, const Mat2& B) {
    return {A.a11 - B.a11, A.a12 - B.a12, A.a21 - B.a21, A.a22 - B.a22};
}
inline Vec2 operator*(const Mat2& A, const Vec2& v) { return {A.a11 * v.x + A.a12 * v.y, A.a21 * v.x + A.a22 * v.y}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }

/// Rows lower_j X_{j-1} + diag_j X_j + upper_j X_{j+1} = rhs_j.
/// lower_0 and upper_{n-1} are only read in the cyclic case (X_{-1} = X_{n-1}, X_n = X_0).
struct BlockTridiagonal {
    std::vector<Mat2> lower, diag, upper;

    std::size_t size() const { return diag.size(); }
};

class BlockThomas {
public:
    explicit BlockThomas(const BlockTridiagonal& sys) : sys_(sys) {
        const std::size_t n = sys.size();
        pivot_inv_.resize(n);
        multiplier_.resize(n);
        pivot_inv_[0] = sys.diag[0].inverse();
        for (std::size_t j = 1; j < n; ++j) {
            multiplier_[j] = sys.lower[j] * pivot_inv_[j - 1];
            pivot_inv_[j] = (sys.diag[j] - multiplier_[j] * sys.upper[j - 1]).inverse();
        }
    }

    std::vector<Vec2> solve(std::vector<Vec2> r) const {
        const std::size_t n = r.size();
        for (std::size_t j = 1; j < n; ++j) r[j] = r[j] - multiplier_[j] * r[j - 1];
        r[n - 1] = pivot_inv_[n - 1] * r[n - 1];
        for (std::size_t j = n - 1; j-- > 0;) r[j] = pivot_inv_[j] * (r[j] - sys_.upper[j] * r[j + 1]);
        return r;
    }

private:
    const BlockTridiagonal& sys_;
    std::vector<Mat2> pivot_inv_;
    std::vector<Mat2> multiplier_;
};

/// Dense Gaussian elimination with partial pivoting on a 4x4 system.
inline std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> A, std::array<double, 4> b) {
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < 4; ++r)
            if (std::abs(A[r][c]) > std::abs(A[p][c])) p = r;
        std::swap(A[c], A[p]);
        std::swap(b[c], b[p]);
        if (A[c][c] == 0.0) throw std::runtime_error("singular cyclic closure");
        for (std::size_t r = c + 1; r < 4; ++r) {
            const double f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < 4; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    std::array<double, 4> x{};
    for (std::size_t c = 4; c-- > 0;) {
        double s = b[c];
        for (std::size_t k = c + 1; k < 4; ++k) s -= A[c][k] * x[k];
        x[c] = s / A[c][c];
    }
    return x;
}

inline std::vector<Vec2> solve_block_tridiagonal(const BlockTridiagonal& sys, const std::vector<Vec2>& rhs,
                                                 bool cyclic) {
    const std::size_t n = sys.size();
    if (!cyclic) return BlockThomas(sys).solve(rhs);
    if (n == 1) {
        const Mat2 m{sys.lower[0].a11 + sys.diag[0].a11 + sys.upper[0].a11,
                     sys.lower[0].a12 + sys.diag[0].a12 + sys.upper[0].a12,
                     sys.lower[0].a21 + sys.diag[0].a21 + sys.upper[0].a21,
                     sys.lower[0].a22 + sys.diag[0].a22 + sys.upper[0].a22};
        return {m.inverse() * rhs[0]};
    }
    // X = Y + sum_i P_i YP_i + sum_i Q_i YQ_i with P = X_{n-1} entering row 0 and
    // Q = X_0 entering row n-1; close with a 4x4 system for (P, Q).
    const BlockThomas lu(sys);
    const auto base = lu.solve(rhs);
    std::array<std::vector<Vec2>, 4> infl;
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<Vec2> e(n);
        const Vec2 unit = (i % 2 == 0) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
        if (i < 2) {
            e[0] = Vec2{} - sys.lower[0] * unit;
        } else {
            e[n - 1] = Vec2{} - sys.upper[n - 1] * unit;
        }
        infl[i] = lu.solve(std::move(e));
    }
    std::array<std::array<double, 4>, 4> A{};
    std::array<double, 4> b{base[n - 1].x, base[n - 1].y, base[0].x, base[0].y};
    for (std::size_t i = 0; i < 4; ++i) {
        A[0][i] = -infl[i][n - 1].x;
        A[1][i] = -infl[i][n - 1].y;
        A[2][i] = -infl[i][0].x;
        A[3][i] = -infl[i][0].y;
        A[i][i] += 1.0;
    }
    const auto pq = solve4(A, b);
    std::vector<Vec2> x = base;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < 4; ++i) {
            x[j].x += pq[i] * infl[i][j].x;
            x[j].y += pq[i] * infl[i][j].y;
        }
    }
    return x;
}

}  // namespace swlp::detail
