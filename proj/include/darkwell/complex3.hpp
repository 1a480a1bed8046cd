// complex3.hpp - minimal complex 3-vector / 3x3 matrix arithmetic
#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace darkwell {

using cplx = std::complex<double>;

using Vec3 = std::array<cplx, 3>;

// Row-major 3x3 complex matrix, passed by value everywhere.
struct Mat3 {
    std::array<cplx, 9> a{};

    cplx& operator()(int r, int c) { return a[3 * r + c]; }
    const cplx& operator()(int r, int c) const { return a[3 * r + c]; }

    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }
};

inline Mat3 operator+(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

inline Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

inline Mat3 operator*(cplx s, const Mat3& x) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = s * x.a[i];
    return r;
}

inline Mat3 operator*(double s, const Mat3& x) { return cplx(s, 0.0) * x; }

inline Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
    return r;
}

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
    return {m(0, 0) * v[0] + m(0, 1) * v[1] + m(0, 2) * v[2],
            m(1, 0) * v[0] + m(1, 1) * v[1] + m(1, 2) * v[2],
            m(2, 0) * v[0] + m(2, 1) * v[1] + m(2, 2) * v[2]};
}

inline Vec3 operator+(const Vec3& x, const Vec3& y) {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2]};
}

inline Vec3 operator-(const Vec3& x, const Vec3& y) {
    return {x[0] - y[0], x[1] - y[1], x[2] - y[2]};
}

inline Vec3 operator*(cplx s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

inline Vec3 operator*(double s, const Vec3& v) { return cplx(s, 0.0) * v; }

inline Mat3 adjoint(const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

// max column sum of |a_ij|
inline double one_norm(const Mat3& m) {
    double best = 0.0;
    for (int j = 0; j < 3; ++j) {
        double col = std::abs(m(0, j)) + std::abs(m(1, j)) + std::abs(m(2, j));
        best = std::max(best, col);
    }
    return best;
}

inline double max_abs(const Mat3& m) {
    double best = 0.0;
    for (const auto& z : m.a) best = std::max(best, std::abs(z));
    return best;
}

// squared Euclidean norm
inline double norm2(const Vec3& v) {
    return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

// conj(x) . y
inline cplx inner(const Vec3& x, const Vec3& y) {
    return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1] + std::conj(x[2]) * y[2];
}

inline double dist_inf(const Vec3& x, const Vec3& y) {
    double best = 0.0;
    for (int i = 0; i < 3; ++i) best = std::max(best, std::abs(x[i] - y[i]));
    return best;
}

}  // namespace darkwell
