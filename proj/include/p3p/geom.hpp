#ifndef P3P_GEOM_HPP
#define P3P_GEOM_HPP

#include <array>
#include <cmath>
#include <optional>

// Minimal fixed-size linear algebra for the solver. Everything here is a
// plain value type; no dynamic allocation anywhere.

namespace p3p {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3 &u, const Vec3 &v) { return {u.x + v.x, u.y + v.y, u.z + v.z}; }
inline Vec3 operator-(const Vec3 &u, const Vec3 &v) { return {u.x - v.x, u.y - v.y, u.z - v.z}; }
inline Vec3 operator*(double s, const Vec3 &v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(const Vec3 &v, double s) { return s * v; }
inline Vec3 operator-(const Vec3 &v) { return {-v.x, -v.y, -v.z}; }

inline double dot(const Vec3 &u, const Vec3 &v) { return u.x * v.x + u.y * v.y + u.z * v.z; }

inline Vec3 cross(const Vec3 &u, const Vec3 &v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

inline double squared_norm(const Vec3 &v) { return dot(v, v); }
inline double norm(const Vec3 &v) { return std::sqrt(dot(v, v)); }

// Unit vector parallel to v; empty when |v| = 0.
inline std::optional<Vec3> normalize(const Vec3 &v) {
    const double n = norm(v);
    if (n == 0.0) {
        return std::nullopt;
    }
    const double inv = 1.0 / n;
    return Vec3{v.x * inv, v.y * inv, v.z * inv};
}

// 3x3 matrix, row-major storage.
struct Mat3 {
    std::array<double, 9> m{};

    double &operator()(int r, int c) { return m[3 * r + c]; }
    double operator()(int r, int c) const { return m[3 * r + c]; }

    static Mat3 identity() { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

    static Mat3 from_rows(const Vec3 &r0, const Vec3 &r1, const Vec3 &r2) {
        return Mat3{{r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z}};
    }

    static Mat3 from_cols(const Vec3 &c0, const Vec3 &c1, const Vec3 &c2) {
        return Mat3{{c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z}};
    }

    Vec3 col(int c) const { return {m[c], m[3 + c], m[6 + c]}; }
    Vec3 row(int r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }

    Mat3 transpose() const {
        return Mat3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }

    double max_abs() const {
        double s = 0.0;
        for (double v : m) {
            s = std::max(s, std::abs(v));
        }
        return s;
    }
};

inline Vec3 operator*(const Mat3 &A, const Vec3 &v) {
    return {A.m[0] * v.x + A.m[1] * v.y + A.m[2] * v.z,
            A.m[3] * v.x + A.m[4] * v.y + A.m[5] * v.z,
            A.m[6] * v.x + A.m[7] * v.y + A.m[8] * v.z};
}

inline Mat3 operator*(const Mat3 &A, const Mat3 &B) {
    Mat3 C;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            C(r, c) = A(r, 0) * B(0, c) + A(r, 1) * B(1, c) + A(r, 2) * B(2, c);
        }
    }
    return C;
}

inline Mat3 operator-(const Mat3 &A, const Mat3 &B) {
    Mat3 C;
    for (int i = 0; i < 9; ++i) {
        C.m[i] = A.m[i] - B.m[i];
    }
    return C;
}

inline double det(const Mat3 &A) {
    return A.m[0] * (A.m[4] * A.m[8] - A.m[5] * A.m[7]) -
           A.m[1] * (A.m[3] * A.m[8] - A.m[5] * A.m[6]) +
           A.m[2] * (A.m[3] * A.m[7] - A.m[4] * A.m[6]);
}

// Pivot magnitudes below kSingularRel * max|A_ij| are treated as singular.
inline constexpr double kSingularRel = 1e-13;

// Solves A * s = rhs by partial-pivot elimination; empty on singular A.
inline std::optional<Vec3> solve3(const Mat3 &A, const Vec3 &rhs) {
    const double tol = kSingularRel * A.max_abs();
    double a[3][4] = {{A.m[0], A.m[1], A.m[2], rhs.x},
                      {A.m[3], A.m[4], A.m[5], rhs.y},
                      {A.m[6], A.m[7], A.m[8], rhs.z}};
    for (int k = 0; k < 3; ++k) {
        int piv = k;
        for (int r = k + 1; r < 3; ++r) {
            if (std::abs(a[r][k]) > std::abs(a[piv][k])) {
                piv = r;
            }
        }
        if (std::abs(a[piv][k]) <= tol) {
            return std::nullopt;
        }
        if (piv != k) {
            for (int c = k; c < 4; ++c) {
                std::swap(a[piv][c], a[k][c]);
            }
        }
        for (int r = k + 1; r < 3; ++r) {
            const double f = a[r][k] / a[k][k];
            for (int c = k + 1; c < 4; ++c) {
                a[r][c] -= f * a[k][c];
            }
        }
    }
    Vec3 s;
    s.z = a[2][3] / a[2][2];
    s.y = (a[1][3] - a[1][2] * s.z) / a[1][1];
    s.x = (a[0][3] - a[0][1] * s.y - a[0][2] * s.z) / a[0][0];
    return s;
}

// Inverse by partial-pivot elimination on [A | I]; empty on singular A.
inline std::optional<Mat3> invert3(const Mat3 &A) {
    const double tol = kSingularRel * A.max_abs();
    double a[3][6] = {{A.m[0], A.m[1], A.m[2], 1, 0, 0},
                      {A.m[3], A.m[4], A.m[5], 0, 1, 0},
                      {A.m[6], A.m[7], A.m[8], 0, 0, 1}};
    for (int k = 0; k < 3; ++k) {
        int piv = k;
        for (int r = k + 1; r < 3; ++r) {
            if (std::abs(a[r][k]) > std::abs(a[piv][k])) {
                piv = r;
            }
        }
        if (std::abs(a[piv][k]) <= tol) {
            return std::nullopt;
        }
        if (piv != k) {
            for (int c = 0; c < 6; ++c) {
                std::swap(a[piv][c], a[k][c]);
            }
        }
        const double inv_p = 1.0 / a[k][k];
        for (int c = 0; c < 6; ++c) {
            a[k][c] *= inv_p;
        }
        for (int r = 0; r < 3; ++r) {
            if (r == k) {
                continue;
            }
            const double f = a[r][k];
            for (int c = 0; c < 6; ++c) {
                a[r][c] -= f * a[k][c];
            }
        }
    }
    Mat3 inv;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            inv(r, c) = a[r][c + 3];
        }
    }
    return inv;
}

// Homogeneous point (x : y : w) in the plane.
struct HomPoint2 {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
};

// Homogeneous line coefficients: points p with a*px + b*py + c*pw = 0.
struct HomLine2 {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

// World-to-camera rigid transform.
struct Pose {
    Mat3 R;
    Vec3 t;
};

} // namespace p3p

#endif
