#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace ssguard {

/// 3-component vector used for points in similarity coordinates and field values.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr const double& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    constexpr double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const { const double n = norm(); return {x / n, y / n, z / n}; }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

/// Row-major 3x3 matrix; m[i] is row i. Used for velocity gradients and flow-map Jacobians.
struct Mat3 {
    std::array<Vec3, 3> row{};

    static constexpr Mat3 identity() { return {{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}}; }
    static constexpr Mat3 zero() { return {}; }

    constexpr double operator()(std::size_t i, std::size_t j) const { return row[i][j]; }
    constexpr double& operator()(std::size_t i, std::size_t j) { return row[i][j]; }

    constexpr Vec3 operator*(const Vec3& v) const {
        return {row[0].dot(v), row[1].dot(v), row[2].dot(v)};
    }
    constexpr Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i) r.row[i] = row[i] + o.row[i];
        return r;
    }
    constexpr Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i) r.row[i] = row[i] - o.row[i];
        return r;
    }
    constexpr Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i) r.row[i] = row[i] * s;
        return r;
    }
    constexpr Mat3 matmul(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = row[i].x * o(0, j) + row[i].y * o(1, j) + row[i].z * o(2, j);
        return r;
    }
    constexpr Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
    constexpr Mat3 sym() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
        return r;
    }
    constexpr double trace() const { return row[0].x + row[1].y + row[2].z; }
    constexpr double det() const {
        return row[0].dot(row[1].cross(row[2]));
    }
    Mat3 inverse() const {
        const Vec3 c0 = row[1].cross(row[2]);
        const Vec3 c1 = row[2].cross(row[0]);
        const Vec3 c2 = row[0].cross(row[1]);
        const double d = row[0].dot(c0);
        Mat3 r{{Vec3{c0.x, c1.x, c2.x}, Vec3{c0.y, c1.y, c2.y}, Vec3{c0.z, c1.z, c2.z}}};
        return r * (1.0 / d);
    }
    double frobenius() const {
        return std::sqrt(row[0].norm2() + row[1].norm2() + row[2].norm2());
    }
    constexpr Vec3 contract_left_right(const Vec3& v) const {
        // v_i M_ij v_j as a scalar lives in callers; this returns M^T v for convenience
        return {row[0].x * v.x + row[1].x * v.y + row[2].x * v.z,
                row[0].y * v.x + row[1].y * v.y + row[2].y * v.z,
                row[0].z * v.x + row[1].z * v.y + row[2].z * v.z};
    }
};

inline double quadratic_form(const Vec3& a, const Mat3& m, const Vec3& b) {
    return a.dot(m * b);
}

/// Eigenvalues of a symmetric 3x3 matrix, ascending. Trigonometric closed form.
std::array<double, 3> sym3_eigenvalues(const Mat3& s);

}  // namespace ssguard
