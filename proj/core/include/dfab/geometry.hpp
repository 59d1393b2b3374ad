#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>

namespace dfab {

/// Point or direction in 3D. Lengths are centimeters unless stated otherwise.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

/// Integer lattice index of one grid cell. Ordered lexicographically by (i, j, k).
struct CellIndex {
  int i = 0;
  int j = 0;
  int k = 0;

  friend constexpr auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

constexpr CellIndex operator+(const CellIndex& a, const CellIndex& b) {
  return {a.i + b.i, a.j + b.j, a.k + b.k};
}

constexpr int manhattan(const CellIndex& a, const CellIndex& b) {
  auto abs = [](int v) { return v < 0 ? -v : v; };
  return abs(a.i - b.i) + abs(a.j - b.j) + abs(a.k - b.k);
}

/// The four in-layer face neighbors offsets (±i, ±j).
inline constexpr std::array<CellIndex, 4> kHorizontalNeighbors{{
    {-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}}};

/// All six face neighbor offsets.
inline constexpr std::array<CellIndex, 6> kFaceNeighbors{{
    {-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}}};

}  // namespace dfab
