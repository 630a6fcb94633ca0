#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropenum/errors.hpp"

namespace tropenum {

using Int = mpz_class;
using Rat = mpq_class;

// Overflow-checked machine integers. Lattice directions stay tiny in practice,
// but an overflow must never pass silently.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

struct IntVec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const IntVec2&, const IntVec2&) = default;
  friend auto operator<=>(const IntVec2&, const IntVec2&) = default;

  IntVec2 operator+(const IntVec2& o) const { return {checked_add(x, o.x), checked_add(y, o.y)}; }
  IntVec2 operator-(const IntVec2& o) const { return {checked_add(x, -o.x), checked_add(y, -o.y)}; }
  IntVec2 operator-() const { return {-x, -y}; }
  IntVec2& operator+=(const IntVec2& o) { return *this = *this + o; }
  IntVec2& operator-=(const IntVec2& o) { return *this = *this - o; }
  bool is_zero() const { return x == 0 && y == 0; }
};

inline IntVec2 operator*(std::int64_t k, const IntVec2& v) {
  return {checked_mul(k, v.x), checked_mul(k, v.y)};
}

struct RatVec2 {
  Rat x;
  Rat y;

  RatVec2() = default;
  RatVec2(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}
  explicit RatVec2(const IntVec2& v) : x(static_cast<long>(v.x)), y(static_cast<long>(v.y)) {}

  friend bool operator==(const RatVec2& a, const RatVec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const RatVec2& a, const RatVec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }

  RatVec2 operator+(const RatVec2& o) const { return {x + o.x, y + o.y}; }
  RatVec2 operator-(const RatVec2& o) const { return {x - o.x, y - o.y}; }
  RatVec2 operator-() const { return {-x, -y}; }
};

inline RatVec2 operator*(const Rat& k, const RatVec2& v) { return {k * v.x, k * v.y}; }
inline RatVec2 operator+(const RatVec2& p, const IntVec2& v) { return p + RatVec2(v); }

struct Primitive {
  IntVec2 p;
  std::int64_t k = 0;
};

// v = k·p with p primitive and k > 0.
Primitive primitive(const IntVec2& v);
std::int64_t gcd(std::int64_t a, std::int64_t b);

std::int64_t wedge(const IntVec2& a, const IntVec2& b);
std::int64_t dot(const IntVec2& a, const IntVec2& b);
Rat wedge(const RatVec2& a, const RatVec2& b);
Rat dot(const RatVec2& a, const RatVec2& b);

// Primitive integer vector positively proportional to a nonzero rational vector.
IntVec2 primitive_direction(const RatVec2& v);

// Rotation by +90 degrees.
inline IntVec2 rot90(const IntVec2& v) { return {-v.y, v.x}; }

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> entries;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rs);

  Int& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

// Nonzero invariant factors d_1 | d_2 | ... (all positive).
std::vector<Int> smith_invariants(IntMatrix a);

// |coker(A: Z^cols -> Z^rows)|; nullopt when the cokernel has a free part.
std::optional<Int> cokernel_order(const IntMatrix& a);

Int determinant(const IntMatrix& a);

struct RatMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rat> entries;

  RatMatrix() = default;
  RatMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}
  Rat& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

struct AffineSolution {
  enum class Kind { Unique, None, Family };
  Kind kind = Kind::None;
  std::vector<Rat> particular;           // empty for None
  std::vector<std::vector<Rat>> kernel;  // nonempty only for Family
};

AffineSolution solve_affine(const RatMatrix& a, const std::vector<Rat>& b);

std::string to_string(const Rat& q);  // "p/q", or "p" when integral
Rat rat_from_string(const std::string& s);
std::string to_string(const RatVec2& v);

}  // namespace tropenum
