#include "tropenum/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace tropenum {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("integer overflow in lattice arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integer overflow in lattice arithmetic");
  return r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Primitive primitive(const IntVec2& v) {
  if (v.is_zero()) throw DomainError("primitive: zero vector");
  std::int64_t g = gcd(v.x, v.y);
  return {{v.x / g, v.y / g}, g};
}

std::int64_t wedge(const IntVec2& a, const IntVec2& b) {
  return checked_add(checked_mul(a.x, b.y), -checked_mul(a.y, b.x));
}

std::int64_t dot(const IntVec2& a, const IntVec2& b) {
  return checked_add(checked_mul(a.x, b.x), checked_mul(a.y, b.y));
}

IntVec2 primitive_direction(const RatVec2& v) {
  if (sgn(v.x) == 0 && sgn(v.y) == 0) throw DomainError("primitive_direction: zero vector");
  Int l;
  mpz_lcm(l.get_mpz_t(), v.x.get_den_mpz_t(), v.y.get_den_mpz_t());
  Int a = v.x.get_num() * (l / v.x.get_den());
  Int b = v.y.get_num() * (l / v.y.get_den());
  Int g = gcd(a, b);
  a /= g;
  b /= g;
  if (!a.fits_slong_p() || !b.fits_slong_p()) throw DomainError("direction too large");
  return {a.get_si(), b.get_si()};
}

Rat wedge(const RatVec2& a, const RatVec2& b) { return a.x * b.y - a.y * b.x; }
Rat dot(const RatVec2& a, const RatVec2& b) { return a.x * b.x + a.y * b.y; }

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rs) {
  IntMatrix m(rs.size(), rs.empty() ? 0 : rs[0].size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].size() != m.cols) throw DomainError("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rs[i][j];
  }
  return m;
}

std::vector<Int> smith_invariants(IntMatrix a) {
  std::vector<Int> diag;
  std::size_t t = 0;
  const std::size_t R = a.rows, C = a.cols;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < C; ++c) std::swap(a.at(i, c), a.at(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < R; ++r) std::swap(a.at(r, i), a.at(r, j));
  };

  while (t < R && t < C) {
    // pivot: smallest nonzero |entry| in the trailing block
    bool found = false;
    std::size_t pi = 0, pj = 0;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j) {
        if (sgn(a.at(i, j)) == 0) continue;
        if (!found || abs(a.at(i, j)) < abs(a.at(pi, pj))) {
          found = true;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (sgn(a.at(i, t)) == 0) continue;
        Int q = a.at(i, t) / a.at(t, t);  // truncating division
        for (std::size_t c = t; c < C; ++c) a.at(i, c) -= q * a.at(t, c);
        if (sgn(a.at(i, t)) != 0) {
          clean = false;
          if (abs(a.at(i, t)) < abs(a.at(t, t))) swap_rows(t, i);
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (sgn(a.at(t, j)) == 0) continue;
        Int q = a.at(t, j) / a.at(t, t);
        for (std::size_t r = t; r < R; ++r) a.at(r, j) -= q * a.at(r, t);
        if (sgn(a.at(t, j)) != 0) {
          clean = false;
          if (abs(a.at(t, j)) < abs(a.at(t, t))) swap_cols(t, j);
        }
      }
      if (!clean) continue;
      // divisibility of the rest of the block by the pivot
      for (std::size_t i = t + 1; i < R && clean; ++i)
        for (std::size_t j = t + 1; j < C; ++j) {
          Int rem = a.at(i, j) % a.at(t, t);
          if (sgn(rem) != 0) {
            for (std::size_t c = t; c < C; ++c) a.at(t, c) += a.at(i, c);
            clean = false;
            break;
          }
        }
    }
    diag.push_back(abs(a.at(t, t)));
    ++t;
  }
  return diag;
}

std::optional<Int> cokernel_order(const IntMatrix& a) {
  std::vector<Int> d = smith_invariants(a);
  if (d.size() < a.rows) return std::nullopt;
  Int prod = 1;
  for (const Int& x : d) prod *= x;
  return prod;
}

Int determinant(const IntMatrix& a) {
  if (a.rows != a.cols) throw DomainError("determinant: matrix not square");
  // fraction-free Bareiss elimination
  const std::size_t n = a.rows;
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m.at(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m.at(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

AffineSolution solve_affine(const RatMatrix& a, const std::vector<Rat>& b) {
  if (b.size() != a.rows) throw DomainError("solve_affine: dimension mismatch");
  const std::size_t R = a.rows, C = a.cols;
  // augmented matrix, reduced row echelon form
  RatMatrix m(R, C + 1);
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) m.at(i, j) = a.at(i, j);
    m.at(i, C) = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t p = row;
    while (p < R && sgn(m.at(p, col)) == 0) ++p;
    if (p == R) continue;
    if (p != row)
      for (std::size_t c = 0; c <= C; ++c) std::swap(m.at(p, c), m.at(row, c));
    Rat inv = 1 / m.at(row, col);
    for (std::size_t c = col; c <= C; ++c) m.at(row, c) *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || sgn(m.at(i, col)) == 0) continue;
      Rat f = m.at(i, col);
      for (std::size_t c = col; c <= C; ++c) m.at(i, c) -= f * m.at(row, c);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  AffineSolution out;
  for (std::size_t i = row; i < R; ++i)
    if (sgn(m.at(i, C)) != 0) {
      out.kind = AffineSolution::Kind::None;
      return out;
    }
  out.particular.assign(C, 0);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) out.particular[pivot_cols[i]] = m.at(i, C);

  std::vector<bool> is_pivot(C, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(C, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m.at(i, f);
    out.kernel.push_back(std::move(v));
  }
  out.kind = out.kernel.empty() ? AffineSolution::Kind::Unique : AffineSolution::Kind::Family;
  return out;
}

std::string to_string(const Rat& q) { return q.get_str(); }

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ParseError("not a rational: '" + s + "'");
  if (sgn(q.get_den()) == 0) throw ParseError("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const RatVec2& v) { return "(" + to_string(v.x) + ", " + to_string(v.y) + ")"; }

}  // namespace tropenum
