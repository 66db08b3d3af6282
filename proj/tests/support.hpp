#pragma once

// Shared generators and independent oracles for the test binaries.

#include "isomono/isomono.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace isomono;

inline constexpr unsigned kSeed = 20240611;
inline constexpr int kAlgebraCases = 1000;
inline constexpr int kBraidTuples = 100;

class Gen {
 public:
  explicit Gen(unsigned seed = kSeed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Q rational(int span = 5) {
    int n = integer(-span, span), d = integer(1, span);
    Q q(n, d);
    q.canonicalize();
    return q;
  }
  Q nonzero_rational(int span = 5) {
    Q q;
    do q = rational(span);
    while (q == 0);
    return q;
  }

  // terms over the given variable indices with exponents in [lo, hi]
  LaurentPoly poly(const Ctx& ctx, const std::vector<int>& vars, int terms, int lo, int hi) {
    LaurentPoly p(ctx);
    for (int k = 0; k < terms; ++k) {
      Exps e(ctx->size(), 0);
      for (int v : vars) e[v] = integer(lo, hi);
      p += LaurentPoly::monomial(ctx, e, rational());
    }
    return p;
  }
  LaurentPoly nonzero_poly(const Ctx& ctx, const std::vector<int>& vars, int terms, int lo, int hi) {
    LaurentPoly p(ctx);
    while (p.is_zero()) p = poly(ctx, vars, terms, lo, hi);
    return p;
  }
  LaurentPoly signed_monomial(const Ctx& ctx, const std::vector<int>& vars, int lo, int hi) {
    Exps e(ctx->size(), 0);
    for (int v : vars) e[v] = integer(lo, hi);
    return LaurentPoly::monomial(ctx, e, integer(0, 1) ? 1 : -1);
  }
  // polynomial numerator over one or two polynomial factors
  FF fraction(const Ctx& ctx, const std::vector<int>& vars) {
    LaurentPoly n = poly(ctx, vars, integer(1, 3), 0, 2);
    std::vector<std::pair<LaurentPoly, int>> den;
    int k = integer(0, 2);
    for (int i = 0; i < k; ++i) {
      LaurentPoly d = poly(ctx, vars, 2, 0, 2) + LaurentPoly(ctx, integer(1, 3));
      if (d.is_zero() || d.is_constant()) continue;
      den.push_back({d, integer(1, 2)});
    }
    return FF(n, den);
  }
  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

// ---------------------------------------------------------------- dual-number evaluation

struct Dual {
  Q v, d;
  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
  Dual inverse() const { return {1 / v, -d / (v * v)}; }
  Dual pow(int n) const {
    Dual base = n < 0 ? inverse() : *this, r{1, 0};
    for (int k = 0; k < std::abs(n); ++k) r = r * base;
    return r;
  }
};

// value and derivative along variable `dir` (-1 for none); nullopt on a pole
inline std::optional<Dual> eval(const LaurentPoly& p, const std::vector<Q>& pt, int dir) {
  Dual acc{0, 0};
  for (const auto& [e, c] : p.terms()) {
    Dual t{c, 0};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Dual x{pt[i], static_cast<int>(i) == dir ? Q(1) : Q(0)};
      if (x.v == 0 && e[i] < 0) return std::nullopt;
      t = t * x.pow(e[i]);
    }
    acc = acc + t;
  }
  return acc;
}

inline std::optional<Dual> eval(const FF& f, const std::vector<Q>& pt, int dir) {
  auto n = eval(f.num(), pt, dir);
  if (!n) return std::nullopt;
  Dual acc = *n;
  for (const auto& [g, e] : f.den()) {
    auto h = eval(g, pt, dir);
    if (!h || h->v == 0) return std::nullopt;
    acc = acc * h->pow(-e);
  }
  return acc;
}

inline std::optional<Q> value(const FF& f, const std::vector<Q>& pt) {
  auto d = eval(f, pt, -1);
  if (!d) return std::nullopt;
  return d->v;
}

inline std::vector<Q> random_point(Gen& g, const Ctx& ctx, int span = 7) {
  std::vector<Q> pt(ctx->size());
  for (auto& q : pt) q = g.nonzero_rational(span);
  return pt;
}

// Curvature of omega = A dX + B dY at a point: K = d_X B - d_Y A + A B - B A.
// Returns nullopt when the point hits a pole.
inline std::optional<std::array<Q, 4>> curvature_at(const MatConnection& c, const std::vector<Q>& pt) {
  const int X = c.base[0], Y = c.base[1];
  std::array<Q, 4> A, B, dyA, dxB;
  for (int e = 0; e < 4; ++e) {
    auto a = eval(c.w[e].coef[0], pt, Y);
    auto b = eval(c.w[e].coef[1], pt, X);
    if (!a || !b) return std::nullopt;
    A[e] = a->v;
    dyA[e] = a->d;
    B[e] = b->v;
    dxB[e] = b->d;
  }
  std::array<Q, 4> K;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Q s = dxB[2 * i + j] - dyA[2 * i + j];
      for (int k = 0; k < 2; ++k) s += A[2 * i + k] * B[2 * k + j] - B[2 * i + k] * A[2 * k + j];
      K[2 * i + j] = s;
    }
  return K;
}

inline bool oracle_flat(const MatConnection& c, Gen& g, int points = 12) {
  int tried = 0;
  for (int n = 0; n < 10 * points && tried < points; ++n) {
    auto K = curvature_at(c, random_point(g, c.ctx));
    if (!K) continue;
    ++tried;
    for (const auto& q : *K)
      if (q != 0) return false;
  }
  return tried == points;
}

// ---------------------------------------------------------------- random SL2 tuples

// products of diagonal, antidiagonal and upper triangular matrices with monomial entries in u, v
inline PMat random_sl2(Gen& g) {
  const Ctx& R = rep_context();
  const std::vector<int> vars = {R->require("u"), R->require("v")};
  PMat acc = PMat::identity(R);
  int factors = g.integer(1, 3);
  for (int k = 0; k < factors; ++k) {
    LaurentPoly m = g.signed_monomial(R, vars, -2, 2);
    PMat f = acc;
    switch (g.integer(0, 2)) {
      case 0: f = PMat::diag(m, m.inverse_monomial(), R); break;
      case 1: f = {LaurentPoly(R), m, -m.inverse_monomial(), LaurentPoly(R)}; break;
      default: f = {m, g.signed_monomial(R, vars, -2, 2), LaurentPoly(R), m.inverse_monomial()}; break;
    }
    acc = acc * f;
  }
  return acc;
}

inline std::vector<PMat> random_tuple(Gen& g, std::size_t n) {
  std::vector<PMat> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(random_sl2(g));
  return t;
}

}  // namespace testsupport
