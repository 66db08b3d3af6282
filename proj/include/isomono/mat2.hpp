#pragma once

#include "fraction.hpp"

#include <array>
#include <string>

namespace isomono {

template <class T>
struct Mat2 {
  T a11, a12, a21, a22;

  static Mat2 identity(const Ctx& ctx) { return {T(LaurentPoly(ctx, 1)), T(LaurentPoly(ctx)), T(LaurentPoly(ctx)), T(LaurentPoly(ctx, 1))}; }
  static Mat2 diag(const T& d1, const T& d2, const Ctx& ctx) { return {d1, T(LaurentPoly(ctx)), T(LaurentPoly(ctx)), d2}; }

  T det() const { return a11 * a22 - a12 * a21; }
  T trace() const { return a11 + a22; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22}; }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22}; }
  Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }

  // adjugate; the inverse whenever det = 1
  Mat2 adjugate() const { return {a22, -a12, -a21, a11}; }

  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a11 == y.a11 && x.a12 == y.a12 && x.a21 == y.a21 && x.a22 == y.a22;
  }
  friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

  // equality in PSL2
  friend bool projectively_equal(const Mat2& x, const Mat2& y) { return x == y || x == -y; }

  bool is_identity() const {
    return a12 == T(LaurentPoly(ctx())) && a21 == T(LaurentPoly(ctx())) && a11 == T(LaurentPoly(ctx(), 1)) &&
           a22 == T(LaurentPoly(ctx(), 1));
  }
  bool is_projective_identity() const { return is_identity() || (-*this).is_identity(); }

  const Ctx& ctx() const { return a11.ctx(); }

  std::array<std::string, 4> strs() const { return {a11.str(), a12.str(), a21.str(), a22.str()}; }
  std::string str() const {
    auto s = strs();
    return "[[" + s[0] + ", " + s[1] + "], [" + s[2] + ", " + s[3] + "]]";
  }
};

using PMat = Mat2<LaurentPoly>;
using FMat = Mat2<FF>;

inline PMat mat(const Ctx& ctx, const std::string& a11, const std::string& a12, const std::string& a21,
                const std::string& a22) {
  return {LaurentPoly::parse(ctx, a11), LaurentPoly::parse(ctx, a12), LaurentPoly::parse(ctx, a21),
          LaurentPoly::parse(ctx, a22)};
}

// inverse of a unimodular matrix
inline PMat inverse_sl2(const PMat& m) {
  if (m.det() != LaurentPoly(m.ctx(), 1)) throw algebra_error("matrix is not unimodular");
  return m.adjugate();
}

inline PMat substitute(const PMat& m, const std::vector<std::optional<LaurentPoly>>& images, const Ctx& target) {
  return {m.a11.substitute(images, target), m.a12.substitute(images, target), m.a21.substitute(images, target),
          m.a22.substitute(images, target)};
}

}  // namespace isomono
