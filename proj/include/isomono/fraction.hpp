#pragma once

#include "laurent.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isomono {

struct pole_error : algebra_error {
  using algebra_error::algebra_error;
};

// f = unit * primitive, where primitive has no monomial content and leading coefficient 1
struct NormalizedFactor {
  LaurentPoly unit;
  LaurentPoly primitive;
};

inline NormalizedFactor normalize_factor(const LaurentPoly& f) {
  if (f.is_zero()) throw algebra_error("zero factor");
  const Ctx& ctx = f.ctx();
  LaurentPoly shift = LaurentPoly::monomial(ctx, f.min_exps());
  LaurentPoly g = f * shift.inverse_monomial();
  Q lc = g.leading().second;
  g = Q(1 / lc) * g;
  return {Q(lc) * shift, g};
}

// Result of dividing a polynomial by a list of declared factors.
struct Factorization {
  LaurentPoly unit;
  std::vector<int> exponents;  // aligned with the basis
  LaurentPoly residual;        // primitive leftover, 1 if fully factored

  bool complete() const { return residual.is_constant(); }
};

inline Factorization factor_over(const LaurentPoly& p, const std::vector<LaurentPoly>& basis) {
  if (p.is_zero()) throw algebra_error("cannot factor zero");
  Factorization out{LaurentPoly(p.ctx(), 1), std::vector<int>(basis.size(), 0), p};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_monomial()) continue;
    while (!out.residual.is_monomial()) {
      auto q = out.residual.divide_exact(basis[i]);
      if (!q) break;
      out.residual = *q;
      ++out.exponents[i];
    }
  }
  auto n = normalize_factor(out.residual);
  out.unit = n.unit;
  out.residual = n.primitive;
  return out;
}

class FactoredFraction {
 public:
  using Factors = std::map<LaurentPoly, int>;

  FactoredFraction() = default;
  explicit FactoredFraction(const Ctx& ctx) : num_(ctx) {}
  FactoredFraction(LaurentPoly num) : num_(std::move(num)) {}  // NOLINT: polynomials embed implicitly
  FactoredFraction(LaurentPoly num, const std::vector<std::pair<LaurentPoly, int>>& den) : num_(std::move(num)) {
    for (const auto& [f, e] : den) mul_factor(f, e);
    cancel();
  }
  static FactoredFraction ratio(const LaurentPoly& n, const LaurentPoly& d) {
    return FactoredFraction(n, {{d, 1}});
  }
  static FactoredFraction constant(const Ctx& ctx, const Q& q) { return FactoredFraction(LaurentPoly(ctx, q)); }

  const Ctx& ctx() const { return num_.ctx(); }
  const LaurentPoly& num() const { return num_; }
  const Factors& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  LaurentPoly denominator() const {
    LaurentPoly d(ctx(), 1);
    for (const auto& [f, e] : den_) d *= f.pow(e);
    return d;
  }

  FactoredFraction operator-() const {
    FactoredFraction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend FactoredFraction operator+(const FactoredFraction& a, const FactoredFraction& b) { return combine(a, b, 1); }
  friend FactoredFraction operator-(const FactoredFraction& a, const FactoredFraction& b) { return combine(a, b, -1); }
  friend FactoredFraction operator*(const FactoredFraction& a, const FactoredFraction& b) {
    if (a.is_zero() || b.is_zero()) return FactoredFraction(a.ctx() ? a.ctx() : b.ctx());
    FactoredFraction r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    for (const auto& [f, e] : b.den_) r.den_[f] += e;
    r.cancel();
    return r;
  }
  FactoredFraction& operator+=(const FactoredFraction& o) { return *this = *this + o; }
  FactoredFraction& operator-=(const FactoredFraction& o) { return *this = *this - o; }
  FactoredFraction& operator*=(const FactoredFraction& o) { return *this = *this * o; }

  FactoredFraction inverse() const {
    if (is_zero()) throw pole_error("inverse of zero fraction");
    FactoredFraction r(LaurentPoly(ctx(), 1));
    for (const auto& [f, e] : den_) r.num_ *= f.pow(e);
    r.mul_factor(num_, 1);
    r.cancel();
    return r;
  }
  friend FactoredFraction operator/(const FactoredFraction& a, const FactoredFraction& b) { return a * b.inverse(); }

  FactoredFraction pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    FactoredFraction r(LaurentPoly(ctx(), 1));
    if (n == 0) return r;
    r.num_ = num_.pow(n);
    for (const auto& [f, e] : den_) r.den_[f] = e * n;
    return r;
  }

  // equality by cross-multiplication
  friend bool operator==(const FactoredFraction& a, const FactoredFraction& b) { return (a - b).is_zero(); }
  friend bool operator!=(const FactoredFraction& a, const FactoredFraction& b) { return !(a == b); }

  // quotient rule on the factored form
  FactoredFraction derivative(int var) const {
    FactoredFraction r(ctx());
    if (is_zero()) return r;
    std::vector<std::pair<LaurentPoly, int>> moving;
    for (const auto& [f, e] : den_)
      if (f.depends_on(var)) moving.emplace_back(f, e);
    LaurentPoly prod(ctx(), 1);
    for (const auto& [f, e] : moving) prod *= f;
    LaurentPoly n = num_.derivative(var) * prod;
    for (std::size_t i = 0; i < moving.size(); ++i) {
      LaurentPoly others(ctx(), 1);
      for (std::size_t j = 0; j < moving.size(); ++j)
        if (j != i) others *= moving[j].first;
      n -= Q(moving[i].second) * (num_ * moving[i].first.derivative(var) * others);
    }
    r.num_ = n;
    r.den_ = den_;
    for (const auto& [f, e] : moving) r.den_[f] += 1;
    r.cancel();
    return r;
  }

  // images are polynomials; negative exponents need unit images
  FactoredFraction substitute(const std::vector<std::optional<LaurentPoly>>& images, const Ctx& target) const {
    FactoredFraction r(num_.substitute(images, target));
    for (const auto& [f, e] : den_) {
      LaurentPoly g = f.substitute(images, target);
      if (g.is_zero()) throw pole_error("denominator factor vanishes under substitution");
      r.mul_factor(g, e);
    }
    r.cancel();
    return r;
  }

  // general substitution by fractions
  FactoredFraction substitute(const std::vector<std::optional<FactoredFraction>>& images, const Ctx& target) const {
    bool polynomial = true;
    for (const auto& im : images)
      if (im && !im->is_polynomial()) polynomial = false;
    if (polynomial) {
      std::vector<std::optional<LaurentPoly>> p(images.size());
      for (std::size_t i = 0; i < images.size(); ++i)
        if (images[i]) p[i] = images[i]->num();
      try {
        return substitute(p, target);
      } catch (const pole_error&) {
        throw;
      } catch (const algebra_error&) {
        // a non-unit image under a negative exponent: go through fractions
      }
    }
    FactoredFraction r = evaluate(num_, images, target);
    for (const auto& [f, e] : den_) {
      FactoredFraction g = evaluate(f, images, target);
      if (g.is_zero()) throw pole_error("denominator factor vanishes under substitution");
      r = r * g.pow(-e);
    }
    return r;
  }

  FactoredFraction substitute(int var, const LaurentPoly& image) const {
    std::vector<std::optional<LaurentPoly>> p(ctx()->size());
    p[var] = image;
    return substitute(p, ctx());
  }

  // rewrite denominator factors over a declared basis where possible
  FactoredFraction refactor(const std::vector<LaurentPoly>& basis) const {
    FactoredFraction r(num_);
    for (const auto& [f, e] : den_) {
      Factorization fz = factor_over(f, basis);
      r.num_ *= fz.unit.pow(-e);
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (fz.exponents[i]) r.mul_factor(basis[i], fz.exponents[i] * e);
      if (!fz.residual.is_constant()) r.mul_factor(fz.residual, e);
    }
    r.cancel();
    return r;
  }

  // exact square root when every factor exponent is even and the numerator is a square
  std::optional<FactoredFraction> sqrt() const {
    FactoredFraction r(ctx());
    for (const auto& [f, e] : den_)
      if (e % 2) return std::nullopt;
    auto s = num_.sqrt();
    if (!s) return std::nullopt;
    r.num_ = *s;
    for (const auto& [f, e] : den_) r.den_[f] = e / 2;
    return r;
  }

  std::string str() const {
    if (den_.empty()) return num_.str();
    std::string s = "(" + num_.str() + ")/(";
    bool first = true;
    for (const auto& [f, e] : den_) {
      if (!first) s += "*";
      first = false;
      s += "(" + f.str() + ")";
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s + ")";
  }

  // polynomial expression in the fractions bound to each variable
  static FactoredFraction evaluate(const LaurentPoly& p, const std::vector<std::optional<FactoredFraction>>& images,
                                   const Ctx& target) {
    const Ctx& src = p.ctx();
    FactoredFraction acc(target);
    std::vector<FactoredFraction> base(src->size());
    for (std::size_t i = 0; i < src->size(); ++i)
      base[i] = images[i] ? *images[i] : FactoredFraction(LaurentPoly::var(target, src->names[i]));
    for (const auto& [e, c] : p.terms()) {
      FactoredFraction t = FactoredFraction::constant(target, c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t = t * base[i].pow(e[i]);
      acc = acc + t;
    }
    return acc;
  }

 private:
  LaurentPoly num_;
  Factors den_;

  void mul_factor(const LaurentPoly& f, int e) {
    if (e == 0) return;
    auto n = normalize_factor(f);
    num_ = num_ * n.unit.pow(-e);
    if (n.primitive.is_constant()) return;
    den_[n.primitive] += e;
  }

  void cancel() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      if (it->second < 0) {
        num_ *= it->first.pow(-it->second);
        it = den_.erase(it);
        continue;
      }
      while (it->second > 0) {
        auto q = num_.divide_exact(it->first);
        if (!q) break;
        num_ = *q;
        --it->second;
      }
      if (it->second == 0) it = den_.erase(it);
      else ++it;
    }
  }

  static FactoredFraction combine(const FactoredFraction& a, const FactoredFraction& b, int sign) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return sign > 0 ? b : -b;
    Factors common = a.den_;
    for (const auto& [f, e] : b.den_) {
      auto& slot = common[f];
      slot = std::max(slot, e);
    }
    LaurentPoly na = a.num_, nb = b.num_;
    for (const auto& [f, e] : common) {
      auto ia = a.den_.find(f);
      auto ib = b.den_.find(f);
      int ea = ia == a.den_.end() ? 0 : ia->second;
      int eb = ib == b.den_.end() ? 0 : ib->second;
      if (e - ea) na *= f.pow(e - ea);
      if (e - eb) nb *= f.pow(e - eb);
    }
    FactoredFraction r;
    r.num_ = sign > 0 ? na + nb : na - nb;
    r.den_ = std::move(common);
    r.cancel();
    return r;
  }
};

using FF = FactoredFraction;

}  // namespace isomono
