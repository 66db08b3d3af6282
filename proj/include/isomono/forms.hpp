#pragma once

#include "fraction.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace isomono {

// sum_k coef[k] d(base[k]) over a shared context
struct OneForm {
  Ctx ctx;
  std::vector<int> base;
  std::vector<FF> coef;

  static OneForm zero(const Ctx& ctx, std::vector<int> base) {
    OneForm w{ctx, std::move(base), {}};
    w.coef.assign(w.base.size(), FF(ctx));
    return w;
  }
  static OneForm differential(const FF& f, const Ctx& ctx, std::vector<int> base) {
    OneForm w = zero(ctx, std::move(base));
    for (std::size_t k = 0; k < w.base.size(); ++k) w.coef[k] = f.derivative(w.base[k]);
    return w;
  }
  // one basis differential d(var)
  static OneForm dvar(const Ctx& ctx, std::vector<int> base, int var) {
    OneForm w = zero(ctx, std::move(base));
    for (std::size_t k = 0; k < w.base.size(); ++k)
      if (w.base[k] == var) w.coef[k] = FF(LaurentPoly(ctx, 1));
    return w;
  }

  bool is_zero() const {
    for (const auto& c : coef)
      if (!c.is_zero()) return false;
    return true;
  }
  const FF& operator[](std::size_t k) const { return coef.at(k); }

  friend OneForm operator+(const OneForm& a, const OneForm& b) {
    check(a, b);
    OneForm r = a;
    for (std::size_t k = 0; k < r.coef.size(); ++k) r.coef[k] = a.coef[k] + b.coef[k];
    return r;
  }
  friend OneForm operator-(const OneForm& a, const OneForm& b) {
    check(a, b);
    OneForm r = a;
    for (std::size_t k = 0; k < r.coef.size(); ++k) r.coef[k] = a.coef[k] - b.coef[k];
    return r;
  }
  OneForm operator-() const {
    OneForm r = *this;
    for (auto& c : r.coef) c = -c;
    return r;
  }
  friend OneForm operator*(const FF& f, const OneForm& a) {
    OneForm r = a;
    for (auto& c : r.coef) c = f * c;
    return r;
  }
  friend bool operator==(const OneForm& a, const OneForm& b) { return (a - b).is_zero(); }
  friend bool operator!=(const OneForm& a, const OneForm& b) { return !(a == b); }

  OneForm refactor(const std::vector<LaurentPoly>& basis) const {
    OneForm r = *this;
    for (auto& c : r.coef) c = c.refactor(basis);
    return r;
  }

  std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < base.size(); ++k) {
      if (coef[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coef[k].str() + ")*d" + ctx->names[base[k]];
    }
    return s.empty() ? "0" : s;
  }

 private:
  static void check(const OneForm& a, const OneForm& b) {
    if (a.base != b.base) throw algebra_error("one-forms over different base variables");
  }
};

// coef * dX ^ dY for base (X, Y)
struct TwoForm {
  Ctx ctx;
  std::vector<int> base;
  FF coef;

  bool is_zero() const { return coef.is_zero(); }
  friend TwoForm operator+(const TwoForm& a, const TwoForm& b) {
    if (a.base != b.base) throw algebra_error("two-forms over different base variables");
    return {a.ctx, a.base, a.coef + b.coef};
  }
  friend TwoForm operator-(const TwoForm& a, const TwoForm& b) {
    if (a.base != b.base) throw algebra_error("two-forms over different base variables");
    return {a.ctx, a.base, a.coef - b.coef};
  }
  friend bool operator==(const TwoForm& a, const TwoForm& b) { return (a - b).is_zero(); }
  std::string str() const {
    if (coef.is_zero()) return "0";
    return "(" + coef.str() + ")*d" + ctx->names[base[0]] + "^d" + ctx->names[base[1]];
  }
};

inline void require_plane(const OneForm& w) {
  if (w.base.size() != 2) throw algebra_error("operation needs a two-dimensional base");
}

inline TwoForm form_d(const OneForm& w) {
  require_plane(w);
  return {w.ctx, w.base, w.coef[1].derivative(w.base[0]) - w.coef[0].derivative(w.base[1])};
}

inline TwoForm form_wedge(const OneForm& a, const OneForm& b) {
  require_plane(a);
  if (a.base != b.base) throw algebra_error("wedge of forms over different bases");
  return {a.ctx, a.base, a.coef[0] * b.coef[1] - a.coef[1] * b.coef[0]};
}

inline TwoForm operator*(const FF& f, const TwoForm& t) { return {t.ctx, t.base, f * t.coef}; }

// w -> (p w + q) / (r w + t)
struct Mobius {
  FF p, q, r, t;
};

// Substitutions express target variables through source variables in one shared context.
struct RationalMap {
  Ctx ctx;
  std::vector<int> source_base;
  std::map<int, FF> subs;
  std::optional<Mobius> fiber;

  std::vector<std::optional<FF>> images() const {
    std::vector<std::optional<FF>> im(ctx->size());
    for (const auto& [v, f] : subs) im[v] = f;
    return im;
  }
  FF image_of(int var) const {
    auto it = subs.find(var);
    return it == subs.end() ? FF(LaurentPoly::var(ctx, var)) : it->second;
  }
};

inline RationalMap make_map(const Ctx& ctx, const std::vector<std::string>& source_base,
                            const std::map<std::string, std::string>& subs) {
  RationalMap m{ctx, {}, {}, std::nullopt};
  for (const auto& s : source_base) m.source_base.push_back(ctx->require(s));
  for (const auto& [t, expr] : subs) m.subs[ctx->require(t)] = FF(LaurentPoly::parse(ctx, expr));
  return m;
}

inline FF pullback(const FF& f, const RationalMap& phi) { return f.substitute(phi.images(), phi.ctx); }

inline FF pullback(const FF& f, const RationalMap& phi, const std::vector<LaurentPoly>& basis) {
  return pullback(f, phi).refactor(basis);
}

inline OneForm form_pullback(const OneForm& w, const RationalMap& phi) {
  OneForm r = OneForm::zero(phi.ctx, phi.source_base);
  const auto im = phi.images();
  for (std::size_t j = 0; j < w.base.size(); ++j) {
    if (w.coef[j].is_zero()) continue;
    FF c = w.coef[j].substitute(im, phi.ctx);
    FF img = phi.image_of(w.base[j]);
    for (std::size_t k = 0; k < r.base.size(); ++k) {
      FF dk = img.derivative(r.base[k]);
      if (!dk.is_zero()) r.coef[k] = r.coef[k] + c * dk;
    }
  }
  return r;
}

inline TwoForm form_pullback(const TwoForm& t, const RationalMap& phi) {
  if (phi.source_base.size() != 2) throw algebra_error("two-form pullback needs a planar source");
  FF X = phi.image_of(t.base[0]), Y = phi.image_of(t.base[1]);
  const int s0 = phi.source_base[0], s1 = phi.source_base[1];
  FF jac = X.derivative(s0) * Y.derivative(s1) - X.derivative(s1) * Y.derivative(s0);
  return {phi.ctx, phi.source_base, t.coef.substitute(phi.images(), phi.ctx) * jac};
}

// (phi o psi): first apply phi's substitutions, then psi's
inline RationalMap compose(const RationalMap& phi, const RationalMap& psi) {
  RationalMap r{phi.ctx, psi.source_base, {}, std::nullopt};
  const auto im = psi.images();
  for (const auto& [v, f] : phi.subs) r.subs[v] = f.substitute(im, phi.ctx);
  for (const auto& [v, f] : psi.subs)
    if (!phi.subs.count(v)) r.subs[v] = f;
  return r;
}

}  // namespace isomono
