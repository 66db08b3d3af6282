#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace isomono {

using Exps = std::vector<int>;

// r satisfies minpoly(r) = 0; minpoly is monic, coefficients low to high
struct Extension {
  int var = -1;
  std::vector<Q> minpoly;
  int degree() const { return static_cast<int>(minpoly.size()) - 1; }
};

struct VarContext {
  std::vector<std::string> names;
  std::optional<Extension> ext;

  std::size_t size() const { return names.size(); }
  int index(const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    return -1;
  }
  int require(const std::string& n) const {
    int i = index(n);
    if (i < 0) throw algebra_error("unknown variable '" + n + "'");
    return i;
  }
};

using Ctx = std::shared_ptr<const VarContext>;

inline Ctx make_context(std::vector<std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw algebra_error("duplicate variable '" + names[i] + "'");
  auto c = std::make_shared<VarContext>();
  c->names = std::move(names);
  return c;
}

inline Ctx make_context(std::vector<std::string> names, const std::string& ext_var,
                        std::vector<Q> minpoly) {
  auto base = make_context(std::move(names));
  auto c = std::make_shared<VarContext>(*base);
  if (minpoly.size() < 2 || minpoly.back() != 1)
    throw algebra_error("minimal polynomial must be monic of degree >= 1");
  if (minpoly.front() == 0) throw algebra_error("minimal polynomial has zero constant term");
  c->ext = Extension{c->require(ext_var), std::move(minpoly)};
  return c;
}

inline bool same_context(const Ctx& a, const Ctx& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->names != b->names) return false;
  if (a->ext.has_value() != b->ext.has_value()) return false;
  if (a->ext && (a->ext->var != b->ext->var || a->ext->minpoly != b->ext->minpoly)) return false;
  return true;
}

namespace detail {

// residues modulo the minimal polynomial, as coefficient vectors of length deg
inline std::vector<Q> ext_mulmod(const std::vector<Q>& a, const std::vector<Q>& b, const Extension& e) {
  const int d = e.degree();
  std::vector<Q> prod(2 * d, Q(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  for (int k = 2 * d - 1; k >= d; --k) {
    if (prod[k] == 0) continue;
    Q c = prod[k];
    prod[k] = 0;
    for (int i = 0; i < d; ++i) prod[k - d + i] -= c * e.minpoly[i];
  }
  prod.resize(d);
  return prod;
}

inline std::vector<Q> ext_power(int n, const Extension& e) {
  const int d = e.degree();
  std::vector<Q> one(d, Q(0)), step(d, Q(0));
  one[0] = 1;
  if (n >= 0) {
    if (d == 1) step[0] = -e.minpoly[0];
    else step[1] = 1;
  } else {
    // r^{-1} = -(r^{d-1} + m_{d-1} r^{d-2} + ... + m_1) / m_0
    for (int i = 0; i < d; ++i) step[i] = -e.minpoly[i + 1] / e.minpoly[0];
    n = -n;
  }
  std::vector<Q> acc = one;
  for (int k = 0; k < n; ++k) acc = ext_mulmod(acc, step, e);
  return acc;
}

}  // namespace detail

class LaurentPoly {
 public:
  using Terms = std::map<Exps, Q>;

  LaurentPoly() = default;
  explicit LaurentPoly(Ctx ctx) : ctx_(std::move(ctx)) {}
  LaurentPoly(Ctx ctx, const Q& c) : ctx_(std::move(ctx)) {
    if (c != 0) terms_[Exps(ctx_->size(), 0)] = c;
  }
  LaurentPoly(Ctx ctx, long c) : LaurentPoly(std::move(ctx), Q(c)) {}

  static LaurentPoly monomial(Ctx ctx, Exps e, const Q& c = 1) {
    if (e.size() != ctx->size()) throw algebra_error("exponent vector has wrong length");
    LaurentPoly p(std::move(ctx));
    if (c != 0) p.terms_[std::move(e)] = c;
    p.normalize();
    return p;
  }
  static LaurentPoly var(const Ctx& ctx, const std::string& name, int power = 1) {
    Exps e(ctx->size(), 0);
    e[ctx->require(name)] = power;
    return monomial(ctx, std::move(e));
  }
  static LaurentPoly var(const Ctx& ctx, int idx, int power = 1) {
    Exps e(ctx->size(), 0);
    e.at(idx) = power;
    return monomial(ctx, std::move(e));
  }

  const Ctx& ctx() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_unit() const { return is_monomial(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](int x) { return x == 0; }));
  }
  Q constant_value() const {
    if (!is_constant()) throw algebra_error("not a constant");
    return terms_.empty() ? Q(0) : terms_.begin()->second;
  }
  Q constant_term() const {
    auto it = terms_.find(Exps(ctx_->size(), 0));
    return it == terms_.end() ? Q(0) : it->second;
  }

  // lex-largest term
  std::pair<Exps, Q> leading() const {
    if (terms_.empty()) throw algebra_error("leading term of zero");
    return *terms_.rbegin();
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    adopt(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    adopt(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check_ctx(a, b);
    LaurentPoly r(a.ctx_ ? a.ctx_ : b.ctx_);
    if (a.is_zero() || b.is_zero()) return r;
    const std::size_t n = r.ctx_->size();
    Exps e(n);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    r.normalize();
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend LaurentPoly operator*(const Q& s, const LaurentPoly& p) {
    LaurentPoly r(p.ctx_);
    if (s == 0) return r;
    for (const auto& [e, c] : p.terms_) r.terms_[e] = s * c;
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    check_ctx(a, b);
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // total order used for canonical keys (not a ring order)
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ < b.terms_; }

  LaurentPoly pow(long n) const {
    if (n < 0) {
      if (!is_monomial()) throw algebra_error("negative power of a non-monomial");
      return inverse_monomial().pow(-n);
    }
    LaurentPoly result(ctx_, 1), base = *this;
    while (n) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return result;
  }

  LaurentPoly inverse_monomial() const {
    if (!is_monomial()) throw algebra_error("inverse of a non-monomial");
    Exps e = terms_.begin()->first;
    for (auto& x : e) x = -x;
    return monomial(ctx_, e, Q(1 / terms_.begin()->second));
  }

  // componentwise minimum exponent over all terms
  Exps min_exps() const {
    Exps m(ctx_->size(), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first) { m = e; first = false; continue; }
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    }
    return m;
  }
  int min_degree(int var) const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e[var] < m) m = e[var];
      first = false;
    }
    return m;
  }
  int max_degree(int var) const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e[var] > m) m = e[var];
      first = false;
    }
    return m;
  }
  bool depends_on(int var) const {
    for (const auto& [e, c] : terms_)
      if (e[var] != 0) return true;
    return false;
  }
  // coefficient of var^k, as a polynomial in the remaining variables
  LaurentPoly coefficient(int var, int k) const {
    LaurentPoly r(ctx_);
    for (const auto& [e, c] : terms_)
      if (e[var] == k) {
        Exps f = e;
        f[var] = 0;
        r.terms_[f] = c;
      }
    return r;
  }

  LaurentPoly derivative(int var) const {
    LaurentPoly r(ctx_);
    if (ctx_ && ctx_->ext && ctx_->ext->var == var)
      throw algebra_error("derivative with respect to an algebraic generator");
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exps f = e;
      f[var] -= 1;
      r.add_term(f, c * e[var]);
    }
    return r;
  }

  // ring homomorphism: images[i] replaces variable i (nullopt keeps it, mapped by name into target)
  LaurentPoly substitute(const std::vector<std::optional<LaurentPoly>>& images, const Ctx& target) const {
    LaurentPoly r(target);
    std::vector<std::optional<LaurentPoly>> kept(ctx_->size());
    for (std::size_t i = 0; i < ctx_->size(); ++i)
      if (!images[i]) kept[i] = var(target, ctx_->names[i]);
    std::vector<std::map<int, LaurentPoly>> cache(ctx_->size());
    auto power = [&](std::size_t i, int k) -> const LaurentPoly& {
      auto it = cache[i].find(k);
      if (it != cache[i].end()) return it->second;
      const LaurentPoly& img = images[i] ? *images[i] : *kept[i];
      if (!same_context(img.ctx_, target)) throw algebra_error("substitution image in wrong context");
      if (k < 0 && !img.is_unit())
        throw algebra_error("image of '" + ctx_->names[i] + "' is not a unit but occurs with a negative exponent");
      return cache[i].emplace(k, img.pow(k)).first->second;
    };
    for (const auto& [e, c] : terms_) {
      LaurentPoly t(target, c);
      for (std::size_t i = 0; i < e.size() && !t.is_zero(); ++i)
        if (e[i] != 0) t *= power(i, e[i]);
      r += t;
    }
    r.normalize();
    return r;
  }
  LaurentPoly substitute(const std::map<std::string, LaurentPoly>& sigma) const {
    std::vector<std::optional<LaurentPoly>> images(ctx_->size());
    for (const auto& [n, img] : sigma) images[ctx_->require(n)] = img;
    return substitute(images, ctx_);
  }
  LaurentPoly substitute(const std::map<std::string, LaurentPoly>& sigma, const Ctx& target) const {
    std::vector<std::optional<LaurentPoly>> images(ctx_->size());
    for (const auto& [n, img] : sigma) images[ctx_->require(n)] = img;
    return substitute(images, target);
  }
  LaurentPoly substitute(int var, const LaurentPoly& image) const {
    std::vector<std::optional<LaurentPoly>> images(ctx_->size());
    images[var] = image;
    return substitute(images, ctx_);
  }
  // re-express in another context containing all variables that occur
  LaurentPoly recast(const Ctx& target) const {
    if (same_context(ctx_, target)) return *this;
    std::vector<std::optional<LaurentPoly>> images(ctx_->size());
    return substitute(images, target);
  }

  // exact division in the Laurent ring; nullopt if q does not divide *this
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& q) const {
    check_ctx(*this, q);
    if (q.is_zero()) throw algebra_error("division by zero polynomial");
    if (is_zero()) return LaurentPoly(ctx_);
    if (q.is_monomial()) return *this * q.inverse_monomial();
    if (ctx_->ext && (depends_on(ctx_->ext->var) || q.depends_on(ctx_->ext->var)))
      throw algebra_error("exact division over an algebraic extension is not supported");
    const Exps mp = min_exps(), mq = q.min_exps();
    LaurentPoly R = *this * monomial(ctx_, negate(mp));
    const LaurentPoly D = q * monomial(ctx_, negate(mq));
    const auto [ld, cd] = D.leading();
    LaurentPoly H(ctx_);
    while (!R.is_zero()) {
      auto [lr, cr] = R.leading();
      Exps t(lr.size());
      for (std::size_t i = 0; i < lr.size(); ++i) {
        t[i] = lr[i] - ld[i];
        if (t[i] < 0) return std::nullopt;
      }
      LaurentPoly term = monomial(ctx_, t, cr / cd);
      H += term;
      R -= term * D;
    }
    Exps shift(mp.size());
    for (std::size_t i = 0; i < mp.size(); ++i) shift[i] = mp[i] - mq[i];
    return H * monomial(ctx_, shift);
  }

  // exact square root with positive leading coefficient, if one exists
  std::optional<LaurentPoly> sqrt() const {
    if (is_zero()) return *this;
    if (ctx_->ext && depends_on(ctx_->ext->var))
      throw algebra_error("square root over an algebraic extension is not supported");
    const Exps lo = min_exps();
    Exps hi(lo.size());
    for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = max_degree(static_cast<int>(i));
    auto [le, lc] = leading();
    auto rc = sqrt_exact(lc);
    if (!rc) return std::nullopt;
    for (int x : le)
      if (x % 2) return std::nullopt;
    Exps half(le.size());
    for (std::size_t i = 0; i < le.size(); ++i) half[i] = le[i] / 2;
    LaurentPoly root = monomial(ctx_, half, *rc);
    const LaurentPoly lead2 = Q(2) * root;
    Exps last = half;
    for (;;) {
      LaurentPoly rem = *this - root * root;
      if (rem.is_zero()) return root;
      auto [re, rcoef] = rem.leading();
      Exps t(re.size());
      for (std::size_t i = 0; i < re.size(); ++i) {
        t[i] = re[i] - half[i];
        if (2 * t[i] < lo[i] || 2 * t[i] > hi[i]) return std::nullopt;
      }
      if (!(t < last)) return std::nullopt;
      last = t;
      root += monomial(ctx_, t, rcoef / (*rc * 2));
    }
  }

  // emits terms in ascending lex order: "-1*u^-2 + 2*v^3"
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Q a = c;
      if (first) {
        if (sgn(a) < 0) { os << "-"; a = -a; }
      } else {
        os << (sgn(a) < 0 ? " - " : " + ");
        if (sgn(a) < 0) a = -a;
      }
      first = false;
      os << a.get_str();
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) os << "*" << ctx_->names[i] << "^" << e[i];
    }
    return os.str();
  }

  static LaurentPoly parse(const Ctx& ctx, const std::string& text);

  std::size_t hash() const {
    std::size_t h = terms_.size();
    for (const auto& [e, c] : terms_) {
      for (int x : e) h = h * 1000003u + static_cast<std::size_t>(x + 7919);
      h ^= std::hash<std::string>{}(c.get_str()) + 0x9e3779b9 + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  Ctx ctx_;
  Terms terms_;

  static Exps negate(Exps e) {
    for (auto& x : e) x = -x;
    return e;
  }
  static void check_ctx(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.ctx_ && b.ctx_ && !same_context(a.ctx_, b.ctx_))
      throw algebra_error("context mismatch");
  }
  void adopt(const LaurentPoly& o) {
    check_ctx(*this, o);
    if (!ctx_) ctx_ = o.ctx_;
  }
  void add_term(const Exps& e, const Q& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void normalize() {
    if (!ctx_ || !ctx_->ext) return;
    const Extension& ex = *ctx_->ext;
    const int d = ex.degree();
    std::vector<std::pair<Exps, Q>> moved;
    for (auto it = terms_.begin(); it != terms_.end();) {
      int k = it->first[ex.var];
      if (k >= 0 && k < d) { ++it; continue; }
      moved.emplace_back(*it);
      it = terms_.erase(it);
    }
    for (auto& [e, c] : moved) {
      auto red = detail::ext_power(e[ex.var], ex);
      for (int j = 0; j < d; ++j) {
        if (red[j] == 0) continue;
        Exps f = e;
        f[ex.var] = j;
        add_term(f, c * red[j]);
      }
    }
  }
};

inline LaurentPoly operator+(const LaurentPoly& a, long c) { return a + LaurentPoly(a.ctx(), c); }
inline LaurentPoly operator-(const LaurentPoly& a, long c) { return a - LaurentPoly(a.ctx(), c); }
inline LaurentPoly operator*(long c, const LaurentPoly& a) { return Q(c) * a; }

struct LaurentHash {
  std::size_t operator()(const LaurentPoly& p) const { return p.hash(); }
};

namespace detail {

class PolyParser {
 public:
  PolyParser(const Ctx& ctx, const std::string& s) : ctx_(ctx), s_(s) {}

  LaurentPoly run() {
    LaurentPoly acc(ctx_);
    skip();
    if (pos_ >= s_.size()) throw parse_error("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      LaurentPoly t = term();
      acc += sign < 0 ? -t : t;
      skip();
    }
    return acc;
  }

 private:
  const Ctx& ctx_;
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw parse_error(what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  LaurentPoly term() {
    LaurentPoly t(ctx_, 1);
    for (;;) {
      skip();
      t = t * factor();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') { ++pos_; continue; }
      return t;
    }
  }
  LaurentPoly factor() {
    if (pos_ >= s_.size()) fail("unexpected end");
    char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t b = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      return LaurentPoly(ctx_, parse_rational(s_.substr(b, pos_ - b)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t b = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(b, pos_ - b);
      int idx = ctx_->index(name);
      if (idx < 0) fail("undeclared variable '" + name + "'");
      int e = 1;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        skip();
        std::size_t eb = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string ex = s_.substr(eb, pos_ - eb);
        if (ex.empty() || ex == "-" || ex == "+") fail("bad exponent");
        e = std::stoi(ex);
      }
      return LaurentPoly::var(ctx_, idx, e);
    }
    if (ch == '(') {
      ++pos_;
      std::size_t depth = 1, b = pos_;
      while (pos_ < s_.size() && depth) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')') --depth;
        ++pos_;
      }
      if (depth) fail("unbalanced parenthesis");
      std::string inner = s_.substr(b, pos_ - b - 1);
      return PolyParser(ctx_, inner).run();
    }
    fail(std::string("unexpected character '") + ch + "'");
  }
};

}  // namespace detail

inline LaurentPoly LaurentPoly::parse(const Ctx& ctx, const std::string& text) {
  return detail::PolyParser(ctx, text).run();
}

}  // namespace isomono
