#pragma once

#include "group.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace isomono {

// One context hosts every parametrized family so orbits can be compared by substitution.
inline const Ctx& rep_context() {
  static const Ctx ctx = make_context({"u", "v", "s", "t", "w"});
  return ctx;
}

// r is a primitive cube root of unity
inline const Ctx& cyclotomic3_context() {
  static const Ctx ctx = make_context({"r"}, "r", {Q(1), Q(1), Q(1)});
  return ctx;
}

struct RepTuple {
  std::array<PMat, 4> m;

  const Ctx& ctx() const { return m[0].ctx(); }
  PMat product() const { return m[0] * m[1] * m[2] * m[3]; }
  PMat fifth() const { return inverse_sl2(product()); }
  std::vector<PMat> five() const { return {m[0], m[1], m[2], m[3], fifth()}; }

  static RepTuple identity(const Ctx& ctx) {
    PMat id = PMat::identity(ctx);
    return {{id, id, id, id}};
  }
  static RepTuple from(const std::vector<PMat>& ms) {
    if (ms.size() < 4) throw algebra_error("a representation tuple needs four matrices");
    return {{ms[0], ms[1], ms[2], ms[3]}};
  }
  bool unimodular() const {
    for (const auto& x : m)
      if (x.det() != LaurentPoly(ctx(), 1)) return false;
    return true;
  }
};

inline constexpr std::size_t kTraceCount = 15;
using TraceTuple = std::array<LaurentPoly, kTraceCount>;

inline const std::array<std::string, kTraceCount>& trace_names() {
  static const std::array<std::string, kTraceCount> n = {"t1", "t2", "t3", "t4", "t5", "r1", "r2", "r3",
                                                         "r4", "r5", "r6", "r7", "r8", "r9", "r10"};
  return n;
}

// t1..t4 = Tr(di), t5 = Tr(d1d2d3d4), r1..r6 over pairs, r7..r10 over triples (lex order)
inline TraceTuple trace_coordinates(const std::vector<PMat>& ms) {
  if (ms.size() < 4) throw algebra_error("trace coordinates need four matrices");
  const auto& d = ms;
  PMat d12 = d[0] * d[1], d23 = d[1] * d[2];
  return {d[0].trace(),
          d[1].trace(),
          d[2].trace(),
          d[3].trace(),
          (d12 * d[2] * d[3]).trace(),
          d12.trace(),
          (d[0] * d[2]).trace(),
          (d[0] * d[3]).trace(),
          d23.trace(),
          (d[1] * d[3]).trace(),
          (d[2] * d[3]).trace(),
          (d12 * d[2]).trace(),
          (d12 * d[3]).trace(),
          (d[0] * d[2] * d[3]).trace(),
          (d23 * d[3]).trace()};
}
inline TraceTuple trace_coordinates(const RepTuple& r) { return trace_coordinates(std::vector<PMat>(r.m.begin(), r.m.end())); }

inline std::vector<std::string> trace_strings(const TraceTuple& t) {
  std::vector<std::string> out;
  for (const auto& p : t) out.push_back(p.str());
  return out;
}

inline std::string trace_key(const TraceTuple& t) {
  std::string s;
  for (const auto& p : t) {
    s += p.str();
    s += '|';
  }
  return s;
}

inline TraceTuple parse_trace_tuple(const Ctx& ctx, const std::vector<std::string>& s) {
  if (s.size() != kTraceCount) throw parse_error("a trace tuple has 15 coordinates, got " + std::to_string(s.size()));
  TraceTuple t;
  for (std::size_t i = 0; i < kTraceCount; ++i) t[i] = LaurentPoly::parse(ctx, s[i]);
  return t;
}

inline TraceTuple substitute(const TraceTuple& t, const std::vector<std::optional<LaurentPoly>>& images,
                             const Ctx& target) {
  TraceTuple r;
  for (std::size_t i = 0; i < kTraceCount; ++i) r[i] = t[i].substitute(images, target);
  return r;
}

struct Family {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> generators;  // labels of mats, in printed order
  std::vector<PMat> mats;
  std::optional<Presentation> presentation;

  Assignment assignment() const {
    Assignment a;
    for (std::size_t i = 0; i < generators.size(); ++i) a.emplace(generators[i], mats[i]);
    return a;
  }
  RepTuple tuple() const { return RepTuple::from(mats); }
};

inline Presentation presentation_gamma2p() {
  return make_presentation("Gamma2'", {"a", "b", "c"}, {"(a b)^2 (b a)^-2", "(a c)^2 (c a)^-2", "b c b^-1 c^-1"});
}
inline Presentation presentation_gamma2() {
  return make_presentation("Gamma2", {"a", "b", "c"}, {"a b a^-1 b^-1", "a (c^-1 b c) a^-1 (c^-1 b c)^-1", "(b c)^2 (c b)^-2"});
}
inline Presentation presentation_case3() {
  return make_presentation("Gamma_cubic", {"a", "b", "c"}, {"a b a^-1 b^-1", "b c^2 b^-1 c^-2", "c a (b c)^-1"});
}
inline Presentation presentation_b3() { return make_presentation("B3", {"s1", "s2"}, {"s1 s2 s1 (s2 s1 s2)^-1"}); }
inline Presentation presentation_b4() {
  return make_presentation("B4", {"s1", "s2", "s3"},
                           {"s1 s3 s1^-1 s3^-1", "s1 s2 s1 (s2 s1 s2)^-1", "s3 s2 s3 (s2 s3 s2)^-1"});
}
inline Presentation presentation_gamma3() {
  return make_presentation("Gamma3", {"a", "b"}, {"a^3 b a^-3 b^-1", "a b^2 (b a^2)^-1"});
}
inline Presentation presentation_gamma3p() {
  return make_presentation("Gamma3'", {"a", "b", "c"}, {"a c a (c a c)^-1", "b c b^-1 c^-1", "(a b)^2 (b a)^-2"});
}
inline Presentation presentation_gamma4() {
  return make_presentation("Gamma4", {"a", "b", "c"},
                           {"a b a (b a b)^-1", "c b c (b c b)^-1", "a (b c b^-1) a ((b c b^-1) a (b c b^-1))^-1"});
}

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> n = {
      "rho1",        "rho2",        "rho3",          "rho4",         "table1_case1", "table1_case2",
      "table1_case3a", "table1_case3b", "b3_nonrigid", "b4_family",    "gamma3_finite", "gamma3p_fam1",
      "gamma3p_fam2", "thmA_case1",  "thmA_case2",    "thmA_case3",   "identity"};
  return n;
}

inline Family builtin_family(const std::string& name) {
  const Ctx& C = rep_context();
  auto M = [&](const char* a, const char* b, const char* c, const char* d) { return mat(C, a, b, c, d); };
  const PMat J = M("0", "1", "-1", "0");
  auto D = [&](const char* x) {
    LaurentPoly p = LaurentPoly::parse(C, x);
    return PMat::diag(p, p.inverse_monomial(), C);
  };
  const std::vector<std::string> d4 = {"d1", "d2", "d3", "d4"};
  const std::vector<std::string> d5 = {"d1", "d2", "d3", "d4", "d5"};
  const std::vector<std::string> abc = {"a", "b", "c"};

  if (name == "rho1") return {name, {"u", "v"}, d4, {D("v"), D("u"), J, M("0", "u^2", "-1*u^-2", "0")}, {}};
  if (name == "rho2") return {name, {"u", "v"}, d4, {J, D("v"), D("u"), D("v")}, {}};
  if (name == "rho3") return {name, {"s"}, d4, {J, M("0", "s^-1", "-1*s", "0"), D("s"), D("s^-1")}, {}};
  if (name == "rho4") return {name, {"s"}, d4, {J, D("s"), D("s"), D("s^-1")}, {}};
  if (name == "identity") return {name, {}, d4, {PMat::identity(C), PMat::identity(C), PMat::identity(C), PMat::identity(C)}, {}};

  // columns x = 0, 1, t1, t2, infinity
  if (name == "table1_case1")
    return {name, {"u", "v"}, d5, {D("v"), D("u"), J, M("0", "u^2", "-1*u^-2", "0"), M("-1*u*v^-1", "0", "0", "-1*u^-1*v")}, {}};
  if (name == "table1_case2")
    return {name, {"u", "v"}, d5, {J, D("v"), D("u"), D("v"), M("0", "-1*u^-1*v^-2", "u*v^2", "0")}, {}};
  if (name == "table1_case3a")
    return {name, {"u"}, d5, {J, M("0", "u^-1", "-1*u", "0"), D("u"), D("u^-1"), M("-1*u", "0", "0", "-1*u^-1")}, {}};
  if (name == "table1_case3b")
    return {name, {"u"}, d5, {M("0", "-1", "1", "0"), D("u"), D("u"), D("u^-1"), M("0", "u^-1", "-1*u", "0")}, {}};

  if (name == "b3_nonrigid")
    return {name, {"v"}, {"s1", "s2"}, {M("v", "1", "0", "v^-1"), M("v^-1", "0", "-1", "v")}, presentation_b3()};
  if (name == "b4_family")
    return {name, {"w"}, {"s1", "s2", "s3"},
            {M("w", "1", "0", "w^-1"), M("w^-1", "0", "-1", "w"), M("w", "1", "0", "w^-1")}, presentation_b4()};
  if (name == "gamma3_finite") {
    const Ctx& R = cyclotomic3_context();
    return {name, {}, {"a", "b"},
            {mat(R, "r", "0", "0", "r^-1"), mat(R, "2/3 + 1/3*r", "1", "-2/3", "1/3 - 1/3*r")}, presentation_gamma3()};
  }
  if (name == "gamma3p_fam1")
    return {name, {"u"}, abc,
            {M("u^-1", "1", "0", "u"), M("u^2", "0", "-1*u - u^-1", "u^-2"), M("u", "0", "-1", "u^-1")},
            presentation_gamma3p()};
  if (name == "gamma3p_fam2")
    return {name, {"u"}, abc,
            {M("u", "1", "0", "u^-1"), M("u^2", "0", "-1*u^3 - u^-3", "u^-2"), M("u", "0", "-1*u^2 + 1 - u^-2", "u^-1")},
            presentation_gamma3p()};
  if (name == "thmA_case1") return {name, {"u", "v"}, abc, {J, D("u"), D("v")}, presentation_gamma2p()};
  if (name == "thmA_case2") return {name, {"u", "v"}, abc, {D("u"), D("v"), J}, presentation_gamma2()};
  if (name == "thmA_case3") return {name, {"t"}, abc, {D("t"), D("t^-1"), J}, presentation_case3()};
  throw algebra_error("unknown family '" + name + "'");
}

inline Family specialize(const Family& f, const std::map<std::string, LaurentPoly>& at) {
  if (at.empty()) return f;
  Family g = f;
  const Ctx& ctx = f.mats.front().ctx();
  std::vector<std::optional<LaurentPoly>> im(ctx->size());
  for (const auto& [k, v] : at) {
    int i = ctx->index(k);
    if (i >= 0) im[i] = v.recast(ctx);
  }
  for (auto& m : g.mats) m = substitute(m, im, ctx);
  return g;
}

// d1..d4 as words in the generators of the source group
struct TauList {
  std::string name;
  std::array<std::string, 4> words;
};

inline const std::vector<TauList>& tau_lists() {
  static const std::vector<TauList> t = {
      {"case1", {"b", "a", "b a b^-1", "c"}},
      {"case2", {"c", "b", "a", "b"}},
      {"case3a", {"b", "b a", "a", "b^-1 a b"}},
      {"case3b", {"b", "a", "a", "b^-1 a b"}},
  };
  return t;
}

inline const TauList& tau_list(const std::string& name) {
  for (const auto& t : tau_lists())
    if (t.name == name) return t;
  throw algebra_error("unknown tau list '" + name + "'");
}

// Letter assignment each tau list is read against. The case-3 lists name the diagonal
// generator a and the elliptic one b, opposite to the case-3 presentation's labels.
inline Assignment tau_assignment(const std::string& name) {
  if (name == "case1") return builtin_family("thmA_case1").assignment();
  if (name == "case2") return builtin_family("thmA_case2").assignment();
  if (name == "case3a" || name == "case3b") {
    Family f = builtin_family("thmA_case3");
    return {{"a", f.mats[0]}, {"b", f.mats[2]}};
  }
  throw algebra_error("unknown tau list '" + name + "'");
}

inline RepTuple induced_representation(const std::array<std::string, 4>& words, const Assignment& asg, const Ctx& ctx) {
  RepTuple r = RepTuple::identity(ctx);
  for (std::size_t i = 0; i < 4; ++i) r.m[i] = word_evaluate(asg, GroupWord::parse(words[i]), ctx);
  return r;
}

// Raw five-tuples are checked as printed; four-tuples are closed by construction.
struct ProductCheck {
  bool sl2 = false;
  bool psl2 = false;
  std::string product;
};

inline ProductCheck verify_product_identity(const std::vector<PMat>& ms) {
  if (ms.empty()) throw algebra_error("empty tuple");
  PMat p = PMat::identity(ms.front().ctx());
  for (const auto& m : ms) p = p * m;
  if (ms.size() == 4) p = p * inverse_sl2(p);
  return {p.is_identity(), p.is_projective_identity(), p.str()};
}

// Tr([Mi, Mj]) - 2 for the six pairs i < j
inline std::vector<LaurentPoly> irreducibility_witness(const RepTuple& r) {
  std::vector<LaurentPoly> out;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      PMat c = r.m[i] * r.m[j] * inverse_sl2(r.m[i]) * inverse_sl2(r.m[j]);
      out.push_back(c.trace() - LaurentPoly(r.ctx(), 2));
    }
  return out;
}

}  // namespace isomono
