#pragma once

#include "connection.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace isomono {

// Lines are parametrized as x = a y + b, so y stays the coordinate on the line and the
// conic x^2 - y cuts it in a^2 y^2 + (2ab - 1) y + b^2.
inline RationalMap line_map(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) throw algebra_error("a = 0: line not generic in this chart");
  const Ctx& C = conn_context();
  RationalMap m{C, base_of({"y"}), {}, std::nullopt};
  m.subs[C->require("x")] = FF(a * LaurentPoly::var(C, "y") + b);
  return m;
}

inline LaurentPoly line_quadric(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly y = cp("y");
  return a * a * y * y + (LaurentPoly(conn_context(), 2) * a * b - LaurentPoly(conn_context(), 1)) * y + b * b;
}

struct LineRestriction {
  LaurentPoly a, b;
  MatConnection connection;  // base {y}
  RiccatiForm riccati;
};

inline LineRestriction restrict_to_line(const MatConnection& conn, const LaurentPoly& a, const LaurentPoly& b) {
  RationalMap m = line_map(a, b);
  MatConnection c = connection_pullback(conn, m);
  c.name = conn.name + "|line";
  return {a, b, c, riccati_of_connection(c)};
}

// b eliminated through c^2 = 1 - 4ab
inline LaurentPoly b_of_c(const LaurentPoly& a, const LaurentPoly& c) {
  LaurentPoly one(conn_context(), 1);
  if (!a.is_monomial()) throw algebra_error("b_of_c needs a monomial a");
  return Q(1, 4) * (one - c * c) * a.inverse_monomial();
}

inline std::pair<LaurentPoly, LaurentPoly> pole_positions(const LaurentPoly& a, const LaurentPoly& c) {
  if (a.is_zero()) throw algebra_error("a = 0: no pole positions");
  if (!a.is_monomial()) throw algebra_error("pole_positions needs a monomial a");
  LaurentPoly one(conn_context(), 1), ia = a.inverse_monomial();
  LaurentPoly h1 = Q(1, 2) * (c - one) * ia, h2 = Q(1, 2) * (c + one) * ia;
  return {h1 * h1, h2 * h2};
}

inline std::vector<LaurentPoly> garnier_basis(const LaurentPoly& t1, const LaurentPoly& t2) {
  LaurentPoly y = cp("y");
  return {cp("y"), cp("y - 1"), y - t1, y - t2, cp("a"), cp("c - 1"), cp("c + 1"), cp("c + 2*a + 1"),
          cp("c - 2*a + 1"), cp("c + 2*a - 1"), cp("c - 2*a - 1"), cp("l0 + a*l1"), cp("a + 1")};
}

// ---------------------------------------------------------------- printed data

struct PrintedRestriction {
  LaurentPoly dw_numerator, alpha2, alpha1, alpha0;
};

inline PrintedRestriction printed_restriction() {
  return {cp("2*a^2*y^4 + (4*a*b - 2 - 2*a^2)*y^3 + (2 - 4*a*b + 2*b^2)*y^2 - 2*b^2*y"),
          cp("(l0*a + l1*a^2)*y^2 + ((a - b)*l0 + (2*a*b - 1)*l1)*y + l0*b + l1*b^2"),
          cp("-1*a^2*y^3 + (a^2 - 2*a*b + 1)*y^2 + (2*a*b - b^2 - 1)*y + b^2"),
          cp("-1*(l0*a + l1*a^2)*y^3 + ((a + b)*l0 + (1 - 2*a*b)*l1)*y^2 - (l0*b + l1*b^2)*y")};
}

struct PrintedGarnier {
  FF t1_44, t2_44, t1_45, t2_45, Sq, Pq, Sp, gamma;
};

inline PrintedGarnier printed_garnier() {
  const std::vector<std::pair<std::string, int>> G = {{"c^2 - 1", 1}, {"1 + c + 2*a", 1}, {"1 - c + 2*a", 1}};
  return {cf("(c - 1)*(c - 1)", {{"4*a^2", 1}}),
          cf("(c + 1)*(c + 1)", {{"4*a^2", 1}}),
          cf("1/4*(c - 1)*(c - 1)"),
          cf("1/4*(c + 1)*(c + 1)"),
          cf("(1 - c^2 + 4*a^2)*l0 + 2*a*(c^2 + 1)*l1", {{"4*a^2*(l0 + a*l1)", 1}}),
          cf("-1*(c - 1)*(c + 1)*(4*a*l0 + (1 - c^2))", {{"16*a^3*(l0 + a*l1)", 1}}),
          cf("-1*(2*a*(1 + 3*a - c^2 + 4*a^2 - 3*a*c^2 + 4*a^3)*l0 + (2*a + 4*a^2 + 2*a*c^2)*l1)", G),
          cf("8*(1 + a)*(l0 + a*l1)*a^3", G)};
}

// ---------------------------------------------------------------- alpha coefficients

struct AlphaCheck {
  std::string name;
  std::string printed;
  std::string derived;
  bool match = false;
};

struct RestrictionReport {
  bool dw_identity = false;  // printed dw numerator equals 2y(y-1)Q
  bool denominator_ok = false;
  std::vector<AlphaCheck> alphas;
};

// alpha_k = P_k * 2y(y-1)Q for the restriction with symbolic (a, b)
inline RestrictionReport restriction_report(const LineRestriction& L) {
  const Ctx& C = conn_context();
  LaurentPoly Qd = line_quadric(L.a, L.b);
  LaurentPoly common = LaurentPoly(C, 2) * cp("y") * cp("y - 1") * Qd;
  PrintedRestriction pr = printed_restriction();
  RestrictionReport out;
  out.dw_identity = pr.dw_numerator == common;
  out.denominator_ok = true;
  const std::array<std::pair<const char*, const OneForm*>, 3> parts = {
      {{"alpha2", &L.riccati.P2}, {"alpha1", &L.riccati.P1}, {"alpha0", &L.riccati.P0}}};
  const LaurentPoly* printed[3] = {&pr.alpha2, &pr.alpha1, &pr.alpha0};
  for (int k = 0; k < 3; ++k) {
    FF num = parts[k].second->coef[0] * FF(common);
    AlphaCheck ac{parts[k].first, printed[k]->str(), num.str(), false};
    if (!num.is_polynomial()) {
      out.denominator_ok = false;
    } else {
      ac.match = num.num() == *printed[k];
    }
    out.alphas.push_back(ac);
  }
  return out;
}

// ---------------------------------------------------------------- residues on the line

struct LineResidues {
  LaurentPoly t1, t2;
  std::vector<ResidueData> residues;  // 0, 1, t1, t2, inf
  bool consistent = true;
};

// restriction with b = (1 - c^2)/(4a), residues at the five punctures
inline LineResidues line_residues(const MatConnection& conn, const LaurentPoly& a, const LaurentPoly& c) {
  const Ctx& C = conn_context();
  auto [t1, t2] = pole_positions(a, c);
  LineRestriction L = restrict_to_line(conn, a, b_of_c(a, c));
  auto basis = garnier_basis(t1, t2);
  MatConnection m = L.connection;
  for (auto& e : m.w) e = e.refactor(basis);
  const int y = C->require("y");
  LaurentPoly Y = cp("y");
  LineResidues out{t1, t2, {}, true};
  const std::vector<std::pair<std::string, LaurentPoly>> finite = {
      {"0", cp("0")}, {"1", cp("1")}, {"t1", t1}, {"t2", t2}};
  for (const auto& [name, p] : finite) {
    Divisor D{"y=" + name, Y - p, y, p, std::nullopt};
    out.residues.push_back(residue(m, D));
  }
  RationalMap inf{C, base_of({"Y"}), {}, std::nullopt};
  inf.subs[y] = FF(cp("Y^-1"));
  out.residues.push_back(residue(m, Divisor{"y=inf", cp("Y"), C->require("Y"), cp("0"), inf}));
  for (const auto& r : out.residues) out.consistent = out.consistent && r.consistent;
  return out;
}

// lower-left entry of H = sum M_i/(y - p_i) over the finite punctures
struct H21 {
  FF lead;  // c(t1, t2)
  FF Sq, Pq;
  int degree = -1;
  bool infinity_lower_left_zero = false;
  bool matches_connection = false;  // H21 equals the restricted lower-left coefficient
  bool ok() const { return degree == 2; }
};

inline H21 h21_extract(const MatConnection& conn, const LaurentPoly& a, const LaurentPoly& c) {
  const Ctx& C = conn_context();
  LineResidues R = line_residues(conn, a, c);
  const int y = C->require("y");
  LaurentPoly Y = cp("y");
  std::array<LaurentPoly, 4> pts = {cp("0"), cp("1"), R.t1, R.t2};
  H21 out{FF(C), FF(C), FF(C)};
  out.infinity_lower_left_zero = R.residues[4].residue[2].is_zero();
  FF h(C);
  LaurentPoly full(C, 1);
  for (int i = 0; i < 4; ++i) {
    h = h + R.residues[i].residue[2] * FF::ratio(LaurentPoly(C, 1), Y - pts[i]);
    full *= Y - pts[i];
  }
  FF numer = (h * FF(full)).refactor(garnier_basis(R.t1, R.t2));
  if (!numer.is_polynomial() && numer.denominator().depends_on(y)) throw algebra_error("H21 numerator is not polynomial in y");
  FF scale = FF(LaurentPoly(C, 1)) / FF(numer.denominator());
  const LaurentPoly& n = numer.num();
  if (n.is_zero()) return out;
  if (n.min_degree(y) < 0) throw algebra_error("H21 numerator has negative powers of y");
  out.degree = n.max_degree(y);
  LineRestriction L = restrict_to_line(conn, a, b_of_c(a, c));
  out.matches_connection = L.connection.at(1, 0).coef[0] == h;
  if (out.degree != 2) return out;
  FF c2 = FF(n.coefficient(y, 2)) * scale, c1 = FF(n.coefficient(y, 1)) * scale, c0 = FF(n.coefficient(y, 0)) * scale;
  auto basis = garnier_basis(R.t1, R.t2);
  out.lead = c2.refactor(basis);
  out.Sq = (-(c1 / c2)).refactor(basis);
  out.Pq = (c0 / c2).refactor(basis);
  return out;
}

// ---------------------------------------------------------------- report

struct FieldAgreement {
  std::string field;
  std::optional<FF> derived;
  std::optional<FF> printed_44, printed_45;
  std::optional<bool> match_44, match_45;
};

struct GarnierData {
  FF t1, t2, Sq, Pq, Sp, gamma;
  FF lead;
  bool infinity_lower_left_zero = false;
  int h21_degree = -1;
  std::vector<FieldAgreement> agreement;
};

inline GarnierData garnier_parametrization(const MatConnection& conn, const LaurentPoly& a, const LaurentPoly& c,
                                           const std::map<std::string, LaurentPoly>& at = {}) {
  H21 h = h21_extract(conn, a, c);
  auto [t1, t2] = pole_positions(a, c);
  PrintedGarnier pg = printed_garnier();
  std::vector<std::optional<LaurentPoly>> im(conn_context()->size());
  for (const auto& [k, v] : at) im[conn_context()->require(k)] = v;
  auto spec = [&](const FF& f) { return at.empty() ? f : f.substitute(im, conn_context()); };
  GarnierData g{FF(t1), FF(t2), h.Sq, h.Pq, spec(pg.Sp), spec(pg.gamma), h.lead, h.infinity_lower_left_zero, h.degree, {}};
  auto cmp = [](const FF& d, const FF& p) { return d == p; };
  g.agreement.push_back({"t1", g.t1, spec(pg.t1_44), spec(pg.t1_45), cmp(g.t1, spec(pg.t1_44)), cmp(g.t1, spec(pg.t1_45))});
  g.agreement.push_back({"t2", g.t2, spec(pg.t2_44), spec(pg.t2_45), cmp(g.t2, spec(pg.t2_44)), cmp(g.t2, spec(pg.t2_45))});
  if (h.ok()) {
    g.agreement.push_back({"Sq", g.Sq, std::nullopt, spec(pg.Sq), std::nullopt, cmp(g.Sq, spec(pg.Sq))});
    g.agreement.push_back({"Pq", g.Pq, std::nullopt, spec(pg.Pq), std::nullopt, cmp(g.Pq, spec(pg.Pq))});
  }
  g.agreement.push_back({"Sp", std::nullopt, std::nullopt, g.Sp, std::nullopt, std::nullopt});
  g.agreement.push_back({"gamma", std::nullopt, std::nullopt, g.gamma, std::nullopt, std::nullopt});
  return g;
}

}  // namespace isomono
