#pragma once

#include "reps.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace isomono {

enum class BraidFlavor { B4, Spherical5 };

inline int strand_count(BraidFlavor f) { return f == BraidFlavor::B4 ? 4 : 5; }

// signed generator indices: +i for sigma_i, -i for its inverse
struct BraidWord {
  BraidFlavor flavor = BraidFlavor::B4;
  std::vector<int> letters;

  static BraidWord of(BraidFlavor f, std::vector<int> l) {
    BraidWord w{f, {}};
    for (int x : l) w.push(x);
    return w;
  }
  BraidWord inverse() const {
    BraidWord w{flavor, {}};
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.push(-*it);
    return w;
  }
  BraidWord pow(int n) const {
    BraidWord base = n < 0 ? inverse() : *this, w{flavor, {}};
    for (int k = 0; k < std::abs(n); ++k) w = w * base;
    return w;
  }
  friend BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    if (a.flavor != b.flavor) throw algebra_error("braid words of different flavors");
    BraidWord w = a;
    for (int x : b.letters) w.push(x);
    return w;
  }
  friend bool operator==(const BraidWord&, const BraidWord&) = default;

  std::string str() const {
    if (letters.empty()) return "1";
    std::string s;
    for (int x : letters) {
      if (!s.empty()) s += " ";
      s += "s" + std::to_string(std::abs(x));
      if (x < 0) s += "^-1";
    }
    return s;
  }

 private:
  void push(int x) {
    if (x == 0 || std::abs(x) >= strand_count(flavor)) throw algebra_error("braid generator index out of range");
    if (!letters.empty() && letters.back() == -x) letters.pop_back();
    else letters.push_back(x);
  }
};

// sigma_i: (Mi, Mi+1) -> (Mi Mi+1 Mi^-1, Mi); the inverse letter undoes it
inline void braid_letter(std::vector<PMat>& t, int letter) {
  std::size_t i = static_cast<std::size_t>(std::abs(letter)) - 1;
  if (i + 1 >= t.size()) throw algebra_error("braid generator index out of range for tuple");
  PMat x = t[i], y = t[i + 1];
  if (letter > 0) {
    t[i] = x * y * inverse_sl2(x);
    t[i + 1] = x;
  } else {
    t[i] = y;
    t[i + 1] = inverse_sl2(y) * x * y;
  }
}

inline std::vector<PMat> braid_act(const BraidWord& w, std::vector<PMat> t) {
  const std::size_t need = w.flavor == BraidFlavor::B4 ? 4 : 5;
  if (t.size() < need) throw algebra_error("tuple too short for braid flavor");
  for (int l : w.letters) braid_letter(t, l);
  return t;
}

inline RepTuple braid_act(const BraidWord& w, const RepTuple& r) {
  if (w.flavor != BraidFlavor::B4) throw algebra_error("four-tuples carry the B4 action only");
  return RepTuple::from(braid_act(w, std::vector<PMat>(r.m.begin(), r.m.end())));
}

inline std::vector<int> strand_permutation(const BraidWord& w) {
  std::vector<int> p(strand_count(w.flavor));
  std::iota(p.begin(), p.end(), 0);
  for (int l : w.letters) {
    std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
    std::swap(p[i], p[i + 1]);
  }
  return p;
}

inline bool is_pure(const BraidWord& w) {
  auto p = strand_permutation(w);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

struct NamedBraid {
  std::string name;
  BraidWord word;
};

// A_ij = (s_{j-1} ... s_{i+1}) s_i^2 (s_{j-1} ... s_{i+1})^-1, 1 <= i < j <= 4
inline std::vector<NamedBraid> pure_generators() {
  std::vector<NamedBraid> out;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      BraidWord conj{BraidFlavor::B4, {}};
      for (int k = j - 1; k > i; --k) conj = conj * BraidWord::of(BraidFlavor::B4, {k});
      BraidWord core = BraidWord::of(BraidFlavor::B4, {i, i});
      out.push_back({"A" + std::to_string(i) + std::to_string(j), conj * core * conj.inverse()});
    }
  return out;
}

inline std::vector<NamedBraid> spherical_generators() {
  std::vector<NamedBraid> out;
  for (int i = 1; i <= 4; ++i) out.push_back({"s" + std::to_string(i), BraidWord::of(BraidFlavor::Spherical5, {i})});
  return out;
}

inline BraidWord full_twist() { return BraidWord::of(BraidFlavor::B4, {1, 2, 3}).pow(4); }

// the word as printed alongside the full twist; kept for comparison only
inline BraidWord printed_center_word() { return BraidWord::of(BraidFlavor::B4, {3, 2, 1, 2, 1, 1}).pow(2); }

// The full twist acts as Mi -> P Mi P^-1 with P = M1 M2 M3 M4.
inline bool center_check(const RepTuple& r) {
  RepTuple moved = braid_act(full_twist(), r);
  if (trace_key(trace_coordinates(moved)) != trace_key(trace_coordinates(r))) return false;
  PMat p = r.product(), pi = inverse_sl2(p);
  for (std::size_t i = 0; i < 4; ++i)
    if (moved.m[i] != p * r.m[i] * pi) return false;
  return true;
}

}  // namespace isomono
