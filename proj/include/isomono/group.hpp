#pragma once

#include "mat2.hpp"

#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace isomono {

struct Letter {
  std::string gen;
  int exp;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters) {
    for (auto& l : letters) push(std::move(l));
  }
  static GroupWord gen(const std::string& g, int e = 1) {
    GroupWord w;
    for (int k = 0; k < std::abs(e); ++k) w.push({g, e > 0 ? 1 : -1});
    return w;
  }
  // syntax: juxtaposed tokens separated by spaces or '*', each a generator name or a
  // parenthesized word, optionally followed by ^n; e.g. "(a b)^2 (b a)^-2"
  static GroupWord parse(const std::string& s);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  GroupWord inverse() const {
    GroupWord w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push({it->gen, -it->exp});
    return w;
  }
  GroupWord pow(int n) const {
    GroupWord base = n < 0 ? inverse() : *this, w;
    for (int k = 0; k < std::abs(n); ++k) w = w * base;
    return w;
  }
  friend GroupWord operator*(const GroupWord& a, const GroupWord& b) {
    GroupWord w = a;
    for (const auto& l : b.letters_) w.push(l);
    return w;
  }
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (const auto& l : letters_) {
      if (!s.empty()) s += " ";
      s += l.gen;
      if (l.exp < 0) s += "^-1";
    }
    return s;
  }

 private:
  std::vector<Letter> letters_;
  // free reduction on the fly
  void push(Letter l) {
    if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp) letters_.pop_back();
    else letters_.push_back(std::move(l));
  }
};

inline GroupWord commutator(const GroupWord& x, const GroupWord& y) { return x * y * x.inverse() * y.inverse(); }

namespace detail {
class WordParser {
 public:
  explicit WordParser(const std::string& s) : s_(s) {}
  GroupWord run() {
    GroupWord w = seq();
    skip();
    if (pos_ != s_.size()) throw parse_error("trailing input in word '" + s_ + "'");
    return w;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*')) ++pos_;
  }
  GroupWord seq() {
    GroupWord w;
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ')') return w;
      w = w * atom();
    }
  }
  GroupWord atom() {
    GroupWord base;
    if (s_[pos_] == '(') {
      ++pos_;
      base = seq();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw parse_error("unbalanced parenthesis in '" + s_ + "'");
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t b = pos_;
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      base = GroupWord::gen(s_.substr(b, pos_ - b));
    } else {
      throw parse_error("unexpected character in word '" + s_ + "'");
    }
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      std::size_t b = pos_;
      if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (b == pos_) throw parse_error("bad exponent in word '" + s_ + "'");
      base = base.pow(std::stoi(s_.substr(b, pos_ - b)));
    }
    return base;
  }
};
}  // namespace detail

inline GroupWord GroupWord::parse(const std::string& s) { return detail::WordParser(s).run(); }

struct Presentation {
  std::string name;
  std::vector<std::string> generators;
  std::vector<std::pair<std::string, GroupWord>> relators;  // display text, word
};

inline Presentation make_presentation(std::string name, std::vector<std::string> gens,
                                      const std::vector<std::string>& relators) {
  Presentation p{std::move(name), std::move(gens), {}};
  for (const auto& r : relators) {
    GroupWord w = GroupWord::parse(r);
    for (const auto& l : w.letters())
      if (std::find(p.generators.begin(), p.generators.end(), l.gen) == p.generators.end())
        throw algebra_error("relator '" + r + "' uses undeclared generator " + l.gen);
    p.relators.emplace_back(r, w);
  }
  return p;
}

using Assignment = std::map<std::string, PMat>;

inline PMat word_evaluate(const Assignment& asg, const GroupWord& w, const Ctx& ctx) {
  PMat acc = PMat::identity(ctx);
  std::map<std::string, PMat> inverses;
  for (const auto& l : w.letters()) {
    auto it = asg.find(l.gen);
    if (it == asg.end()) throw algebra_error("unassigned generator '" + l.gen + "'");
    if (l.exp > 0) {
      acc = acc * it->second;
    } else {
      auto inv = inverses.find(l.gen);
      if (inv == inverses.end()) inv = inverses.emplace(l.gen, inverse_sl2(it->second)).first;
      acc = acc * inv->second;
    }
  }
  return acc;
}

struct RelatorVerdict {
  std::string relator;
  bool sl2 = false;
  bool psl2 = false;
  std::string value;
};

inline std::vector<RelatorVerdict> verify_relations(const Presentation& p, const Assignment& asg, const Ctx& ctx) {
  std::vector<RelatorVerdict> out;
  for (const auto& [text, w] : p.relators) {
    PMat m = word_evaluate(asg, w, ctx);
    out.push_back({text, m.is_identity(), m.is_projective_identity(), m.str()});
  }
  return out;
}

struct ClosureResult {
  bool finite = false;
  std::size_t order = 0;  // group order when finite, elements seen otherwise
};

// sign-normalized key for the class {M, -M}
inline std::string projective_key(const PMat& m) {
  const LaurentPoly* entries[4] = {&m.a11, &m.a12, &m.a21, &m.a22};
  for (const LaurentPoly* e : entries) {
    if (e->is_zero()) continue;
    bool flip = sgn(e->leading().second) < 0;
    return flip ? (-m).str() : m.str();
  }
  return m.str();
}

inline ClosureResult projective_closure(const std::vector<PMat>& gens, std::size_t cutoff) {
  if (gens.empty()) return {true, 1};
  const Ctx& ctx = gens.front().ctx();
  std::vector<PMat> step = gens;
  for (const auto& g : gens) step.push_back(inverse_sl2(g));
  std::unordered_set<std::string> seen;
  std::deque<PMat> queue;
  PMat id = PMat::identity(ctx);
  seen.insert(projective_key(id));
  queue.push_back(id);
  while (!queue.empty()) {
    PMat cur = queue.front();
    queue.pop_front();
    for (const auto& g : step) {
      PMat nxt = cur * g;
      if (seen.insert(projective_key(nxt)).second) {
        if (seen.size() > cutoff) return {false, seen.size()};
        queue.push_back(nxt);
      }
    }
  }
  return {true, seen.size()};
}

}  // namespace isomono
