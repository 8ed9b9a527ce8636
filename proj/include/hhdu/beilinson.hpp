#pragma once

#include <hhdu/downup.hpp>

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace hhdu {

// Exponents of the normal word y^a (xy)^b x^c.
struct Shape {
  int a = 0, b = 0, c = 0;
  auto operator<=>(const Shape&) const = default;
};

inline std::string word_of(const Shape& s) {
  std::string w;
  w.append(static_cast<std::size_t>(s.a), 'y');
  for (int i = 0; i < s.b; ++i) w += "xy";
  w.append(static_cast<std::size_t>(s.c), 'x');
  return w;
}

inline std::optional<Shape> shape_of(const std::string& w) {
  Shape s;
  std::size_t i = 0;
  while (i < w.size() && w[i] == 'y') ++s.a, ++i;
  while (i + 1 < w.size() && w[i] == 'x' && w[i + 1] == 'y') ++s.b, i += 2;
  while (i < w.size() && w[i] == 'x') ++s.c, ++i;
  if (i != w.size()) return std::nullopt;
  return s;
}

// Compact human-readable form, e.g. "yx^2", "xyx^3", "y^2x".
inline std::string pretty(const std::string& w) {
  if (w.empty()) return "e";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    out += w[i];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

// Lexicographic comparison with x > y.
inline bool lex_greater(const std::string& u, const std::string& v) {
  auto key = [](char ch) { return ch == 'x' ? 1 : 0; };
  for (std::size_t i = 0; i < std::min(u.size(), v.size()); ++i)
    if (u[i] != v[i]) return key(u[i]) > key(v[i]);
  return u.size() > v.size();
}

using ShapeCombination = std::map<Shape, Rational>;

inline void add_into(ShapeCombination& acc, const ShapeCombination& t, const Rational& s) {
  if (s == 0) return;
  for (const auto& [k, v] : t) {
    auto& slot = acc[k];
    slot += s * v;
    if (slot == 0) acc.erase(k);
  }
}

struct RewriteStep {
  std::string lhs;  // full word before the step
  std::string alpha_word, beta_word;
};

// One application of xxy -> a xyx + b yxx or xyy -> a yxy + b yyx at position pos.
inline std::optional<RewriteStep> rewrite_at(const std::string& w, std::size_t pos) {
  if (pos + 3 > w.size() || w[pos] != 'x') return std::nullopt;
  const std::string pat = w.substr(pos, 3);
  std::string ra, rb;
  if (pat == "xxy") {
    ra = "xyx", rb = "yxx";
  } else if (pat == "xyy") {
    ra = "yxy", rb = "yyx";
  } else {
    return std::nullopt;
  }
  RewriteStep st{w, w, w};
  st.alpha_word.replace(pos, 3, ra);
  st.beta_word.replace(pos, 3, rb);
  return st;
}

inline std::vector<std::size_t> redex_positions(const std::string& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 3 <= w.size(); ++i)
    if (rewrite_at(w, i)) out.push_back(i);
  return out;
}

// Normal forms in A(alpha, beta) itself; weights play no role at the word level.
class Rewriter {
 public:
  Rewriter(Rational alpha, Rational beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {}

  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }

  ShapeCombination reduce(const std::string& w) const {
    if (auto s = shape_of(w)) return {{*s, Rational(1)}};
    {
      std::lock_guard<std::mutex> lk(mu_);
      if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    }
    const auto st = *rewrite_at(w, redex_positions(w).front());
    ShapeCombination out;
    if (alpha_ != 0) add_into(out, reduce(st.alpha_word), alpha_);
    add_into(out, reduce(st.beta_word), beta_);
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(w, out);
    return out;
  }

  // Uncached reduction that always rewrites the given redex choice (front or back).
  ShapeCombination reduce_choosing(const std::string& w, bool rightmost) const {
    if (auto s = shape_of(w)) return {{*s, Rational(1)}};
    const auto pos = redex_positions(w);
    const auto st = *rewrite_at(w, rightmost ? pos.back() : pos.front());
    ShapeCombination out;
    add_into(out, reduce_choosing(st.alpha_word, rightmost), alpha_);
    add_into(out, reduce_choosing(st.beta_word, rightmost), beta_);
    return out;
  }

 private:
  Rational alpha_, beta_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, ShapeCombination> memo_;
};

struct Arrow {
  char kind;  // 'x' or 'y'
  int index;
  auto operator<=>(const Arrow&) const = default;
  std::string str() const { return std::string(1, kind) + "_" + std::to_string(index); }
};

struct Quiver {
  int vertex_count = 0;
  int x_count = 0, y_count = 0;
  int n = 0, m = 0;
  int source(const Arrow& a) const { return a.index; }
  int target(const Arrow& a) const { return a.index + (a.kind == 'x' ? n : m); }
  std::vector<Arrow> arrows() const {
    std::vector<Arrow> out;
    for (int i = 1; i <= x_count; ++i) out.push_back({'x', i});
    for (int j = 1; j <= y_count; ++j) out.push_back({'y', j});
    return out;
  }
};

inline Quiver build_quiver(const Instance& inst) {
  Quiver q;
  q.n = inst.n();
  q.m = inst.m();
  q.vertex_count = inst.ell();
  q.x_count = inst.n() + 2 * inst.m();
  q.y_count = 2 * inst.n() + inst.m();
  return q;
}

// Path y^a (xy)^b x^c starting at vertex source.
struct NormalMonomial {
  int source = 1;
  Shape shape;
  auto operator<=>(const NormalMonomial&) const = default;
};

struct NormalElement {
  std::map<NormalMonomial, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const NormalMonomial& mon, const Rational& c) {
    if (c == 0) return;
    auto& slot = terms[mon];
    slot += c;
    if (slot == 0) terms.erase(mon);
  }
  void add(const NormalElement& o, const Rational& s = 1) {
    for (const auto& [k, v] : o.terms) add(k, s * v);
  }
  NormalElement scaled(const Rational& s) const {
    NormalElement r;
    r.add(*this, s);
    return r;
  }
  friend bool operator==(const NormalElement&, const NormalElement&) = default;
};

class Beilinson {
 public:
  explicit Beilinson(Instance inst)
      : inst_(std::move(inst)), quiver_(build_quiver(inst_)), rw_(inst_.alpha(), inst_.beta()) {}

  const Instance& instance() const { return inst_; }
  const Quiver& quiver() const { return quiver_; }
  const Rewriter& rewriter() const { return rw_; }
  int n() const { return inst_.n(); }
  int m() const { return inst_.m(); }
  int ell() const { return inst_.ell(); }

  int letter_degree(char ch) const { return ch == 'x' ? n() : m(); }
  int degree(const Shape& s) const { return s.a * m() + s.b * (n() + m()) + s.c * n(); }
  int degree(const std::string& w) const {
    int d = 0;
    for (char ch : w) d += letter_degree(ch);
    return d;
  }
  int target(const NormalMonomial& mon) const { return mon.source + degree(mon.shape); }

  // Arrows traversed by the word from the given start vertex.
  std::vector<Arrow> arrows_along(int source, const std::string& w) const {
    std::vector<Arrow> out;
    int v = source;
    for (char ch : w) {
      out.push_back({ch, v});
      v += letter_degree(ch);
    }
    return out;
  }

  std::string arrow_string(const NormalMonomial& mon) const {
    const std::string w = word_of(mon.shape);
    if (w.empty()) return "e_" + std::to_string(mon.source);
    std::string s;
    for (const auto& a : arrows_along(mon.source, w)) s += a.str();
    return s;
  }

  // The path spelled by w from source, as a normal element; zero when it leaves the quiver.
  NormalElement path(int source, const std::string& w) const {
    NormalElement e;
    if (source < 1 || source + degree(w) > ell()) return e;
    for (const auto& [s, c] : rw_.reduce(w)) e.add(NormalMonomial{source, s}, c);
    return e;
  }

  NormalElement vertex(int p) const { return path(p, ""); }
  NormalElement arrow(const Arrow& a) const { return path(a.index, std::string(1, a.kind)); }

  NormalElement multiply(const NormalMonomial& u, const NormalMonomial& v) const {
    if (target(u) != v.source) return {};
    return path(u.source, word_of(u.shape) + word_of(v.shape));
  }

  NormalElement multiply(const NormalElement& u, const NormalElement& v) const {
    NormalElement r;
    for (const auto& [mu, cu] : u.terms)
      for (const auto& [mv, cv] : v.terms) {
        if (target(mu) != mv.source) continue;
        r.add(multiply(mu, mv), cu * cv);
      }
    return r;
  }

  long graded_dim(int k) const {
    if (k < 0) return 0;
    long count = 0;
    for (int a = 0; a * m() <= k; ++a)
      for (int b = 0; a * m() + b * (n() + m()) <= k; ++b)
        if ((k - a * m() - b * (n() + m())) % n() == 0) ++count;
    return count;
  }

  std::vector<NormalMonomial> enumerate_basis(int p, int q) const {
    std::vector<NormalMonomial> out;
    if (p < 1 || q > ell() || q < p) return out;
    const int k = q - p;
    for (int a = 0; a * m() <= k; ++a)
      for (int b = 0; a * m() + b * (n() + m()) <= k; ++b) {
        const int rest = k - a * m() - b * (n() + m());
        if (rest % n() == 0) out.push_back({p, {a, b, rest / n()}});
      }
    return out;
  }

  QMatrix cartan_matrix() const {
    QMatrix C(static_cast<std::size_t>(ell()), static_cast<std::size_t>(ell()));
    for (int p = 1; p <= ell(); ++p)
      for (int q = p; q <= ell(); ++q) C(p - 1, q - 1) = graded_dim(q - p);
    return C;
  }

 private:
  Instance inst_;
  Quiver quiver_;
  Rewriter rw_;
};

// Coefficients of 1 / ((1 - t^n)(1 - t^m)(1 - t^{n+m})) up to t^{top}.
inline std::vector<long> hilbert_series(int n, int m, int top) {
  std::vector<long> s(static_cast<std::size_t>(top) + 1, 0);
  s[0] = 1;
  for (int d : {n, m, n + m})
    for (int k = d; k <= top; ++k) s[k] += s[k - d];
  return s;
}

// Both redex choices reduce every word of length <= max_len (containing an xxyy overlap
// or not) to the same normal form.
inline bool check_rewriting_confluence(const Rewriter& rw, int max_len, bool overlap_only) {
  for (int len = 4; len <= max_len; ++len)
    for (long bits = 0; bits < (1L << len); ++bits) {
      std::string w;
      for (int i = 0; i < len; ++i) w += ((bits >> i) & 1) ? 'y' : 'x';
      if (overlap_only && w.find("xxyy") == std::string::npos) continue;
      if (rw.reduce_choosing(w, false) != rw.reduce_choosing(w, true)) return false;
      if (rw.reduce_choosing(w, false) != rw.reduce(w)) return false;
    }
  return true;
}

}  // namespace hhdu
