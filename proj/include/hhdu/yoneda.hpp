#pragma once

#include <hhdu/cohomology.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhdu {

// Values of a bimodule map on generator symbols; extended by sandwiching.
using BimoduleMap = std::map<Generator, BimoduleElement>;

inline BimoduleElement apply_map(const Beilinson& B, const BimoduleMap& f, const BimoduleElement& x) {
  BimoduleElement out;
  for (const auto& [k, c] : x.terms) {
    auto it = f.find(k.gen);
    if (it == f.end()) continue;
    out.add(sandwich(B, NormalElement{{{k.left, Rational(1)}}}, it->second, NormalElement{{{k.right, Rational(1)}}}), c);
  }
  return out;
}

// Lift of a 1-cocycle: sigma0 : P^1 -> P^0, sigma1 : P^2 -> P^1.
struct ChainMap {
  std::string name;
  BimoduleMap sigma0, sigma1;
  std::vector<Rational> lifts;  // cocycle actually lifted, read off from sigma0
};

namespace detail {

// Writes  c . lw (g) rw  with lw read from vertex start; indices of g are checked against the words.
class TermBuilder {
 public:
  explicit TermBuilder(const Beilinson& B) : B_(B) {}
  TermBuilder& add(const Rational& c, int start, const std::string& lw, const Generator& g, const std::string& rw) {
    if (c == 0) return *this;
    const Instance& inst = B_.instance();
    if (start + B_.degree(lw) != gen_source(inst, g))
      throw std::logic_error("transcription: left word does not reach " + g.str());
    NormalElement l = B_.path(start, lw), r = B_.path(gen_target(inst, g), rw);
    for (const auto& [lm, lc] : l.terms)
      for (const auto& [rm, rc] : r.terms) e_.add(TensorKey{g, lm, rm}, c * lc * rc);
    return *this;
  }
  BimoduleElement done() const { return e_; }

 private:
  const Beilinson& B_;
  BimoduleElement e_;
};

inline std::string xs(int k) { return std::string(static_cast<std::size_t>(std::max(k, 0)), 'x'); }

// Solve boundary(X) = target for X in the level-`level` part of s (x) t.
inline std::optional<BimoduleElement> solve_component(const HomComplex& hc, int level, int s, int t,
                                                      const BimoduleElement& target) {
  const Beilinson& B = hc.algebra();
  const Instance& inst = hc.instance();
  const auto gs = generator_set(inst);
  const std::vector<Generator>& gens = level == 1 ? gs.g1 : gs.g2;
  std::vector<TensorKey> unknowns;
  std::vector<BimoduleElement> images;
  for (const auto& g : gens) {
    const int sg = gen_source(inst, g), tg = gen_target(inst, g);
    if (sg < s || tg > t) continue;
    for (const auto& l : B.enumerate_basis(s, sg))
      for (const auto& r : B.enumerate_basis(tg, t)) {
        TensorKey k{g, l, r};
        BimoduleElement x;
        x.add(k, 1);
        unknowns.push_back(k);
        images.push_back(boundary(B, x));
      }
  }
  std::map<TensorKey, std::size_t> rows;
  auto row_of = [&](const TensorKey& k) { return rows.emplace(k, rows.size()).first->second; };
  for (const auto& im : images)
    for (const auto& [k, c] : im.terms) row_of(k);
  for (const auto& [k, c] : target.terms) row_of(k);
  QMatrix M(rows.size(), unknowns.size());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [k, c] : images[j].terms) M(rows.at(k), j) = c;
  std::vector<Rational> b(rows.size());
  for (const auto& [k, c] : target.terms) b[rows.at(k)] = c;
  auto x = solve(M, b);
  if (!x) return std::nullopt;
  BimoduleElement out;
  for (std::size_t j = 0; j < unknowns.size(); ++j) out.add(unknowns[j], (*x)[j]);
  return out;
}

}  // namespace detail

// Cocycle on P^1 lifted by sigma0, i.e. augmentation o sigma0.
inline std::vector<Rational> lifted_cocycle(const HomComplex& hc, const BimoduleMap& sigma0) {
  Functional phi;
  for (const auto& [g, v] : sigma0) {
    NormalElement a = augmentation(hc.algebra(), v);
    if (!a.is_zero()) phi[g] = std::move(a);
  }
  return hc.coordinates(1, phi);
}

struct DiagramCheck {
  bool lifts = false;     // augmentation o sigma0 equals the expected cocycle
  bool commutes = false;  // sigma0 o boundary = -boundary o sigma1 on P^2
  std::string detail;
};

inline DiagramCheck check_diagram(const HomComplex& hc, const ChainMap& cm, const std::vector<Rational>& expected) {
  const Beilinson& B = hc.algebra();
  DiagramCheck d;
  d.lifts = lifted_cocycle(hc, cm.sigma0) == expected;
  d.commutes = true;
  for (const auto& g : generator_set(hc.instance()).g2) {
    BimoduleElement lhs = apply_map(B, cm.sigma0, hc.boundary_of(g));
    auto it = cm.sigma1.find(g);
    if (it != cm.sigma1.end()) lhs.add(boundary(B, it->second));
    if (!lhs.is_zero()) {
      d.commutes = false;
      d.detail += "square fails at " + g.str() + "; ";
    }
  }
  if (!d.lifts) d.detail += "sigma0 does not lift the cocycle; ";
  return d;
}

// Generic lift: sigma0(a) = e_{s(a)} (x) h(a), sigma1 by exact solve of the square.
inline ChainMap lift_cocycle(const HomComplex& hc, const std::vector<Rational>& h, std::string name = "lift") {
  const Beilinson& B = hc.algebra();
  const Instance& inst = hc.instance();
  ChainMap cm;
  cm.name = std::move(name);
  const Functional phi = hc.functional(1, h);
  for (const auto& [g, val] : phi) {
    const int s = gen_source(inst, g);
    BimoduleElement e;
    for (const auto& [mon, c] : val.terms) e.add(TensorKey{vertex_gen(s), unit_at(s), mon}, c);
    if (!e.is_zero()) cm.sigma0[g] = std::move(e);
  }
  for (const auto& g : generator_set(inst).g2) {
    BimoduleElement target = apply_map(B, cm.sigma0, hc.boundary_of(g));
    if (target.is_zero()) continue;
    BimoduleElement neg;
    neg.add(target, -1);
    auto x = detail::solve_component(hc, 1, gen_source(inst, g), gen_target(inst, g), neg);
    if (!x) throw std::invalid_argument("cannot lift: not a cocycle (" + g.str() + ")");
    if (!x->is_zero()) cm.sigma1[g] = std::move(*x);
  }
  cm.lifts = lifted_cocycle(hc, cm.sigma0);
  return cm;
}

// Yoneda product [outer o sigma1] as an unreduced 2-cochain.
inline std::vector<Rational> yoneda_product(const HomComplex& hc, const std::vector<Rational>& outer, const ChainMap& cm) {
  const Functional phi = hc.functional(1, outer);
  Functional out;
  for (const auto& [g, v] : cm.sigma1) {
    NormalElement val = evaluate(hc.algebra(), phi, v);
    if (!val.is_zero()) out[g] = std::move(val);
  }
  return hc.coordinates(2, out);
}

inline bool same_class2(const HomComplex& hc, const std::vector<Rational>& u, const std::vector<Rational>& v) {
  std::vector<Rational> d(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - v[i];
  return in_column_space(hc.d2_matrix(), d);
}

inline bool same_class1(const HomComplex& hc, const std::vector<Rational>& u, const std::vector<Rational>& v) {
  std::vector<Rational> d(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - v[i];
  return in_column_space(hc.d1_matrix(), d);
}

// Coordinates of the class of v against a complement basis of Im d2.
inline std::vector<Rational> hh2_coordinates(const HomComplex& hc, const CocycleBasis& basis2, const std::vector<Rational>& v) {
  const QMatrix& d2 = hc.d2_matrix();
  QMatrix M = d2.hcat(columns_of(basis2.classes, hc.dim(2)));
  auto x = solve(M, v);
  if (!x) throw std::logic_error("HH^2 complement does not span");
  return std::vector<Rational>(x->begin() + static_cast<std::ptrdiff_t>(d2.cols()), x->end());
}

// ---- chain maps as displayed, one per admissible label ----

inline const std::vector<std::string>& chain_map_labels() {
  static const std::vector<std::string> v{"1", "2", "3", "4", "5", "3'", "4'", "5'"};
  return v;
}

inline bool admissible(const Instance& inst, const std::string& q) {
  const auto c = classify(inst);
  const bool one1 = inst.n() == 1 && inst.m() == 1;
  if (q == "1") return true;
  if (q == "2") return c.cond1 == Cond1::CaseI;
  if (q == "3" || q == "4") return inst.n() == 1 && c.cond2 == Cond2::Case1;
  if (q == "5") return inst.n() == 1 && c.cond2 == Cond2::Case2;
  if (q == "3'" || q == "4'") return one1 && c.cond2 == Cond2::Case1;
  if (q == "5'") return one1 && c.cond2 == Cond2::Case2;
  throw std::invalid_argument("unknown chain map label " + q);
}

// The cocycle h^q as named in the text (h^{4'} with the x_1/x_3 correction).
inline std::vector<Rational> stated_cocycle(const HomComplex& hc, const std::string& q) {
  const Instance& inst = hc.instance();
  const int n = inst.n(), m = inst.m();
  const Rational &a = inst.alpha(), &b = inst.beta();
  std::vector<Rational> v(hc.dim(1));
  auto put = [&](const Rational& c, const Generator& g, const std::string& w) {
    if (c != 0) v[hc.index_of(1, g, w)] += c;
  };
  const std::string xm = detail::xs(m);
  if (q == "1") {
    for (int r = 1; r <= n + 2 * m; ++r) put(1, x_gen(r), "x");
  } else if (q == "2") {
    for (int r = 1; r <= m; ++r) put(r % 2 == 1 ? 1 : -1, x_gen(n + r), "x");
  } else if (q == "3") {
    for (int r = 2; r <= m + 2; ++r) put(inst.lambda(r - 1), y_gen(r), xm);
  } else if (q == "4") {
    for (int r = 1; r <= m + 2; ++r) put(b * inst.lambda(r - 2), y_gen(r), xm);
  } else if (q == "5") {
    for (int r = 1; r <= m + 2; ++r) put(rpow(a / 2, r - 1), y_gen(r), xm);
  } else if (q == "3'") {
    put(1, x_gen(2), "y");
  } else if (q == "4'") {
    put(b, x_gen(1), "y");
    put(1, x_gen(3), "y");
  } else if (q == "5'") {
    const Rational h = a / 2;
    put(1, x_gen(3), "y");
    put(h, x_gen(2), "y");
    put(h * h, x_gen(1), "y");
  } else {
    throw std::invalid_argument("unknown chain map label " + q);
  }
  return v;
}

// sigma^q transcribed term by term.
inline ChainMap build_chain_map(const HomComplex& hc, const std::string& q) {
  if (!admissible(hc.instance(), q)) throw std::invalid_argument("sigma^" + q + " is not defined for " + hc.instance().label());
  const Beilinson& B = hc.algebra();
  const Instance& inst = hc.instance();
  const int n = inst.n(), m = inst.m();
  const Rational &a = inst.alpha(), &b = inst.beta();
  const Rational h = a / 2;
  auto lam = [&](int r) { return inst.lambda(r); };
  const std::string xm = detail::xs(m), xm1 = detail::xs(m + 1);
  ChainMap cm;
  cm.name = "sigma^" + q;
  auto s0 = [&](const Generator& g, const Rational& c, const std::string& rw) {
    if (c == 0) return;
    const int s = gen_source(inst, g);
    cm.sigma0[g].add(detail::TermBuilder(B).add(c, s, "", vertex_gen(s), rw).done());
  };
  auto put1 = [&](const Generator& g, const detail::TermBuilder& tb) {
    BimoduleElement e = tb.done();
    if (!e.is_zero()) cm.sigma1[g].add(e);
  };

  if (q == "1") {
    for (int i = 1; i <= n + 2 * m; ++i) s0(x_gen(i), 1, "x");
    for (int i = 1; i <= m; ++i)
      put1(f_gen(i), detail::TermBuilder(B)
                         .add(1, i, "", x_gen(i), "xy")
                         .add(-a, i, "", x_gen(i), "yx")
                         .add(-a, i, "x", y_gen(i + n), "x")
                         .add(-2 * b, i, "", y_gen(i), "xx")
                         .add(-b, i, "y", x_gen(i + m), "x"));
    for (int j = 1; j <= n; ++j)
      put1(g_gen(j), detail::TermBuilder(B)
                         .add(-a, j, "", y_gen(j), "xy")
                         .add(-b, j, "", y_gen(j), "yx")
                         .add(-b, j, "y", y_gen(j + m), "x"));
  } else if (q == "2") {
    for (int i = n + 1; i <= n + m; ++i) s0(x_gen(i), (i - n) % 2 == 0 ? 1 : -1, "x");
    for (int i = 1; i <= m; ++i) {
      const Rational sg = i % 2 == 0 ? 1 : -1;
      detail::TermBuilder tb(B);
      tb.add(sg, i, "", x_gen(i), "xy");
      if (i <= n) tb.add(-sg * b, i, "", y_gen(i), "xx");
      put1(f_gen(i), tb);
    }
  } else if (q == "3") {
    for (int j = 1; j <= m + 2; ++j) s0(y_gen(j), lam(j - 1), xm);
    for (int i = 1; i <= m; ++i)
      put1(f_gen(i), detail::TermBuilder(B).add(b * lam(i - 1), i, "", x_gen(i), xm1).add(lam(i + 1), i, "x", x_gen(i + 1), xm));
    put1(g_gen(1), detail::TermBuilder(B).add(1, 1, "", x_gen(1), xm + "y").add(-b * lam(m), 1, "", y_gen(1), xm1));
  } else if (q == "4") {
    for (int j = 1; j <= m + 2; ++j) s0(y_gen(j), b * lam(j - 2), xm);
    for (int i = 1; i <= m; ++i)
      put1(f_gen(i),
           detail::TermBuilder(B).add(b * b * lam(i - 2), i, "", x_gen(i), xm1).add(b * lam(i), i, "x", x_gen(i + 1), xm));
    put1(g_gen(1), detail::TermBuilder(B)
                       .add(-a * b * lam(m), 1, "y", x_gen(m + 1), xm)
                       .add(b * lam(m), 1, "", x_gen(1), "y" + xm)
                       .add(b * lam(m), 1, "x", y_gen(2), xm));
  } else if (q == "5") {
    for (int j = 1; j <= m + 2; ++j) s0(y_gen(j), rpow(h, j - 1), xm);
    for (int i = 1; i <= m; ++i)
      put1(f_gen(i), detail::TermBuilder(B).add(-rpow(h, i + 1), i, "", x_gen(i), xm1).add(rpow(h, i + 1), i, "x", x_gen(i + 1), xm));
    put1(g_gen(1), detail::TermBuilder(B)
                       .add(h, 1, "", x_gen(1), xm + "y")
                       .add(rpow(h, m + 1), 1, "", x_gen(1), "y" + xm)
                       .add(-rpow(h, m + 2), 1, "", y_gen(1), xm1)
                       .add(rpow(h, m + 1), 1, "x", y_gen(2), xm)
                       .add(-2 * rpow(h, m + 2), 1, "y", x_gen(m + 1), xm));
  } else if (q == "3'") {
    s0(x_gen(2), 1, "y");
    put1(f_gen(1), detail::TermBuilder(B).add(1, 1, "", x_gen(1), "yy").add(-b, 1, "", y_gen(1), "yx"));
  } else if (q == "4'") {
    s0(x_gen(1), b, "y");
    s0(x_gen(3), 1, "y");
    put1(f_gen(1), detail::TermBuilder(B).add(-b, 1, "y", x_gen(2), "y").add(-b, 1, "", y_gen(1), "xy"));
    put1(g_gen(1), detail::TermBuilder(B).add(-b, 1, "y", y_gen(2), "y").add(-b, 1, "", y_gen(1), "yy"));
  } else if (q == "5'") {
    for (int j = 1; j <= 3; ++j) s0(x_gen(j), rpow(h, 3 - j), "y");
    put1(f_gen(1), detail::TermBuilder(B)
                       .add(h * h, 1, "y", x_gen(2), "y")
                       .add(h * h, 1, "", y_gen(1), "xy")
                       .add(h * h * h, 1, "", y_gen(1), "yx")
                       .add(-h, 1, "", x_gen(1), "yy")
                       .add(-2 * h, 1, "x", y_gen(2), "y"));
    put1(g_gen(1), detail::TermBuilder(B).add(-h * h, 1, "", y_gen(1), "yy").add(h * h, 1, "y", y_gen(2), "y"));
  }
  cm.lifts = lifted_cocycle(hc, cm.sigma0);
  return cm;
}

struct ChainMapReport {
  std::string label;
  bool admissible = false;
  int sign = 0;  // sigma0 lifts sign * h^q; 0 when it lifts neither
  bool commutes = false;
  bool matches_generic = false;  // same products with every HH^1 class as the generic lift
  std::string detail;
  bool ok() const { return !admissible || (sign != 0 && commutes && matches_generic); }
};

inline ChainMapReport check_chain_map(const HomComplex& hc, const std::string& q) {
  ChainMapReport r;
  r.label = q;
  r.admissible = admissible(hc.instance(), q);
  if (!r.admissible) return r;
  const ChainMap cm = build_chain_map(hc, q);
  const auto h = stated_cocycle(hc, q);
  auto neg = h;
  for (auto& c : neg) c = -c;
  const auto d = check_diagram(hc, cm, h);
  r.commutes = d.commutes;
  if (cm.lifts == h)
    r.sign = 1;
  else if (cm.lifts == neg)
    r.sign = -1;
  if (r.sign == -1) r.detail += "sigma0 lifts -h^" + q + "; ";
  if (!d.commutes) r.detail += d.detail;
  if (r.sign != 0) {
    const ChainMap g = lift_cocycle(hc, cm.lifts);
    r.matches_generic = true;
    for (const auto& c : hh1_basis(hc).classes)
      if (!same_class2(hc, yoneda_product(hc, c.vec, cm), yoneda_product(hc, c.vec, g))) r.matches_generic = false;
    bool kernel = true;
    for (const auto& [gen, v] : cm.sigma1) {
      BimoduleElement diff = v;
      if (auto it = g.sigma1.find(gen); it != g.sigma1.end()) diff.add(it->second, -1);
      if (!boundary(hc.algebra(), diff).is_zero()) kernel = false;
    }
    for (const auto& [gen, v] : g.sigma1)
      if (!cm.sigma1.count(gen) && !boundary(hc.algebra(), v).is_zero()) kernel = false;
    if (!kernel) {
      r.matches_generic = false;
      r.detail += "displayed and solved sigma1 differ outside Ker boundary; ";
    }
  } else {
    r.detail += "sigma0 lifts neither h^" + q + " nor its negative; ";
  }
  return r;
}

// ---- product identities ----

struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::string observed;  // the scalar actually found, when the printed one is off
};

namespace detail {

inline std::vector<Rational> tau2(const HomComplex& hc, const Rational& c, const Generator& g, const std::string& w) {
  std::vector<Rational> v(hc.dim(2));
  v[hc.index_of(2, g, w)] = c;
  return v;
}

}  // namespace detail

// Each displayed identity [h^p sigma^q_1] = c [tau], evaluated with the displayed sigma^q.
// Corrected uses the scalars m b, -m b lambda_m, -b lambda_m in the three identities printed with m,
// -b lambda_m, -b.
inline std::vector<IdentityCheck> check_product_identities(const HomComplex& hc,
                                                           TableReading reading = TableReading::Corrected) {
  const bool lit = reading == TableReading::Literal;
  const Instance& inst = hc.instance();
  const int n = inst.n(), m = inst.m();
  const Rational& b = inst.beta();
  const auto c = classify(inst);
  const bool I = c.cond1 == Cond1::CaseI;
  std::vector<IdentityCheck> out;
  std::map<std::string, ChainMap> maps;
  auto sig = [&](const std::string& q) -> const ChainMap& {
    auto it = maps.find(q);
    if (it == maps.end()) it = maps.emplace(q, build_chain_map(hc, q)).first;
    return it->second;
  };
  const std::vector<Rational> zero(hc.dim(2));
  auto prod = [&](const std::string& p, const std::string& q) { return yoneda_product(hc, stated_cocycle(hc, p), sig(q)); };
  const auto B2 = hh2_basis(hc);
  auto expect = [&](const std::string& name, const std::string& p, const std::string& q, const std::vector<Rational>& rhs) {
    const auto lhs = prod(p, q);
    IdentityCheck chk{name, same_class2(hc, lhs, rhs), ""};
    if (!chk.pass) {
      const auto u = hh2_coordinates(hc, B2, lhs), v = hh2_coordinates(hc, B2, rhs);
      std::optional<Rational> ratio;
      bool prop = true;
      for (std::size_t i = 0; i < u.size() && prop; ++i) {
        if (v[i] == 0) {
          prop = u[i] == 0;
        } else if (!ratio) {
          ratio = u[i] / v[i];
        } else {
          prop = u[i] == *ratio * v[i];
        }
      }
      chk.observed = prop && ratio ? "found " + ratio->get_str() + " times the printed right-hand side" : "found a class not proportional to the printed one";
    }
    out.push_back(std::move(chk));
  };
  const std::string xm = detail::xs(m);

  if (I) {
    if (lit)
      expect("Case I: [h1 s2] = m [g_n^{y^2x}]", "1", "2", detail::tau2(hc, m, g_gen(n), "yyx"));
    else
      expect("Case I: [h1 s2] = m b [g_n^{y^2x}]", "1", "2", detail::tau2(hc, m * b, g_gen(n), "yyx"));
  }
  if (n == 1 && c.cond2 == Cond2::Case1) {
    const Rational lm = inst.lambda(m);
    expect("n=1 Case 1: [h1 s3] = m b lambda_m [g_1^{yx^{m+1}}]", "1", "3",
           detail::tau2(hc, m * b * lm, g_gen(1), "y" + detail::xs(m + 1)));
    if (lit)
      expect("n=1 Case 1: [h1 s4] = -b lambda_m [g_1^{xyx^m}]", "1", "4", detail::tau2(hc, -b * lm, g_gen(1), "xy" + xm));
    else
      expect("n=1 Case 1: [h1 s4] = -m b lambda_m [g_1^{xyx^m}]", "1", "4", detail::tau2(hc, -m * b * lm, g_gen(1), "xy" + xm));
    expect("n=1 Case 1: [h3 s4] = b lambda_m [g_1^{x^{2m+1}}]", "3", "4", detail::tau2(hc, b * lm, g_gen(1), detail::xs(2 * m + 1)));
    if (I) {
      expect("n=1 Case 1, Case I: [h2 s3] = 0", "2", "3", zero);
      if (lit)
        expect("n=1 Case 1, Case I: [h2 s4] = -b [g_1^{xyx^m}]", "2", "4", detail::tau2(hc, -b, g_gen(1), "xy" + xm));
      else
        expect("n=1 Case 1, Case I: [h2 s4] = -b lambda_m [g_1^{xyx^m}]", "2", "4", detail::tau2(hc, -b * lm, g_gen(1), "xy" + xm));
    }
  }
  if (n == 1 && c.cond2 == Cond2::Case2) expect("n=1 Case 2: [h1 s5] = 0", "1", "5", zero);
  if (n == 1 && m == 1 && c.cond2 == Cond2::Case1) {
    expect("m=1 Case 1: [h1 s3'] = b [f_1^{y^2x}]", "1", "3'", detail::tau2(hc, b, f_gen(1), "yyx"));
    expect("m=1 Case 1: [h1 s4'] = -b [f_1^{yxy}]", "1", "4'", detail::tau2(hc, -b, f_gen(1), "yxy"));
    if (I) expect("m=1 Case 1: [h2 s4'] = -b [f_1^{yxy}]", "2", "4'", detail::tau2(hc, -b, f_gen(1), "yxy"));
    expect("m=1 Case 1: [h3 s4'] = -b [g_1^{yxy}]", "3", "4'", detail::tau2(hc, -b, g_gen(1), "yxy"));
    expect("m=1 Case 1: [h4 s3'] = -b [f_1^{xyx}]", "4", "3'", detail::tau2(hc, -b, f_gen(1), "xyx"));
    expect("m=1 Case 1: [h3' s4'] = -b [f_1^{y^3}]", "3'", "4'", detail::tau2(hc, -b, f_gen(1), "yyy"));
    if (I) expect("m=1 Case 1: [h2 s3'] = 0", "2", "3'", zero);
    expect("m=1 Case 1: [h4 s4'] = 0", "4", "4'", zero);
    expect("m=1 Case 1: [h3 s3'] = 0", "3", "3'", zero);
  }
  if (n == 1 && m == 1 && c.cond2 == Cond2::Case2) {
    expect("m=1 Case 2: [h1 s5'] = 0", "1", "5'", zero);
    expect("m=1 Case 2: [h5 s5'] = 0", "5", "5'", zero);
  }
  return out;
}

// ---- ring structure from first principles ----

struct ProductTable {
  std::vector<std::string> generators;                  // HH^1 basis labels, s_1..s_a
  std::vector<std::pair<int, int>> pairs;               // (p, q), p < q, 0-based
  std::vector<std::vector<Rational>> classes;           // HH^2 coordinates of s_p s_q
  std::vector<std::vector<Rational>> relations;         // kernel of the product map, over pairs
  std::size_t a = 0, b = 0, h2 = 0;
};

inline ProductTable product_table(const HomComplex& hc) {
  ProductTable t;
  const auto B1 = hh1_basis(hc);
  const auto B2 = hh2_basis(hc);
  t.a = B1.classes.size();
  t.h2 = B2.classes.size();
  std::vector<ChainMap> lifts;
  for (const auto& c : B1.classes) {
    t.generators.push_back(c.label);
    lifts.push_back(lift_cocycle(hc, c.vec));
  }
  for (std::size_t p = 0; p < t.a; ++p)
    for (std::size_t q = p + 1; q < t.a; ++q) {
      t.pairs.push_back({static_cast<int>(p), static_cast<int>(q)});
      t.classes.push_back(hh2_coordinates(hc, B2, yoneda_product(hc, B1.classes[p].vec, lifts[q])));
    }
  QMatrix P = QMatrix::from_columns(t.classes, t.h2);
  if (t.pairs.empty()) P = QMatrix(t.h2, 0);
  const std::size_t r = t.pairs.empty() ? 0 : rank(P);
  t.b = t.h2 - r;
  if (!t.pairs.empty()) t.relations = kernel_basis(P);
  return t;
}

// Graded commutativity and the square-zero law for degree-1 classes.
inline BasisCheck check_graded_commutativity(const HomComplex& hc) {
  const auto B1 = hh1_basis(hc);
  std::vector<ChainMap> lifts;
  for (const auto& c : B1.classes) lifts.push_back(lift_cocycle(hc, c.vec));
  for (std::size_t p = 0; p < lifts.size(); ++p)
    for (std::size_t q = p; q < lifts.size(); ++q) {
      auto u = yoneda_product(hc, B1.classes[p].vec, lifts[q]);
      auto v = yoneda_product(hc, B1.classes[q].vec, lifts[p]);
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += v[i];
      if (!in_column_space(hc.d2_matrix(), u))
        return {false, "s" + std::to_string(p + 1) + " s" + std::to_string(q + 1) + " + s" + std::to_string(q + 1) + " s" +
                           std::to_string(p + 1) + " is not a coboundary"};
    }
  return {true, ""};
}

// 1 acts as the identity: the lift of the unit on P^1 composes to the same HH^1 class.
inline BasisCheck check_unit(const HomComplex& hc) {
  const Beilinson& B = hc.algebra();
  const Instance& inst = hc.instance();
  BimoduleMap s0;
  for (int p = 1; p <= inst.ell(); ++p) s0[vertex_gen(p)].add(TensorKey{vertex_gen(p), unit_at(p), unit_at(p)}, 1);
  BimoduleMap s1;
  for (const auto& g : generator_set(inst).g1) {
    BimoduleElement target = apply_map(B, s0, hc.boundary_of(g));
    auto x = detail::solve_component(hc, 1, gen_source(inst, g), gen_target(inst, g), target);
    if (!x) return {false, "unit does not lift at " + g.str()};
    s1[g] = *x;
  }
  for (const auto& c : hh1_basis(hc).classes) {
    const Functional phi = hc.functional(1, c.vec);
    Functional out;
    for (const auto& [g, v] : s1) {
      NormalElement val = evaluate(B, phi, v);
      if (!val.is_zero()) out[g] = val;
    }
    if (!same_class1(hc, hc.coordinates(1, out), c.vec)) return {false, "1 . " + c.label + " differs"};
  }
  return {true, ""};
}

// Changing either factor by a coboundary leaves the product class unchanged.
inline BasisCheck check_perturbation(const HomComplex& hc) {
  const auto B1 = hh1_basis(hc);
  std::vector<Rational> phi(hc.dim(0));
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = Rational(static_cast<long>(i % 5) - 2, static_cast<long>(i % 3) + 1);
  const auto delta = hc.apply_d1(phi);
  for (std::size_t p = 0; p < B1.classes.size(); ++p)
    for (std::size_t q = 0; q < B1.classes.size(); ++q) {
      auto hp = B1.classes[p].vec, hq = B1.classes[q].vec;
      const auto base = yoneda_product(hc, hp, lift_cocycle(hc, hq));
      auto hq2 = hq, hp2 = hp;
      for (std::size_t i = 0; i < hq2.size(); ++i) hq2[i] += delta[i], hp2[i] += delta[i];
      if (!same_class2(hc, base, yoneda_product(hc, hp, lift_cocycle(hc, hq2))) ||
          !same_class2(hc, base, yoneda_product(hc, hp2, lift_cocycle(hc, hq))))
        return {false, "perturbed product differs for s" + std::to_string(p + 1) + " s" + std::to_string(q + 1)};
    }
  return {true, ""};
}

// ---- presentation as listed in the ring table ----

struct RelationTerm2 {
  Rational coeff;
  int p, q;  // 1-based generator indices
};
using TableRelation = std::vector<RelationTerm2>;

struct RingRow {
  std::string printed;  // row as printed: weights, cases, (a, b)
  int a = 0, b = 0;
  std::vector<TableRelation> relations;
  std::string note;
};

// The row of the ring table governing the instance; nullopt when none does. Corrected adds
// s1s2 to I in the n=1 Case 2 rows with m >= 2.
inline std::optional<RingRow> ring_table_row(const Instance& inst, TableReading reading = TableReading::Corrected) {
  const bool lit = reading == TableReading::Literal;
  const int n = inst.n(), m = inst.m();
  const auto c = classify(inst);
  const bool I = c.cond1 == Cond1::CaseI;
  auto mono = [](int p, int q) { return TableRelation{{1, p, q}}; };
  auto bino = [](int p1, int q1, int p2, int q2) { return TableRelation{{1, p1, q1}, {-1, p2, q2}}; };
  RingRow r;
  if (n == 1 && m == 1) {
    if (I && c.cond2 == Cond2::Case1) {
      r = {"n=1, m=1, Case I, Case 1: (6,0)", 6, 0,
           {mono(2, 3), mono(2, 4), mono(3, 4), mono(5, 6), bino(1, 5, 2, 5), bino(1, 6, 2, 6)}, ""};
    } else if (!I && c.cond2 == Cond2::Case2) {
      r = {"n=1, m=1, Case II, Case 2: (3,6)", 3, 6, {mono(1, 2), mono(1, 3), mono(2, 3)}, ""};
    } else if (!I && c.cond2 == Cond2::Case3) {
      r = {"n=1, m=1, Case II, Case 3: (1,4)", 1, 4, {}, ""};
    } else {
      return std::nullopt;
    }
    return r;
  }
  if (n == 1 && m == 2 && !I) {
    if (c.cond2 == Cond2::Case1) r = {"n=1, m=2, Case II, Case 1: (3,5)", 3, 5, {}, "specific row preferred over the m>=2 row"};
    if (c.cond2 == Cond2::Case2) {
      r = {"n=1, m=2, Case II, Case 2: (2,7)", 2, 7, {}, ""};
      if (!lit) r.relations.push_back(mono(1, 2)), r.note = "I = (s1s2) since [h1 s5] = 0";
    }
    if (c.cond2 == Cond2::Case3) r = {"n=1, m=2, Case II, Case 3: (1,6)", 1, 6, {}, ""};
    return r;
  }
  if (n == 1) {
    if (I && c.cond2 == Cond2::Case1)
      return RingRow{"n=1, m=2, Case I, Case 1: (4,m+1)", 4, m + 1, {bino(1, 4, 2, 4), mono(2, 3)},
                     "printed m=2 is impossible in Case I; applied to odd m>=3"};
    if (I) return std::nullopt;
    if (c.cond2 == Cond2::Case1) return RingRow{"n=1, m>=2, Case II, Case 1: (3,m+1)", 3, m + 1, {}, ""};
    if (c.cond2 == Cond2::Case2) {
      RingRow row{"n=1, m>=3, Case II, Case 2: (2,m+3)", 2, m + 3, {}, ""};
      if (!lit) row.relations.push_back(mono(1, 2)), row.note = "I = (s1s2) since [h1 s5] = 0";
      return row;
    }
    return RingRow{"n=1, m>=3, Case II, Case 3: (1,m+2)", 1, m + 2, {}, ""};
  }
  if (n == 2) {
    if (I) return RingRow{"n=2, m>n, Case I: (2,m+4)", 2, m + 4, {}, ""};
    return RingRow{"n=2, m>n, Case II: (1,m+4)", 1, m + 4, {}, ""};
  }
  if (I) return RingRow{"n>=3, m>n, Case I: (2,m+n)", 2, m + n, {}, ""};
  return RingRow{"n>=3, m>n, Case II: (1,m+n)", 1, m + n, {}, ""};
}

inline std::string relation_string(const std::vector<std::pair<int, int>>& pairs, const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    const Rational& c = v[k];
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    const Rational ac = abs(c);
    if (ac != 1) s += ac.get_str() + " ";
    s += "s" + std::to_string(pairs[k].first + 1) + "s" + std::to_string(pairs[k].second + 1);
  }
  return s.empty() ? "0" : s;
}

struct RingMatch {
  bool dims_ok = false;      // a = h1 and C(a,2) - rank I + b = h2 for the printed row
  bool ab_ok = false;        // printed (a, b) equals the computed one
  bool ideal_ok = false;     // printed I equals the computed kernel up to relabelling and rescaling
  std::vector<int> permutation;
  std::string detail;
  bool ok() const { return dims_ok && ab_ok && ideal_ok; }
};

namespace detail {

inline std::optional<std::size_t> pair_index(const std::vector<std::pair<int, int>>& pairs, int p, int q) {
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (pairs[k].first == p && pairs[k].second == q) return k;
  return std::nullopt;
}

// Whether prod_p c_p^{E_ip} = rho_i has a solution with nonzero c, over an algebraically closed field.
inline bool multiplicative_consistent(const std::vector<std::vector<int>>& E, const std::vector<Rational>& rho, std::size_t a) {
  if (E.empty()) return true;
  QMatrix Et(a, E.size());
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t p = 0; p < a; ++p) Et(p, i) = E[i][p];
  for (auto z : kernel_basis(Et)) {
    Integer l = 1;
    for (const auto& x : z) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    Rational prod = 1;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const Rational zi = z[i] * Rational(l);
      prod *= rpow(rho[i], static_cast<int>(zi.get_num().get_si()));
    }
    if (prod != 1) return false;
  }
  return true;
}

}  // namespace detail

inline RingMatch match_ring_row(const ProductTable& t, const RingRow& row, std::size_t h1) {
  RingMatch res;
  const std::size_t a = t.a;
  const std::size_t npairs = t.pairs.size();
  // printed dimensions
  {
    std::vector<std::vector<Rational>> cols;
    for (const auto& rel : row.relations) {
      std::vector<Rational> v(static_cast<std::size_t>(row.a) * (row.a - 1) / 2);
      for (const auto& term : rel) {
        const int p = std::min(term.p, term.q) - 1, q = std::max(term.p, term.q) - 1;
        const int k = p * (2 * row.a - p - 1) / 2 + (q - p - 1);
        v[static_cast<std::size_t>(k)] += term.p < term.q ? term.coeff : -term.coeff;
      }
      cols.push_back(v);
    }
    const long rI = cols.empty() ? 0 : static_cast<long>(rank(QMatrix::from_columns(cols, cols[0].size())));
    const long deg2 = static_cast<long>(row.a) * (row.a - 1) / 2 - rI + row.b;
    res.dims_ok = static_cast<std::size_t>(row.a) == h1 && deg2 == static_cast<long>(t.h2);
    if (!res.dims_ok)
      res.detail += "printed presentation has degree-2 dimension " + std::to_string(deg2) + " but HH^2 has " + std::to_string(t.h2) + "; ";
  }
  res.ab_ok = static_cast<std::size_t>(row.a) == a && static_cast<std::size_t>(row.b) == t.b;
  if (!res.ab_ok)
    res.detail += "(a,b) printed (" + std::to_string(row.a) + "," + std::to_string(row.b) + "), computed (" + std::to_string(a) + "," +
                  std::to_string(t.b) + "); ";
  if (static_cast<std::size_t>(row.a) != a) return res;

  const std::size_t dimK = t.relations.size();
  QMatrix K(npairs, dimK);
  for (std::size_t j = 0; j < dimK; ++j)
    for (std::size_t i = 0; i < npairs; ++i) K(i, j) = t.relations[j][i];
  auto in_K = [&](const std::vector<Rational>& v) { return dimK > 0 ? in_column_space(K, v) : std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }); };

  std::vector<int> perm(a);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool good = true;
    std::vector<std::vector<Rational>> mapped;
    std::vector<std::vector<int>> E;
    std::vector<Rational> rho;
    for (const auto& rel : row.relations) {
      std::vector<Rational> v(npairs);
      std::vector<std::pair<std::size_t, Rational>> support;
      for (const auto& term : rel) {
        int p = perm[term.p - 1], q = perm[term.q - 1];
        Rational c = term.coeff;
        if (p > q) std::swap(p, q), c = -c;
        const auto k = *detail::pair_index(t.pairs, p, q);
        v[k] += c;
        support.push_back({k, c});
      }
      mapped.push_back(v);
      if (support.size() == 1) {
        if (!in_K(v)) good = false;
      } else if (support.size() == 2) {
        std::vector<Rational> e1(npairs), e2(npairs);
        e1[support[0].first] = 1;
        e2[support[1].first] = 1;
        const bool k1 = in_K(e1), k2 = in_K(e2);
        if (k1 && k2) continue;
        if (k1 || k2) {
          good = false;
          break;
        }
        // K meets span{e1, e2} in at most a line; find its direction
        std::optional<Rational> ratio;
        {
          QMatrix A = K.hcat(QMatrix::from_columns({e1, e2}, npairs));
          for (const auto& z : kernel_basis(A)) {
            const Rational u = z[dimK], w = z[dimK + 1];
            if (u != 0 && w != 0) ratio = u / w;
          }
        }
        if (!ratio) {
          good = false;
          break;
        }
        // need c1 S1 / (c2 S2) = ratio with S = scaling of each pair
        std::vector<int> ev(a, 0);
        const auto& P1 = t.pairs[support[0].first];
        const auto& P2 = t.pairs[support[1].first];
        ++ev[P1.first], ++ev[P1.second], --ev[P2.first], --ev[P2.second];
        E.push_back(ev);
        rho.push_back(*ratio * support[1].second / support[0].second);
      } else {
        throw std::logic_error("relations with more than two terms are not supported");
      }
      if (!good) break;
    }
    if (!good) continue;
    if (!detail::multiplicative_consistent(E, rho, a)) continue;
    const std::size_t rI = mapped.empty() ? 0 : rank(QMatrix::from_columns(mapped, npairs));
    if (rI != dimK) continue;
    res.ideal_ok = true;
    res.permutation = perm;
    break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!res.ideal_ok) {
    res.detail += "computed I = {";
    for (std::size_t j = 0; j < dimK; ++j) res.detail += (j ? ", " : "") + relation_string(t.pairs, t.relations[j]);
    res.detail += "}; ";
  }
  return res;
}

}  // namespace hhdu
