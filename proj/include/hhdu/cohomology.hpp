#pragma once

#include <hhdu/resolution.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hhdu {

struct HHDims {
  long h0 = 0, h1 = 0, h2 = 0;
  long h_higher = 0;
  friend bool operator==(const HHDims&, const HHDims&) = default;
  std::string str() const {
    return "(" + std::to_string(h0) + "," + std::to_string(h1) + "," + std::to_string(h2) + ")";
  }
};

inline HHDims hh_dims_computed(const HomComplex& hc) {
  const long r1 = static_cast<long>(rank(hc.d1_matrix()));
  const long r2 = static_cast<long>(rank(hc.d2_matrix()));
  HHDims d;
  d.h0 = static_cast<long>(hc.dim(0)) - r1;
  d.h1 = static_cast<long>(hc.dim(1)) - r2 - r1;
  d.h2 = static_cast<long>(hc.dim(2)) - r2;
  return d;
}

inline HHDims hh_dims_closed_form(const Instance& inst) {
  if (!inst.canonical()) throw std::invalid_argument("closed form needs a canonical instance");
  const int n = inst.n(), m = inst.m();
  const auto c = classify(inst);
  const bool I = c.cond1 == Cond1::CaseI;
  if (n == 1 && m == 1) {
    if (I) return {1, 6, 9};
    if (c.cond2 == Cond2::Case2) return {1, 3, 6};
    if (c.cond2 == Cond2::Case3) return {1, 1, 4};
    throw std::logic_error("(1,1) Case II with Case 1 cannot occur");
  }
  if (n == 1) {
    HHDims d{1, 0, 0};
    if (I) {
      d.h1 = 4;
      d.h2 = m + 5;
    } else if (c.cond2 == Cond2::Case1) {
      d.h1 = 3;
      d.h2 = m == 2 ? 8 : m + 4;
    } else if (c.cond2 == Cond2::Case2) {
      d.h1 = 2;
      d.h2 = m == 2 ? 7 : m + 3;
    } else {
      d.h1 = 1;
      d.h2 = m == 2 ? 6 : m + 2;
    }
    return d;
  }
  if (n == 2) return {1, I ? 2 : 1, I ? m + 5 : m + 4};
  return {1, I ? 2 : 1, I ? n + m + 1 : n + m};
}

struct GeneralDims {
  HHDims dims;
  NormalizedInstance reduced;
};

inline GeneralDims hh_dims_general_weights(int n0, int m0, const Rational& alpha, const Rational& beta) {
  auto red = normalize(n0, m0, alpha, beta);
  HHDims d = hh_dims_closed_form(red.inst);
  d.h0 *= red.k;
  d.h1 *= red.k;
  d.h2 *= red.k;
  return {d, red};
}

// Row of the basis tables that applies to the instance.
inline std::string regime_label(const Instance& inst) {
  const int n = inst.n(), m = inst.m();
  const auto c = classify(inst);
  std::string s = n == 1 ? "n=1" : n == 2 ? "n=2" : "n>=3";
  s += n == 1 ? (m == 1 ? ", m=1" : m == 2 ? ", m=2" : ", m>=3") : ", m>n";
  s += ", Case " + to_string(c.cond1);
  if (n == 1) s += ", Case " + to_string(c.cond2);
  return s;
}

struct LabeledClass {
  std::string label;
  std::vector<Rational> vec;
};

struct CocycleBasis {
  int degree = 1;
  std::string regime;
  std::vector<LabeledClass> classes;
  std::vector<std::string> notes;
};

enum class TableReading { Corrected, Literal };

namespace detail {

class ClassBuilder {
 public:
  ClassBuilder(const HomComplex& hc, int level, std::string label)
      : hc_(hc), level_(level), c_{std::move(label), std::vector<Rational>(hc.dim(level))} {}
  ClassBuilder& add(const Rational& coeff, const Generator& g, const std::string& word) {
    if (coeff != 0) c_.vec[hc_.index_of(level_, g, word)] += coeff;
    return *this;
  }
  LabeledClass done() const { return c_; }

 private:
  const HomComplex& hc_;
  int level_;
  LabeledClass c_;
};

inline std::string xpow(int k) { return std::string(static_cast<std::size_t>(k), 'x'); }

}  // namespace detail

// HH^1 representatives per regime. Corrected swaps the x_1/x_3 indices of the tau^y
// functionals in the (1,1) rows and reads tau^{x^n} as tau^{x^m} in the n=1 Case I row.
inline CocycleBasis hh1_basis(const HomComplex& hc, TableReading reading = TableReading::Corrected) {
  using detail::ClassBuilder;
  const Instance& inst = hc.instance();
  const int n = inst.n(), m = inst.m();
  const Rational &a = inst.alpha(), &b = inst.beta();
  const auto c = classify(inst);
  const bool I = c.cond1 == Cond1::CaseI;
  CocycleBasis out;
  out.degree = 1;
  out.regime = regime_label(inst);

  ClassBuilder sum(hc, 1, "[sum_{r=1}^{n+2m} tau[x_r]]");
  for (int r = 1; r <= n + 2 * m; ++r) sum.add(1, x_gen(r), "x");
  out.classes.push_back(sum.done());

  if (I && !(n == 1 && m == 1)) {
    ClassBuilder alt(hc, 1, "[sum_{r=1}^{m} (-1)^{r-1} tau[x_{n+r}]]");
    for (int r = 1; r <= m; ++r) alt.add(r % 2 == 1 ? 1 : -1, x_gen(n + r), "x");
    out.classes.push_back(alt.done());
  }

  if (n == 1 && m == 1) {
    const bool lit = reading == TableReading::Literal;
    if (I) {
      out.classes.push_back(ClassBuilder(hc, 1, "[tau[x_2]]").add(1, x_gen(2), "x").done());
      out.classes.push_back(ClassBuilder(hc, 1, "[tau[y_2]^{x}]").add(1, y_gen(2), "x").done());
      out.classes.push_back(
          ClassBuilder(hc, 1, "[b tau[y_3]^{x} + tau[y_1]^{x}]").add(b, y_gen(3), "x").add(1, y_gen(1), "x").done());
      out.classes.push_back(ClassBuilder(hc, 1, "[tau[x_2]^{y}]").add(1, x_gen(2), "y").done());
      const int hi = lit ? 3 : 1, lo = lit ? 1 : 3;
      out.classes.push_back(ClassBuilder(hc, 1, "[b tau[x_" + std::to_string(hi) + "]^{y} + tau[x_" + std::to_string(lo) + "]^{y}]")
                                .add(b, x_gen(hi), "y")
                                .add(1, x_gen(lo), "y")
                                .done());
      if (!lit) out.notes.push_back("tau^y term uses x_1 with coefficient b (table prints x_3)");
    } else if (c.cond2 == Cond2::Case2) {
      const Rational h = a / 2;
      out.classes.push_back(ClassBuilder(hc, 1, "[(a/2)^2 tau[y_3]^{x} + (a/2) tau[y_2]^{x} + tau[y_1]^{x}]")
                                .add(h * h, y_gen(3), "x")
                                .add(h, y_gen(2), "x")
                                .add(1, y_gen(1), "x")
                                .done());
      const int hi = lit ? 3 : 1, lo = lit ? 1 : 3;
      out.classes.push_back(ClassBuilder(hc, 1, "[(a/2)^2 tau[x_" + std::to_string(hi) + "]^{y} + (a/2) tau[x_2]^{y} + tau[x_" +
                                                    std::to_string(lo) + "]^{y}]")
                                .add(h * h, x_gen(hi), "y")
                                .add(h, x_gen(2), "y")
                                .add(1, x_gen(lo), "y")
                                .done());
      if (!lit) out.notes.push_back("tau^y term uses (a/2)^2 on x_1 (table prints x_3)");
    }
    return out;
  }

  if (n == 1) {
    const std::string xm = detail::xpow(m);
    if (c.cond2 == Cond2::Case1) {
      if (I && reading == TableReading::Literal)
        throw std::invalid_argument("literal Case I row names tau^{x^n}_{y_r}, which does not exist for m > 1");
      ClassBuilder p(hc, 1, "[sum_{r=2}^{m+2} lambda_{r-1} tau[y_r]^{x^m}]");
      for (int r = 2; r <= m + 2; ++r) p.add(inst.lambda(r - 1), y_gen(r), xm);
      ClassBuilder q(hc, 1, "[b sum_{r=1}^{m+2} lambda_{r-2} tau[y_r]^{x^m}]");
      for (int r = 1; r <= m + 2; ++r) q.add(b * inst.lambda(r - 2), y_gen(r), xm);
      out.classes.push_back(p.done());
      out.classes.push_back(q.done());
      if (I) out.notes.push_back("tau^{x^n} in the Case I row read as tau^{x^m}");
    } else if (c.cond2 == Cond2::Case2) {
      ClassBuilder p(hc, 1, "[sum_{r=1}^{m+2} (a/2)^{r-1} tau[y_r]^{x^m}]");
      for (int r = 1; r <= m + 2; ++r) p.add(rpow(a / 2, r - 1), y_gen(r), xm);
      out.classes.push_back(p.done());
    }
  }
  return out;
}

// HH^2 representatives per regime. In Case II with n+m even the classes tau^{xyx}_{f_i},
// tau^{yxy}_{g_j} are dependent modulo Im d2; Corrected replaces tau^{yxy}_{g_n} by tau^{y^2x}_{g_n}.
inline CocycleBasis hh2_basis(const HomComplex& hc, TableReading reading = TableReading::Corrected) {
  using detail::ClassBuilder;
  const Instance& inst = hc.instance();
  const int n = inst.n(), m = inst.m();
  const auto c = classify(inst);
  const bool I = c.cond1 == Cond1::CaseI;
  CocycleBasis out;
  out.degree = 2;
  out.regime = regime_label(inst);
  const bool swap_last = reading == TableReading::Corrected && !I && (n + m) % 2 == 0;
  if (swap_last) out.notes.push_back("tau^{yxy}_{g_n} replaced by tau^{y^2x}_{g_n} (Case II, n+m even)");
  auto one = [&](const Generator& g, std::string w) {
    if (swap_last && g == g_gen(n) && w == "yxy") w = "yyx";
    out.classes.push_back(ClassBuilder(hc, 2, "[" + label(TauFunctional{2, g, NormalMonomial{g.index, *shape_of(w)}}) + "]")
                              .add(1, g, w)
                              .done());
  };
  const std::string xm = detail::xpow(m);

  if (n == 1 && m == 1) {
    if (I) {
      one(g_gen(1), "yyx");
      one(g_gen(1), "yxy");
      one(f_gen(1), "xyx");
      one(g_gen(1), "yxx");
      one(g_gen(1), "xyx");
      one(f_gen(1), "yyx");
      one(f_gen(1), "yxy");
      one(g_gen(1), "xxx");
      one(f_gen(1), "yyy");
    } else {
      one(g_gen(1), "yxy");
      one(f_gen(1), "xyx");
      if (c.cond2 == Cond2::Case2) {
        one(g_gen(1), "xyx");
        one(f_gen(1), "yxy");
      }
      one(g_gen(1), "xxx");
      one(f_gen(1), "yyy");
    }
    return out;
  }
  if (n == 1) {
    for (int i = 1; i <= m; ++i) one(f_gen(i), "xyx");
    one(g_gen(1), "yxy");
    if (I) one(g_gen(1), "yyx");
    if (c.cond2 == Cond2::Case1) one(g_gen(1), "y" + detail::xpow(m + 1));
    if (c.cond2 == Cond2::Case1 || c.cond2 == Cond2::Case2) one(g_gen(1), "xy" + xm);
    one(g_gen(1), detail::xpow(2 * m + 1));
    if (m == 2) {
      one(f_gen(1), "yy");
      one(f_gen(2), "yy");
    }
    return out;
  }
  for (int i = 1; i <= m; ++i) one(f_gen(i), "xyx");
  for (int j = 1; j <= n; ++j) one(g_gen(j), "yxy");
  if (I) one(g_gen(n), "yyx");
  if (n == 2) {
    one(g_gen(1), detail::xpow(1 + m));
    one(g_gen(2), detail::xpow(1 + m));
  }
  return out;
}

struct BasisCheck {
  bool ok = true;
  std::string detail;
};

inline QMatrix columns_of(const std::vector<LabeledClass>& cls, std::size_t rows) {
  std::vector<std::vector<Rational>> cols;
  for (const auto& c : cls) cols.push_back(c.vec);
  return QMatrix::from_columns(cols, rows);
}

inline BasisCheck verify_hh1_basis(const HomComplex& hc, const CocycleBasis& B) {
  BasisCheck r;
  const QMatrix& d1 = hc.d1_matrix();
  const std::size_t r1 = rank(d1);
  for (const auto& c : B.classes) {
    const auto img = hc.d2_matrix().apply(c.vec);
    bool cocycle = std::all_of(img.begin(), img.end(), [](const Rational& v) { return v == 0; });
    if (!cocycle) {
      r.ok = false;
      r.detail += c.label + " is not a cocycle; ";
      continue;
    }
    if (in_column_space(d1, c.vec)) {
      r.ok = false;
      r.detail += c.label + " is a coboundary; ";
    }
  }
  const std::size_t joint = rank(d1.hcat(columns_of(B.classes, hc.dim(1))));
  if (joint != r1 + B.classes.size()) {
    r.ok = false;
    r.detail += "classes dependent modulo coboundaries; ";
  }
  const auto h1 = hh_dims_computed(hc).h1;
  if (static_cast<long>(B.classes.size()) != h1) {
    r.ok = false;
    r.detail += "count " + std::to_string(B.classes.size()) + " != h1 " + std::to_string(h1) + "; ";
  }
  if (r.ok) r.detail = std::to_string(B.classes.size()) + " classes";
  return r;
}

inline BasisCheck verify_hh2_basis(const HomComplex& hc, const CocycleBasis& B) {
  BasisCheck r;
  const QMatrix& d2 = hc.d2_matrix();
  const std::size_t r2 = rank(d2);
  const std::size_t joint = rank(d2.hcat(columns_of(B.classes, hc.dim(2))));
  if (joint != r2 + B.classes.size()) {
    r.ok = false;
    r.detail += "classes dependent modulo Im d2; ";
  }
  const auto h2 = hh_dims_computed(hc).h2;
  if (static_cast<long>(B.classes.size()) != h2) {
    r.ok = false;
    r.detail += "count " + std::to_string(B.classes.size()) + " != h2 " + std::to_string(h2) + "; ";
  }
  if (r.ok) r.detail = std::to_string(B.classes.size()) + " classes";
  return r;
}

// Ker d1 is spanned by the all-ones functional.
inline bool kernel_d1_is_constants(const HomComplex& hc) {
  const auto K = kernel_basis(hc.d1_matrix());
  if (K.size() != 1) return false;
  const Rational& v0 = K[0][0];
  return v0 != 0 && std::all_of(K[0].begin(), K[0].end(), [&](const Rational& v) { return v == v0; });
}

// For m > n > 1 in Case I, the listed sums span Im d2 restricted to the L1 block.
inline BasisCheck check_image_basis_L1_caseI(const HomComplex& hc) {
  using detail::ClassBuilder;
  const Instance& inst = hc.instance();
  const int n = inst.n(), m = inst.m();
  BasisCheck r;
  std::vector<LabeledClass> cls;
  for (int p = 1; p <= n; ++p)
    cls.push_back(ClassBuilder(hc, 2, "f_p+g_p").add(1, f_gen(p), "yxx").add(1, g_gen(p), "yyx").done());
  for (int q = 1; q <= m - n; ++q)
    cls.push_back(ClassBuilder(hc, 2, "f_q+f_{n+q}").add(1, f_gen(q), "yxx").add(1, f_gen(n + q), "yxx").done());
  for (int s = 1; s <= n - 1; ++s)
    cls.push_back(ClassBuilder(hc, 2, "f_{m-n+r}+g_r").add(1, f_gen(m - n + s), "yxx").add(1, g_gen(s), "yyx").done());
  const QMatrix& d2 = hc.d2_matrix();
  const QMatrix C = columns_of(cls, hc.dim(2));
  const std::size_t r2 = rank(d2);
  if (rank(C) != cls.size() || rank(d2.hcat(C)) != r2 || cls.size() != r2) {
    r.ok = false;
    r.detail = "listed elements do not form a basis of the image";
  } else {
    r.detail = std::to_string(cls.size()) + " elements";
  }
  return r;
}

// For n = 1, every element of V (and, in Case 2, -a tau^{yx^{m+1}}_{g_1} + 2 tau^{xyx^m}_{g_1}) is a coboundary.
inline BasisCheck check_image_V(const HomComplex& hc) {
  using detail::ClassBuilder;
  const Instance& inst = hc.instance();
  const int m = inst.m();
  BasisCheck r;
  std::vector<LabeledClass> cls;
  const std::string yx = "y" + detail::xpow(m + 1), xyx = "xy" + detail::xpow(m);
  for (int s = 1; s <= m; ++s)
    cls.push_back(ClassBuilder(hc, 2, "V_" + std::to_string(s))
                      .add(1, f_gen(s), detail::xpow(m + 2))
                      .add(-inst.lambda(m + 2 - s), g_gen(1), yx)
                      .add(inst.lambda(m + 1 - s), g_gen(1), xyx)
                      .done());
  if (classify(inst).cond2 == Cond2::Case2)
    cls.push_back(ClassBuilder(hc, 2, "w").add(-inst.alpha(), g_gen(1), yx).add(2, g_gen(1), xyx).done());
  for (const auto& c : cls)
    if (!in_column_space(hc.d2_matrix(), c.vec)) {
      r.ok = false;
      r.detail += c.label + " not in the image; ";
    }
  if (rank(columns_of(cls, hc.dim(2))) != cls.size()) {
    r.ok = false;
    r.detail += "elements dependent; ";
  }
  if (r.ok) r.detail = std::to_string(cls.size()) + " elements";
  return r;
}

enum class Stratum { I1, I2, I3, II1, II2, II3 };

inline std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::I1: return "I/1";
    case Stratum::I2: return "I/2";
    case Stratum::I3: return "I/3";
    case Stratum::II1: return "II/1";
    case Stratum::II2: return "II/2";
    default: return "II/3";
  }
}

inline Stratum stratum_of(const Instance& inst) {
  const auto c = classify(inst);
  const bool I = c.cond1 == Cond1::CaseI;
  switch (c.cond2) {
    case Cond2::Case1: return I ? Stratum::I1 : Stratum::II1;
    case Cond2::Case2: return I ? Stratum::I2 : Stratum::II2;
    default: return I ? Stratum::I3 : Stratum::II3;
  }
}

// lambda_r(1, b) as a polynomial in b.
inline QPoly lambda_poly_alpha_one(int r) {
  QPoly prev{0}, cur{1};  // lambda_0, lambda_1
  if (r == 0) return prev;
  const QPoly b = QPoly::monomial(1, 1);
  for (int k = 1; k < r; ++k) {
    QPoly next = cur + b * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace detail {

inline std::vector<Integer> divisors(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Nonzero rational roots b of lambda_r(1, b), ascending.
inline std::vector<Rational> rational_lambda_roots(int r) {
  const QPoly p = lambda_poly_alpha_one(r);
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  // integer coefficients: constant term is 1
  const Integer lead = p.lead().get_num();
  const Integer cst = p.coeff(0).get_num();
  for (const auto& q : detail::divisors(lead))
    for (const auto& pn : detail::divisors(cst))
      for (int sgn : {-1, 1}) {
        Rational cand(Integer(sgn) * pn, q);
        cand.canonicalize();
        if (p(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct StratumSample {
  Stratum stratum;
  std::vector<std::pair<Rational, Rational>> params;  // empty when unreachable
  std::string note;
};

inline std::vector<StratumSample> stratum_samples(int n, int m) {
  using P = std::pair<Rational, Rational>;
  std::vector<StratumSample> out;
  const bool even = (n + m) % 2 == 0;
  if (even)
    out.push_back({Stratum::I1, {P(0, 1), P(0, 2), P(0, -3)}, ""});
  else
    out.push_back({Stratum::I1, {}, "empty: n+m odd"});
  out.push_back({Stratum::I2, {}, "empty: Case I forces lambda_{m+1}=0"});
  out.push_back({Stratum::I3, {}, "empty: Case I forces lambda_{m+1}=0"});

  StratumSample s1{Stratum::II1, {}, ""};
  if (!even && m % 2 == 1) s1.params.push_back(P(0, 1));
  const auto roots = rational_lambda_roots(m + 1);
  if (!roots.empty()) s1.params.push_back(P(1, roots.front()));
  if (s1.params.empty())
    s1.note = lambda_poly_alpha_one(m + 1).degree() < 1 ? "empty: lambda_{m+1} is a nonzero constant once a != 0"
                                                          : "no rational sample: lambda_{m+1}(1,b) has no rational root";
  out.push_back(s1);

  out.push_back({Stratum::II2, {P(2, -1), P(-4, -4)}, ""});
  StratumSample s3{Stratum::II3, {P(1, 1), P(2, 3)}, ""};
  if (!even && m % 2 == 0) s3.params.push_back(P(0, 1));
  out.push_back(s3);
  return out;
}

inline std::vector<std::pair<int, int>> sweep_weights(int max_sum) {
  std::vector<std::pair<int, int>> out;
  for (int s = 2; s <= max_sum; ++s)
    for (int n = 1; 2 * n <= s; ++n) {
      const int m = s - n;
      if (std::gcd(n, m) == 1) out.emplace_back(n, m);
    }
  return out;
}

}  // namespace hhdu
