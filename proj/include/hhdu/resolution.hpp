#pragma once

#include <hhdu/beilinson.hpp>

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hhdu {

// Generator of P^level: a vertex e_i (level 0), an arrow x_i / y_j (level 1),
// or a relation f_i / g_j (level 2).
struct Generator {
  int level = 0;
  char kind = 'e';
  int index = 1;
  auto operator<=>(const Generator&) const = default;
  std::string str() const { return std::string(1, kind) + "_" + std::to_string(index); }
};

inline Generator vertex_gen(int i) { return {0, 'e', i}; }
inline Generator arrow_gen(const Arrow& a) { return {1, a.kind, a.index}; }
inline Generator x_gen(int i) { return {1, 'x', i}; }
inline Generator y_gen(int j) { return {1, 'y', j}; }
inline Generator f_gen(int i) { return {2, 'f', i}; }
inline Generator g_gen(int j) { return {2, 'g', j}; }

struct RelationTerm {
  Rational coeff;
  std::array<Arrow, 3> arrows;
};

struct GeneratorSet {
  std::vector<Generator> g0, g1, g2;
};

inline GeneratorSet generator_set(const Instance& inst) {
  const int n = inst.n(), m = inst.m();
  GeneratorSet g;
  for (int i = 1; i <= inst.ell(); ++i) g.g0.push_back(vertex_gen(i));
  for (int i = 1; i <= n + 2 * m; ++i) g.g1.push_back(x_gen(i));
  for (int j = 1; j <= 2 * n + m; ++j) g.g1.push_back(y_gen(j));
  for (int i = 1; i <= m; ++i) g.g2.push_back(f_gen(i));
  for (int j = 1; j <= n; ++j) g.g2.push_back(g_gen(j));
  return g;
}

inline std::vector<RelationTerm> relation_terms(const Instance& inst, const Generator& r) {
  const int n = inst.n(), m = inst.m();
  const Rational &a = inst.alpha(), &b = inst.beta();
  const int i = r.index;
  if (r.kind == 'f')
    return {{1, {Arrow{'x', i}, Arrow{'x', i + n}, Arrow{'y', i + 2 * n}}},
            {-a, {Arrow{'x', i}, Arrow{'y', i + n}, Arrow{'x', i + n + m}}},
            {-b, {Arrow{'y', i}, Arrow{'x', i + m}, Arrow{'x', i + n + m}}}};
  if (r.kind == 'g')
    return {{1, {Arrow{'x', i}, Arrow{'y', i + n}, Arrow{'y', i + n + m}}},
            {-a, {Arrow{'y', i}, Arrow{'x', i + m}, Arrow{'y', i + n + m}}},
            {-b, {Arrow{'y', i}, Arrow{'y', i + m}, Arrow{'x', i + 2 * m}}}};
  throw std::invalid_argument("not a relation generator: " + r.str());
}

inline int gen_source(const Instance&, const Generator& g) { return g.index; }

inline int gen_target(const Instance& inst, const Generator& g) {
  const int n = inst.n(), m = inst.m();
  switch (g.kind) {
    case 'e': return g.index;
    case 'x': return g.index + n;
    case 'y': return g.index + m;
    case 'f': return g.index + 2 * n + m;
    case 'g': return g.index + n + 2 * m;
  }
  throw std::invalid_argument("unknown generator kind");
}

// Key of a summand  left (s(h) (x) t(h)) right  in P^level.
struct TensorKey {
  Generator gen;
  NormalMonomial left, right;
  auto operator<=>(const TensorKey&) const = default;
};

// Element of P^level = (+)_h  nablaA s(h) (x) t(h) nablaA.
struct BimoduleElement {
  std::map<TensorKey, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const TensorKey& k, const Rational& c) {
    if (c == 0) return;
    auto& slot = terms[k];
    slot += c;
    if (slot == 0) terms.erase(k);
  }
  void add(const BimoduleElement& o, const Rational& s = 1) {
    for (const auto& [k, v] : o.terms) add(k, s * v);
  }
  friend bool operator==(const BimoduleElement&, const BimoduleElement&) = default;
};

// u . (l (x) r) . v, expanding both products into normal forms.
inline BimoduleElement sandwich(const Beilinson& B, const NormalElement& u, const BimoduleElement& x,
                                const NormalElement& v) {
  BimoduleElement out;
  for (const auto& [k, c] : x.terms) {
    NormalElement l = B.multiply(u, NormalElement{{{k.left, Rational(1)}}});
    NormalElement r = B.multiply(NormalElement{{{k.right, Rational(1)}}}, v);
    for (const auto& [lm, lc] : l.terms)
      for (const auto& [rm, rc] : r.terms) out.add(TensorKey{k.gen, lm, rm}, c * lc * rc);
  }
  return out;
}

inline NormalMonomial unit_at(int p) { return {p, {0, 0, 0}}; }
inline NormalMonomial letter_at(int p, char ch) { return {p, ch == 'x' ? Shape{0, 0, 1} : Shape{1, 0, 0}}; }

// Boundary of the generator symbol s(h) (x) t(h), h of level 1 or 2.
inline BimoduleElement boundary_of_generator(const Beilinson& B, const Generator& h) {
  const Instance& inst = B.instance();
  BimoduleElement out;
  if (h.level == 1) {
    const int s = gen_source(inst, h), t = gen_target(inst, h);
    out.add({vertex_gen(s), unit_at(s), letter_at(s, h.kind)}, 1);
    out.add({vertex_gen(t), letter_at(s, h.kind), unit_at(t)}, -1);
    return out;
  }
  if (h.level == 2) {
    for (const auto& term : relation_terms(inst, h)) {
      for (int pos = 0; pos < 3; ++pos) {
        std::string lw, rw;
        for (int k = 0; k < pos; ++k) lw += term.arrows[k].kind;
        for (int k = pos + 1; k < 3; ++k) rw += term.arrows[k].kind;
        const Arrow& a = term.arrows[pos];
        const int s = gen_source(inst, h);
        const int ta = a.index + B.letter_degree(a.kind);
        // words of length <= 2 are already normal
        out.add({arrow_gen(a), NormalMonomial{s, *shape_of(lw)}, NormalMonomial{ta, *shape_of(rw)}}, term.coeff);
      }
    }
    return out;
  }
  throw std::invalid_argument("boundary of a level-0 generator");
}

// Apply the resolution differential P^level -> P^{level-1} (level 1 or 2).
inline BimoduleElement boundary(const Beilinson& B, const BimoduleElement& x) {
  BimoduleElement out;
  std::map<Generator, BimoduleElement> cache;
  for (const auto& [k, c] : x.terms) {
    auto it = cache.find(k.gen);
    if (it == cache.end()) it = cache.emplace(k.gen, boundary_of_generator(B, k.gen)).first;
    out.add(sandwich(B, NormalElement{{{k.left, Rational(1)}}}, it->second, NormalElement{{{k.right, Rational(1)}}}), c);
  }
  return out;
}

// The multiplication map P^0 -> nablaA.
inline NormalElement augmentation(const Beilinson& B, const BimoduleElement& x) {
  NormalElement out;
  for (const auto& [k, c] : x.terms) out.add(B.multiply(k.left, k.right), c);
  return out;
}

// A cochain on P^level: its value on each generator symbol.
using Functional = std::map<Generator, NormalElement>;

inline NormalElement evaluate(const Beilinson& B, const Functional& phi, const BimoduleElement& x) {
  NormalElement out;
  for (const auto& [k, c] : x.terms) {
    auto it = phi.find(k.gen);
    if (it == phi.end()) continue;
    NormalElement l{{{k.left, Rational(1)}}}, r{{{k.right, Rational(1)}}};
    out.add(B.multiply(B.multiply(l, it->second), r), c);
  }
  return out;
}

struct TauFunctional {
  int level = 0;
  Generator gen;
  NormalMonomial value;
  auto operator<=>(const TauFunctional&) const = default;
};

inline std::string label(const TauFunctional& t) {
  const std::string w = word_of(t.value.shape);
  std::string s = "tau[" + t.gen.str() + "]";
  const bool default_value = (t.level == 0 && w.empty()) || (t.level == 1 && w.size() == 1 && w[0] == t.gen.kind);
  if (!default_value) s += "^{" + pretty(w) + "}";
  return s;
}

namespace detail {

struct OrderBlock {
  char kind;
  Shape shape;
  bool descending = false;
};

inline std::vector<OrderBlock> order_blocks(int level, int n, int m) {
  if (level == 1) {
    std::vector<OrderBlock> b{{'x', {0, 0, 1}}, {'y', {1, 0, 0}}};
    if (n == 1) {
      b.push_back({'y', {0, 0, m}, true});
      b.push_back({'x', {1, 0, 0}});
    }
    return b;
  }
  if (level == 2) {
    std::vector<OrderBlock> b{{'f', {1, 0, 2}}, {'g', {2, 0, 1}}, {'g', {1, 1, 0}}, {'f', {0, 1, 1}}};
    if (n == 2) b.push_back({'g', {0, 0, m + 1}});
    if (n == 1) {
      b.push_back({'f', {0, 0, m + 2}, true});
      b.push_back({'g', {1, 0, m + 1}});
      b.push_back({'g', {0, 1, m}});
      b.push_back({'g', {0, 0, 2 * m + 1}});
      b.push_back({'f', {2, 0, 0}});
      b.push_back({'g', {3, 0, 0}});
      b.push_back({'f', {2, 0, 1}});
      b.push_back({'f', {1, 1, 0}});
      b.push_back({'f', {3, 0, 0}});
    }
    return b;
  }
  return {};
}

inline auto order_key(const TauFunctional& t, int n, int m) {
  const auto blocks = order_blocks(t.level, n, m);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    if (blocks[k].kind == t.gen.kind && blocks[k].shape == t.value.shape)
      return std::make_tuple(static_cast<int>(k), blocks[k].descending ? -t.gen.index : t.gen.index, t);
  return std::make_tuple(1000, 0, t);
}

}  // namespace detail

inline std::vector<TauFunctional> enumerate_tau_basis(const Beilinson& B, int level) {
  const Instance& inst = B.instance();
  const auto gs = generator_set(inst);
  const auto& gens = level == 0 ? gs.g0 : level == 1 ? gs.g1 : gs.g2;
  std::vector<TauFunctional> out;
  for (const auto& g : gens)
    for (const auto& mon : B.enumerate_basis(gen_source(inst, g), gen_target(inst, g)))
      out.push_back({level, g, mon});
  std::sort(out.begin(), out.end(), [&](const TauFunctional& a, const TauFunctional& b) {
    return detail::order_key(a, inst.n(), inst.m()) < detail::order_key(b, inst.n(), inst.m());
  });
  return out;
}

class HomComplex {
 public:
  explicit HomComplex(std::shared_ptr<const Beilinson> B) : B_(std::move(B)) {
    for (int r = 0; r < 3; ++r) {
      basis_[r] = enumerate_tau_basis(*B_, r);
      for (std::size_t k = 0; k < basis_[r].size(); ++k)
        index_[r][{basis_[r][k].gen, basis_[r][k].value}] = k;
    }
    const auto gs = generator_set(B_->instance());
    for (const auto& g : gs.g1) boundary1_[g] = boundary_of_generator(*B_, g);
    for (const auto& g : gs.g2) boundary2_[g] = boundary_of_generator(*B_, g);
    d1_ = assemble(0);
    d2_ = assemble(1);
  }

  const Beilinson& algebra() const { return *B_; }
  std::shared_ptr<const Beilinson> algebra_ptr() const { return B_; }
  const Instance& instance() const { return B_->instance(); }

  const std::vector<TauFunctional>& basis(int level) const { return basis_.at(level); }
  std::size_t dim(int level) const { return basis_.at(level).size(); }
  const QMatrix& d1_matrix() const { return d1_; }
  const QMatrix& d2_matrix() const { return d2_; }
  const BimoduleElement& boundary_of(const Generator& g) const {
    return g.level == 1 ? boundary1_.at(g) : boundary2_.at(g);
  }

  std::optional<std::size_t> index_of(int level, const Generator& g, const NormalMonomial& value) const {
    const auto& idx = index_.at(level);
    auto it = idx.find({g, value});
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  // Index of the functional sending g to the path spelled by word (which must be normal).
  std::size_t index_of(int level, const Generator& g, const std::string& word) const {
    const auto s = shape_of(word);
    if (!s) throw std::invalid_argument("not a normal word: " + word);
    auto k = index_of(level, g, NormalMonomial{g.index, *s});
    if (!k) throw std::out_of_range("no functional " + g.str() + "^" + word);
    return *k;
  }

  Functional functional(int level, const std::vector<Rational>& v) const {
    if (v.size() != dim(level)) throw std::invalid_argument("coefficient vector length mismatch");
    Functional phi;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) phi[basis_[level][k].gen].add(basis_[level][k].value, v[k]);
    return phi;
  }

  std::vector<Rational> coordinates(int level, const Functional& phi) const {
    std::vector<Rational> v(dim(level));
    for (const auto& [g, val] : phi)
      for (const auto& [mon, c] : val.terms) {
        auto k = index_of(level, g, mon);
        if (!k) throw std::logic_error("value outside s(h) nablaA t(h) for " + g.str());
        v[*k] += c;
      }
    return v;
  }

  // phi o boundary on each generator of the next level.
  Functional coboundary(int level, const Functional& phi) const {
    const auto& table = level == 0 ? boundary1_ : boundary2_;
    Functional out;
    for (const auto& [g, dg] : table) {
      NormalElement v = evaluate(*B_, phi, dg);
      if (!v.is_zero()) out[g] = std::move(v);
    }
    return out;
  }

  std::vector<Rational> apply_d1(const std::vector<Rational>& phi) const {
    return coordinates(1, coboundary(0, functional(0, phi)));
  }
  std::vector<Rational> apply_d2(const std::vector<Rational>& psi) const {
    return coordinates(2, coboundary(1, functional(1, psi)));
  }

 private:
  QMatrix assemble(int level) const {
    std::vector<std::vector<Rational>> cols;
    for (std::size_t k = 0; k < dim(level); ++k) {
      std::vector<Rational> e(dim(level));
      e[k] = 1;
      cols.push_back(level == 0 ? apply_d1(e) : apply_d2(e));
    }
    return QMatrix::from_columns(cols, dim(level + 1));
  }

  std::shared_ptr<const Beilinson> B_;
  std::array<std::vector<TauFunctional>, 3> basis_;
  std::array<std::map<std::pair<Generator, NormalMonomial>, std::size_t>, 3> index_;
  std::map<Generator, BimoduleElement> boundary1_, boundary2_;
  QMatrix d1_, d2_;
};

inline std::shared_ptr<const HomComplex> assemble_hom_complex(const Instance& inst) {
  return std::make_shared<const HomComplex>(std::make_shared<const Beilinson>(inst));
}

// Dimensions of the Hom spaces in the canonical regimes.
inline std::array<std::size_t, 3> expected_tau_dims(const Instance& inst) {
  const std::size_t n = static_cast<std::size_t>(inst.n()), m = static_cast<std::size_t>(inst.m());
  const std::size_t d0 = 2 * (n + m);
  if (n == 1 && m == 1) return {d0, 12, 12};
  if (n == 1) return {d0, 3 * (n + m) + m + 2, m == 2 ? 13 : 3 * m + 5};
  if (n == 2) return {d0, 3 * (n + m), 2 * m + 6};
  return {d0, 3 * (n + m), 2 * (n + m)};
}

// L1 from the relation structure: rows f^{yx^2}_1..m, g^{y^2x}_1..n, g^{yxy}_1..n, f^{xyx}_1..m;
// columns tau_{x_1..n+2m}, tau_{y_1..2n+m}.
inline QMatrix build_L1(const Instance& inst) {
  const int n = inst.n(), m = inst.m();
  const Rational &a = inst.alpha(), &b = inst.beta();
  const int nx = n + 2 * m, ny = 2 * n + m;
  QMatrix L(static_cast<std::size_t>(2 * (n + m)), static_cast<std::size_t>(nx + ny));
  auto row_fyxx = [&](int i) { return static_cast<std::size_t>(i - 1); };
  auto row_gyyx = [&](int j) { return static_cast<std::size_t>(m + j - 1); };
  auto row_gyxy = [&](int j) { return static_cast<std::size_t>(m + n + j - 1); };
  auto row_fxyx = [&](int i) { return static_cast<std::size_t>(m + 2 * n + i - 1); };
  auto put = [&](auto row, int idx, int lo, int hi, std::size_t col, const Rational& v) {
    if (idx >= lo && idx <= hi) L(row(idx), col) += v;
  };
  for (int k = 1; k <= nx; ++k) {
    const auto c = static_cast<std::size_t>(k - 1);
    put(row_fyxx, k, 1, m, c, b);
    put(row_fyxx, k - n, 1, m, c, b);
    put(row_fyxx, k - m, 1, m, c, -b);
    put(row_fyxx, k - n - m, 1, m, c, -b);
    put(row_fxyx, k - n, 1, m, c, a);
    put(row_fxyx, k - n - m, 1, m, c, -a);
    put(row_gyyx, k, 1, n, c, b);
    put(row_gyyx, k - 2 * m, 1, n, c, -b);
    put(row_gyxy, k, 1, n, c, a);
    put(row_gyxy, k - m, 1, n, c, -a);
  }
  for (int k = 1; k <= ny; ++k) {
    const auto c = static_cast<std::size_t>(nx + k - 1);
    put(row_fyxx, k - 2 * n, 1, m, c, b);
    put(row_fyxx, k, 1, m, c, -b);
    put(row_fxyx, k - 2 * n, 1, m, c, a);
    put(row_fxyx, k - n, 1, m, c, -a);
    put(row_gyxy, k - n, 1, n, c, a);
    put(row_gyxy, k, 1, n, c, -a);
    put(row_gyyx, k - n, 1, n, c, b);
    put(row_gyyx, k - n - m, 1, n, c, b);
    put(row_gyyx, k, 1, n, c, -b);
    put(row_gyyx, k - m, 1, n, c, -b);
  }
  return L;
}

// The (m+2)x(m+2) matrix L2 (meaningful for n = 1); for m = 1 the two marked
// columns coincide and their entries add.
inline QMatrix build_L2(const Instance& inst) {
  const int m = inst.m();
  const Rational &a = inst.alpha(), &b = inst.beta();
  const auto N = static_cast<std::size_t>(m + 2);
  QMatrix L(N, N);
  for (std::size_t r = 0; r < static_cast<std::size_t>(m); ++r) {
    L(r, r) += 1;
    L(r, r + 1) += -a;
    L(r, r + 2) += -b;
  }
  auto lam = [&](int r) { return inst.lambda(r); };
  const std::size_t p = static_cast<std::size_t>(m), q = p + 1;
  L(p, 0) += -lam(2);
  L(p, 1) += -b * lam(1);
  L(p, N - 2) += b * lam(m);
  L(p, N - 1) += -b * lam(m + 1);
  L(q, 0) += lam(1);
  L(q, 1) += b * lam(0);
  L(q, N - 2) += lam(m + 1);
  L(q, N - 1) += -lam(m + 2);
  return L;
}

// M2 assembled from L1, L2 and zero blocks in the basis order of enumerate_tau_basis.
inline QMatrix build_M2_closed_form(const Instance& inst) {
  const int n = inst.n(), m = inst.m();
  const auto dims = expected_tau_dims(inst);
  QMatrix M(dims[2], dims[1]);
  auto place = [&](const QMatrix& blk, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j) M(r0 + i, c0 + j) = blk(i, j);
  };
  const QMatrix L1 = build_L1(inst);
  place(L1, 0, 0);
  if (n == 1) {
    const QMatrix L2 = build_L2(inst);
    place(L2, L1.rows(), L1.cols());
    if (m == 1) place(L2, L1.rows() + L2.rows() + 1, L1.cols() + L2.cols());
  }
  return M;
}

inline std::size_t rank_L1_closed_form(const Instance& inst) {
  const int n = inst.n(), m = inst.m();
  if (!(m > n && n > 1)) return rank(build_L1(inst));
  const bool case_one = (n + m) % 2 == 0 && inst.alpha() == 0;
  return static_cast<std::size_t>(n + m - (case_one ? 1 : 0));
}

inline QMatrix circulant(const std::vector<Rational>& first_row) {
  const std::size_t r = first_row.size();
  QMatrix C(r, r);
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = 0; q < r; ++q) C(p, q) = first_row[(q + r - p) % r];
  return C;
}

inline std::size_t circulant_rank(std::size_t nm, const QPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("circulant_rank: zero polynomial");
  const QPoly xn1 = QPoly::monomial(1, nm) - QPoly{1};
  return nm - static_cast<std::size_t>(poly_gcd(xn1, f).degree());
}

// First row of the circulant attached to f reduced modulo x^nm - 1.
inline std::vector<Rational> circulant_row(std::size_t nm, const QPoly& f) {
  std::vector<Rational> row(nm);
  for (std::size_t k = 0; k < f.coeffs().size(); ++k) row[k % nm] += f.coeffs()[k];
  return row;
}

// Rank of L1 through the circulant: full rank n+m unless alpha = 0, where it is the rank
// of the circulant of x^m + 1 of size n+m.
inline std::size_t rank_L1_via_circulant(const Instance& inst) {
  const auto nm = static_cast<std::size_t>(inst.n() + inst.m());
  if (inst.alpha() != 0) return nm;
  return circulant_rank(nm, QPoly::monomial(1, static_cast<std::size_t>(inst.m())) + QPoly{1});
}

}  // namespace hhdu
