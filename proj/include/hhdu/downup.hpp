#pragma once

#include <hhdu/exactla.hpp>

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhdu {

enum class Cond1 { CaseI, CaseII };
enum class Cond2 { Case1, Case2, Case3, NotApplicable };

inline std::string to_string(Cond1 c) { return c == Cond1::CaseI ? "I" : "II"; }
inline std::string to_string(Cond2 c) {
  switch (c) {
    case Cond2::Case1: return "1";
    case Cond2::Case2: return "2";
    case Cond2::Case3: return "3";
    default: return "-";
  }
}

struct CaseClassification {
  Cond1 cond1;
  Cond2 cond2;
  friend bool operator==(const CaseClassification&, const CaseClassification&) = default;
};

// Weights deg x = n, deg y = m of A(alpha, beta). The canonical constructor enforces
// beta != 0, m >= n >= 1, gcd(n, m) = 1; raw() only requires beta != 0 and positive weights.
class Instance {
 public:
  Instance(int n, int m, Rational alpha, Rational beta) : Instance(n, m, std::move(alpha), std::move(beta), true) {}

  static Instance raw(int n, int m, Rational alpha, Rational beta) {
    return Instance(n, m, std::move(alpha), std::move(beta), false);
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int ell() const { return 2 * (n_ + m_); }
  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  bool canonical() const { return canonical_; }

  // lambda_r for r >= -1
  Rational lambda(int r) const {
    if (r < -1) throw std::out_of_range("lambda index below -1");
    Rational v = r + 1 < static_cast<int>(lam_.size()) ? lam_[r + 1] : extend(r);
    if (fault_ && *fault_ == r) v = -v;
    return v;
  }

  // Copy whose lambda_r has its sign flipped; used to check that verification catches it.
  Instance with_lambda_fault(int r) const {
    Instance c = *this;
    c.fault_ = r;
    return c;
  }
  std::optional<int> lambda_fault() const { return fault_; }

  std::string label() const {
    return "(" + std::to_string(n_) + "," + std::to_string(m_) + "," + alpha_.get_str() + "," + beta_.get_str() + ")";
  }

 private:
  Instance(int n, int m, Rational alpha, Rational beta, bool canonical)
      : n_(n), m_(m), alpha_(std::move(alpha)), beta_(std::move(beta)), canonical_(canonical) {
    if (beta_ == 0) throw std::invalid_argument("beta must be nonzero");
    if (n_ < 1 || m_ < 1) throw std::invalid_argument("weights must be positive");
    if (canonical_) {
      if (m_ < n_) throw std::invalid_argument("weights must satisfy m >= n");
      if (std::gcd(n_, m_) != 1) throw std::invalid_argument("weights must be coprime");
    }
    const int top = ell() + 4;
    lam_.reserve(static_cast<std::size_t>(top) + 2);
    lam_.push_back(Rational(1) / beta_);
    lam_.push_back(0);
    for (int r = 1; r <= top; ++r) lam_.push_back(alpha_ * lam_[r] + beta_ * lam_[r - 1]);
  }

  Rational extend(int r) const {
    Rational a = lam_[lam_.size() - 2], b = lam_.back();
    for (int k = static_cast<int>(lam_.size()) - 1; k <= r; ++k) {
      Rational c = alpha_ * b + beta_ * a;
      a = std::move(b);
      b = std::move(c);
    }
    return b;
  }

  int n_, m_;
  Rational alpha_, beta_;
  bool canonical_;
  std::vector<Rational> lam_;  // lam_[r + 1] = lambda_r
  std::optional<int> fault_;
};

inline Rational lambda(const Instance& inst, int r) { return inst.lambda(r); }

inline CaseClassification classify(const Instance& inst) {
  const bool c1 = (inst.n() + inst.m()) % 2 == 0 && inst.alpha() == 0;
  Cond2 c2;
  if (inst.lambda(inst.m() + 1) == 0)
    c2 = Cond2::Case1;
  else if (inst.alpha() * inst.alpha() + 4 * inst.beta() == 0)
    c2 = Cond2::Case2;
  else
    c2 = Cond2::Case3;
  return {c1 ? Cond1::CaseI : Cond1::CaseII, c2};
}

struct ReducedWeights {
  int n, m, k;
  bool swapped;
};

inline ReducedWeights reduce_weights(int n0, int m0) {
  if (n0 < 1 || m0 < 1) throw std::invalid_argument("weights must be positive");
  const int k = std::gcd(n0, m0);
  int n = n0 / k, m = m0 / k;
  const bool swapped = n > m;
  if (swapped) std::swap(n, m);
  return {n, m, k, swapped};
}

// Interchanging x and y: A(alpha, beta) with weights (n, m) is A(-alpha/beta, 1/beta) with weights (m, n).
inline std::pair<Rational, Rational> swap_parameters(const Rational& alpha, const Rational& beta) {
  return {-alpha / beta, Rational(1) / beta};
}

struct NormalizedInstance {
  Instance inst;
  int k;
  bool swapped;
};

inline NormalizedInstance normalize(int n0, int m0, const Rational& alpha, const Rational& beta) {
  if (beta == 0) throw std::invalid_argument("beta must be nonzero");
  const auto r = reduce_weights(n0, m0);
  if (r.swapped) {
    auto [a, b] = swap_parameters(alpha, beta);
    return {Instance(r.n, r.m, a, b), r.k, true};
  }
  return {Instance(r.n, r.m, alpha, beta), r.k, false};
}

}  // namespace hhdu
