#include "oracle.hpp"

#include <gtest/gtest.h>
#include <hhdu/invariants.hpp>

using namespace hhdu;

namespace {

// tr(M^{-1} M^T) by back substitution on the unitriangular M
Rational serre_trace(const QMatrix& M) {
  const std::size_t n = M.rows();
  const QMatrix T = M.transpose();
  Rational tr = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
      Rational s = T(i, j);
      for (std::size_t k = i + 1; k < n; ++k) s -= M(i, k) * x[k];
      x[i] = s / M(i, i);
    }
    tr += x[j];
  }
  return tr;
}

}  // namespace

TEST(Invariants, TwoThree) {
  for (auto [a, b] : {std::pair{1, 1}, {0, 1}, {3, -2}}) {
    const auto d = derived_invariants(Instance(2, 3, a, b));
    EXPECT_EQ(d.chi_hh, 7);
    EXPECT_NE(d.chi_hh, 10);
    EXPECT_FALSE(d.unipotent);
    EXPECT_TRUE(d.surface_obstructed);
    EXPECT_TRUE(d.trace_identity_ok);
    EXPECT_EQ(serre_trace(d.cartan), 7);
  }
}

TEST(Invariants, SmallWeightsAreUnipotent) {
  for (auto [m, a, b] : {std::tuple{1, 0, 1}, {1, 2, -1}, {1, 1, 1}, {2, 1, -1}, {2, 2, -1}, {2, 1, 1}}) {
    const Instance inst(1, m, a, b);
    const auto d = derived_invariants(inst);
    EXPECT_TRUE(d.unipotent) << inst.label();
    EXPECT_TRUE(d.unipotent_by_char_poly);
    // det(tI - s) at a few points against (t-1)^l
    const std::size_t l = d.serre_action.rows();
    for (int t : {0, 2, -1}) {
      const QMatrix T = Rational(t) * QMatrix::identity(l) - d.serre_action;
      EXPECT_EQ(oracle::det(T), rpow(Rational(t - 1), static_cast<int>(l)));
    }
  }
  for (int m = 3; m <= 6; ++m) EXPECT_FALSE(derived_invariants(Instance(1, m, 1, 1)).unipotent);
}

TEST(Invariants, HappelSpots) {
  const auto d35 = derived_invariants(Instance(3, 5, 0, 1));
  EXPECT_EQ(d35.chi_hh, 8);
  EXPECT_TRUE(d35.trace_identity_ok);
  const auto d11 = derived_invariants(Instance(1, 1, 0, 1));
  EXPECT_EQ(d11.chi_hh, 4);
  EXPECT_EQ(d11.minus_trace_coxeter, 4);
  EXPECT_TRUE(happel_check(Instance(2, 3, 1, 1)));
}

TEST(Invariants, TraceIdentityAndHappelOverTheSweep) {
  for (const auto& [n, m] : sweep_weights(12))
    for (const auto& s : stratum_samples(n, m))
      for (const auto& [a, b] : s.params) {
        const Instance inst(n, m, a, b);
        const auto d = derived_invariants(inst, hh_dims_closed_form(inst));
        EXPECT_EQ(d.minus_trace_coxeter, serre_trace(d.cartan));
        EXPECT_TRUE(d.trace_identity_ok) << inst.label();
        EXPECT_EQ(d.unipotent, d.unipotent_by_char_poly);
        EXPECT_EQ(d.unipotent, n == 1 && m <= 2) << inst.label();
        if (m > n && n > 1) {
          EXPECT_EQ(d.chi_hh, n == 2 ? m + 4 : n + m);
          EXPECT_NE(d.chi_hh, 2 * (n + m));
        }
      }
}

TEST(Invariants, ShiftedPower) {
  EXPECT_EQ(shifted_power(2), (QPoly{1, -2, 1}));
  EXPECT_EQ(char_poly(QMatrix::identity(2)), shifted_power(2));
}
