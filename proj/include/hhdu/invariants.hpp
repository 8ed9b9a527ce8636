#pragma once

#include <hhdu/cohomology.hpp>

#include <string>

namespace hhdu {

struct DerivedInvariants {
  QMatrix cartan;        // M
  QMatrix coxeter;       // -M^{-T} M
  QMatrix serre_action;  // M^{-1} M^T
  long chi_hh = 0;
  Rational minus_trace_coxeter;
  bool trace_identity_ok = false;
  bool unipotent = false;
  bool unipotent_by_char_poly = false;
  bool surface_obstructed = false;
};

inline bool is_unipotent(const QMatrix& s) {
  const std::size_t n = s.rows();
  const QMatrix N = s - QMatrix::identity(n);
  QMatrix P = QMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) P = P * N;
  return P.is_zero();
}

// (t - 1)^k with coefficients in increasing degree.
inline QPoly shifted_power(std::size_t k) {
  QPoly p{Rational(1)};
  for (std::size_t i = 0; i < k; ++i) p = p * QPoly{Rational(-1), Rational(1)};
  return p;
}

inline DerivedInvariants derived_invariants(const Instance& inst, const HHDims& dims) {
  DerivedInvariants d;
  const Beilinson B(inst);
  d.cartan = B.cartan_matrix();
  const QMatrix Minv = inverse(d.cartan);
  d.coxeter = Rational(-1) * (Minv.transpose() * d.cartan);
  d.serre_action = Minv * d.cartan.transpose();
  d.chi_hh = dims.h0 - dims.h1 + dims.h2;
  d.minus_trace_coxeter = -d.coxeter.trace();
  d.trace_identity_ok = Rational(d.chi_hh) == d.minus_trace_coxeter;
  d.unipotent = is_unipotent(d.serre_action);
  d.unipotent_by_char_poly = char_poly(d.serre_action) == shifted_power(d.serre_action.rows());
  d.surface_obstructed = !d.unipotent;
  return d;
}

inline DerivedInvariants derived_invariants(const Instance& inst) {
  return derived_invariants(inst, hh_dims_computed(*assemble_hom_complex(inst)));
}

inline bool happel_check(const Instance& inst) { return derived_invariants(inst).trace_identity_ok; }

}  // namespace hhdu
