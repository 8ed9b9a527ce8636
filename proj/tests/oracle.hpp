#pragma once

#include <hhdu/exactla.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

// Reference implementations kept separate from the library code paths.
namespace oracle {

using hhdu::QMatrix;
using hhdu::Rational;

// Plain row reduction over fractions, pivoting on the first nonzero entry.
inline std::size_t rank(QMatrix A) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    std::size_t p = r;
    while (p < A.rows() && A(p, c) == 0) ++p;
    if (p == A.rows()) continue;
    for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(p, j), A(r, j));
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == r || A(i, c) == 0) continue;
      const Rational f = A(i, c) / A(r, c);
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) -= f * A(r, j);
    }
    ++r;
  }
  return r;
}

// Sum over permutations; fine up to 7x7.
inline Rational det(const QMatrix& A) {
  const std::size_t n = A.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    Rational t = 1;
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inv;
    for (std::size_t i = 0; i < n; ++i) t *= A(i, p[i]);
    total += inv % 2 ? -t : t;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

inline QMatrix random_matrix(std::mt19937& g, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi), den(1, 3);
  QMatrix A(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      A(i, j) = Rational(d(g), den(g));
      A(i, j).canonicalize();
    }
  return A;
}

// Coefficients of 1/((1-t^a)(1-t^b)(1-t^c)) by counting solutions directly.
inline long triple_count(int a, int b, int c, int k) {
  long cnt = 0;
  for (int i = 0; i * a <= k; ++i)
    for (int j = 0; i * a + j * b <= k; ++j)
      if ((k - i * a - j * b) % c == 0) ++cnt;
  return cnt;
}

}  // namespace oracle
