#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hhdu {

// mpq_class keeps numerator/denominator canonical (gcd 1, denominator > 0).
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p" or "p/q" with optional sign; anything else (decimals, exponents) is rejected.
inline Rational parse_rational(const std::string& text) {
  auto is_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto strip_plus = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return s;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_int(text)) throw std::invalid_argument("not an exact rational: '" + text + "'");
    return Rational(Integer(strip_plus(text)));
  }
  const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not an exact rational: '" + text + "'");
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(Integer(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

inline Rational rpow(const Rational& base, int e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    return rpow(Rational(1) / base, -e);
  }
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static QMatrix identity(std::size_t n) {
    QMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
  }

  static QMatrix from_columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows) {
    QMatrix M(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) M(i, j) = cols[j][i];
    }
    return M;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rational> column(std::size_t j) const {
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  QMatrix transpose() const {
    QMatrix T(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
    return T;
  }

  QMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    QMatrix S(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) S(i, j) = (*this)(rs[i], cs[j]);
    return S;
  }

  // [A | B]
  QMatrix hcat(const QMatrix& B) const {
    if (B.rows_ != rows_) throw std::invalid_argument("hcat: row mismatch");
    QMatrix R(rows_, cols_ + B.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) R(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < B.cols_; ++j) R(i, cols_ + j) = B(i, j);
    }
    return R;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return v == 0; });
  }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
    QMatrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
  }
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
    QMatrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
  }
  friend QMatrix operator*(const Rational& s, const QMatrix& a) {
    QMatrix r = a;
    for (auto& v : r.data_) v *= s;
    return r;
  }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("product shape mismatch");
    QMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: length mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

struct Echelon {
  std::vector<std::vector<Integer>> rows;  // integer row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;         // pivot column of each kept row
};

// Clear denominators row by row, then Bareiss fraction-free elimination.
inline Echelon bareiss(const QMatrix& M) {
  const std::size_t R = M.rows(), C = M.cols();
  std::vector<std::vector<Integer>> a(R, std::vector<Integer>(C));
  for (std::size_t i = 0; i < R; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < C; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), M(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < C; ++j) a[i][j] = M(i, j).get_num() * (l / M(i, j).get_den());
  }
  Echelon e;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j) {
        Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

// Back substitution on an echelon form; free variables take the given values.
inline std::vector<Rational> back_substitute(const Echelon& e, std::size_t cols,
                                             const std::vector<Rational>& rhs,
                                             std::vector<Rational> x) {
  x.resize(cols);
  for (std::size_t k = e.rows.size(); k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    Rational s = rhs[k];
    for (std::size_t j = pc + 1; j < cols; ++j)
      if (e.rows[k][j] != 0 && x[j] != 0) s -= Rational(e.rows[k][j]) * x[j];
    x[pc] = s / Rational(e.rows[k][pc]);
  }
  return x;
}

}  // namespace detail

inline std::size_t rank(const QMatrix& M) { return detail::bareiss(M).pivots.size(); }

inline std::vector<std::vector<Rational>> kernel_basis(const QMatrix& M) {
  const auto e = detail::bareiss(M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Rational> zero_rhs(e.rows.size());
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < M.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(M.cols());
    x[f] = 1;
    basis.push_back(detail::back_substitute(e, M.cols(), zero_rhs, std::move(x)));
  }
  return basis;
}

// Some x with M x = b, or nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve(const QMatrix& M, const std::vector<Rational>& b) {
  if (b.size() != M.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  QMatrix aug(M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) aug(i, j) = M(i, j);
    aug(i, M.cols()) = b[i];
  }
  const auto e = detail::bareiss(aug);
  if (!e.pivots.empty() && e.pivots.back() == M.cols()) return std::nullopt;
  std::vector<Rational> rhs(e.rows.size());
  for (std::size_t k = 0; k < e.rows.size(); ++k) rhs[k] = Rational(e.rows[k][M.cols()]);
  return detail::back_substitute(e, M.cols(), rhs, std::vector<Rational>(M.cols()));
}

// v lies in the column space of M.
inline bool in_column_space(const QMatrix& M, const std::vector<Rational>& v) {
  return solve(M, v).has_value();
}

inline QMatrix inverse(const QMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("inverse: non-square");
  const std::size_t n = M.rows();
  if (rank(M) != n) throw std::domain_error("inverse: singular matrix");
  QMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = 1;
    auto x = solve(M, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*x)[i];
  }
  return inv;
}

class QPoly {
 public:
  QPoly() = default;
  QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  QPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static QPoly monomial(const Rational& coeff, std::size_t degree) {
    std::vector<Rational> c(degree + 1);
    c[degree] = coeff;
    return QPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is reported as -1
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& lead() const { return c_.back(); }

  QPoly monic() const {
    if (is_zero()) return *this;
    QPoly r = *this;
    const Rational l = lead();
    for (auto& v : r.c_) v /= l;
    return r;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return QPoly(std::move(c));
  }
  friend QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
    return QPoly(std::move(c));
  }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(c));
  }

  // (quotient, remainder)
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    QPoly r = a;
    std::vector<Rational> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
    while (!r.is_zero() && r.degree() >= b.degree()) {
      const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
      const Rational f = r.lead() / b.lead();
      q[shift] += f;
      r = r - monomial(f, shift) * b;
    }
    return {QPoly(std::move(q)), r};
  }

  Rational operator()(const Rational& x) const {
    Rational v = 0;
    for (std::size_t k = c_.size(); k-- > 0;) v = v * x + c_[k];
    return v;
  }

  QMatrix operator()(const QMatrix& X) const {
    const std::size_t n = X.rows();
    QMatrix V(n, n);
    for (std::size_t k = c_.size(); k-- > 0;) V = V * X + c_[k] * QMatrix::identity(n);
    return V;
  }

  std::string str(char var = 't') const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k] == 0) continue;
      Rational c = c_[k];
      const bool neg = c < 0;
      if (neg) c = -c;
      s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (c != 1 || k == 0) s += c.get_str();
      if (k >= 1) s += var;
      if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline QPoly poly_gcd(QPoly a, QPoly b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("poly_gcd: both arguments are zero");
  while (!b.is_zero()) {
    auto r = QPoly::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Faddeev-LeVerrier: det(tI - M), exact in characteristic zero.
inline QPoly char_poly(const QMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("char_poly: non-square matrix");
  const std::size_t n = M.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix Mk(n, n);
  const QMatrix I = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Mk = M * Mk + c[n - k + 1] * I;
    c[n - k] = -(M * Mk).trace() / Rational(static_cast<long>(k));
  }
  return QPoly(std::move(c));
}

}  // namespace hhdu
