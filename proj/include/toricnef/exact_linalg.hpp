#pragma once

// Exact integer and rational linear algebra: matrices, echelon forms,
// lattice kernels and rational feasibility by Fourier-Motzkin elimination.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace toricnef {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Integer point of the lattice N = Z^n.
using LatticeVector = IntVector;

/// Raised when an operation's precondition does not hold for its input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw PreconditionError("matrix rows of unequal length");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<T> row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
  }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
    return out;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product dimension mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += a(i, k) * b(k, j);
      }
    return p;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

// ---------------------------------------------------------------------------
// Vector helpers

template <typename T>
inline T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw PreconditionError("dot product dimension mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <typename T>
inline T dot(const std::vector<T>& a, const std::vector<T>& b) {
  return dot(std::span<const T>(a), std::span<const T>(b));
}

inline RatVector to_rational(const IntVector& v) { return {v.begin(), v.end()}; }

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd_of(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, abs_value(x));
  return g;
}

/// Floor division for integers (cpp_int's operator/ truncates toward zero).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// v / gcd(v). Rejects the zero vector.
inline LatticeVector primitive_part(const LatticeVector& v) {
  Integer g = gcd_of(v);
  if (g == 0) throw PreconditionError("primitive_part: zero vector");
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

inline bool is_primitive(const LatticeVector& v) { return gcd_of(v) == 1; }

/// Smallest positive multiple of v that is an integer vector with coprime
/// entries. The zero vector maps to the zero vector.
inline IntVector primitive_scaling(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = boost::multiprecision::numerator(v[i]) * (l / boost::multiprecision::denominator(v[i]));
  Integer g = gcd_of(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline Rational floor_rational(const Rational& q) {
  return Rational(floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q)));
}

inline Rational ceil_rational(const Rational& q) { return -floor_rational(-q); }

inline std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

// ---------------------------------------------------------------------------
// Rational echelon forms

struct RowEchelon {
  RatMatrix reduced;               // reduced row echelon form; zero rows at the bottom
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

inline RowEchelon rref(RatMatrix a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rational inv = Rational(1) / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c) != 0) a.add_row_multiple(i, r, -a(i, c));
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& a) { return rref(a).pivots.size(); }
inline std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

inline RatMatrix rows_to_matrix(const std::vector<RatVector>& rows, std::size_t cols) {
  return RatMatrix::from_rows(rows, cols);
}

inline std::size_t rank(const std::vector<RatVector>& rows, std::size_t cols) {
  return rank(rows_to_matrix(rows, cols));
}

/// Basis of the right kernel {x : A x = 0}, one vector per free column,
/// read off the reduced row echelon form.
inline std::vector<RatVector> rational_kernel(const RatMatrix& a) {
  auto [red, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector x(a.cols());
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -red(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Some solution of A x = b (free variables zero), or nullopt when inconsistent.
inline std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw PreconditionError("solve: right-hand side dimension mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [red, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = red(i, a.cols());
  return x;
}

/// Coordinates of `target` as a combination of `vectors`, if it lies in their span.
inline std::optional<RatVector> express_in(const std::vector<RatVector>& vectors, const RatVector& target) {
  RatMatrix a(target.size(), vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t i = 0; i < target.size(); ++i) a(i, j) = vectors[j][i];
  return solve(a, target);
}

// ---------------------------------------------------------------------------
// Integer normal forms

struct HermiteForm {
  IntMatrix h;  // row-style Hermite normal form
  IntMatrix u;  // unimodular, u * a == h
};

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into [0, pivot), zero rows last.
inline HermiteForm hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  auto add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    h.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i)
        if (h(i, c) != 0 && (best == h.rows() || abs_value(h(i, c)) < abs_value(h(best, c)))) best = i;
      if (best == h.rows()) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        add(i, r, -floor_div(h(i, c), h(r, c)));
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i)
      if (h(i, c) != 0) add(i, r, -floor_div(h(i, c), h(r, c)));
    ++r;
  }
  return {std::move(h), std::move(u)};
}

/// Nonzero elementary divisors d_1 | d_2 | ... | d_rank.
inline std::vector<Integer> smith_normal_form(const IntMatrix& a) {
  IntMatrix m = a;
  std::vector<Integer> diag;
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = m.rows(), pc = m.cols();
      for (std::size_t i = t; i < m.rows(); ++i)
        for (std::size_t j = t; j < m.cols(); ++j)
          if (m(i, j) != 0 && (pr == m.rows() || abs_value(m(i, j)) < abs_value(m(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == m.rows()) return diag;
      m.swap_rows(t, pr);
      for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, t), m(i, pc));

      bool done = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i) {
        if (m(i, t) == 0) continue;
        m.add_row_multiple(i, t, -floor_div(m(i, t), m(t, t)));
        if (m(i, t) != 0) done = false;
      }
      for (std::size_t j = t + 1; j < m.cols(); ++j) {
        if (m(t, j) == 0) continue;
        Integer q = floor_div(m(t, j), m(t, t));
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) done = false;
      }
      if (!done) continue;
      // Enforce divisibility of the remaining block by the pivot.
      std::size_t bad = m.rows();
      for (std::size_t i = t + 1; i < m.rows() && bad == m.rows(); ++i)
        for (std::size_t j = t + 1; j < m.cols(); ++j)
          if (m(i, j) % m(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m.rows()) break;
      m.add_row_multiple(t, bad, Integer(1));
    }
    diag.push_back(abs_value(m(t, t)));
  }
  return diag;
}

/// Lattice basis (rows, in Hermite normal form) of {c in Z^m : c * A = 0}
/// for an m x n matrix A.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  auto [h, u] = hermite_normal_form(a);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < h.cols() && zero; ++j) zero = h(i, j) == 0;
    if (zero) rows.push_back(u.row_vector(i));
  }
  if (rows.empty()) return IntMatrix(0, a.rows());
  return hermite_normal_form(IntMatrix::from_rows(rows)).h;
}

inline Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw PreconditionError("determinant of non-square matrix");
  RatMatrix m = to_rational(a);
  Rational det = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t p = c;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < m.rows(); ++i)
      if (m(i, c) != 0) m.add_row_multiple(i, c, -m(i, c) / m(c, c));
  }
  return boost::multiprecision::numerator(det);
}

// ---------------------------------------------------------------------------
// Rational feasibility

/// The constraint coeffs . x >= bound (or == bound for equations).
struct LinearConstraint {
  RatVector coeffs;
  Rational bound;
};

namespace detail {

struct TrackedInequality {
  RatVector coeffs;
  Rational bound;
  std::vector<bool> history;  // original inequalities combined into this one

  std::size_t history_size() const { return static_cast<std::size_t>(std::count(history.begin(), history.end(), true)); }
};

// Scale to coprime integer coefficients (positive factor) so duplicates compare equal.
inline void normalize(TrackedInequality& q) {
  RatVector all = q.coeffs;
  all.push_back(q.bound);
  IntVector s = primitive_scaling(all);
  if (is_zero(s)) return;
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) q.coeffs[i] = s[i];
  q.bound = s.back();
}

inline std::vector<bool> merge_history(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

// Drops trivially satisfied rows, duplicates and parallel rows with a weaker bound.
// Returns false if some row reads 0 >= b with b > 0.
inline bool prune(std::vector<TrackedInequality>& rows) {
  std::vector<TrackedInequality> kept;
  for (auto& q : rows) {
    if (is_zero(q.coeffs)) {
      if (q.bound > 0) return false;
      continue;
    }
    auto it = std::find_if(kept.begin(), kept.end(), [&](const TrackedInequality& k) { return k.coeffs == q.coeffs; });
    if (it == kept.end()) {
      kept.push_back(std::move(q));
    } else if (q.bound > it->bound || (q.bound == it->bound && q.history_size() < it->history_size())) {
      *it = std::move(q);
    }
  }
  rows = std::move(kept);
  return true;
}

// Fourier-Motzkin over inequalities only, with Chernikov's history rule.
inline std::optional<RatVector> fourier_motzkin(std::size_t nvars, const std::vector<LinearConstraint>& ineqs) {
  std::vector<TrackedInequality> current;
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    TrackedInequality q{ineqs[i].coeffs, ineqs[i].bound, std::vector<bool>(ineqs.size(), false)};
    q.history[i] = true;
    normalize(q);
    current.push_back(std::move(q));
  }
  if (!prune(current)) return std::nullopt;

  // stages[j] involves variables j..nvars-1 only (earlier ones eliminated).
  std::vector<std::vector<TrackedInequality>> stages;
  for (std::size_t var = 0; var < nvars; ++var) {
    stages.push_back(current);
    std::vector<TrackedInequality> pos, neg, next;
    for (auto& q : current) {
      if (q.coeffs[var] > 0)
        pos.push_back(q);
      else if (q.coeffs[var] < 0)
        neg.push_back(q);
      else
        next.push_back(q);
    }
    const std::size_t eliminated = var + 1;
    for (const auto& p : pos)
      for (const auto& n : neg) {
        auto history = merge_history(p.history, n.history);
        std::size_t hs = static_cast<std::size_t>(std::count(history.begin(), history.end(), true));
        if (hs > eliminated + 1) continue;
        Rational fp = -n.coeffs[var], fn = p.coeffs[var];
        TrackedInequality c{RatVector(nvars), fp * p.bound + fn * n.bound, std::move(history)};
        for (std::size_t j = 0; j < nvars; ++j) c.coeffs[j] = fp * p.coeffs[j] + fn * n.coeffs[j];
        c.coeffs[var] = 0;
        normalize(c);
        next.push_back(std::move(c));
      }
    if (!prune(next)) return std::nullopt;
    current = std::move(next);
  }
  for (const auto& q : current)
    if (q.bound > 0) return std::nullopt;

  RatVector x(nvars);
  for (std::size_t v = nvars; v-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const auto& q : stages[v]) {
      if (q.coeffs[v] == 0) continue;
      Rational rest = q.bound;
      for (std::size_t j = v + 1; j < nvars; ++j) rest -= q.coeffs[j] * x[j];
      Rational b = rest / q.coeffs[v];
      if (q.coeffs[v] > 0) {
        if (!lo || b > *lo) lo = b;
      } else if (!hi || b < *hi) {
        hi = b;
      }
    }
    Rational value = 0;
    if ((lo && *lo > 0) || (hi && *hi < 0)) {
      // Prefer an integer when one fits between the bounds.
      if (lo) {
        Rational up = ceil_rational(*lo);
        value = (!hi || up <= *hi) ? up : *lo;
      } else {
        value = floor_rational(*hi);
      }
    }
    x[v] = value;
  }
  return x;
}

}  // namespace detail

/// A point satisfying all equations and inequalities, or nullopt if none
/// exists. Equations are eliminated by Gaussian elimination and the remaining
/// inequalities by Fourier-Motzkin elimination; the answer is exact.
inline std::optional<RatVector> find_feasible_point(std::size_t nvars, const std::vector<LinearConstraint>& equations,
                                                    const std::vector<LinearConstraint>& inequalities) {
  for (const auto& c : equations)
    if (c.coeffs.size() != nvars) throw PreconditionError("constraint dimension mismatch");
  for (const auto& c : inequalities)
    if (c.coeffs.size() != nvars) throw PreconditionError("constraint dimension mismatch");

  RatVector base(nvars);
  std::vector<RatVector> directions;
  if (equations.empty()) {
    for (std::size_t i = 0; i < nvars; ++i) {
      RatVector e(nvars);
      e[i] = 1;
      directions.push_back(std::move(e));
    }
  } else {
    RatMatrix a(equations.size(), nvars);
    RatVector b(equations.size());
    for (std::size_t i = 0; i < equations.size(); ++i) {
      for (std::size_t j = 0; j < nvars; ++j) a(i, j) = equations[i].coeffs[j];
      b[i] = equations[i].bound;
    }
    auto particular = solve(a, b);
    if (!particular) return std::nullopt;
    base = *particular;
    directions = rational_kernel(a);
  }

  std::vector<LinearConstraint> reduced;
  reduced.reserve(inequalities.size());
  for (const auto& q : inequalities) {
    LinearConstraint r{RatVector(directions.size()), q.bound - dot(q.coeffs, base)};
    for (std::size_t k = 0; k < directions.size(); ++k) r.coeffs[k] = dot(q.coeffs, directions[k]);
    reduced.push_back(std::move(r));
  }
  auto t = detail::fourier_motzkin(directions.size(), reduced);
  if (!t) return std::nullopt;
  RatVector x = base;
  for (std::size_t k = 0; k < directions.size(); ++k)
    for (std::size_t j = 0; j < nvars; ++j) x[j] += (*t)[k] * directions[k][j];
  return x;
}

/// For A with rows a_1..a_k: a vector c with every c_i > 0 and sum c_i a_i = 0,
/// if one exists. Strictness is imposed as c_i >= 1, which loses nothing by
/// homogeneity. The returned vector is scaled to coprime positive integers.
inline std::optional<IntVector> strict_positive_kernel_exists(const IntMatrix& a) {
  const std::size_t k = a.rows(), n = a.cols();
  if (k == 0) return std::nullopt;
  std::vector<LinearConstraint> eqs, ineqs;
  for (std::size_t j = 0; j < n; ++j) {
    LinearConstraint e{RatVector(k), 0};
    for (std::size_t i = 0; i < k; ++i) e.coeffs[i] = a(i, j);
    eqs.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < k; ++i) {
    LinearConstraint q{RatVector(k), 1};
    q.coeffs[i] = 1;
    ineqs.push_back(std::move(q));
  }
  auto c = find_feasible_point(k, eqs, ineqs);
  if (!c) return std::nullopt;
  return primitive_scaling(*c);
}

}  // namespace toricnef
