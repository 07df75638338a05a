#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rumid {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;
using Index = Eigen::Index;

/// Accepts "p", "-p", "p/q" (q != 0). Result is in lowest terms.
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

inline bool is_zero(const Rational& q) { return q.is_zero(); }

template <typename S>
struct RowEchelon {
  Matrix<S> reduced;
  std::vector<Index> pivots;  // pivot column of each nonzero row, increasing
};

/// Reduced row echelon form by exact elimination. Intended for exact scalar
/// types; the first nonzero entry in a column is taken as pivot.
template <typename Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  RowEchelon<S> out;
  out.reduced = m;
  Matrix<S>& a = out.reduced;
  const Index rows = a.rows();
  const Index cols = a.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && a(p, c) == S(0)) ++p;
    if (p == rows) continue;
    if (p != r) a.row(p).swap(a.row(r));
    const S inv = S(1) / a(r, c);
    for (Index j = c; j < cols; ++j)
      if (a(r, j) != S(0)) a(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == S(0)) continue;
      const S f = a(i, c);
      for (Index j = c; j < cols; ++j)
        if (a(r, j) != S(0)) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Index>(row_echelon(m).pivots.size());
}

/// Basis of {v : m v = 0}, one vector per free column in increasing column
/// order, each scaled so its first nonzero entry is 1.
template <typename Derived>
std::vector<Vector<typename Derived::Scalar>> nullspace_basis(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  const auto e = row_echelon(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vector<S>> basis;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector<S> v = Vector<S>::Zero(cols);
    v(f) = S(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v(e.pivots[r]) = -e.reduced(static_cast<Index>(r), f);
    for (Index j = 0; j < cols; ++j) {
      if (v(j) != S(0)) {
        const S lead = v(j);
        if (lead != S(1)) v /= lead;
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b (free variables set to zero), or nothing when
/// the system is inconsistent.
template <typename DA, typename DB>
std::optional<Vector<typename DA::Scalar>> solve_exact(const Eigen::MatrixBase<DA>& a,
                                                       const Eigen::MatrixBase<DB>& b) {
  using S = typename DA::Scalar;
  Matrix<S> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const auto e = row_echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector<S> x = Vector<S>::Zero(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    x(e.pivots[r]) = e.reduced(static_cast<Index>(r), a.cols());
  return x;
}

/// Incrementally grown row space over the rationals. Rows are kept fully
/// reduced and sparse, which keeps membership tests cheap for the short
/// swap vectors this library feeds it.
class SpanBasis {
 public:
  explicit SpanBasis(Index dim) : dim_(dim) {}

  Index dim() const { return dim_; }
  Index size() const { return static_cast<Index>(rows_.size()); }

  /// Adds v if it is independent of the current rows; returns whether it was.
  bool insert(const RatVector& v);
  bool contains(const RatVector& v) const;

 private:
  using SparseRow = std::vector<std::pair<Index, Rational>>;
  void reduce(RatVector& v) const;

  Index dim_;
  std::map<Index, SparseRow> rows_;  // keyed by pivot column
};

}  // namespace rumid
