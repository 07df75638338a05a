#include "rumid/lp.hpp"

#include "rumid/error.hpp"

namespace rumid {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

void LpProblem::validate() const {
  const Index n = objective.size();
  if (a.cols() != n) throw InvalidInput("constraint matrix has " + std::to_string(a.cols()) +
                                        " columns, objective has " + std::to_string(n));
  if (a.rows() != b.size()) throw InvalidInput("constraint rows and right-hand side differ in length");
  if (!nonnegative.empty() && static_cast<Index>(nonnegative.size()) != n)
    throw InvalidInput("nonnegativity flags do not match variable count");
}

namespace {

// Tableau in canonical form: rows_ hold B^-1 [A | b], cost_ holds reduced
// costs with the negated objective value in the last slot.
class Tableau {
 public:
  Tableau(RatMatrix t, std::vector<Index> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  Index rows() const { return t_.rows(); }
  Index rhs() const { return t_.cols() - 1; }
  RatMatrix& t() { return t_; }
  std::vector<Index>& basis() { return basis_; }
  RatVector& cost() { return cost_; }

  void set_cost(const RatVector& c) {  // c over all columns except rhs
    cost_ = RatVector::Zero(t_.cols());
    for (Index j = 0; j < c.size(); ++j) cost_(j) = c(j);
    for (Index i = 0; i < rows(); ++i) {
      const Rational cb = c(basis_[static_cast<std::size_t>(i)]);
      if (cb.is_zero()) continue;
      for (Index j = 0; j < t_.cols(); ++j)
        if (!t_(i, j).is_zero()) cost_(j) -= cb * t_(i, j);
    }
  }

  void pivot(Index r, Index s) {
    const Index cols = t_.cols();
    const Rational inv = Rational(1) / t_(r, s);
    std::vector<Index> nz;
    for (Index j = 0; j < cols; ++j) {
      if (t_(r, j).is_zero()) continue;
      t_(r, j) *= inv;
      nz.push_back(j);
    }
    for (Index i = 0; i < t_.rows(); ++i) {
      if (i == r || t_(i, s).is_zero()) continue;
      const Rational f = t_(i, s);
      for (Index j : nz) t_(i, j) -= f * t_(r, j);
    }
    if (!cost_(s).is_zero()) {
      const Rational f = cost_(s);
      for (Index j : nz) cost_(j) -= f * t_(r, j);
    }
    basis_[static_cast<std::size_t>(r)] = s;
  }

  // Returns false if unbounded. `limit` bounds the eligible entering columns.
  bool run(Index limit) {
    for (;;) {
      Index s = -1;
      for (Index j = 0; j < limit; ++j) {
        if (cost_(j) < 0) {
          s = j;
          break;
        }
      }
      if (s < 0) return true;
      Index r = -1;
      Rational best;
      for (Index i = 0; i < rows(); ++i) {
        if (t_(i, s) <= 0) continue;
        const Rational ratio = t_(i, rhs()) / t_(i, s);
        if (r < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(r)])) {
          r = i;
          best = ratio;
        }
      }
      if (r < 0) return false;
      pivot(r, s);
    }
  }

  void drop_row(Index r) {
    const Index last = t_.rows() - 1;
    if (r != last) {
      t_.row(r).swap(t_.row(last));
      std::swap(basis_[static_cast<std::size_t>(r)], basis_[static_cast<std::size_t>(last)]);
    }
    t_.conservativeResize(last, Eigen::NoChange);
    basis_.pop_back();
  }

 private:
  RatMatrix t_;
  std::vector<Index> basis_;
  RatVector cost_;
};

}  // namespace

LpResult lp_solve(const LpProblem& p, LpSense sense) {
  p.validate();
  const Index n = p.objective.size();
  const Index m = p.a.rows();

  // Split free variables x = x+ - x-.
  std::vector<Index> pos(static_cast<std::size_t>(n)), neg(static_cast<std::size_t>(n), -1);
  Index cols = 0;
  for (Index j = 0; j < n; ++j) {
    pos[static_cast<std::size_t>(j)] = cols++;
    const bool nonneg = p.nonnegative.empty() || p.nonnegative[static_cast<std::size_t>(j)];
    if (!nonneg) neg[static_cast<std::size_t>(j)] = cols++;
  }
  const Index structural = cols;

  RatMatrix t = RatMatrix::Zero(m, structural + m + 1);
  RatVector cost = RatVector::Zero(structural + m);
  for (Index j = 0; j < n; ++j) {
    const Rational c = sense == LpSense::minimize ? p.objective(j) : Rational(-p.objective(j));
    cost(pos[static_cast<std::size_t>(j)]) = c;
    if (neg[static_cast<std::size_t>(j)] >= 0) cost(neg[static_cast<std::size_t>(j)]) = -c;
  }
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    const bool flip = p.b(i) < 0;
    for (Index j = 0; j < n; ++j) {
      const Rational& v = p.a(i, j);
      if (v.is_zero()) continue;
      const Rational s = flip ? Rational(-v) : v;
      t(i, pos[static_cast<std::size_t>(j)]) = s;
      if (neg[static_cast<std::size_t>(j)] >= 0) t(i, neg[static_cast<std::size_t>(j)]) = -s;
    }
    t(i, structural + i) = 1;
    t(i, structural + m) = flip ? Rational(-p.b(i)) : p.b(i);
    basis[static_cast<std::size_t>(i)] = structural + i;
  }

  Tableau tab(std::move(t), std::move(basis));

  // Phase one: minimize the sum of artificials.
  RatVector phase1 = RatVector::Zero(structural + m);
  for (Index i = 0; i < m; ++i) phase1(structural + i) = 1;
  tab.set_cost(phase1);
  tab.run(structural + m);  // bounded below by zero
  LpResult result;
  if (!tab.cost()(tab.rhs()).is_zero()) {
    result.status = LpStatus::infeasible;
    return result;
  }

  // Drive remaining (zero-valued) artificials out, dropping redundant rows.
  for (Index i = tab.rows() - 1; i >= 0; --i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < structural) continue;
    Index s = -1;
    for (Index j = 0; j < structural; ++j) {
      if (!tab.t()(i, j).is_zero()) {
        s = j;
        break;
      }
    }
    if (s >= 0) tab.pivot(i, s);
    else tab.drop_row(i);
  }

  // Phase two over structural columns only.
  RatVector phase2 = RatVector::Zero(structural + m);
  phase2.head(structural) = cost.head(structural);
  tab.set_cost(phase2);
  if (!tab.run(structural)) {
    result.status = LpStatus::unbounded;
    return result;
  }

  RatVector z = RatVector::Zero(structural);
  for (Index i = 0; i < tab.rows(); ++i) {
    const Index bi = tab.basis()[static_cast<std::size_t>(i)];
    if (bi < structural) z(bi) = tab.t()(i, tab.rhs());
  }
  result.status = LpStatus::optimal;
  result.solution = RatVector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    result.solution(j) = z(pos[static_cast<std::size_t>(j)]);
    if (neg[static_cast<std::size_t>(j)] >= 0) result.solution(j) -= z(neg[static_cast<std::size_t>(j)]);
  }
  result.optimum = 0;
  for (Index j = 0; j < n; ++j)
    if (!p.objective(j).is_zero()) result.optimum += p.objective(j) * result.solution(j);
  return result;
}

}  // namespace rumid
