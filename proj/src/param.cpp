#include "rumid/param.hpp"

#include "rumid/error.hpp"

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <cmath>
#include <limits>
#include <random>

namespace rumid::param {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

bool ParametricModel::inside(const VectorXd& theta) const {
  if (theta.size() != dim) return false;
  for (int i = 0; i < dim; ++i) {
    if (!std::isfinite(theta(i))) return false;
    if (!(theta(i) > lower(i) && theta(i) < upper(i))) return false;
  }
  return true;
}

double ParametricModel::boundary_distance(const VectorXd& theta) const {
  double d = kInf;
  for (int i = 0; i < dim; ++i) {
    if (std::isfinite(lower(i))) d = std::min(d, theta(i) - lower(i));
    if (std::isfinite(upper(i))) d = std::min(d, upper(i) - theta(i));
  }
  return d;
}

void ParametricModel::validate() const {
  if (dim < 1) throw InvalidInput("model dimension must be positive");
  if (lower.size() != dim || upper.size() != dim) throw InvalidInput("box bounds do not match the dimension");
  for (int i = 0; i < dim; ++i)
    if (!(lower(i) < upper(i))) throw InvalidInput("empty box in coordinate " + std::to_string(i));
  if (!submodel) throw InvalidInput("model has no submodel evaluator");
}

MatrixXd jacobian(const ParametricModel& m, const VectorXd& theta, double h) {
  if (!m.inside(theta)) throw DomainError("jacobian requested outside the parameter box");
  const VectorXd y0 = m.submodel(theta);
  MatrixXd j(y0.size(), m.dim);
  for (int i = 0; i < m.dim; ++i) {
    const double step = h * std::max(1.0, std::abs(theta(i)));
    VectorXd up = theta, down = theta;
    up(i) += step;
    down(i) -= step;
    if (!m.inside(up) || !m.inside(down)) throw DomainError("finite-difference step leaves the parameter box");
    j.col(i) = (m.submodel(up) - m.submodel(down)) / (2 * step);
  }
  return j;
}

LocalReport check_local(const ParametricModel& m, const std::vector<VectorXd>& points, double tol, double h) {
  LocalReport r;
  r.tol = tol;
  r.min_abs_det = kInf;
  for (const auto& theta : points) {
    const MatrixXd j = jacobian(m, theta, h);
    if (j.rows() != j.cols()) throw InvalidInput("submodel output dimension differs from the parameter dimension");
    const double d = std::abs(j.determinant());
    r.points.push_back({theta, d});
    r.min_abs_det = std::min(r.min_abs_det, d);
    if (d < tol) r.witnesses.push_back(theta);
  }
  return r;
}

LocalReport check_local(const ParametricModel& m, const std::vector<GridAxis>& grid, double tol, double h) {
  m.validate();
  if (static_cast<int>(grid.size()) != m.dim) throw InvalidInput("grid needs one axis per parameter");
  std::vector<VectorXd> points;
  std::vector<int> idx(grid.size(), 0);
  for (const auto& a : grid)
    if (a.count < 1) throw InvalidInput("grid axis with no points");
  for (;;) {
    VectorXd theta(m.dim);
    for (int i = 0; i < m.dim; ++i) {
      const auto& a = grid[static_cast<std::size_t>(i)];
      theta(i) = a.count == 1 ? a.lo : a.lo + (a.hi - a.lo) * idx[static_cast<std::size_t>(i)] / (a.count - 1);
    }
    points.push_back(theta);
    int i = 0;
    while (i < m.dim && ++idx[static_cast<std::size_t>(i)] == grid[static_cast<std::size_t>(i)].count) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == m.dim) break;
  }
  LocalReport r = check_local(m, points, tol, h);
  r.grid = grid;
  return r;
}

std::vector<ProbeSequence> coordinate_rays(const ParametricModel& m, const VectorXd& center, int steps) {
  m.validate();
  if (!m.inside(center)) throw DomainError("ray center lies outside the parameter box");
  std::vector<ProbeSequence> out;
  for (int i = 0; i < m.dim; ++i) {
    for (int side = 0; side < 2; ++side) {
      const double face = side == 0 ? m.lower(i) : m.upper(i);
      ProbeSequence s;
      s.label = "coordinate " + std::to_string(i) + (side == 0 ? " to lower" : " to upper");
      for (int n = 1; n <= steps; ++n) {
        VectorXd p = center;
        const double scale = std::ldexp(1.0, -n);
        if (std::isfinite(face)) p(i) = face + (center(i) - face) * scale;
        else p(i) = center(i) + (side == 0 ? -1.0 : 1.0) / scale;
        s.points.push_back(p);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

const char* to_string(ImageBehavior b) {
  switch (b) {
    case ImageBehavior::diverges: return "diverges";
    case ImageBehavior::converges: return "converges";
    case ImageBehavior::undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::no_violation_found: return "no-violation-found";
    case Verdict::local_failure_witness: return "local-failure-witness";
    case Verdict::properness_violation_witness: return "properness-violation-witness";
  }
  return "?";
}

Verdict verdict_of(const LocalReport& local, const ProperReport& proper) {
  if (!local.witnesses.empty()) return Verdict::local_failure_witness;
  if (proper.violation) return Verdict::properness_violation_witness;
  return Verdict::no_violation_found;
}

namespace {

// Unconstrained coordinates for the open box.
double to_box(double z, double lo, double hi) {
  const bool fl = std::isfinite(lo), fh = std::isfinite(hi);
  if (fl && fh) return lo + (hi - lo) / (1 + std::exp(-z));
  if (fl) return lo + std::exp(z);
  if (fh) return hi - std::exp(z);
  return z;
}

double from_box(double t, double lo, double hi) {
  const bool fl = std::isfinite(lo), fh = std::isfinite(hi);
  if (fl && fh) {
    const double s = (t - lo) / (hi - lo);
    return std::log(s / (1 - s));
  }
  if (fl) return std::log(t - lo);
  if (fh) return std::log(hi - t);
  return t;
}

VectorXd to_box(const ParametricModel& m, const VectorXd& z) {
  VectorXd t(z.size());
  for (int i = 0; i < z.size(); ++i) t(i) = to_box(z(i), m.lower(i), m.upper(i));
  return t;
}

VectorXd from_box(const ParametricModel& m, const VectorXd& t) {
  VectorXd z(t.size());
  for (int i = 0; i < t.size(); ++i) z(i) = from_box(t(i), m.lower(i), m.upper(i));
  return z;
}

struct ResidualFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = VectorXd;
  using ValueType = VectorXd;
  using JacobianType = MatrixXd;

  const ParametricModel* model;
  VectorXd target;

  int inputs() const { return model->dim; }
  int values() const { return static_cast<int>(target.size()); }
  int operator()(const VectorXd& z, VectorXd& fvec) const {
    const VectorXd t = to_box(*model, z);
    if (!model->inside(t)) {
      fvec = VectorXd::Constant(target.size(), 1e6);
      return 0;
    }
    fvec = model->submodel(t) - target;
    for (int i = 0; i < fvec.size(); ++i)
      if (!std::isfinite(fvec(i))) fvec(i) = 1e6;
    return 0;
  }
};

// Samples a point in the box: uniform on bounded sides, log-spread from a
// finite face otherwise.
VectorXd sample_box(const ParametricModel& m, std::mt19937_64& rng, double span) {
  std::uniform_real_distribution<double> unit(0.0, 1.0), spread(-span, span);
  VectorXd t(m.dim);
  for (int i = 0; i < m.dim; ++i) {
    const double lo = m.lower(i), hi = m.upper(i);
    if (std::isfinite(lo) && std::isfinite(hi)) t(i) = lo + (hi - lo) * (0.02 + 0.96 * unit(rng));
    else if (std::isfinite(lo)) t(i) = lo + std::exp(spread(rng));
    else if (std::isfinite(hi)) t(i) = hi - std::exp(spread(rng));
    else t(i) = spread(rng) * 3;
  }
  return t;
}

}  // namespace

std::pair<VectorXd, double> solve_preimage(const ParametricModel& m, const VectorXd& target, const VectorXd& start) {
  if (!m.inside(start)) throw DomainError("preimage search must start inside the parameter box");
  ResidualFunctor f{&m, target};
  Eigen::NumericalDiff<ResidualFunctor, Eigen::Central> nd(f);
  Eigen::LevenbergMarquardt<decltype(nd)> lm(nd);
  lm.parameters.maxfev = 4000;
  lm.parameters.xtol = 1e-15;
  lm.parameters.ftol = 1e-15;
  VectorXd z = from_box(m, start);
  lm.minimize(z);
  const VectorXd t = to_box(m, z);
  if (!m.inside(t)) return {t, kInf};
  return {t, (m.submodel(t) - target).lpNorm<Eigen::Infinity>()};
}

ProperReport properness_probe(const ParametricModel& m, const std::vector<ProbeSequence>& seqs,
                              const ProperOptions& opt) {
  m.validate();
  ProperReport report;
  std::mt19937_64 rng(opt.seed);
  for (const auto& s : seqs) {
    Trajectory tr;
    tr.label = s.label;
    tr.thetas = s.points;
    bool blown = false;
    for (const auto& p : s.points) {
      if (!m.inside(p)) throw DomainError("probe sequence \"" + s.label + "\" leaves the parameter box");
      VectorXd y = m.submodel(p);
      for (int i = 0; i < y.size(); ++i) blown = blown || !std::isfinite(y(i));
      if (!blown && y.lpNorm<Eigen::Infinity>() > opt.diverge_norm) blown = true;
      tr.images.push_back(std::move(y));
    }
    if (blown) tr.behavior = ImageBehavior::diverges;
    else if (tr.images.size() >= 3) {
      const auto& a = tr.images[tr.images.size() - 1];
      const auto& b = tr.images[tr.images.size() - 2];
      const auto& c = tr.images[tr.images.size() - 3];
      const double scale = std::max(1.0, a.lpNorm<Eigen::Infinity>());
      const double d1 = (a - b).lpNorm<Eigen::Infinity>(), d2 = (b - c).lpNorm<Eigen::Infinity>();
      if (d1 <= opt.converge_tol * scale && d2 <= 4 * opt.converge_tol * scale) {
        tr.behavior = ImageBehavior::converges;
        tr.limit = a;
      } else if (a.lpNorm<Eigen::Infinity>() > 2 * b.lpNorm<Eigen::Infinity>()) {
        tr.behavior = ImageBehavior::diverges;
      }
    }
    if (tr.limit) {
      std::vector<VectorXd> starts = opt.hints;
      for (int r = 0; r < opt.restarts; ++r) starts.push_back(sample_box(m, rng, 3.0));
      for (const auto& st : starts) {
        if (!m.inside(st)) continue;
        auto [t, res] = solve_preimage(m, *tr.limit, st);
        if (res <= opt.preimage_tol && m.inside(t) && m.boundary_distance(t) >= opt.margin) {
          tr.preimage = t;
          tr.preimage_residual = res;
          report.violation = true;
          break;
        }
      }
    }
    report.trajectories.push_back(std::move(tr));
  }
  return report;
}

double image_gap(const ParametricModel& m, const VectorXd& a, const VectorXd& b) {
  if (m.full) return (m.full(a) - m.full(b)).lpNorm<Eigen::Infinity>();
  return (m.submodel(a) - m.submodel(b)).lpNorm<Eigen::Infinity>();
}

std::optional<Collision> collision_search(const ParametricModel& m, const CollisionOptions& opt) {
  m.validate();
  std::mt19937_64 rng(opt.seed);
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    const VectorXd theta = sample_box(m, rng, opt.sample_span);
    const VectorXd start = sample_box(m, rng, opt.sample_span);
    if (!m.inside(theta) || !m.inside(start)) continue;
    const VectorXd y = m.submodel(theta);
    auto [t, res] = solve_preimage(m, y, start);
    if (!(res <= opt.tol)) continue;
    if ((t - theta).lpNorm<Eigen::Infinity>() <= opt.separation) continue;
    const double gap = image_gap(m, theta, t);
    if (gap <= opt.tol) return Collision{theta, t, gap, res};
  }
  return std::nullopt;
}

ParametricModel luce(int k) {
  if (k < 1) throw InvalidInput("Luce model needs at least one weight");
  ParametricModel m;
  m.name = "luce";
  m.dim = k;
  m.lower = VectorXd::Zero(k);
  m.upper = VectorXd::Constant(k, kInf);
  const unsigned full = (1u << (k + 1)) - 1;
  auto rho = [](const VectorXd& w, unsigned menu, int i) {
    double den = 0;
    for (int j = 0; j <= w.size(); ++j)
      if (menu >> j & 1u) den += j == 0 ? 1.0 : w(j - 1);
    return (i == 0 ? 1.0 : w(i - 1)) / den;
  };
  m.submodel = [k, full, rho](const VectorXd& w) {
    VectorXd out(k);
    const double base = rho(w, full, 0);
    for (int i = 1; i <= k; ++i) out(i - 1) = rho(w, full, i) / base;
    return out;
  };
  m.full = [k, full, rho](const VectorXd& w) {
    std::vector<double> vals;
    for (unsigned menu = 1; menu <= full; ++menu)
      for (int i = 0; i <= k; ++i)
        if (menu >> i & 1u) vals.push_back(rho(w, menu, i));
    return VectorXd(Eigen::Map<VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size())));
  };
  for (unsigned menu = 1; menu <= full; ++menu) {
    std::string key;
    for (int i = 0; i <= k; ++i)
      if (menu >> i & 1u) key += (key.empty() ? "" : ",") + std::string("x") + std::to_string(i);
    for (int i = 0; i <= k; ++i)
      if (menu >> i & 1u) m.full_labels.push_back("x" + std::to_string(i) + "|{" + key + "}");
  }
  return m;
}

double habit_rho(const VectorXd& theta, unsigned menu, int i) {
  const int n = static_cast<int>(theta.size() / 2);
  auto v = [&](int j) { return j == 0 ? 1.0 : theta(2 * (j - 1)); };
  auto c = [&](int j) { return j == 0 ? 1.0 : theta(2 * (j - 1) + 1); };
  auto weight = [&](int j) {
    double others = 0;
    for (int l = 0; l <= n; ++l)
      if (l != j && (menu >> l & 1u)) others += v(l);
    return v(j) * (others + v(j) * c(j));
  };
  double den = 0;
  for (int j = 0; j <= n; ++j)
    if (menu >> j & 1u) den += weight(j);
  return weight(i) / den;
}

namespace {

ParametricModel habit_base(int n) {
  if (n < 1) throw InvalidInput("habit model needs at least one alternative besides the outside option");
  ParametricModel m;
  m.dim = 2 * n;
  m.lower = VectorXd::Ones(2 * n);
  m.upper = VectorXd::Constant(2 * n, kInf);
  m.submodel = [n](const VectorXd& th) {
    VectorXd out(2 * n);
    for (int i = 1; i <= n; ++i) {
      const unsigned pair = 1u | (1u << i);
      out(i - 1) = habit_rho(th, pair, 0) / habit_rho(th, pair, i);
      const int next = i == n ? 1 : i + 1;
      const unsigned triple = 1u | (1u << i) | (1u << next);
      out(n + i - 1) = habit_rho(th, triple, 0) / habit_rho(th, triple, i);
    }
    return out;
  };
  m.full = [n](const VectorXd& th) {
    std::vector<double> vals;
    for (unsigned rest = 0; rest < (1u << n); ++rest) {
      const unsigned menu = 1u | (rest << 1);
      for (int i = 0; i <= n; ++i)
        if (menu >> i & 1u) vals.push_back(habit_rho(th, menu, i));
    }
    return VectorXd(Eigen::Map<VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size())));
  };
  for (unsigned rest = 0; rest < (1u << n); ++rest) {
    const unsigned menu = 1u | (rest << 1);
    std::string key;
    for (int i = 0; i <= n; ++i)
      if (menu >> i & 1u) key += (key.empty() ? "" : ",") + std::string("x") + std::to_string(i);
    for (int i = 0; i <= n; ++i)
      if (menu >> i & 1u) m.full_labels.push_back("x" + std::to_string(i) + "|{" + key + "}");
  }
  return m;
}

}  // namespace

ParametricModel habit_submodel(int n) {
  ParametricModel m = habit_base(n);
  m.name = "habit-submodel";
  m.full = nullptr;
  m.full_labels.clear();
  return m;
}

ParametricModel habit_full(int n) {
  ParametricModel m = habit_base(n);
  m.name = "habit-full";
  return m;
}

double habit_curve_c(double v, CurveVariant variant) {
  if (variant == CurveVariant::printed) return (1 + v) / (10 * v * v) - 1 / v;
  return 10 * (1 + v) / (v * v) - 1 / v;
}

VectorXd habit_curve_point(double v, int n, CurveVariant variant) {
  VectorXd t(2 * n);
  for (int i = 0; i < n; ++i) {
    t(2 * i) = v;
    t(2 * i + 1) = habit_curve_c(v, variant);
  }
  return t;
}

double habit_curve_closed_form(double v) { return (1 + 2 * v) / (v * v + 10 * (1 + v)); }

ParametricModel builtin(const std::string& name, int size) {
  if (name == "luce") return luce(size);
  if (name == "habit-submodel") return habit_submodel(size);
  if (name == "habit-full") return habit_full(size);
  throw InvalidInput("unknown built-in model \"" + name + "\"");
}

}  // namespace rumid::param
