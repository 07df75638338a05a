#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rumid::param {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Smooth map from an open box to R^dim, plus an optional full-model
/// evaluator returning every choice probability (flattened, see labels).
struct ParametricModel {
  std::string name;
  int dim = 0;
  VectorXd lower, upper;  // entries may be +-infinity; the box is open
  std::function<VectorXd(const VectorXd&)> submodel;
  std::function<VectorXd(const VectorXd&)> full;
  std::vector<std::string> full_labels;

  bool inside(const VectorXd& theta) const;
  /// Distance to the nearest face of the box (infinite faces ignored).
  double boundary_distance(const VectorXd& theta) const;
  void validate() const;
};

/// Central differences with step h * max(1, |theta_i|) per coordinate.
/// Throws rumid::DomainError if a probe point leaves the box.
MatrixXd jacobian(const ParametricModel& m, const VectorXd& theta, double h = 1e-6);

struct GridAxis {
  double lo = 0, hi = 0;
  int count = 1;
};

struct LocalPoint {
  VectorXd theta;
  double abs_det = 0;
};

struct LocalReport {
  std::vector<GridAxis> grid;
  double tol = 1e-10;
  std::vector<LocalPoint> points;
  double min_abs_det = 0;
  std::vector<VectorXd> witnesses;  // points with |det J| < tol
};

/// |det J| on the tensor grid; points below tol are local-failure witnesses.
LocalReport check_local(const ParametricModel& m, const std::vector<GridAxis>& grid, double tol = 1e-10,
                        double h = 1e-6);
LocalReport check_local(const ParametricModel& m, const std::vector<VectorXd>& points, double tol = 1e-10,
                        double h = 1e-6);

/// A parameter sequence leaving every compact subset of the box.
struct ProbeSequence {
  std::string label;
  std::vector<VectorXd> points;
};

/// For each coordinate and each face: move that coordinate toward the face
/// (geometrically, or doubling toward infinity), the others held at center.
std::vector<ProbeSequence> coordinate_rays(const ParametricModel& m, const VectorXd& center, int steps = 40);

enum class ImageBehavior { diverges, converges, undetermined };
const char* to_string(ImageBehavior b);

struct Trajectory {
  std::string label;
  std::vector<VectorXd> thetas;
  std::vector<VectorXd> images;
  ImageBehavior behavior = ImageBehavior::undetermined;
  std::optional<VectorXd> limit;
  std::optional<VectorXd> preimage;  // interior point mapping onto the limit
  double preimage_residual = 0;
};

struct ProperOptions {
  double converge_tol = 1e-7;   // relative change over the last steps
  double preimage_tol = 1e-9;   // residual for an accepted interior preimage
  double margin = 1e-3;         // minimum distance of that preimage to the boundary
  double diverge_norm = 1e8;
  std::vector<VectorXd> hints;  // starting points for the preimage search
  int restarts = 20;
  std::uint64_t seed = 1;
};

struct ProperReport {
  std::vector<Trajectory> trajectories;
  bool violation = false;
};

ProperReport properness_probe(const ParametricModel& m, const std::vector<ProbeSequence>& seqs,
                              const ProperOptions& opt = {});

enum class Verdict { no_violation_found, local_failure_witness, properness_violation_witness };
const char* to_string(Verdict v);

struct ProbeReport {
  LocalReport local;
  ProperReport proper;
  Verdict verdict = Verdict::no_violation_found;
};

Verdict verdict_of(const LocalReport& local, const ProperReport& proper);

struct CollisionOptions {
  int attempts = 1000;
  double tol = 1e-9;         // residual on the submodel and bound on the reported gap
  double separation = 1e-3;  // minimum sup-norm distance between the pair
  std::uint64_t seed = 1;
  double sample_span = 3.0;  // log-scale spread when a side of the box is infinite
};

struct Collision {
  VectorXd theta, theta_prime;
  double max_gap = 0;   // sup over all full-model probabilities (or submodel)
  double residual = 0;  // sup-norm submodel residual
};

/// Sup-norm gap between the two images, computed from scratch.
double image_gap(const ParametricModel& m, const VectorXd& a, const VectorXd& b);

/// Multi-start root finding on submodel(theta') = submodel(theta) with
/// theta' kept at least `separation` away from theta. Any returned pair has
/// been re-evaluated and its gap is below tol.
std::optional<Collision> collision_search(const ParametricModel& m, const CollisionOptions& opt = {});

/// Least-squares solve of submodel(theta) = target inside the box, started
/// at `start`. Returns the point and its sup-norm residual.
std::pair<VectorXd, double> solve_preimage(const ParametricModel& m, const VectorXd& target, const VectorXd& start);

// Built-in models.

/// Luce with weights w_1..w_K (w_0 = 1). Submodel: rho(x_i, X) / rho(x_0, X).
ParametricModel luce(int k);
/// Habit formation with theta = (v_1, c_1, ..., v_N, c_N), v_i, c_i > 1.
ParametricModel habit_submodel(int n);
ParametricModel habit_full(int n);
/// rho(x_i, A) for menus A containing x_0; theta as above.
double habit_rho(const VectorXd& theta, unsigned menu, int i);

enum class CurveVariant { printed, corrected };
/// Printed: (1+v)/(10 v^2) - 1/v. Corrected: 10(1+v)/v^2 - 1/v.
double habit_curve_c(double v, CurveVariant variant);
/// (v, c(v), ..., v, c(v)) with n pairs.
VectorXd habit_curve_point(double v, int n, CurveVariant variant);
/// (1+2v) / (v^2 + 10(1+v)).
double habit_curve_closed_form(double v);

/// Model from a name ("luce", "habit-submodel", "habit-full") and size.
ParametricModel builtin(const std::string& name, int size);

}  // namespace rumid::param
