#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steercert/matrix.hpp"

namespace steercert {

// Solver defaults. Distinct from the construction tolerances on purpose: a
// verdict at 1e-7 must never be confused with ingestion noise at 1e-9.
constexpr double kSolverTol = 1e-7;
constexpr int kSolverMaxIter = 50000;
constexpr double kBisectionTolT = 1e-4;

/// One deterministic response function x -> a. These are the extreme points
/// of the conditional distributions p(a|x, lambda), so hidden-variable
/// searches may range over them without loss of generality.
struct DeterministicStrategy {
  std::vector<int> outcome_for;  // outcome_for[x] = a

  int operator()(int x) const { return outcome_for.at(x); }
  /// Indicator D(a|x, lambda) = [lambda(x) = a].
  double d(int x, int a) const { return outcome_for.at(x) == a ? 1.0 : 0.0; }
};

/// All n^m strategies, ordered by the mixed-radix outcome-vector index
/// (first setting most significant). Throws when n^m would exceed 10^6.
std::vector<DeterministicStrategy> deterministic_strategies(int m, int n);

/// One linear term coeff * L * X_label * R inside a constraint sum. Missing
/// multipliers mean the identity; a label may appear in several terms.
struct ConstraintTerm {
  std::string label;
  double coeff = 1.0;
  std::optional<CMat> left;   // rows x dim(label)
  std::optional<CMat> right;  // dim(label) x rows
};

/// Affine equality sum_k term_k == rhs with a square Hermitian rhs.
struct Constraint {
  std::string name;
  std::vector<ConstraintTerm> terms;
  CMat rhs;
};

/// "Find PSD Hermitian blocks satisfying affine equalities." The uniform
/// encoding for joint-measurability, LHS-model and instrument searches.
class FeasibilityProblem {
 public:
  void add_block(const std::string& label, int dim);
  void add_constraint(std::string name, std::vector<ConstraintTerm> terms, CMat rhs);

  const std::vector<std::pair<std::string, int>>& blocks() const { return blocks_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int block_dim(const std::string& label) const;

 private:
  std::vector<std::pair<std::string, int>> blocks_;
  std::vector<Constraint> constraints_;
};

enum class FeasStatus { Feasible, Infeasible, Undecided };

struct FeasibilityVerdict {
  FeasStatus status = FeasStatus::Undecided;
  /// Present exactly when Feasible: PSD blocks meeting every constraint
  /// within tol.
  std::map<std::string, HermitianMatrix> witness;
  /// Minimal mixing toward the recorded anchor that restores feasibility;
  /// 0 when the problem was solved directly.
  double robustness = 0.0;
  double bracket_lo = 0.0;  // bisection bracket around robustness, when run
  double bracket_hi = 0.0;
  int iterations = 0;
  double residual = 0.0;  // affine residual of the final PSD iterate
  bool near_boundary = false;
  std::string diagnostics;
};

struct SolveOptions {
  double tol = kSolverTol;
  int max_iter = kSolverMaxIter;
  /// Step scale of the alternating projections; 1.0 is the plain method.
  double relaxation = 1.0;
  /// When the iteration stalls, certify infeasibility by bisecting the
  /// mixing parameter toward a feasible anchor. Probe solves switch this off
  /// to stay non-recursive.
  bool certify_infeasible = true;
  double tol_t = kBisectionTolT;
  /// Recorded for reproducibility; the solver itself has no randomized
  /// internals.
  std::uint64_t seed = 0;
};

/// Alternating projections between the constraint subspace and the PSD cone.
/// Feasible comes with a witness; Infeasible comes with a robustness bracket
/// certified by the internal anchor bisection; everything else is Undecided
/// with diagnostics.
FeasibilityVerdict solve(const FeasibilityProblem& problem, const SolveOptions& options = {});

struct BisectionResult {
  double t_star = 0.0;
  double lo = 0.0;  // largest t probed infeasible (t_star's bracket floor)
  double hi = 0.0;  // smallest t probed feasible (equals t_star)
  FeasibilityVerdict at_t_star;
};

/// Bisect a monotone family: infeasible below some threshold, feasible at
/// t_high. Returns the smallest verified-feasible t within tol_t. Throws if
/// the family is infeasible at t_high (invalid bracket) or proves
/// non-monotone on the probed grid.
BisectionResult robustness_bisection(const std::function<FeasibilityProblem(double)>& family,
                                     double t_low, double t_high, double tol_t,
                                     const SolveOptions& probe_options = {});

}  // namespace steercert
