#include "steercert/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "steercert/measurements.hpp"

namespace steercert {

namespace {

constexpr int kStallWindow = 500;
constexpr double kStallImprovement = 0.02;  // required relative progress per window
constexpr double kPinvRelThreshold = 1e-12;
constexpr double kTieZoneFactor = 10.0;  // t* within 10*tol of 0 -> near boundary

// ---- real parameterization of Hermitian blocks ------------------------------
//
// A d x d Hermitian matrix maps isometrically to d^2 reals: the diagonal,
// then (sqrt2*Re, sqrt2*Im) of each upper-triangle entry in row-major order.
// Frobenius distance equals Euclidean distance, so projecting onto the PSD
// cone commutes with the encoding.

int param_count(int d) { return d * d; }

void vec_block(const HermitianMatrix& x, double* out) {
  const int d = x.dim();
  const double s = std::sqrt(2.0);
  int pos = 0;
  for (int k = 0; k < d; ++k) out[pos++] = x(k, k).real();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      out[pos++] = s * x(i, j).real();
      out[pos++] = s * x(i, j).imag();
    }
}

HermitianMatrix unvec_block(const double* in, int d) {
  const double s = 1.0 / std::sqrt(2.0);
  CMat m(d, d);
  int pos = 0;
  for (int k = 0; k < d; ++k) m(k, k) = in[pos++];
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double re = in[pos++] * s;
      const double im = in[pos++] * s;
      m(i, j) = Complex(re, im);
      m(j, i) = Complex(re, -im);
    }
  return HermitianMatrix(m);
}

/// Sparse entries of the q-th basis element for dimension d.
struct BasisEntry {
  int u, v;
  Complex w;
};

std::vector<BasisEntry> basis_element(int q, int d) {
  const double s = 1.0 / std::sqrt(2.0);
  if (q < d) return {{q, q, Complex(1.0, 0.0)}};
  int pair = (q - d) / 2;
  const bool imag_part = ((q - d) % 2) == 1;
  for (int i = 0; i < d; ++i) {
    const int row_pairs = d - i - 1;
    if (pair < row_pairs) {
      const int j = i + 1 + pair;
      if (imag_part) return {{i, j, Complex(0.0, s)}, {j, i, Complex(0.0, -s)}};
      return {{i, j, Complex(s, 0.0)}, {j, i, Complex(s, 0.0)}};
    }
    pair -= row_pairs;
  }
  throw std::logic_error("basis_element: index out of range");
}

// ---- compiled problem --------------------------------------------------------

struct RealMat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  RealMat() = default;
  RealMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double get(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

void mat_vec(const RealMat& m, const std::vector<double>& x, std::vector<double>& out) {
  out.assign(m.rows, 0.0);
  for (int r = 0; r < m.rows; ++r) {
    const double* row = m.a.data() + static_cast<size_t>(r) * m.cols;
    double acc = 0.0;
    for (int c = 0; c < m.cols; ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct Compiled {
  std::vector<std::string> labels;
  std::vector<int> dims;
  std::vector<int> offsets;
  int total = 0;

  RealMat a;              // constraint rows x total parameters
  std::vector<double> b;  // right-hand side
  RealMat p;              // total x rows, the least-squares correction map A^T (A A^T)^+

  std::map<std::string, HermitianMatrix> unvec(const std::vector<double>& v) const {
    std::map<std::string, HermitianMatrix> out;
    for (size_t k = 0; k < labels.size(); ++k)
      out.emplace(labels[k], unvec_block(v.data() + offsets[k], dims[k]));
    return out;
  }
};

/// Pseudo-inverse correction map A^T (A A^T)^+ via the Hermitian eigensolver.
RealMat correction_map(const RealMat& a) {
  const int rows = a.rows, cols = a.cols;
  RealMat p(cols, rows);
  if (rows == 0) return p;

  CMat g(rows, rows);
  for (int r = 0; r < rows; ++r)
    for (int s = r; s < rows; ++s) {
      double acc = 0.0;
      const double* ra = a.a.data() + static_cast<size_t>(r) * cols;
      const double* sa = a.a.data() + static_cast<size_t>(s) * cols;
      for (int c = 0; c < cols; ++c) acc += ra[c] * sa[c];
      g(r, s) = acc;
      g(s, r) = acc;
    }
  const EigResult eig = eig_hermitian(HermitianMatrix(g));
  const double cutoff = kPinvRelThreshold * std::max(1.0, eig.values.empty() ? 0.0 : eig.values[0]);

  // G^+ = sum_k (1/lambda_k) u_k u_k^T over the numerically nonzero spectrum.
  RealMat gpinv(rows, rows);
  for (int k = 0; k < rows; ++k) {
    if (eig.values[k] <= cutoff) continue;
    const double inv = 1.0 / eig.values[k];
    for (int r = 0; r < rows; ++r) {
      const double ur = eig.vectors(r, k).real();
      if (ur == 0.0) continue;
      for (int s = 0; s < rows; ++s) gpinv.at(r, s) += inv * ur * eig.vectors(s, k).real();
    }
  }
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (int s = 0; s < rows; ++s) acc += a.get(s, c) * gpinv.get(s, r);
      p.at(c, r) = acc;
    }
  return p;
}

Compiled compile(const FeasibilityProblem& problem) {
  Compiled c;
  for (const auto& [label, dim] : problem.blocks()) {
    c.labels.push_back(label);
    c.dims.push_back(dim);
    c.offsets.push_back(c.total);
    c.total += param_count(dim);
  }
  std::map<std::string, int> index;
  for (size_t k = 0; k < c.labels.size(); ++k) index[c.labels[k]] = static_cast<int>(k);

  // Row count: pure constraints use the isometric encoding (d^2 rows), any
  // constraint with a sandwich term uses plain Re/Im rows for every entry.
  int rows = 0;
  std::vector<bool> pure;
  for (const Constraint& cons : problem.constraints()) {
    bool is_pure = true;
    for (const ConstraintTerm& t : cons.terms)
      if (t.left.has_value() || t.right.has_value()) is_pure = false;
    pure.push_back(is_pure);
    const int p = cons.rhs.rows();
    rows += is_pure ? p * p : 2 * p * p;
  }

  c.a = RealMat(rows, c.total);
  c.b.assign(rows, 0.0);

  int row_base = 0;
  for (size_t ci = 0; ci < problem.constraints().size(); ++ci) {
    const Constraint& cons = problem.constraints()[ci];
    const int p = cons.rhs.rows();
    if (pure[ci]) {
      // Both sides live in the isometric coordinates; each pure term is
      // coeff times the identity map between block and constraint coords.
      std::vector<double> rhs_coords(param_count(p));
      vec_block(HermitianMatrix(cons.rhs), rhs_coords.data());
      for (int q = 0; q < param_count(p); ++q) c.b[row_base + q] = rhs_coords[q];
      for (const ConstraintTerm& t : cons.terms) {
        const int off = c.offsets[index.at(t.label)];
        for (int q = 0; q < param_count(p); ++q) c.a.at(row_base + q, off + q) += t.coeff;
      }
      row_base += param_count(p);
    } else {
      for (int r = 0; r < p; ++r)
        for (int s = 0; s < p; ++s) {
          c.b[row_base + 2 * (r * p + s)] = cons.rhs(r, s).real();
          c.b[row_base + 2 * (r * p + s) + 1] = cons.rhs(r, s).imag();
        }
      for (const ConstraintTerm& t : cons.terms) {
        const int bi = index.at(t.label);
        const int d = c.dims[bi];
        const int off = c.offsets[bi];
        for (int q = 0; q < param_count(d); ++q) {
          for (const BasisEntry& e : basis_element(q, d)) {
            // F = L * basis * R restricted to this sparse entry.
            for (int r = 0; r < p; ++r) {
              const Complex lfac = t.left ? (*t.left)(r, e.u) : Complex(r == e.u ? 1.0 : 0.0);
              if (lfac == Complex(0.0)) continue;
              for (int s = 0; s < p; ++s) {
                const Complex rfac = t.right ? (*t.right)(e.v, s) : Complex(e.v == s ? 1.0 : 0.0);
                if (rfac == Complex(0.0)) continue;
                const Complex f = lfac * e.w * rfac * t.coeff;
                c.a.at(row_base + 2 * (r * p + s), off + q) += f.real();
                c.a.at(row_base + 2 * (r * p + s) + 1, off + q) += f.imag();
              }
            }
          }
        }
      }
      row_base += 2 * p * p;
    }
  }

  c.p = correction_map(c.a);
  return c;
}

// ---- alternating projections -------------------------------------------------

struct ApResult {
  bool feasible = false;
  bool stalled = false;
  int iterations = 0;
  double residual = 0.0;            // residual of the returned PSD iterate
  std::vector<double> v;            // final PSD iterate
  double best_residual = 0.0;
  std::vector<double> best_v;       // PSD iterate with the smallest residual
};

ApResult run_ap(const Compiled& c, const std::vector<double>& rhs, const std::vector<double>* warm,
                double tol, int max_iter, double relaxation) {
  ApResult res;
  std::vector<double> v = warm ? *warm : std::vector<double>(c.total, 0.0);
  std::vector<double> av, diff(c.a.rows), corr;
  res.best_residual = std::numeric_limits<double>::infinity();
  double window_best = std::numeric_limits<double>::infinity();
  const double stall_floor = kTieZoneFactor * tol;

  for (int iter = 0; iter < max_iter; ++iter) {
    res.iterations = iter + 1;
    mat_vec(c.a, v, av);
    for (int r = 0; r < c.a.rows; ++r) diff[r] = av[r] - rhs[r];
    const double r = norm2(diff);
    if (r < res.best_residual) {
      res.best_residual = r;
      res.best_v = v;
    }
    if (r <= tol) {
      res.feasible = true;
      res.residual = r;
      res.v = std::move(v);
      return res;
    }
    if ((iter + 1) % kStallWindow == 0) {
      if (res.best_residual > (1.0 - kStallImprovement) * window_best &&
          res.best_residual > stall_floor) {
        res.stalled = true;
        break;
      }
      window_best = res.best_residual;
    }

    // Relaxed projection onto the constraint subspace, then onto the cone,
    // so the iterate stays PSD and the residual stays meaningful.
    mat_vec(c.p, diff, corr);
    for (int k = 0; k < c.total; ++k) v[k] -= relaxation * corr[k];
    for (size_t bl = 0; bl < c.labels.size(); ++bl) {
      const HermitianMatrix x = unvec_block(v.data() + c.offsets[bl], c.dims[bl]);
      vec_block(project_psd(x), v.data() + c.offsets[bl]);
    }
  }

  res.residual = res.best_residual;
  res.v = res.best_v;
  return res;
}

std::string format_double(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

}  // namespace

// ---- public API ----------------------------------------------------------------

std::vector<DeterministicStrategy> deterministic_strategies(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("deterministic_strategies: need m, n >= 1");
  if (std::pow(static_cast<double>(n), m) > 1e6)
    throw std::invalid_argument("deterministic_strategies: n^m exceeds the 10^6 guard");
  int count = 1;
  for (int x = 0; x < m; ++x) count *= n;
  std::vector<DeterministicStrategy> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back({outcome_vector_from_index(k, m, n)});
  return out;
}

void FeasibilityProblem::add_block(const std::string& label, int dim) {
  if (dim < 1) throw std::invalid_argument("FeasibilityProblem: block dim must be positive");
  for (const auto& [existing, _] : blocks_)
    if (existing == label) throw std::invalid_argument("FeasibilityProblem: duplicate block " + label);
  blocks_.emplace_back(label, dim);
}

int FeasibilityProblem::block_dim(const std::string& label) const {
  for (const auto& [existing, dim] : blocks_)
    if (existing == label) return dim;
  throw std::invalid_argument("FeasibilityProblem: unknown block " + label);
}

void FeasibilityProblem::add_constraint(std::string name, std::vector<ConstraintTerm> terms,
                                        CMat rhs) {
  if (terms.empty()) throw std::invalid_argument("constraint " + name + ": no terms");
  if (rhs.rows() != rhs.cols()) throw std::invalid_argument("constraint " + name + ": rhs not square");
  if (frobenius_dist(rhs, rhs.adjoint()) > 2e-9)
    throw std::invalid_argument("constraint " + name + ": rhs not Hermitian");
  for (const ConstraintTerm& t : terms) {
    const int dim = block_dim(t.label);  // throws on undeclared labels
    if (!std::isfinite(t.coeff))
      throw std::invalid_argument("constraint " + name + ": non-finite coefficient");
    const int p = t.left ? t.left->rows() : dim;
    const int q = t.right ? t.right->cols() : dim;
    if (t.left && t.left->cols() != dim)
      throw std::invalid_argument("constraint " + name + ": left multiplier shape mismatch");
    if (t.right && t.right->rows() != dim)
      throw std::invalid_argument("constraint " + name + ": right multiplier shape mismatch");
    if (p != rhs.rows() || q != rhs.cols())
      throw std::invalid_argument("constraint " + name + ": term shape does not match rhs");
  }
  constraints_.push_back({std::move(name), std::move(terms), std::move(rhs)});
}

FeasibilityVerdict solve(const FeasibilityProblem& problem, const SolveOptions& options) {
  if (options.tol <= 0 || options.max_iter < 1)
    throw std::invalid_argument("solve: bad options");
  const Compiled c = compile(problem);

  FeasibilityVerdict verdict;
  const ApResult main = run_ap(c, c.b, nullptr, options.tol, options.max_iter, options.relaxation);
  verdict.iterations = main.iterations;
  verdict.residual = main.residual;

  if (main.feasible) {
    verdict.status = FeasStatus::Feasible;
    verdict.witness = c.unvec(main.v);
    return verdict;
  }
  if (!main.stalled) {
    verdict.status = FeasStatus::Undecided;
    verdict.diagnostics = "iteration budget exhausted without a stall; residual " +
                          format_double(main.residual) + " still improving";
    return verdict;
  }
  if (!options.certify_infeasible) {
    verdict.status = FeasStatus::Undecided;
    verdict.diagnostics = "stalled at residual " + format_double(main.best_residual) +
                          " (probe mode, no infeasibility certification)";
    return verdict;
  }

  // Anchor bisection: mix the right-hand side toward one this iterate
  // satisfies exactly. The family is feasible at t = 1 by construction and
  // monotone by convexity, so the smallest feasible t measures how far the
  // original constraints sit from the PSD-realizable set.
  std::vector<double> anchor;
  mat_vec(c.a, main.best_v, anchor);
  std::vector<double> rhs_t(c.b.size());
  const auto mix = [&](double t) {
    for (size_t r = 0; r < c.b.size(); ++r) rhs_t[r] = (1.0 - t) * c.b[r] + t * anchor[r];
  };
  const int probe_budget = std::max(5000, options.max_iter / 5);

  double lo = 0.0, hi = 1.0;
  int probe_iters = 0;
  while (hi - lo > options.tol_t) {
    const double mid = 0.5 * (lo + hi);
    mix(mid);
    const ApResult probe =
        run_ap(c, rhs_t, &main.best_v, options.tol, probe_budget, options.relaxation);
    probe_iters += probe.iterations;
    if (probe.feasible)
      hi = mid;
    else
      lo = mid;
  }

  verdict.robustness = hi;
  verdict.bracket_lo = lo;
  verdict.bracket_hi = hi;
  verdict.iterations = main.iterations + probe_iters;
  verdict.near_boundary = hi <= kTieZoneFactor * options.tol;
  if (verdict.near_boundary) {
    verdict.status = FeasStatus::Undecided;
    verdict.diagnostics = "anchor mixing t* = " + format_double(hi) +
                          " inside the tie zone; too close to call";
  } else {
    verdict.status = FeasStatus::Infeasible;
    verdict.diagnostics = "infeasible: anchor mixing t* = " + format_double(hi) +
                          " with bracket (" + format_double(lo) + ", " + format_double(hi) + "]";
  }
  return verdict;
}

BisectionResult robustness_bisection(const std::function<FeasibilityProblem(double)>& family,
                                     double t_low, double t_high, double tol_t,
                                     const SolveOptions& probe_options) {
  if (!(t_low < t_high)) throw std::invalid_argument("robustness_bisection: need t_low < t_high");
  if (tol_t <= 0) throw std::invalid_argument("robustness_bisection: tol_t must be positive");
  SolveOptions probe = probe_options;
  probe.certify_infeasible = false;

  FeasibilityVerdict top = solve(family(t_high), probe);
  if (top.status != FeasStatus::Feasible)
    throw std::runtime_error("robustness_bisection: family not feasible at t_high — invalid bracket");

  FeasibilityVerdict bottom = solve(family(t_low), probe);
  if (bottom.status == FeasStatus::Feasible) {
    BisectionResult res;
    res.t_star = t_low;
    res.lo = t_low;
    res.hi = t_low;
    res.at_t_star = std::move(bottom);
    return res;
  }

  double lo = t_low, hi = t_high;
  FeasibilityVerdict best = std::move(top);
  while (hi - lo > tol_t) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityVerdict probe_verdict = solve(family(mid), probe);
    if (probe_verdict.status == FeasStatus::Feasible) {
      hi = mid;
      best = std::move(probe_verdict);
    } else {
      lo = mid;
    }
  }

  BisectionResult res;
  res.t_star = hi;
  res.lo = lo;
  res.hi = hi;
  res.at_t_star = std::move(best);
  return res;
}

}  // namespace steercert
