#include "steercert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace steercert {

namespace {

std::string block_label(int k) { return "G" + std::to_string(k); }

/// Inverse square root of a positive definite matrix via its spectral
/// decomposition. Refuses matrices whose smallest eigenvalue sits below
/// `floor`, because the congruence would then amplify solver noise instead of
/// absorbing it.
HermitianMatrix inv_sqrt(const HermitianMatrix& t, double floor, const char* where) {
  const EigResult eig = eig_hermitian(t);
  const int d = t.dim();
  if (eig.values.back() < floor) {
    std::ostringstream msg;
    msg << where << ": witness normalizer has eigenvalue " << eig.values.back()
        << " below the safe floor " << floor;
    throw std::runtime_error(msg.str());
  }
  CMat w(d, d);
  for (int k = 0; k < d; ++k) {
    const double s = 1.0 / std::sqrt(eig.values[k]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) w(i, j) += s * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return HermitianMatrix(w);
}

/// w x w for Hermitian w: the PSD-preserving congruence used to polish
/// solver witnesses onto exact completeness/trace-preservation manifolds.
HermitianMatrix congruence(const HermitianMatrix& w, const HermitianMatrix& x) {
  const CMat wm = w.mat();
  return HermitianMatrix(wm * x.mat() * wm);
}

/// Parent-POVM search: one PSD block per outcome vector, elements summing to
/// the identity with the per-setting marginals pinned to the input POVMs.
FeasibilityProblem joint_povm_problem(const MeasurementAssemblage& ma) {
  const int d = ma.dim();
  const int m = ma.settings();
  const int n = ma.outcomes();
  const auto strategies = deterministic_strategies(m, n);
  const int count = static_cast<int>(strategies.size());

  FeasibilityProblem p;
  for (int k = 0; k < count; ++k) p.add_block(block_label(k), d);

  std::vector<ConstraintTerm> complete;
  complete.reserve(count);
  for (int k = 0; k < count; ++k) complete.push_back({block_label(k), 1.0, {}, {}});
  p.add_constraint("completeness", complete, CMat::identity(d));

  for (int x = 0; x < m; ++x)
    for (int a = 0; a < n; ++a) {
      std::vector<ConstraintTerm> terms;
      for (int k = 0; k < count; ++k)
        if (strategies[k](x) == a) terms.push_back({block_label(k), 1.0, {}, {}});
      p.add_constraint("marginal(" + std::to_string(x) + "," + std::to_string(a) + ")", terms,
                       ma.element(x, a).mat());
    }
  return p;
}

/// Hidden-state search: one PSD block per deterministic strategy, with
/// sum_k D(a|x,k) sigma_k pinned to each assemblage block.
FeasibilityProblem lhs_problem(const Assemblage& assemblage,
                               const std::vector<DeterministicStrategy>& strategies) {
  const int d = assemblage.dim_b();
  const int count = static_cast<int>(strategies.size());

  FeasibilityProblem p;
  for (int k = 0; k < count; ++k) p.add_block(block_label(k), d);

  for (int x = 0; x < assemblage.settings(); ++x)
    for (int a = 0; a < assemblage.outcomes(); ++a) {
      std::vector<ConstraintTerm> terms;
      for (int k = 0; k < count; ++k)
        if (strategies[k](x) == a) terms.push_back({block_label(k), 1.0, {}, {}});
      p.add_constraint("block(" + std::to_string(x) + "," + std::to_string(a) + ")", terms,
                       assemblage.block(x, a).mat());
    }
  return p;
}

double white_noise_threshold(const std::function<FeasibilityProblem(double)>& family,
                             const SolveOptions& options) {
  SolveOptions probe = options;
  probe.certify_infeasible = false;
  return robustness_bisection(family, 0.0, 1.0, options.tol_t, probe).t_star;
}

void fill_solver_fields(CertReport& rep, const FeasibilityVerdict& v) {
  rep.residual = v.residual;
  rep.iterations = v.iterations;
  rep.near_boundary = v.near_boundary;
  rep.diagnostics = v.diagnostics;
}

double vec_norm(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace

LhsModel::LhsModel(int settings, int outcomes, std::vector<HermitianMatrix> states)
    : m_(settings),
      n_(outcomes),
      strategies_(deterministic_strategies(settings, outcomes)),
      states_(std::move(states)) {
  if (states_.size() != strategies_.size()) {
    std::ostringstream msg;
    msg << "LhsModel: expected " << strategies_.size() << " hidden states, got " << states_.size();
    throw std::invalid_argument(msg.str());
  }
  const int d = states_.front().dim();
  double total = 0.0;
  for (const HermitianMatrix& s : states_) {
    if (s.dim() != d) throw std::invalid_argument("LhsModel: mixed state dimensions");
    if (min_eig(s) < -kLhsPsdTol)
      throw std::invalid_argument("LhsModel: hidden state not PSD within tolerance");
    total += s.trace();
  }
  if (std::abs(total - 1.0) > kLhsTraceTol)
    throw std::invalid_argument("LhsModel: hidden-state traces do not sum to 1");
}

HermitianMatrix LhsModel::reproduce(int x, int a) const {
  HermitianMatrix sum(dim());
  for (int k = 0; k < count(); ++k)
    if (strategies_[k](x) == a) sum += states_[k];
  return sum;
}

double LhsModel::reproduction_residual(const Assemblage& target) const {
  if (target.settings() != m_ || target.outcomes() != n_ || target.dim_b() != dim())
    throw std::invalid_argument("LhsModel: target assemblage shape mismatch");
  double worst = 0.0;
  for (int x = 0; x < m_; ++x)
    for (int a = 0; a < n_; ++a)
      worst = std::max(worst, frobenius_dist(reproduce(x, a), target.block(x, a)));
  return worst;
}

double reconstruction_residual(const InstrumentDecomposition& dec, const ChannelAssemblage& ca) {
  if (dec.instrument.dim_in() != ca.dim_in() || dec.instrument.dim_out() != ca.dim_out())
    throw std::invalid_argument("reconstruction_residual: instrument/assemblage dim mismatch");
  if (dec.strategies.size() != static_cast<size_t>(dec.instrument.branch_count()))
    throw std::invalid_argument("reconstruction_residual: strategy/branch count mismatch");
  if (dec.strategies.empty() ||
      static_cast<int>(dec.strategies.front().outcome_for.size()) != ca.settings())
    throw std::invalid_argument("reconstruction_residual: strategy/setting count mismatch");

  const int dim = ca.dim_in() * ca.dim_out();
  double worst = 0.0;
  for (int x = 0; x < ca.settings(); ++x)
    for (int a = 0; a < ca.outcomes(); ++a) {
      HermitianMatrix sum(dim);
      for (int k = 0; k < dec.instrument.branch_count(); ++k)
        if (dec.strategies[k](x) == a) sum += dec.instrument.branch(k);
      worst = std::max(worst, frobenius_dist(sum, ca.block(x, a)));
    }
  return worst;
}

MeasurementAssemblage white_noise_mix(const MeasurementAssemblage& ma, double t) {
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("white_noise_mix: t outside [0,1]");
  const int d = ma.dim();
  std::vector<Povm> povms;
  povms.reserve(ma.settings());
  for (int x = 0; x < ma.settings(); ++x) {
    std::vector<HermitianMatrix> els;
    els.reserve(ma.outcomes());
    for (int a = 0; a < ma.outcomes(); ++a) {
      HermitianMatrix e = ma.element(x, a);
      e *= 1.0 - t;
      HermitianMatrix noise = HermitianMatrix::identity(d);
      noise *= t * ma.element(x, a).trace() / d;
      e += noise;
      els.push_back(std::move(e));
    }
    povms.emplace_back(std::move(els));
  }
  return MeasurementAssemblage(std::move(povms));
}

Assemblage white_noise_mix(const Assemblage& assemblage, double t) {
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("white_noise_mix: t outside [0,1]");
  const int d = assemblage.dim_b();
  std::vector<std::vector<HermitianMatrix>> blocks(assemblage.settings());
  for (int x = 0; x < assemblage.settings(); ++x) {
    blocks[x].reserve(assemblage.outcomes());
    for (int a = 0; a < assemblage.outcomes(); ++a) {
      HermitianMatrix b = assemblage.block(x, a);
      b *= 1.0 - t;
      HermitianMatrix noise = HermitianMatrix::identity(d);
      noise *= t * assemblage.prob(x, a) / d;
      b += noise;
      blocks[x].push_back(std::move(b));
    }
  }
  return Assemblage(std::move(blocks));
}

double busch_pair_margin(double eta1, const std::array<double, 3>& axis1, double eta2,
                         const std::array<double, 3>& axis2) {
  if (eta1 < 0.0 || eta1 > 1.0 || eta2 < 0.0 || eta2 > 1.0)
    throw std::invalid_argument("busch_pair_margin: sharpness outside [0,1]");
  if (std::abs(vec_norm(axis1) - 1.0) > 1e-6 || std::abs(vec_norm(axis2) - 1.0) > 1e-6)
    throw std::invalid_argument("busch_pair_margin: axes must be unit vectors");
  std::array<double, 3> plus{}, minus{};
  for (int i = 0; i < 3; ++i) {
    plus[i] = eta1 * axis1[i] + eta2 * axis2[i];
    minus[i] = eta1 * axis1[i] - eta2 * axis2[i];
  }
  return 2.0 - vec_norm(plus) - vec_norm(minus);
}

bool busch_pair_oracle(double eta1, const std::array<double, 3>& axis1, double eta2,
                       const std::array<double, 3>& axis2) {
  return busch_pair_margin(eta1, axis1, eta2, axis2) >= 0.0;
}

CertReport check_joint_measurability(const MeasurementAssemblage& ma, const SolveOptions& options) {
  CertReport rep;
  rep.task = "joint-measurability";
  const int d = ma.dim();
  const int m = ma.settings();
  const int n = ma.outcomes();
  const auto strategies = deterministic_strategies(m, n);
  const int count = static_cast<int>(strategies.size());

  const FeasibilityVerdict v = solve(joint_povm_problem(ma), options);
  fill_solver_fields(rep, v);

  if (v.status == FeasStatus::Feasible) {
    rep.verdict = "jointly-measurable";
    rep.decisive = true;
    rep.robustness = 0.0;
    HermitianMatrix total(d);
    for (int k = 0; k < count; ++k) total += v.witness.at(block_label(k));
    const HermitianMatrix w = inv_sqrt(total, 0.5, "check_joint_measurability");
    std::vector<HermitianMatrix> elements;
    elements.reserve(count);
    for (int k = 0; k < count; ++k) elements.push_back(congruence(w, v.witness.at(block_label(k))));
    JointPovm joint(m, n, std::move(elements));
    double worst = 0.0;
    for (int x = 0; x < m; ++x)
      for (int a = 0; a < n; ++a)
        worst = std::max(worst, frobenius_dist(marginal(joint, x, a), ma.element(x, a)));
    rep.witness_residual = worst;
    rep.joint_witness = std::move(joint);
  } else if (v.status == FeasStatus::Infeasible) {
    rep.verdict = "incompatible";
    rep.decisive = true;
    rep.robustness = white_noise_threshold(
        [&ma](double t) { return joint_povm_problem(white_noise_mix(ma, t)); }, options);
  } else {
    rep.verdict = "undecided";
  }
  return rep;
}

CertReport check_lhs(const Assemblage& assemblage, const SolveOptions& options) {
  CertReport rep;
  rep.task = "state-steering";
  const ConsistencyReport cons = check_consistency(assemblage.blocks());
  if (!cons.pass) {
    std::ostringstream msg;
    msg << "check_lhs: assemblage fails consistency (min eig " << cons.worst_min_eig
        << ", no-signaling residual " << cons.no_signaling_residual << ", normalization residual "
        << cons.normalization_residual << ")";
    throw std::invalid_argument(msg.str());
  }
  const int m = assemblage.settings();
  const int n = assemblage.outcomes();
  const auto strategies = deterministic_strategies(m, n);
  const int count = static_cast<int>(strategies.size());

  const FeasibilityVerdict v = solve(lhs_problem(assemblage, strategies), options);
  fill_solver_fields(rep, v);

  if (v.status == FeasStatus::Feasible) {
    rep.verdict = "unsteerable";
    rep.decisive = true;
    rep.robustness = 0.0;
    std::vector<HermitianMatrix> states;
    states.reserve(count);
    double total = 0.0;
    for (int k = 0; k < count; ++k) {
      states.push_back(v.witness.at(block_label(k)));
      total += states.back().trace();
    }
    if (total < 0.5) throw std::runtime_error("check_lhs: degenerate witness ensemble");
    for (HermitianMatrix& s : states) s *= 1.0 / total;
    LhsModel model(m, n, std::move(states));
    rep.witness_residual = model.reproduction_residual(assemblage);
    rep.lhs_witness = std::move(model);
  } else if (v.status == FeasStatus::Infeasible) {
    rep.verdict = "steerable";
    rep.decisive = true;
    rep.robustness = white_noise_threshold(
        [&assemblage, &strategies](double t) {
          return lhs_problem(white_noise_mix(assemblage, t), strategies);
        },
        options);
  } else {
    rep.verdict = "undecided";
  }
  return rep;
}

CertReport check_channel_unsteerable(const ChannelAssemblage& ca, const SolveOptions& options) {
  CertReport rep;
  rep.task = "channel-steering";
  const Assemblage assemblage = choi_assemblage(ca);
  const int m = assemblage.settings();
  const int n = assemblage.outcomes();
  const auto strategies = deterministic_strategies(m, n);
  const int count = static_cast<int>(strategies.size());

  const FeasibilityVerdict v = solve(lhs_problem(assemblage, strategies), options);
  fill_solver_fields(rep, v);

  if (v.status == FeasStatus::Feasible) {
    rep.verdict = "unsteerable";
    rep.decisive = true;
    rep.robustness = 0.0;
    const int dc = ca.dim_in();
    const int db = ca.dim_out();
    // One congruence on the input factor lands the branch sum exactly on the
    // trace-preservation manifold, so the same blocks serve both as hidden
    // states of the Choi assemblage and as subchannel Choi branches.
    HermitianMatrix total(dc * db);
    for (int k = 0; k < count; ++k) total += v.witness.at(block_label(k));
    HermitianMatrix w =
        inv_sqrt(partial_trace(total, DimSplit{dc, db}, {0}), 0.1 / dc, "check_channel_unsteerable");
    w *= 1.0 / std::sqrt(static_cast<double>(dc));
    const CMat lift = kron(w.mat(), CMat::identity(db));
    std::vector<HermitianMatrix> branches;
    branches.reserve(count);
    for (int k = 0; k < count; ++k)
      branches.push_back(HermitianMatrix(lift * v.witness.at(block_label(k)).mat() * lift.adjoint()));
    LhsModel model(m, n, branches);
    Instrument instrument(dc, db, std::move(branches));
    rep.witness_residual = model.reproduction_residual(assemblage);
    rep.lhs_witness = std::move(model);
    rep.instrument_witness = InstrumentDecomposition{strategies, std::move(instrument)};
  } else if (v.status == FeasStatus::Infeasible) {
    rep.verdict = "steerable";
    rep.decisive = true;
    rep.robustness = white_noise_threshold(
        [&assemblage, &strategies](double t) {
          return lhs_problem(white_noise_mix(assemblage, t), strategies);
        },
        options);
  } else {
    rep.verdict = "undecided";
  }
  return rep;
}

InstrumentDecomposition instrument_from_joint(const JointPovm& joint, const ChannelExtension& ext) {
  if (joint.dim() != ext.dim_a()) {
    std::ostringstream msg;
    msg << "instrument_from_joint: joint POVM acts on dimension " << joint.dim()
        << " but the extension's measured factor has dimension " << ext.dim_a();
    throw std::invalid_argument(msg.str());
  }
  const CMat ic = CMat::identity(ext.dim_c());
  const CMat ib = CMat::identity(ext.dim_b());
  std::vector<HermitianMatrix> branches;
  branches.reserve(joint.element_count());
  for (int q = 0; q < joint.element_count(); ++q) {
    const CMat op = kron(ic, kron(joint.element(q).mat(), ib)) * ext.choi().mat();
    branches.push_back(HermitianMatrix(partial_trace(op, ext.split(), {0, 2})));
  }
  return InstrumentDecomposition{deterministic_strategies(joint.settings(), joint.outcomes()),
                                 Instrument(ext.dim_c(), ext.dim_b(), std::move(branches))};
}

MeasurementAssemblage marginal_assemblage(const JointPovm& joint) {
  std::vector<Povm> povms;
  povms.reserve(joint.settings());
  for (int x = 0; x < joint.settings(); ++x) {
    std::vector<HermitianMatrix> els;
    els.reserve(joint.outcomes());
    for (int a = 0; a < joint.outcomes(); ++a) els.push_back(marginal(joint, x, a));
    povms.emplace_back(std::move(els));
  }
  return MeasurementAssemblage(std::move(povms));
}

JointPovm joint_from_lhs(const LhsModel& model, int d) {
  const int dim = model.dim();
  if (d < 1 || dim % d != 0) {
    std::ostringstream msg;
    msg << "joint_from_lhs: model dimension " << dim << " does not split off a factor of dimension "
        << d;
    throw std::invalid_argument(msg.str());
  }
  const int dc = dim / d;

  HermitianMatrix total(dim);
  for (int k = 0; k < model.count(); ++k) total += model.state(k);
  HermitianMatrix uniform = HermitianMatrix::identity(dim);
  uniform *= 1.0 / dim;
  const double dev = frobenius_dist(total, uniform);
  if (dev > 1e-5) {
    std::ostringstream msg;
    msg << "joint_from_lhs: hidden states sum deviates from I/" << dim << " by " << dev
        << "; the model does not come from a constant maximally-entangled extension";
    throw std::invalid_argument(msg.str());
  }

  const DimSplit split{dc, d};
  std::vector<HermitianMatrix> reduced;
  reduced.reserve(model.count());
  HermitianMatrix t(d);
  for (int k = 0; k < model.count(); ++k) {
    reduced.push_back(partial_trace(model.state(k), split, {1}));
    t += reduced.back();
  }
  HermitianMatrix w = inv_sqrt(t, 0.1 / d, "joint_from_lhs");
  w *= 1.0 / std::sqrt(static_cast<double>(d));

  // With the canonical strategy enumeration the indicator product collapses to
  // a Kronecker delta between hidden label and outcome vector, so element q is
  // the polished reduction of state q, scaled and transposed.
  std::vector<HermitianMatrix> elements;
  elements.reserve(model.count());
  for (int k = 0; k < model.count(); ++k) {
    HermitianMatrix g(congruence(w, reduced[k]).mat().transpose());
    g *= static_cast<double>(d);
    elements.push_back(std::move(g));
  }
  return JointPovm(model.settings(), model.outcomes(), std::move(elements));
}

TheoremReport theorem_harness(const MeasurementAssemblage& ma,
                              const std::vector<ChannelExtension>& extensions,
                              const SolveOptions& options) {
  TheoremReport rep;
  rep.jm = check_joint_measurability(ma, options);
  rep.boundary = rep.jm.near_boundary;

  std::vector<std::pair<std::string, ChannelExtension>> rows;
  for (size_t i = 0; i < extensions.size(); ++i)
    rows.emplace_back("extension-" + std::to_string(i), extensions[i]);
  rows.emplace_back("constant-psiplus", constant_psiplus_extension(ma.dim(), 2));

  bool any_undecided = !rep.jm.decisive;
  bool all_unsteerable = true;
  bool psiplus_steerable = false;

  for (auto& [label, ext] : rows) {
    const ChannelAssemblage ca = channel_assemblage_from_measurement(ext, ma);
    TheoremRow row{label, check_channel_unsteerable(ca, options), {}};
    if (rep.jm.joint_witness)
      row.forward_residual =
          reconstruction_residual(instrument_from_joint(*rep.jm.joint_witness, ext), ca);
    if (!row.channel.decisive) any_undecided = true;
    if (row.channel.verdict != "unsteerable") all_unsteerable = false;
    if (label == "constant-psiplus" && row.channel.verdict == "steerable") psiplus_steerable = true;
    rep.boundary = rep.boundary || row.channel.near_boundary;
    rep.rows.push_back(std::move(row));
  }

  if (any_undecided)
    rep.biconditional = "undecided";
  else if (rep.jm.verdict == "jointly-measurable")
    rep.biconditional = all_unsteerable ? "holds" : "violated";
  else
    rep.biconditional = psiplus_steerable ? "holds" : "violated";
  return rep;
}

}  // namespace steercert
