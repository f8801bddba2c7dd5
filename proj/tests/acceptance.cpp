// End-to-end acceptance suite: checks the certification pipeline against
// independent oracles and pinned tolerances, printing one PASS/FAIL line per
// criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "steercert/certify.hpp"
#include "steercert/json_io.hpp"
#include "test_support.hpp"

using namespace steercert;
namespace fs = std::filesystem;

namespace {

// ---- pinned acceptance tolerances -------------------------------------------
constexpr double kEtaStarTarget = 0.7071;       // = 1/sqrt(2), dichotomic X/Z pair
constexpr double kEtaStarTol = 0.005;
constexpr double kThresholdBudgetS = 30.0;
constexpr int kOraclePairs = 100;
constexpr double kOracleBand = 0.01;            // skip |margin| below this
constexpr int kEquivalenceCases = 50;
constexpr double kEquivalenceBudgetS = 300.0;
constexpr int kForwardExtensions = 20;
constexpr double kForwardResidualTol = 1e-9;
constexpr double kConverseMinEig = -1e-8;
constexpr double kConverseCompleteness = 1e-8;
constexpr double kConverseMarginal = 1e-6;
constexpr int kIncoherentCases = 50;
constexpr int kChoiChannels = 100;
constexpr double kChoiRoundTripTol = 1e-9;
constexpr int kEigMatrices = 1000;
constexpr int kEigMaxDim = 16;
constexpr double kEigReconstructionTol = 1e-9;

const char* const kMeasurementFixtures[] = {
    "sharp-xz.json",    "noisy-xz-025.json", "noisy-xz-050.json",
    "noisy-xz-060.json", "noisy-xz-075.json", "noisy-xz-090.json",
};

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

fs::path fixture_dir() {
  if (const char* env = std::getenv("STEERCERT_FIXTURES")) return env;
  for (const char* candidate : {"fixtures", "../fixtures"})
    if (fs::exists(fs::path(candidate) / "sharp-xz.json")) return candidate;
  return "fixtures";
}

MeasurementAssemblage load_measurements(const std::string& name) {
  return measurement_assemblage_from_json(load_json_file((fixture_dir() / name).string()));
}

/// Random dichotomic qubit pair with axes on the sphere and etas on a 0.05
/// grid, plus its analytic compatibility margin.
struct RandomPair {
  MeasurementAssemblage ma;
  double margin;
};

RandomPair random_qubit_pair(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> grid(0, 20);
  const auto axis1 = steertest::random_bloch_axis(rng);
  const auto axis2 = steertest::random_bloch_axis(rng);
  const double eta1 = grid(rng) * 0.05;
  const double eta2 = grid(rng) * 0.05;
  MeasurementAssemblage ma({steertest::axis_povm(axis1[0], axis1[1], axis1[2], eta1),
                            steertest::axis_povm(axis2[0], axis2[1], axis2[2], eta2)});
  return {std::move(ma), busch_pair_margin(eta1, axis1, eta2, axis2)};
}

bool run_criterion(int number, const char* name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  std::printf("%s  %d %-26s %s\n", ok ? "PASS" : "FAIL", number, name, detail.c_str());
  std::fflush(stdout);
  return ok;
}

// 1. The white-noise threshold of the sharp X/Z pair, recovered through the
//    solver's robustness bisection, must land on the analytic value.
bool criterion_threshold(std::string& detail) {
  Stopwatch watch;
  const CertReport rep = check_joint_measurability(load_measurements("sharp-xz.json"));
  const double elapsed = watch.seconds();
  if (rep.verdict != "incompatible" || !rep.robustness) {
    detail = "expected a decisive incompatible verdict with robustness";
    return false;
  }
  const double eta_star = 1.0 - *rep.robustness;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "eta* = %.6f (target %.4f +- %.3f) in %.1f s", eta_star,
                kEtaStarTarget, kEtaStarTol, elapsed);
  detail = buf;
  return std::abs(eta_star - kEtaStarTarget) <= kEtaStarTol && elapsed < kThresholdBudgetS;
}

// 2. Solver verdicts must agree with the analytic two-observable criterion on
//    random pairs, away from the decision boundary.
bool criterion_oracle_agreement(std::string& detail) {
  std::mt19937_64 rng(2026);
  int decided = 0, skipped = 0, disagreements = 0;
  for (int i = 0; i < kOraclePairs; ++i) {
    const RandomPair pair = random_qubit_pair(rng);
    if (std::abs(pair.margin) < kOracleBand) {
      ++skipped;
      continue;
    }
    const CertReport rep = check_joint_measurability(pair.ma);
    const bool oracle_compatible = pair.margin >= 0.0;
    const bool solver_compatible = rep.verdict == "jointly-measurable";
    if (!rep.decisive || solver_compatible != oracle_compatible) ++disagreements;
    ++decided;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d decided pairs, %d in the excluded band, %d disagreements",
                decided, skipped, disagreements);
  detail = buf;
  return disagreements == 0 && decided > 0;
}

// 3. Joint measurability of the POVMs and unsteerability of the constant
//    maximally-entangled extension must coincide case by case.
bool criterion_equivalence(std::string& detail) {
  Stopwatch watch;
  std::mt19937_64 rng(4096);
  const ChannelExtension ext = constant_psiplus_extension(2, 2);
  int done = 0, mismatches = 0;
  for (int attempts = 0; done < kEquivalenceCases && attempts < 100 * kEquivalenceCases;
       ++attempts) {
    const RandomPair pair = random_qubit_pair(rng);
    if (std::abs(pair.margin) < kOracleBand) continue;
    const CertReport jm = check_joint_measurability(pair.ma);
    const CertReport ch =
        check_channel_unsteerable(channel_assemblage_from_measurement(ext, pair.ma));
    const bool agree = jm.decisive && ch.decisive &&
                       (jm.verdict == "jointly-measurable") == (ch.verdict == "unsteerable");
    if (!agree) ++mismatches;
    ++done;
  }
  const double elapsed = watch.seconds();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d cases, %d verdict mismatches, %.1f s", done, mismatches,
                elapsed);
  detail = buf;
  return done >= kEquivalenceCases && mismatches == 0 && elapsed < kEquivalenceBudgetS;
}

// 4. Measuring a joint-POVM witness through any extension must reproduce the
//    channel assemblage of its own marginals to numerical identity.
bool criterion_forward_exactness(std::string& detail) {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> dim(2, 3);
  double worst = 0.0;
  int feasible_fixtures = 0;
  for (const char* name : kMeasurementFixtures) {
    const CertReport rep = check_joint_measurability(load_measurements(name));
    if (!rep.joint_witness) continue;
    ++feasible_fixtures;
    const JointPovm& joint = *rep.joint_witness;
    const MeasurementAssemblage base = marginal_assemblage(joint);
    for (int k = 0; k < kForwardExtensions; ++k) {
      // dimA equals the Kraus count and must match the measured system.
      const int dc = dim(rng);
      const int db = dim(rng);
      const ChannelExtension ext =
          coherent_extension(steertest::random_channel(rng, dc, db, joint.dim()));
      const InstrumentDecomposition dec = instrument_from_joint(joint, ext);
      const ChannelAssemblage ca = channel_assemblage_from_measurement(ext, base);
      worst = std::max(worst, reconstruction_residual(dec, ca));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d feasible fixtures, worst residual %.2e (limit %.0e)",
                feasible_fixtures, worst, kForwardResidualTol);
  detail = buf;
  return feasible_fixtures > 0 && worst <= kForwardResidualTol;
}

// 5. Hidden-state models of constant maximally-entangled Choi assemblages
//    must convert into valid parent POVMs reproducing the measurements.
bool criterion_converse_validity(std::string& detail) {
  const ChannelExtension ext = constant_psiplus_extension(2, 2);
  int feasible = 0;
  double worst_eig = 0.0, worst_completeness = 0.0, worst_marginal = 0.0;
  for (const char* name : kMeasurementFixtures) {
    const MeasurementAssemblage ma = load_measurements(name);
    const Assemblage choi = choi_assemblage(channel_assemblage_from_measurement(ext, ma));
    const CertReport rep = check_lhs(choi);
    if (rep.verdict != "unsteerable" || !rep.lhs_witness) continue;
    ++feasible;
    const JointPovm joint = joint_from_lhs(*rep.lhs_witness, ma.dim());

    HermitianMatrix total(joint.dim());
    for (int q = 0; q < joint.element_count(); ++q) {
      worst_eig = std::min(worst_eig, min_eig(joint.element(q)));
      total += joint.element(q);
    }
    worst_completeness =
        std::max(worst_completeness, frobenius_dist(total, HermitianMatrix::identity(joint.dim())));
    for (int x = 0; x < ma.settings(); ++x)
      for (int a = 0; a < ma.outcomes(); ++a)
        worst_marginal =
            std::max(worst_marginal, frobenius_dist(marginal(joint, x, a), ma.element(x, a)));
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "%d feasible, min eig %.1e, completeness %.1e, marginals %.1e", feasible,
                worst_eig, worst_completeness, worst_marginal);
  detail = buf;
  return feasible > 0 && worst_eig >= kConverseMinEig &&
         worst_completeness <= kConverseCompleteness && worst_marginal <= kConverseMarginal;
}

// 6. Extensions that only correlate Alice classically can never be steered,
//    whatever she measures.
bool criterion_incoherent_law(std::string& detail) {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> branch_count(2, 3);
  int unsteerable = 0;
  for (int i = 0; i < kIncoherentCases; ++i) {
    const Instrument inst = steertest::random_instrument(rng, 2, 2, branch_count(rng));
    std::vector<DensityOperator> tags;
    for (int k = 0; k < inst.branch_count(); ++k) tags.push_back(steertest::random_density(rng, 2));
    const ChannelExtension ext = incoherent_extension(inst, tags);
    const RandomPair pair = random_qubit_pair(rng);
    const CertReport rep =
        check_channel_unsteerable(channel_assemblage_from_measurement(ext, pair.ma));
    if (rep.verdict == "unsteerable") ++unsteerable;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d of %d certified unsteerable", unsteerable, kIncoherentCases);
  detail = buf;
  return unsteerable == kIncoherentCases;
}

// 7. Core numerics: the Choi form must act identically to the Kraus form, and
//    the eigendecomposition must reconstruct its input.
bool criterion_numerics(std::string& detail) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_int_distribution<int> kraus_count(1, 3);
  double worst_choi = 0.0;
  for (int i = 0; i < kChoiChannels; ++i) {
    const int din = dim(rng), dout = dim(rng);
    // The Stinespring construction needs dout * kraus >= din.
    const int kc = std::max(kraus_count(rng), (din + dout - 1) / dout);
    const KrausChannel ch = steertest::random_channel(rng, din, dout, kc);
    const DensityOperator rho = steertest::random_density(rng, din);
    CMat direct(dout, dout);
    for (const CMat& k : ch.kraus()) direct += k * rho.matrix().mat() * k.adjoint();
    const DensityOperator via = apply_via_choi(choi_of(ch), rho);
    worst_choi = std::max(worst_choi, frobenius_dist(via.matrix().mat(), direct));
  }

  std::uniform_int_distribution<int> eig_dim(1, kEigMaxDim);
  double worst_eig = 0.0;
  for (int i = 0; i < kEigMatrices; ++i) {
    const HermitianMatrix h = steertest::random_hermitian(rng, eig_dim(rng));
    const EigResult e = eig_hermitian(h);
    CMat rebuilt(h.dim(), h.dim());
    for (int r = 0; r < h.dim(); ++r)
      for (int c = 0; c < h.dim(); ++c)
        for (int k = 0; k < h.dim(); ++k)
          rebuilt(r, c) += e.vectors(r, k) * e.values[k] * std::conj(e.vectors(c, k));
    worst_eig = std::max(worst_eig, frobenius_dist(rebuilt, h.mat()));
  }

  char buf[160];
  std::snprintf(buf, sizeof(buf), "choi residual %.2e, eig residual %.2e (limits %.0e)",
                worst_choi, worst_eig, kChoiRoundTripTol);
  detail = buf;
  return worst_choi <= kChoiRoundTripTol && worst_eig <= kEigReconstructionTol;
}

}  // namespace

int main() {
  bool all = true;
  all &= run_criterion(1, "incompatibility-threshold", criterion_threshold);
  all &= run_criterion(2, "oracle-agreement", criterion_oracle_agreement);
  all &= run_criterion(3, "jm-channel-equivalence", criterion_equivalence);
  all &= run_criterion(4, "forward-exactness", criterion_forward_exactness);
  all &= run_criterion(5, "converse-validity", criterion_converse_validity);
  all &= run_criterion(6, "incoherent-law", criterion_incoherent_law);
  all &= run_criterion(7, "numerics", criterion_numerics);
  return all ? 0 : 1;
}
