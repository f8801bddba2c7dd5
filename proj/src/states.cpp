#include "steercert/states.hpp"

#include <cmath>
#include <stdexcept>

namespace steercert {

DensityOperator::DensityOperator(HermitianMatrix m) : mat_(std::move(m)) {
  if (min_eig(mat_) < -kPsdTol)
    throw std::invalid_argument("DensityOperator: not PSD");
  if (std::abs(mat_.trace() - 1.0) > kPsdTol)
    throw std::invalid_argument("DensityOperator: trace != 1");
}

ConsistencyReport check_consistency(const std::vector<std::vector<HermitianMatrix>>& blocks) {
  ConsistencyReport r;
  if (blocks.empty() || blocks.front().empty()) return r;
  const int d = blocks.front().front().dim();

  std::vector<HermitianMatrix> setting_sums;
  for (const auto& row : blocks) {
    HermitianMatrix sum(d);
    for (const HermitianMatrix& b : row) {
      if (b.dim() != d) return r;
      r.worst_min_eig = std::min(r.worst_min_eig, min_eig(b));
      sum += b;
    }
    setting_sums.push_back(sum);
    r.normalization_residual = std::max(r.normalization_residual, std::abs(sum.trace() - 1.0));
  }
  for (size_t x = 1; x < setting_sums.size(); ++x)
    r.no_signaling_residual =
        std::max(r.no_signaling_residual, frobenius_dist(setting_sums[x], setting_sums[0]));

  r.pass = r.worst_min_eig >= -kPsdTol && r.no_signaling_residual <= kConsistencyTol &&
           r.normalization_residual <= kConsistencyTol;
  return r;
}

Assemblage::Assemblage(std::vector<std::vector<HermitianMatrix>> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty() || blocks_.front().empty())
    throw std::invalid_argument("Assemblage: empty block table");
  const size_t n = blocks_.front().size();
  for (const auto& row : blocks_)
    if (row.size() != n) throw std::invalid_argument("Assemblage: ragged block table");
  const ConsistencyReport r = check_consistency(blocks_);
  if (!r.pass) {
    throw std::invalid_argument(
        "Assemblage: consistency violation (min_eig " + std::to_string(r.worst_min_eig) +
        ", no-signaling " + std::to_string(r.no_signaling_residual) + ", normalization " +
        std::to_string(r.normalization_residual) + ")");
  }
}

std::optional<DensityOperator> Assemblage::conditional_state(int x, int a) const {
  const double p = prob(x, a);
  if (p <= 1e-12) return std::nullopt;
  HermitianMatrix m = block(x, a);
  m *= 1.0 / p;
  // Tiny negative dips from the division are clipped by re-projection.
  if (min_eig(m) < 0.0) m = project_psd(m);
  HermitianMatrix normalized = m;
  normalized *= 1.0 / m.trace();
  return DensityOperator(normalized);
}

DensityOperator max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled: need d >= 2");
  CMat m(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i * d + i, j * d + j) = 1.0 / d;
  return DensityOperator(HermitianMatrix(m));
}

Assemblage assemblage_from_state(const DensityOperator& rho, const DimSplit& split,
                                 const MeasurementAssemblage& ma) {
  if (split.count() != 2) throw std::invalid_argument("assemblage_from_state: split must be A,B");
  split.check_matches(rho.dim(), "assemblage_from_state");
  if (split.factors[0] != ma.dim())
    throw std::invalid_argument("assemblage_from_state: measurement dim does not match A");

  const HermitianMatrix ib = HermitianMatrix::identity(split.factors[1]);
  std::vector<std::vector<HermitianMatrix>> blocks(ma.settings());
  for (int x = 0; x < ma.settings(); ++x) {
    for (int a = 0; a < ma.outcomes(); ++a) {
      const CMat op = kron(ma.element(x, a).mat(), ib.mat()) * rho.matrix().mat();
      blocks[x].push_back(HermitianMatrix(partial_trace(op, split, {1})));
    }
  }
  return Assemblage(std::move(blocks));
}

}  // namespace steercert
