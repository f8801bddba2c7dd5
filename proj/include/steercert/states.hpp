#pragma once

#include <optional>
#include <vector>

#include "steercert/matrix.hpp"
#include "steercert/measurements.hpp"

namespace steercert {

constexpr double kConsistencyTol = 1e-8;

/// PSD, unit-trace operator.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianMatrix m);

  int dim() const { return mat_.dim(); }
  const HermitianMatrix& matrix() const { return mat_; }

 private:
  HermitianMatrix mat_;
};

struct ConsistencyReport {
  double worst_min_eig = 0.0;        // most negative block eigenvalue
  double no_signaling_residual = 0.0;  // max Frobenius gap between per-setting block sums
  double normalization_residual = 0.0;  // |Tr(sum_a sigma_{a|x}) - 1|, worst setting
  bool pass = false;
};

ConsistencyReport check_consistency(const std::vector<std::vector<HermitianMatrix>>& blocks);

/// Family of sub-normalized conditional states sigma_{a|x} on Bob's side.
/// Blocks are indexed blocks()[x][a].
class Assemblage {
 public:
  explicit Assemblage(std::vector<std::vector<HermitianMatrix>> blocks);

  int dim_b() const { return blocks_.front().front().dim(); }
  int settings() const { return static_cast<int>(blocks_.size()); }
  int outcomes() const { return static_cast<int>(blocks_.front().size()); }
  const HermitianMatrix& block(int x, int a) const { return blocks_.at(x).at(a); }
  const std::vector<std::vector<HermitianMatrix>>& blocks() const { return blocks_; }

  double prob(int x, int a) const { return block(x, a).trace(); }
  /// Conditional state sigma_{a|x} / p(a|x); absent when p(a|x) vanishes.
  std::optional<DensityOperator> conditional_state(int x, int a) const;

 private:
  std::vector<std::vector<HermitianMatrix>> blocks_;
};

/// Density matrix of (1/sqrt(d)) sum_i |ii>: entries 1/d at composite
/// positions (i*d+i, j*d+j). Stored normalized (trace 1).
DensityOperator max_entangled(int d);

/// sigma_{a|x} = Tr_A( (M_{a|x} tensor I_B) rho_AB ), A the first factor.
Assemblage assemblage_from_state(const DensityOperator& rho, const DimSplit& split,
                                 const MeasurementAssemblage& ma);

}  // namespace steercert
