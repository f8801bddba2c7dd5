#pragma once

#include <vector>

#include "steercert/matrix.hpp"
#include "steercert/measurements.hpp"
#include "steercert/states.hpp"

namespace steercert {

// Choi operators follow the trace-1 convention: J = (id tensor Lambda)[psi+]
// with psi+ normalized, so trace preservation reads Tr_out(J) = I/dimIn.
// Subsystem order is (C', out) for channels and (C', A, B) for extensions.

/// Completely positive trace-preserving map given by Kraus operators
/// (dimOut x dimIn each). Kraus form is an ingestion format; certification
/// math runs on Choi operators.
class KrausChannel {
 public:
  KrausChannel(int dim_in, int dim_out, std::vector<CMat> kraus);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<CMat>& kraus() const { return kraus_; }

 private:
  int dim_in_;
  int dim_out_;
  std::vector<CMat> kraus_;
};

/// Channel in Choi form on (C', out).
class ChoiChannel {
 public:
  ChoiChannel(int dim_in, int dim_out, HermitianMatrix j);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const HermitianMatrix& choi() const { return j_; }
  DimSplit split() const { return DimSplit{dim_in_, dim_out_}; }

 private:
  int dim_in_;
  int dim_out_;
  HermitianMatrix j_;
};

/// Subchannel Choi blocks summing to a channel.
class Instrument {
 public:
  Instrument(int dim_in, int dim_out, std::vector<HermitianMatrix> branches);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int branch_count() const { return static_cast<int>(branches_.size()); }
  const HermitianMatrix& branch(int k) const { return branches_.at(k); }
  const std::vector<HermitianMatrix>& branches() const { return branches_; }
  ChoiChannel total() const;

 private:
  int dim_in_;
  int dim_out_;
  std::vector<HermitianMatrix> branches_;
};

/// One instrument per setting, all summing to the same channel.
/// Blocks are Choi operators indexed blocks()[x][a].
class ChannelAssemblage {
 public:
  ChannelAssemblage(int dim_in, int dim_out, std::vector<std::vector<HermitianMatrix>> blocks);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int settings() const { return static_cast<int>(blocks_.size()); }
  int outcomes() const { return static_cast<int>(blocks_.front().size()); }
  const HermitianMatrix& block(int x, int a) const { return blocks_.at(x).at(a); }

  /// Sum of blocks for setting 0 (equal across settings by the invariant).
  HermitianMatrix common_choi() const;
  double common_trace() const { return common_choi().trace(); }

 private:
  int dim_in_;
  int dim_out_;
  std::vector<std::vector<HermitianMatrix>> blocks_;
};

/// Channel from C to A tensor B, stored as a Choi operator on (C', A, B).
class ChannelExtension {
 public:
  ChannelExtension(int dim_c, int dim_a, int dim_b, HermitianMatrix choi);

  int dim_c() const { return dim_c_; }
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const HermitianMatrix& choi() const { return choi_; }
  DimSplit split() const { return DimSplit{dim_c_, dim_a_, dim_b_}; }

  /// Choi of the base channel C -> B (environment A traced out).
  ChoiChannel b_marginal() const;

 private:
  int dim_c_;
  int dim_a_;
  int dim_b_;
  HermitianMatrix choi_;
};

ChoiChannel choi_of(const KrausChannel& ch);

/// Inverse of the Choi map: Lambda[rho] = dimIn * Tr_C'((rho^T tensor I) J),
/// transpose taken in the basis fixing psi+.
DensityOperator apply_via_choi(const ChoiChannel& ch, const DensityOperator& rho);

/// Extension Sum_lambda Lambda_lambda tensor sigma^A_lambda with output order
/// (A, B); Alice holds only the classical branch label.
ChannelExtension incoherent_extension(const Instrument& inst, const std::vector<DensityOperator>& sigma_a);

/// Isometric dilation V = Sum_i |i>_A tensor K_i; dimA equals the Kraus count.
ChannelExtension coherent_extension(const KrausChannel& ch);

/// Constant channel rho -> Tr(rho) psi+^{AB} with dimA = dimB = d. Its Choi
/// assemblage reproduces psi+ state steering, which makes it the canonical
/// steerable extension.
ChannelExtension constant_psiplus_extension(int d, int dim_c);

/// Blocks J_{a|x} = Tr_A( (I tensor M_{a|x} tensor I) J_ext ).
ChannelAssemblage channel_assemblage_from_measurement(const ChannelExtension& ext,
                                                      const MeasurementAssemblage& ma);

/// The channel assemblage read as a state assemblage on C' tensor B,
/// rescaled by the common-channel trace so it is normalized.
Assemblage choi_assemblage(const ChannelAssemblage& ca);

}  // namespace steercert
