#pragma once

#include <string>
#include <vector>

#include "steercert/matrix.hpp"

namespace steercert {

// Construction tolerances. Solver tolerances live in feasibility.hpp; the two
// are kept separate so ingestion noise cannot masquerade as incompatibility.
constexpr double kPsdTol = 1e-9;
constexpr double kCompletenessTol = 1e-9;

struct PovmValidation {
  std::vector<double> element_min_eigs;
  double completeness_residual = 0.0;  // Frobenius distance of the element sum from identity
  bool pass = false;
};

PovmValidation validate_povm(const std::vector<HermitianMatrix>& elements);

/// Outcome-indexed positive operators summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<HermitianMatrix> elements);

  int dim() const { return elements_.front().dim(); }
  int outcomes() const { return static_cast<int>(elements_.size()); }
  const HermitianMatrix& element(int a) const { return elements_.at(a); }
  const std::vector<HermitianMatrix>& elements() const { return elements_; }

 private:
  std::vector<HermitianMatrix> elements_;
};

struct AssemblageValidation {
  std::vector<PovmValidation> per_setting;
  bool pass = false;
};

/// One POVM per setting x, all with the same outcome count and dimension.
class MeasurementAssemblage {
 public:
  MeasurementAssemblage(std::vector<Povm> povms);

  int dim() const { return povms_.front().dim(); }
  int settings() const { return static_cast<int>(povms_.size()); }
  int outcomes() const { return povms_.front().outcomes(); }
  const Povm& povm(int x) const { return povms_.at(x); }
  const HermitianMatrix& element(int x, int a) const { return povms_.at(x).element(a); }

 private:
  std::vector<Povm> povms_;
};

AssemblageValidation validate(const std::vector<std::vector<HermitianMatrix>>& povm_elements);

/// Outcome-vector indexing: the vector [a_1, ..., a_m] maps to the mixed-radix
/// integer with the FIRST setting as the most significant digit,
///   index = a_1 * n^(m-1) + a_2 * n^(m-2) + ... + a_m.
/// This encoding is the serialization key for JointPovm elements.
int outcome_vector_index(const std::vector<int>& outcomes, int n);
std::vector<int> outcome_vector_from_index(int index, int m, int n);

/// Parent measurement over outcome vectors; every POVM of an assemblage is a
/// marginal of one of these when the assemblage is jointly measurable.
class JointPovm {
 public:
  /// elements[k] is the block for the outcome vector with mixed-radix index k.
  JointPovm(int m, int n, std::vector<HermitianMatrix> elements);

  int dim() const { return elements_.front().dim(); }
  int settings() const { return m_; }
  int outcomes() const { return n_; }
  const HermitianMatrix& element(int index) const { return elements_.at(index); }
  const HermitianMatrix& element(const std::vector<int>& outcome_vector) const {
    return elements_.at(outcome_vector_index(outcome_vector, n_));
  }
  int element_count() const { return static_cast<int>(elements_.size()); }

 private:
  int m_;
  int n_;
  std::vector<HermitianMatrix> elements_;
};

/// Sum of joint elements over all outcome vectors whose x-th entry equals a.
HermitianMatrix marginal(const JointPovm& joint, int x, int a);

/// element a = eta * |v_a><v_a| + (1 - eta) * I/dim, with v_a the columns of
/// basis_vectors (must be a complete orthonormal basis).
Povm noisy_projective(const CMat& basis_vectors, double eta);

}  // namespace steercert
