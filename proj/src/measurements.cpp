#include "steercert/measurements.hpp"

#include <cmath>
#include <stdexcept>

namespace steercert {

PovmValidation validate_povm(const std::vector<HermitianMatrix>& elements) {
  PovmValidation v;
  if (elements.empty()) return v;
  const int d = elements.front().dim();
  HermitianMatrix sum(d);
  v.pass = true;
  for (const HermitianMatrix& e : elements) {
    if (e.dim() != d) {
      v.pass = false;
      return v;
    }
    const double me = min_eig(e);
    v.element_min_eigs.push_back(me);
    if (me < -kPsdTol) v.pass = false;
    sum += e;
  }
  v.completeness_residual = frobenius_dist(sum, HermitianMatrix::identity(d));
  if (v.completeness_residual > kCompletenessTol) v.pass = false;
  return v;
}

Povm::Povm(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("Povm: no elements");
  const PovmValidation v = validate_povm(elements_);
  if (!v.pass) {
    std::string msg = "Povm: invariant violation (";
    double worst = 0.0;
    for (double me : v.element_min_eigs) worst = std::min(worst, me);
    msg += "min_eig " + std::to_string(worst) + ", completeness residual " +
           std::to_string(v.completeness_residual) + ")";
    throw std::invalid_argument(msg);
  }
}

MeasurementAssemblage::MeasurementAssemblage(std::vector<Povm> povms) : povms_(std::move(povms)) {
  if (povms_.empty()) throw std::invalid_argument("MeasurementAssemblage: no settings");
  const int d = povms_.front().dim();
  const int n = povms_.front().outcomes();
  for (const Povm& p : povms_) {
    if (p.dim() != d) throw std::invalid_argument("MeasurementAssemblage: mixed dimensions");
    if (p.outcomes() != n) throw std::invalid_argument("MeasurementAssemblage: mixed outcome counts");
  }
}

AssemblageValidation validate(const std::vector<std::vector<HermitianMatrix>>& povm_elements) {
  AssemblageValidation v;
  v.pass = !povm_elements.empty();
  for (const auto& elems : povm_elements) {
    v.per_setting.push_back(validate_povm(elems));
    if (!v.per_setting.back().pass) v.pass = false;
  }
  return v;
}

int outcome_vector_index(const std::vector<int>& outcomes, int n) {
  int idx = 0;
  for (int a : outcomes) {
    if (a < 0 || a >= n) throw std::out_of_range("outcome_vector_index: outcome out of range");
    idx = idx * n + a;
  }
  return idx;
}

std::vector<int> outcome_vector_from_index(int index, int m, int n) {
  std::vector<int> v(m, 0);
  for (int x = m - 1; x >= 0; --x) {
    v[x] = index % n;
    index /= n;
  }
  if (index != 0) throw std::out_of_range("outcome_vector_from_index: index out of range");
  return v;
}

JointPovm::JointPovm(int m, int n, std::vector<HermitianMatrix> elements)
    : m_(m), n_(n), elements_(std::move(elements)) {
  if (m < 1 || n < 1) throw std::invalid_argument("JointPovm: need m, n >= 1");
  double count = std::pow(static_cast<double>(n), m);
  if (static_cast<double>(elements_.size()) != count)
    throw std::invalid_argument("JointPovm: expected n^m elements");
  const int d = elements_.front().dim();
  HermitianMatrix sum(d);
  for (const HermitianMatrix& e : elements_) {
    if (e.dim() != d) throw std::invalid_argument("JointPovm: mixed dimensions");
    if (min_eig(e) < -kPsdTol) throw std::invalid_argument("JointPovm: element not PSD");
    sum += e;
  }
  if (frobenius_dist(sum, HermitianMatrix::identity(d)) > kCompletenessTol)
    throw std::invalid_argument("JointPovm: elements do not sum to identity");
}

HermitianMatrix marginal(const JointPovm& joint, int x, int a) {
  if (x < 0 || x >= joint.settings()) throw std::out_of_range("marginal: setting out of range");
  if (a < 0 || a >= joint.outcomes()) throw std::out_of_range("marginal: outcome out of range");
  HermitianMatrix acc(joint.dim());
  const int m = joint.settings(), n = joint.outcomes();
  for (int k = 0; k < joint.element_count(); ++k) {
    if (outcome_vector_from_index(k, m, n)[x] == a) acc += joint.element(k);
  }
  return acc;
}

Povm noisy_projective(const CMat& basis_vectors, double eta) {
  if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("noisy_projective: eta outside [0,1]");
  const int d = basis_vectors.rows();
  if (basis_vectors.cols() != d)
    throw std::invalid_argument("noisy_projective: need a complete basis (dim columns)");
  // Orthonormality within 1e-9.
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Complex ip = 0.0;
      for (int i = 0; i < d; ++i) ip += std::conj(basis_vectors(i, a)) * basis_vectors(i, b);
      const Complex want = (a == b) ? Complex(1.0) : Complex(0.0);
      if (std::abs(ip - want) > 1e-9)
        throw std::invalid_argument("noisy_projective: basis not orthonormal");
    }

  std::vector<HermitianMatrix> elems;
  const HermitianMatrix noise = (1.0 - eta) / d * HermitianMatrix::identity(d);
  for (int a = 0; a < d; ++a) {
    std::vector<Complex> v(d);
    for (int i = 0; i < d; ++i) v[i] = basis_vectors(i, a);
    elems.push_back(eta * HermitianMatrix::outer(v) + noise);
  }
  return Povm(std::move(elems));
}

}  // namespace steercert
