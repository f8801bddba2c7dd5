#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "steercert/measurements.hpp"
#include "test_support.hpp"

using namespace steercert;

namespace {

std::vector<HermitianMatrix> sharp_z() {
  return {HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix::diagonal({0.0, 1.0})};
}

}  // namespace

TEST_CASE("validate_povm accepts a projective measurement") {
  const PovmValidation v = validate_povm(sharp_z());
  CHECK(v.pass);
  CHECK(v.completeness_residual < 1e-15);
  REQUIRE(v.element_min_eigs.size() == 2);
  CHECK(v.element_min_eigs[0] == doctest::Approx(0.0));
}

TEST_CASE("validate_povm flags incompleteness and negativity") {
  // Elements sum to diag(1, 0.5): incomplete.
  const PovmValidation incomplete =
      validate_povm({HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix::diagonal({0.0, 0.5})});
  CHECK_FALSE(incomplete.pass);
  CHECK(incomplete.completeness_residual == doctest::Approx(0.5));

  // Negative element, sum still identity.
  const PovmValidation negative =
      validate_povm({HermitianMatrix::diagonal({1.0, -0.5}), HermitianMatrix::diagonal({0.0, 1.5})});
  CHECK_FALSE(negative.pass);
  CHECK(negative.element_min_eigs[0] == doctest::Approx(-0.5));
}

TEST_CASE("Povm constructor enforces the validation") {
  CHECK_NOTHROW(Povm(sharp_z()));
  CHECK_THROWS(Povm({HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix::diagonal({0.0, 0.5})}));
  CHECK_THROWS(Povm(std::vector<HermitianMatrix>{}));
}

TEST_CASE("MeasurementAssemblage enforces uniform shape") {
  const Povm z(sharp_z());
  const Povm x(std::vector<HermitianMatrix>{
      HermitianMatrix(0.5 * (CMat::identity(2) + steertest::pauli_x())),
      HermitianMatrix(0.5 * (CMat::identity(2) - steertest::pauli_x()))});
  CHECK_NOTHROW(MeasurementAssemblage({z, x}));

  const Povm trine(std::vector<HermitianMatrix>{
      HermitianMatrix::diagonal({2.0 / 3, 0.0}),
      HermitianMatrix::diagonal({1.0 / 3, 0.5}),
      HermitianMatrix::diagonal({0.0, 0.5})});
  CHECK_THROWS(MeasurementAssemblage({z, trine}));  // outcome counts differ
}

TEST_CASE("outcome vector indexing puts the first setting most significant") {
  CHECK(outcome_vector_index({0, 0}, 2) == 0);
  CHECK(outcome_vector_index({0, 1}, 2) == 1);
  CHECK(outcome_vector_index({1, 0}, 2) == 2);
  CHECK(outcome_vector_index({1, 1}, 2) == 3);
  CHECK(outcome_vector_index({2, 0, 1}, 3) == 2 * 9 + 0 * 3 + 1);

  CHECK(outcome_vector_from_index(2, 2, 2) == std::vector<int>{1, 0});
  CHECK(outcome_vector_from_index(19, 3, 3) == std::vector<int>{2, 0, 1});
}

TEST_CASE("outcome vector indexing round-trips") {
  std::mt19937_64 rng(0x5eed0101);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const int n = 2 + static_cast<int>(rng() % 3);
    std::vector<int> v(m);
    for (int& a : v) a = static_cast<int>(rng() % n);
    const int idx = outcome_vector_index(v, n);
    CHECK(outcome_vector_from_index(idx, m, n) == v);
  }
}

TEST_CASE("joint povm marginals recover commuting measurements") {
  // Two copies of the sharp Z measurement: the parent has elements
  // G_(a,b) = P_a P_b = delta_ab P_a.
  const auto z = sharp_z();
  std::vector<HermitianMatrix> elements{z[0], HermitianMatrix(2), HermitianMatrix(2), z[1]};
  const JointPovm joint(2, 2, elements);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) CHECK(frobenius_dist(marginal(joint, x, a), z[a]) < 1e-12);
}

TEST_CASE("uniform joint povm gives maximally mixed marginals") {
  HermitianMatrix quarter = HermitianMatrix::identity(2);
  quarter *= 0.25;
  const JointPovm joint(2, 2, {quarter, quarter, quarter, quarter});
  HermitianMatrix half = HermitianMatrix::identity(2);
  half *= 0.5;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) CHECK(frobenius_dist(marginal(joint, x, a), half) < 1e-12);
}

TEST_CASE("JointPovm rejects incomplete element sets") {
  HermitianMatrix quarter = HermitianMatrix::identity(2);
  quarter *= 0.25;
  CHECK_THROWS(JointPovm(2, 2, {quarter, quarter, quarter}));          // wrong count
  CHECK_THROWS(JointPovm(2, 2, {quarter, quarter, quarter, HermitianMatrix(2)}));  // not complete
}

TEST_CASE("noisy_projective interpolates between sharp and trivial") {
  CMat zbasis = CMat::identity(2);

  const Povm sharp = noisy_projective(zbasis, 1.0);
  CHECK(frobenius_dist(sharp.element(0), HermitianMatrix::diagonal({1.0, 0.0})) < 1e-15);

  const Povm trivial = noisy_projective(zbasis, 0.0);
  CHECK(frobenius_dist(trivial.element(0), HermitianMatrix::diagonal({0.5, 0.5})) < 1e-15);

  const Povm half = noisy_projective(zbasis, 0.5);
  CHECK(frobenius_dist(half.element(0), HermitianMatrix::diagonal({0.75, 0.25})) < 1e-15);
  CHECK(frobenius_dist(half.element(1), HermitianMatrix::diagonal({0.25, 0.75})) < 1e-15);
}

TEST_CASE("noisy_projective requires an orthonormal basis") {
  CMat bad(2, 2);
  bad(0, 0) = 1.0;
  bad(0, 1) = 1.0;  // second column not orthogonal to the first
  bad(1, 1) = 1.0;
  CHECK_THROWS(noisy_projective(bad, 0.5));
}

TEST_CASE("axis POVMs are valid for every axis and noise level") {
  std::mt19937_64 rng(0x5eed0102);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = steertest::random_bloch_axis(rng);
    const double eta = static_cast<double>(rng() % 101) / 100.0;
    const Povm p = steertest::axis_povm(n[0], n[1], n[2], eta);
    const PovmValidation v = validate_povm(p.elements());
    CHECK(v.pass);
    // Element 0 is eta |+n><+n| + (1-eta) I/2 = I/2 + (eta/2) n.sigma, so its
    // deviation from I/2 has Frobenius norm eta/sqrt(2).
    HermitianMatrix dev = p.element(0);
    HermitianMatrix half = HermitianMatrix::identity(2);
    half *= 0.5;
    dev -= half;
    CHECK(frobenius_dist(dev, HermitianMatrix(2)) == doctest::Approx(eta / std::sqrt(2.0)).epsilon(1e-9));
  }
}
