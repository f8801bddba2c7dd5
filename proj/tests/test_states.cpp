#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "steercert/states.hpp"
#include "test_support.hpp"

using namespace steercert;
using steertest::random_density;
using steertest::random_hermitian;

namespace {

MeasurementAssemblage sharp_xz() {
  const Povm z(std::vector<HermitianMatrix>{HermitianMatrix::diagonal({1.0, 0.0}),
                                            HermitianMatrix::diagonal({0.0, 1.0})});
  const Povm x(std::vector<HermitianMatrix>{
      HermitianMatrix(0.5 * (CMat::identity(2) + steertest::pauli_x())),
      HermitianMatrix(0.5 * (CMat::identity(2) - steertest::pauli_x()))});
  return MeasurementAssemblage({z, x});
}

}  // namespace

TEST_CASE("DensityOperator enforces trace and positivity") {
  HermitianMatrix half = HermitianMatrix::identity(2);
  half *= 0.5;
  CHECK_NOTHROW(DensityOperator{half});
  CHECK_THROWS(DensityOperator(HermitianMatrix::identity(2)));            // trace 2
  CHECK_THROWS(DensityOperator(HermitianMatrix::diagonal({1.5, -0.5})));  // negative eigenvalue
}

TEST_CASE("max_entangled has the expected entries and marginals") {
  const DensityOperator psi = max_entangled(2);
  CHECK(psi.matrix()(0, 0) == Complex(0.5, 0.0));
  CHECK(psi.matrix()(0, 3) == Complex(0.5, 0.0));
  CHECK(psi.matrix()(3, 0) == Complex(0.5, 0.0));
  CHECK(psi.matrix()(3, 3) == Complex(0.5, 0.0));
  CHECK(psi.matrix()(1, 1) == Complex(0.0, 0.0));
  CHECK(psi.matrix().trace() == doctest::Approx(1.0));

  for (int d = 2; d <= 4; ++d) {
    const DensityOperator p = max_entangled(d);
    HermitianMatrix mixed = HermitianMatrix::identity(d);
    mixed *= 1.0 / d;
    CHECK(frobenius_dist(partial_trace(p.matrix(), DimSplit{d, d}, {0}), mixed) < 1e-12);
    CHECK(frobenius_dist(partial_trace(p.matrix(), DimSplit{d, d}, {1}), mixed) < 1e-12);
    // Pure state: single unit eigenvalue.
    CHECK(eig_hermitian(p.matrix()).values[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("sharp Z on the maximally entangled state steers to the transposed projectors") {
  const Assemblage s = assemblage_from_state(max_entangled(2), DimSplit{2, 2}, sharp_xz());
  // sigma_{0|Z} = diag(1,0)/2.
  CHECK(frobenius_dist(s.block(0, 0), HermitianMatrix::diagonal({0.5, 0.0})) < 1e-12);
  CHECK(frobenius_dist(s.block(0, 1), HermitianMatrix::diagonal({0.0, 0.5})) < 1e-12);
  // sigma_{0|X} = |+><+|/2; sigma_x is transpose-invariant.
  CHECK(frobenius_dist(s.block(1, 0),
                       HermitianMatrix(0.25 * (CMat::identity(2) + steertest::pauli_x()))) < 1e-12);
}

TEST_CASE("maximally entangled steering is the transpose rule on random POVMs") {
  std::mt19937_64 rng(0x5eed0201);
  for (int d = 2; d <= 3; ++d) {
    // Random dichotomic POVM: E and I - E with 0 <= E <= I.
    HermitianMatrix e = random_hermitian(rng, d);
    const EigResult eig = eig_hermitian(e);
    const double span = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    e *= 0.5 / span;
    HermitianMatrix shift = HermitianMatrix::identity(d);
    shift *= 0.5;
    e += shift;  // spectrum now inside [0, 1]
    HermitianMatrix rest = HermitianMatrix::identity(d);
    rest -= e;
    const MeasurementAssemblage ma({Povm({e, rest})});

    const Assemblage s = assemblage_from_state(max_entangled(d), DimSplit{d, d}, ma);
    HermitianMatrix want(e.mat().transpose());
    want *= 1.0 / d;
    CHECK(frobenius_dist(s.block(0, 0), want) < 1e-12);
  }
}

TEST_CASE("product states produce unsteerable assemblages with scalar weights") {
  std::mt19937_64 rng(0x5eed0202);
  const DensityOperator rho_a = random_density(rng, 2);
  const DensityOperator rho_b = random_density(rng, 3);
  const DensityOperator joint(kron(rho_a.matrix(), rho_b.matrix()));
  const MeasurementAssemblage ma = sharp_xz();
  const Assemblage s = assemblage_from_state(joint, DimSplit{2, 3}, ma);
  for (int x = 0; x < ma.settings(); ++x)
    for (int a = 0; a < ma.outcomes(); ++a) {
      // Blocks are Tr(M rho_A) * rho_B.
      const double p = (ma.element(x, a).mat() * rho_a.matrix().mat()).trace().real();
      HermitianMatrix want = rho_b.matrix();
      want *= p;
      CHECK(frobenius_dist(s.block(x, a), want) < 1e-12);
      CHECK(s.prob(x, a) == doctest::Approx(p));
    }
}

TEST_CASE("assemblages are no-signaling and normalized by construction") {
  std::mt19937_64 rng(0x5eed0203);
  const DensityOperator rho = random_density(rng, 6);
  const Assemblage s = assemblage_from_state(rho, DimSplit{2, 3}, sharp_xz());
  const HermitianMatrix rho_b = partial_trace(rho.matrix(), DimSplit{2, 3}, {1});
  for (int x = 0; x < s.settings(); ++x) {
    HermitianMatrix sum(3);
    double p = 0.0;
    for (int a = 0; a < s.outcomes(); ++a) {
      sum += s.block(x, a);
      p += s.prob(x, a);
    }
    CHECK(frobenius_dist(sum, rho_b) < 1e-10);
    CHECK(p == doctest::Approx(1.0));
  }
  const ConsistencyReport rep = check_consistency(s.blocks());
  CHECK(rep.pass);
  CHECK(rep.no_signaling_residual < 1e-10);
  CHECK(rep.normalization_residual < 1e-10);
}

TEST_CASE("check_consistency flags signaling block tables") {
  // Setting 0 sums to diag(1,0); setting 1 sums to I/2: marginals differ.
  std::vector<std::vector<HermitianMatrix>> blocks(2);
  blocks[0] = {HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix(2)};
  blocks[1] = {HermitianMatrix::diagonal({0.25, 0.25}), HermitianMatrix::diagonal({0.25, 0.25})};
  const ConsistencyReport rep = check_consistency(blocks);
  CHECK_FALSE(rep.pass);
  CHECK(rep.no_signaling_residual > 0.5);
  CHECK_THROWS(Assemblage(blocks));
}

TEST_CASE("check_consistency flags negative blocks") {
  std::vector<std::vector<HermitianMatrix>> blocks(1);
  blocks[0] = {HermitianMatrix::diagonal({0.75, -0.25}), HermitianMatrix::diagonal({0.25, 0.25})};
  const ConsistencyReport rep = check_consistency(blocks);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst_min_eig == doctest::Approx(-0.25));
}

TEST_CASE("conditional states renormalize and vanish on zero-probability branches") {
  // Alice holds |0><0|; measuring Z gives outcome 1 with probability zero.
  const DensityOperator rho(
      kron(HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix::diagonal({0.5, 0.5})));
  const Povm z(std::vector<HermitianMatrix>{HermitianMatrix::diagonal({1.0, 0.0}),
                                            HermitianMatrix::diagonal({0.0, 1.0})});
  const Assemblage s = assemblage_from_state(rho, DimSplit{2, 2}, MeasurementAssemblage({z}));
  CHECK(s.prob(0, 0) == doctest::Approx(1.0));
  CHECK(s.prob(0, 1) == doctest::Approx(0.0));
  REQUIRE(s.conditional_state(0, 0).has_value());
  CHECK(frobenius_dist(s.conditional_state(0, 0)->matrix(),
                       HermitianMatrix::diagonal({0.5, 0.5})) < 1e-12);
  CHECK_FALSE(s.conditional_state(0, 1).has_value());
}
