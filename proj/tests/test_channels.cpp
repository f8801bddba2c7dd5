#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "steercert/channels.hpp"
#include "test_support.hpp"

using namespace steercert;
using steertest::random_channel;
using steertest::random_density;
using steertest::random_instrument;
using steertest::random_unitary;

namespace {

/// Direct Kraus action sum_k K rho K^dagger, the reference for Choi round trips.
HermitianMatrix kraus_apply(const KrausChannel& ch, const HermitianMatrix& rho) {
  CMat out(ch.dim_out(), ch.dim_out());
  for (const CMat& k : ch.kraus()) out += k * rho.mat() * k.adjoint();
  return HermitianMatrix(out);
}

MeasurementAssemblage sharp_xz() {
  const Povm z(std::vector<HermitianMatrix>{HermitianMatrix::diagonal({1.0, 0.0}),
                                            HermitianMatrix::diagonal({0.0, 1.0})});
  const Povm x(std::vector<HermitianMatrix>{
      HermitianMatrix(0.5 * (CMat::identity(2) + steertest::pauli_x())),
      HermitianMatrix(0.5 * (CMat::identity(2) - steertest::pauli_x()))});
  return MeasurementAssemblage({z, x});
}

/// Measure-and-prepare instrument: rho -> Tr(P_a rho) omega_a with Choi
/// branches P_a^T/d tensor omega_a.
Instrument measure_prepare(const Povm& p, const std::vector<DensityOperator>& prep) {
  const int d = p.dim();
  std::vector<HermitianMatrix> branches;
  for (int a = 0; a < p.outcomes(); ++a) {
    HermitianMatrix pt(p.element(a).mat().transpose());
    pt *= 1.0 / d;
    branches.push_back(kron(pt, prep.at(a).matrix()));
  }
  return Instrument(d, prep.front().dim(), std::move(branches));
}

}  // namespace

TEST_CASE("identity channel has the maximally entangled Choi") {
  for (int d = 2; d <= 3; ++d) {
    const ChoiChannel j = choi_of(KrausChannel(d, d, {CMat::identity(d)}));
    CHECK(frobenius_dist(j.choi(), max_entangled(d).matrix()) < 1e-14);
  }
}

TEST_CASE("fully depolarizing qubit channel has the maximally mixed Choi") {
  std::vector<CMat> kraus{0.5 * CMat::identity(2), 0.5 * steertest::pauli_x(),
                          0.5 * steertest::pauli_y(), 0.5 * steertest::pauli_z()};
  const ChoiChannel j = choi_of(KrausChannel(2, 2, std::move(kraus)));
  HermitianMatrix want = HermitianMatrix::identity(4);
  want *= 0.25;
  CHECK(frobenius_dist(j.choi(), want) < 1e-14);
}

TEST_CASE("Choi operators are normalized to unit trace") {
  std::mt19937_64 rng(0x5eed0301);
  const ChoiChannel j = choi_of(random_channel(rng, 3, 2, 4));
  CHECK(j.choi().trace() == doctest::Approx(1.0));
  CHECK(min_eig(j.choi()) > -1e-12);
}

TEST_CASE("applying a Choi reproduces the Kraus action") {
  std::mt19937_64 rng(0x5eed0302);
  for (int trial = 0; trial < 20; ++trial) {
    const int din = 2 + static_cast<int>(rng() % 2);
    const int dout = 2 + static_cast<int>(rng() % 2);
    const int kmin = (din + dout - 1) / dout;  // Stinespring needs dout*k >= din
    const KrausChannel ch = random_channel(rng, din, dout, kmin + static_cast<int>(rng() % 3));
    const ChoiChannel j = choi_of(ch);
    const DensityOperator rho = random_density(rng, din);
    const DensityOperator via_choi = apply_via_choi(j, rho);
    const HermitianMatrix direct = kraus_apply(ch, rho.matrix());
    CHECK(frobenius_dist(via_choi.matrix(), direct) < 1e-9);
  }
}

TEST_CASE("identity and unitary channels act as expected through their Chois") {
  std::mt19937_64 rng(0x5eed0303);
  const DensityOperator rho = random_density(rng, 3);
  const ChoiChannel id = choi_of(KrausChannel(3, 3, {CMat::identity(3)}));
  CHECK(frobenius_dist(apply_via_choi(id, rho).matrix(), rho.matrix()) < 1e-12);

  const CMat u = random_unitary(rng, 3);
  const ChoiChannel uj = choi_of(KrausChannel(3, 3, {u}));
  const HermitianMatrix want(u * rho.matrix().mat() * u.adjoint());
  CHECK(frobenius_dist(apply_via_choi(uj, rho).matrix(), want) < 1e-12);
}

TEST_CASE("ChoiChannel rejects non-channels") {
  HermitianMatrix scaled = max_entangled(2).matrix();
  scaled *= 0.9;
  CHECK_THROWS(ChoiChannel(2, 2, scaled));  // trace deficient
  CHECK_THROWS(ChoiChannel(2, 2, HermitianMatrix::diagonal({0.75, 0.25, 0.25, -0.25})));  // not PSD
  // PSD with unit trace but Tr_out = diag(0.75, 0.25) != I/2.
  CHECK_THROWS(ChoiChannel(2, 2, HermitianMatrix::diagonal({0.5, 0.25, 0.0, 0.25})));
  // The completely dephasing channel is fine.
  CHECK_NOTHROW(ChoiChannel(2, 2, HermitianMatrix::diagonal({0.5, 0.0, 0.0, 0.5})));
}

TEST_CASE("KrausChannel validates completeness") {
  CHECK_THROWS(KrausChannel(2, 2, {0.9 * CMat::identity(2)}));
  CHECK_NOTHROW(KrausChannel(2, 2, {CMat::identity(2)}));
}

TEST_CASE("instrument branches sum to the total channel") {
  std::mt19937_64 rng(0x5eed0304);
  const Instrument inst = random_instrument(rng, 2, 3, 4);
  HermitianMatrix sum(6);
  for (const HermitianMatrix& b : inst.branches()) sum += b;
  CHECK(frobenius_dist(sum, inst.total().choi()) < 1e-12);
  CHECK(inst.total().choi().trace() == doctest::Approx(1.0));
}

TEST_CASE("Instrument rejects negative branches") {
  const HermitianMatrix psi = max_entangled(2).matrix();
  HermitianMatrix neg = HermitianMatrix::diagonal({0.1, -0.1, 0.0, 0.0});
  HermitianMatrix comp = psi;
  comp -= neg;
  CHECK_THROWS(Instrument(2, 2, {neg, comp}));
}

TEST_CASE("incoherent extensions marginalize back to the instrument total") {
  std::mt19937_64 rng(0x5eed0305);
  const Instrument inst = random_instrument(rng, 2, 2, 3);
  std::vector<DensityOperator> sides;
  for (int k = 0; k < 3; ++k) sides.push_back(random_density(rng, 2));
  const ChannelExtension ext = incoherent_extension(inst, sides);
  CHECK(ext.dim_c() == 2);
  CHECK(ext.dim_a() == 2);
  CHECK(ext.dim_b() == 2);
  CHECK(frobenius_dist(ext.b_marginal().choi(), inst.total().choi()) < 1e-12);

  // The A marginal is the branch-weighted mix of the side states.
  HermitianMatrix want_a(2);
  for (int k = 0; k < 3; ++k) {
    HermitianMatrix s = sides[k].matrix();
    s *= inst.branch(k).trace();
    want_a += s;
  }
  CHECK(frobenius_dist(partial_trace(ext.choi(), ext.split(), {1}), want_a) < 1e-12);
}

TEST_CASE("incoherent extension blocks factor as branch tensor side state") {
  // Single branch: the extension is exactly J tensor sigma interleaved as (C', A, B).
  std::mt19937_64 rng(0x5eed0306);
  const KrausChannel ch = random_channel(rng, 2, 2, 2);
  const Instrument whole(2, 2, {choi_of(ch).choi()});
  const DensityOperator side = random_density(rng, 3);
  const ChannelExtension ext = incoherent_extension(whole, {side});
  const HermitianMatrix want = permute_systems(kron(choi_of(ch).choi(), side.matrix()),
                                               DimSplit{2, 2, 3}, {0, 2, 1});
  CHECK(frobenius_dist(ext.choi(), want) < 1e-12);
}

TEST_CASE("coherent extensions are pure with the right marginal") {
  std::mt19937_64 rng(0x5eed0307);
  const KrausChannel ch = random_channel(rng, 2, 2, 2);
  const ChannelExtension ext = coherent_extension(ch);
  CHECK(ext.dim_a() == 2);
  CHECK(frobenius_dist(ext.b_marginal().choi(), choi_of(ch).choi()) < 1e-12);
  // Stinespring dilations are rank one in Choi form.
  const EigResult eig = eig_hermitian(ext.choi());
  CHECK(eig.values[0] == doctest::Approx(1.0));
  for (size_t k = 1; k < eig.values.size(); ++k) CHECK(std::abs(eig.values[k]) < 1e-12);
}

TEST_CASE("constant extension prepares the maximally entangled pair") {
  const ChannelExtension ext = constant_psiplus_extension(2, 2);
  HermitianMatrix mixed_c = HermitianMatrix::identity(2);
  mixed_c *= 0.5;
  CHECK(frobenius_dist(ext.choi(), kron(mixed_c, max_entangled(2).matrix())) < 1e-14);
  // Its base channel is the constant maximally mixed preparation.
  HermitianMatrix want = kron(mixed_c, mixed_c);
  CHECK(frobenius_dist(ext.b_marginal().choi(), want) < 1e-14);
}

TEST_CASE("measuring the constant extension steers the Choi assemblage") {
  const ChannelExtension ext = constant_psiplus_extension(2, 2);
  const MeasurementAssemblage ma = sharp_xz();
  const ChannelAssemblage ca = channel_assemblage_from_measurement(ext, ma);
  CHECK(ca.dim_in() == 2);
  CHECK(ca.dim_out() == 2);
  CHECK(ca.common_trace() == doctest::Approx(1.0));

  // Blocks are I/2 tensor (M^T / 2): measuring psi+ steers by the transpose rule.
  HermitianMatrix mixed_c = HermitianMatrix::identity(2);
  mixed_c *= 0.5;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      HermitianMatrix steered(ma.element(x, a).mat().transpose());
      steered *= 0.5;
      CHECK(frobenius_dist(ca.block(x, a), kron(mixed_c, steered)) < 1e-12);
    }

  const Assemblage s = choi_assemblage(ca);
  CHECK(s.dim_b() == 4);
  CHECK(check_consistency(s.blocks()).pass);
}

TEST_CASE("channel assemblages from any extension share the common channel") {
  std::mt19937_64 rng(0x5eed0308);
  for (int trial = 0; trial < 5; ++trial) {
    const KrausChannel ch = random_channel(rng, 2, 2, 2);
    const ChannelExtension ext = coherent_extension(ch);
    const ChannelAssemblage ca = channel_assemblage_from_measurement(ext, sharp_xz());
    CHECK(frobenius_dist(ca.common_choi(), ext.b_marginal().choi()) < 1e-10);
    CHECK(check_consistency(choi_assemblage(ca).blocks()).pass);
  }
}

TEST_CASE("ChannelAssemblage rejects tables without a common channel") {
  const HermitianMatrix psi = max_entangled(2).matrix();
  const ChoiChannel id2 = choi_of(KrausChannel(2, 2, {CMat::identity(2)}));
  const ChoiChannel flip = choi_of(KrausChannel(2, 2, {steertest::pauli_x()}));
  HermitianMatrix half_id = id2.choi();
  half_id *= 0.5;
  HermitianMatrix half_flip = flip.choi();
  half_flip *= 0.5;
  // Setting 0 splits the identity, setting 1 splits the bit flip.
  std::vector<std::vector<HermitianMatrix>> blocks{{half_id, half_id}, {half_flip, half_flip}};
  CHECK_THROWS(ChannelAssemblage(2, 2, std::move(blocks)));
  (void)psi;
}

TEST_CASE("extension constructor rejects non-positive or non-TP Chois") {
  CHECK_THROWS(ChannelExtension(2, 2, 2, HermitianMatrix::identity(8)));  // trace 8, not TP
  HermitianMatrix fine = constant_psiplus_extension(2, 2).choi();
  CHECK_NOTHROW(ChannelExtension(2, 2, 2, fine));
}
