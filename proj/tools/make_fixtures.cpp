// Regenerates the bundled JSON fixtures from the library's own constructors,
// so every file is schema-valid by construction. Usage: make_fixtures [dir]
// (default "fixtures"). All content is deterministic.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "steercert/certify.hpp"
#include "steercert/json_io.hpp"

using namespace steercert;

namespace {

CMat z_basis() { return CMat::identity(2); }

CMat x_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  CMat b(2, 2);
  b(0, 0) = s;
  b(1, 0) = s;
  b(0, 1) = s;
  b(1, 1) = -s;
  return b;
}

MeasurementAssemblage xz(double eta) {
  return MeasurementAssemblage(
      {noisy_projective(z_basis(), eta), noisy_projective(x_basis(), eta)});
}

/// Choi block of the map X -> K X K^dagger in the trace-1 convention.
HermitianMatrix single_kraus_choi(const CMat& k) {
  const int dout = k.rows(), din = k.cols();
  CMat j(din * dout, din * dout);
  for (int i = 0; i < din; ++i)
    for (int o = 0; o < dout; ++o)
      for (int jj = 0; jj < din; ++jj)
        for (int oo = 0; oo < dout; ++oo)
          j(i * dout + o, jj * dout + oo) +=
              k(o, i) * std::conj(k(oo, jj)) / static_cast<double>(din);
  return HermitianMatrix(j);
}

ChannelExtension incoherent_fixture_extension() {
  // Two-branch instrument that measures in the Z basis, tagged on the A
  // factor by |0><0| resp. |+><+|.
  CMat p0(2, 2), p1(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const Instrument lueders_z(2, 2, {single_kraus_choi(p0), single_kraus_choi(p1)});

  HermitianMatrix zero_state(2), plus_state(2);
  zero_state = HermitianMatrix(p0);
  CMat plus(2, 2);
  plus(0, 0) = 0.5;
  plus(0, 1) = 0.5;
  plus(1, 0) = 0.5;
  plus(1, 1) = 0.5;
  plus_state = HermitianMatrix(plus);
  return incoherent_extension(lueders_z,
                              {DensityOperator(zero_state), DensityOperator(plus_state)});
}

ChannelExtension depolarizing_dilation_extension(double p) {
  const double c0 = std::sqrt(1.0 - 3.0 * p / 4.0);
  const double c1 = std::sqrt(p / 4.0);
  CMat k0 = CMat::identity(2);
  k0 *= Complex(c0, 0.0);
  CMat kx(2, 2), ky(2, 2), kz(2, 2);
  kx(0, 1) = c1;
  kx(1, 0) = c1;
  ky(0, 1) = Complex(0.0, -c1);
  ky(1, 0) = Complex(0.0, c1);
  kz(0, 0) = c1;
  kz(1, 1) = -c1;
  return coherent_extension(KrausChannel(2, 2, {k0, kx, ky, kz}));
}

/// Computational and Fourier bases of dimension 4, mixed with white noise.
/// The coherent dilation of the four-Kraus depolarizing channel gives Alice a
/// four-dimensional factor, so her measurements must live there too.
MeasurementAssemblage mub4(double eta) {
  const CMat comp = CMat::identity(4);
  CMat fourier(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      const double phase = 2.0 * M_PI * j * k / 4.0;
      fourier(j, k) = Complex(std::cos(phase), std::sin(phase)) * Complex(0.5, 0.0);
    }
  return MeasurementAssemblage({noisy_projective(comp, eta), noisy_projective(fourier, eta)});
}

Json composite(const ChannelExtension& ext, const MeasurementAssemblage& ma) {
  Json j;
  j["extension"] = to_json(ext);
  j["measurements"] = to_json(ma);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  const auto put = [&](const std::string& name, const Json& j) {
    save_json_file(dir + "/" + name, j);
    std::cout << "wrote " << dir << "/" << name << "\n";
  };

  // Measurement assemblages: the sharp X/Z pair and a white-noise eta grid.
  put("sharp-xz.json", to_json(xz(1.0)));
  for (const double eta : {0.25, 0.50, 0.60, 0.75, 0.90}) {
    char name[64];
    std::snprintf(name, sizeof(name), "noisy-xz-%03d.json",
                  static_cast<int>(std::lround(eta * 100)));
    put(name, to_json(xz(eta)));
  }

  // State assemblages steered on one half of a maximally entangled pair.
  const DimSplit pair{2, 2};
  put("assemblage-psiplus-sharp.json",
      to_json(assemblage_from_state(max_entangled(2), pair, xz(1.0))));
  put("assemblage-psiplus-050.json",
      to_json(assemblage_from_state(max_entangled(2), pair, xz(0.5))));

  // Channel-steering inputs in the {"extension", "measurements"} form.
  put("incoherent-extension.json", composite(incoherent_fixture_extension(), xz(1.0)));
  put("depolarizing-dilation.json", composite(depolarizing_dilation_extension(0.5), mub4(0.5)));
  put("constant-psiplus.json", composite(constant_psiplus_extension(2, 2), xz(1.0)));

  return 0;
}
