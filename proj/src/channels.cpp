#include "steercert/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace steercert {

namespace {

void check_choi_invariants(const HermitianMatrix& j, int dim_in, int dim_out, const char* where) {
  if (j.dim() != dim_in * dim_out) throw std::invalid_argument(std::string(where) + ": Choi dim mismatch");
  if (min_eig(j) < -kPsdTol) throw std::invalid_argument(std::string(where) + ": Choi not PSD");
  const HermitianMatrix marg = partial_trace(j, DimSplit{dim_in, dim_out}, {0});
  HermitianMatrix want = HermitianMatrix::identity(dim_in);
  want *= 1.0 / dim_in;
  if (frobenius_dist(marg, want) > kConsistencyTol)
    throw std::invalid_argument(std::string(where) + ": not trace preserving (Tr_out J != I/dimIn)");
}

}  // namespace

KrausChannel::KrausChannel(int dim_in, int dim_out, std::vector<CMat> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in < 1 || dim_out < 1) throw std::invalid_argument("KrausChannel: bad dimensions");
  if (kraus_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  CMat sum(dim_in, dim_in);
  for (const CMat& k : kraus_) {
    if (k.rows() != dim_out || k.cols() != dim_in)
      throw std::invalid_argument("KrausChannel: Kraus operator shape mismatch");
    sum += k.adjoint() * k;
  }
  if (frobenius_dist(sum, CMat::identity(dim_in)) > kCompletenessTol)
    throw std::invalid_argument("KrausChannel: sum K^dagger K != identity");
}

ChoiChannel::ChoiChannel(int dim_in, int dim_out, HermitianMatrix j)
    : dim_in_(dim_in), dim_out_(dim_out), j_(std::move(j)) {
  check_choi_invariants(j_, dim_in_, dim_out_, "ChoiChannel");
}

Instrument::Instrument(int dim_in, int dim_out, std::vector<HermitianMatrix> branches)
    : dim_in_(dim_in), dim_out_(dim_out), branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("Instrument: no branches");
  HermitianMatrix sum(dim_in * dim_out);
  for (const HermitianMatrix& b : branches_) {
    if (b.dim() != dim_in * dim_out) throw std::invalid_argument("Instrument: branch dim mismatch");
    if (min_eig(b) < -kPsdTol) throw std::invalid_argument("Instrument: branch not PSD");
    sum += b;
  }
  check_choi_invariants(sum, dim_in_, dim_out_, "Instrument (branch sum)");
}

ChoiChannel Instrument::total() const {
  HermitianMatrix sum(dim_in_ * dim_out_);
  for (const HermitianMatrix& b : branches_) sum += b;
  return ChoiChannel(dim_in_, dim_out_, sum);
}

ChannelAssemblage::ChannelAssemblage(int dim_in, int dim_out,
                                     std::vector<std::vector<HermitianMatrix>> blocks)
    : dim_in_(dim_in), dim_out_(dim_out), blocks_(std::move(blocks)) {
  if (blocks_.empty() || blocks_.front().empty())
    throw std::invalid_argument("ChannelAssemblage: empty block table");
  const int d = dim_in * dim_out;
  const size_t n = blocks_.front().size();
  std::vector<HermitianMatrix> sums;
  for (const auto& row : blocks_) {
    if (row.size() != n) throw std::invalid_argument("ChannelAssemblage: ragged block table");
    HermitianMatrix sum(d);
    for (const HermitianMatrix& b : row) {
      if (b.dim() != d) throw std::invalid_argument("ChannelAssemblage: block dim mismatch");
      if (min_eig(b) < -kPsdTol) throw std::invalid_argument("ChannelAssemblage: block not PSD");
      sum += b;
    }
    sums.push_back(sum);
  }
  const double scale = std::max(1.0, sums[0].trace());
  for (size_t x = 1; x < sums.size(); ++x)
    if (frobenius_dist(sums[x], sums[0]) > kConsistencyTol * scale)
      throw std::invalid_argument("ChannelAssemblage: per-setting sums disagree (no common channel)");
  // The common sum must be a channel Choi up to overall scale.
  const HermitianMatrix marg = partial_trace(sums[0], DimSplit{dim_in_, dim_out_}, {0});
  HermitianMatrix want = HermitianMatrix::identity(dim_in_);
  want *= sums[0].trace() / dim_in_;
  if (frobenius_dist(marg, want) > kConsistencyTol * scale)
    throw std::invalid_argument("ChannelAssemblage: common sum is not trace preserving up to scale");
}

HermitianMatrix ChannelAssemblage::common_choi() const {
  HermitianMatrix sum(dim_in_ * dim_out_);
  for (const HermitianMatrix& b : blocks_.front()) sum += b;
  return sum;
}

ChannelExtension::ChannelExtension(int dim_c, int dim_a, int dim_b, HermitianMatrix choi)
    : dim_c_(dim_c), dim_a_(dim_a), dim_b_(dim_b), choi_(std::move(choi)) {
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("ChannelExtension: bad dimensions");
  check_choi_invariants(choi_, dim_c_, dim_a_ * dim_b_, "ChannelExtension");
}

ChoiChannel ChannelExtension::b_marginal() const {
  return ChoiChannel(dim_c_, dim_b_, partial_trace(choi_, split(), {0, 2}));
}

ChoiChannel choi_of(const KrausChannel& ch) {
  const int din = ch.dim_in(), dout = ch.dim_out();
  CMat j(din * dout, din * dout);
  for (const CMat& k : ch.kraus())
    for (int i = 0; i < din; ++i)
      for (int o = 0; o < dout; ++o) {
        const Complex left = k(o, i);
        if (left == Complex(0.0)) continue;
        for (int jj = 0; jj < din; ++jj)
          for (int oo = 0; oo < dout; ++oo)
            j(i * dout + o, jj * dout + oo) += left * std::conj(k(oo, jj)) / static_cast<double>(din);
      }
  return ChoiChannel(din, dout, HermitianMatrix(j));
}

DensityOperator apply_via_choi(const ChoiChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.dim_in()) throw std::invalid_argument("apply_via_choi: input dim mismatch");
  const CMat op = kron(rho.matrix().mat().transpose(), CMat::identity(ch.dim_out())) * ch.choi().mat();
  CMat raw = partial_trace(op, ch.split(), {1});
  raw *= Complex(ch.dim_in(), 0.0);
  HermitianMatrix out(raw);
  if (min_eig(out) < 0.0) out = project_psd(out);
  out *= 1.0 / out.trace();
  return DensityOperator(out);
}

ChannelExtension incoherent_extension(const Instrument& inst,
                                      const std::vector<DensityOperator>& sigma_a) {
  if (sigma_a.empty()) throw std::invalid_argument("incoherent_extension: no branches");
  if (sigma_a.size() != static_cast<size_t>(inst.branch_count()))
    throw std::invalid_argument("incoherent_extension: branch/state count mismatch");
  const int da = sigma_a.front().dim();
  for (const DensityOperator& s : sigma_a)
    if (s.dim() != da) throw std::invalid_argument("incoherent_extension: mixed A dimensions");

  const int dc = inst.dim_in(), db = inst.dim_out();
  CMat j(dc * da * db, dc * da * db);
  for (int lam = 0; lam < inst.branch_count(); ++lam) {
    const HermitianMatrix& jl = inst.branch(lam);
    const HermitianMatrix& sl = sigma_a[lam].matrix();
    for (int c = 0; c < dc; ++c)
      for (int cc = 0; cc < dc; ++cc)
        for (int al = 0; al < da; ++al)
          for (int ar = 0; ar < da; ++ar) {
            const Complex sv = sl(al, ar);
            if (sv == Complex(0.0)) continue;
            for (int b = 0; b < db; ++b)
              for (int bb = 0; bb < db; ++bb)
                j((c * da + al) * db + b, (cc * da + ar) * db + bb) += jl(c * db + b, cc * db + bb) * sv;
          }
  }
  return ChannelExtension(dc, da, db, HermitianMatrix(j));
}

ChannelExtension coherent_extension(const KrausChannel& ch) {
  const int dc = ch.dim_in(), db = ch.dim_out();
  const int da = static_cast<int>(ch.kraus().size());
  CMat j(dc * da * db, dc * da * db);
  for (int i = 0; i < dc; ++i)
    for (int jj = 0; jj < dc; ++jj)
      for (int al = 0; al < da; ++al)
        for (int ar = 0; ar < da; ++ar) {
          const CMat& kl = ch.kraus()[al];
          const CMat& kr = ch.kraus()[ar];
          for (int b = 0; b < db; ++b)
            for (int bb = 0; bb < db; ++bb)
              j((i * da + al) * db + b, (jj * da + ar) * db + bb) =
                  kl(b, i) * std::conj(kr(bb, jj)) / static_cast<double>(dc);
        }
  return ChannelExtension(dc, da, db, HermitianMatrix(j));
}

ChannelExtension constant_psiplus_extension(int d, int dim_c) {
  if (d < 2) throw std::invalid_argument("constant_psiplus_extension: need d >= 2");
  if (dim_c < 1) throw std::invalid_argument("constant_psiplus_extension: need dimC >= 1");
  HermitianMatrix ic = HermitianMatrix::identity(dim_c);
  ic *= 1.0 / dim_c;
  const HermitianMatrix psi = max_entangled(d).matrix();
  return ChannelExtension(dim_c, d, d, kron(ic, psi));
}

ChannelAssemblage channel_assemblage_from_measurement(const ChannelExtension& ext,
                                                      const MeasurementAssemblage& ma) {
  if (ma.dim() != ext.dim_a())
    throw std::invalid_argument("channel_assemblage_from_measurement: measurement dim != dimA");
  const CMat ic = CMat::identity(ext.dim_c());
  const CMat ib = CMat::identity(ext.dim_b());
  std::vector<std::vector<HermitianMatrix>> blocks(ma.settings());
  for (int x = 0; x < ma.settings(); ++x)
    for (int a = 0; a < ma.outcomes(); ++a) {
      const CMat op = kron(ic, kron(ma.element(x, a).mat(), ib)) * ext.choi().mat();
      blocks[x].push_back(HermitianMatrix(partial_trace(op, ext.split(), {0, 2})));
    }
  return ChannelAssemblage(ext.dim_c(), ext.dim_b(), std::move(blocks));
}

Assemblage choi_assemblage(const ChannelAssemblage& ca) {
  const double s = ca.common_trace();
  if (s <= 0.0) throw std::invalid_argument("choi_assemblage: common channel has non-positive trace");
  std::vector<std::vector<HermitianMatrix>> blocks(ca.settings());
  for (int x = 0; x < ca.settings(); ++x)
    for (int a = 0; a < ca.outcomes(); ++a) {
      HermitianMatrix b = ca.block(x, a);
      b *= 1.0 / s;
      blocks[x].push_back(b);
    }
  return Assemblage(std::move(blocks));
}

}  // namespace steercert
