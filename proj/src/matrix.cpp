#include "steercert/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace steercert {

CMat CMat::adjoint() const {
  CMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMat CMat::transpose() const {
  CMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMat CMat::conj() const {
  CMat r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
  return r;
}

Complex CMat::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace: non-square matrix");
  Complex t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMat::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

CMat& CMat::operator+=(const CMat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMat +=: shape mismatch");
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMat -=: shape mismatch");
  for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

CMat& CMat::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("CMat *: shape mismatch");
  CMat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

bool CMat::all_finite() const {
  for (const Complex& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

HermitianMatrix::HermitianMatrix(const CMat& m) : mat_(m.rows(), m.cols()) {
  if (m.rows() != m.cols()) throw std::invalid_argument("HermitianMatrix: non-square input");
  if (!m.all_finite()) throw std::invalid_argument("HermitianMatrix: non-finite entry");
  const int n = m.rows();
  double asym2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      const Complex dev = 0.5 * (m(i, j) - std::conj(m(j, i)));
      mat_(i, j) = avg;
      asym2 += std::norm(dev);
    }
  }
  asymmetry_ = std::sqrt(asym2);
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  mat_ += o.mat_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  mat_ -= o.mat_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  mat_ *= Complex(s, 0.0);
  return *this;
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  CMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::outer(const std::vector<Complex>& v) {
  const int n = static_cast<int>(v.size());
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return HermitianMatrix(m);
}

namespace {

double off_diagonal_norm(const CMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;
constexpr double kOffNormThreshold = 1e-13;

}  // namespace

EigResult eig_hermitian(const HermitianMatrix& h) {
  const int n = h.dim();
  CMat a = h.mat();
  CMat v = CMat::identity(n);

  // Threshold scales with the input norm so large-entry matrices terminate.
  const double scale = std::max(1.0, a.frobenius_norm());
  const double stop = kOffNormThreshold * scale;

  if (n == 1) {
    // nothing to rotate
  } else {
    bool converged = off_diagonal_norm(a) <= stop;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const Complex b = a(p, q);
          const double babs = std::abs(b);
          if (babs <= stop / (static_cast<double>(n) * n)) continue;

          // 2x2 unitary R = diag-phase * real rotation zeroing a(p,q):
          //   R(p,p)=c, R(p,q)=s, R(q,p)=-s*w, R(q,q)=c*w  with w = conj(b)/|b|.
          const Complex w = std::conj(b) / babs;
          const double alpha = a(p, p).real();
          const double gamma = a(q, q).real();
          const double tau = (gamma - alpha) / (2.0 * babs);
          const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                        : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          // A <- R^dagger A R, columns first then rows.
          for (int k = 0; k < n; ++k) {
            const Complex akp = a(k, p), akq = a(k, q);
            a(k, p) = c * akp - s * w * akq;
            a(k, q) = s * akp + c * w * akq;
          }
          const Complex wbar = std::conj(w);
          for (int k = 0; k < n; ++k) {
            const Complex apk = a(p, k), aqk = a(q, k);
            a(p, k) = c * apk - s * wbar * aqk;
            a(q, k) = s * apk + c * wbar * aqk;
          }
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          a(p, p) = Complex(a(p, p).real(), 0.0);
          a(q, q) = Complex(a(q, q).real(), 0.0);

          for (int k = 0; k < n; ++k) {
            const Complex vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * w * vkq;
            v(k, q) = s * vkp + c * w * vkq;
          }
        }
      }
      converged = off_diagonal_norm(a) <= stop;
    }
    if (!converged)
      throw std::runtime_error("eig_hermitian: Jacobi sweeps exhausted without convergence (malformed input?)");
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return diag[x] > diag[y]; });

  EigResult r;
  r.values.resize(n);
  r.vectors = CMat(n, n);
  for (int k = 0; k < n; ++k) {
    r.values[k] = diag[idx[k]];
    for (int i = 0; i < n; ++i) r.vectors(i, k) = v(i, idx[k]);
  }
  return r;
}

HermitianMatrix project_psd(const HermitianMatrix& h) {
  const EigResult e = eig_hermitian(h);
  const int n = h.dim();
  CMat out(n, n);
  for (int k = 0; k < n; ++k) {
    const double lam = e.values[k];
    if (lam <= 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const Complex vik = e.vectors(i, k);
      if (vik == Complex(0.0)) continue;
      for (int j = 0; j < n; ++j) out(i, j) += lam * vik * std::conj(e.vectors(j, k));
    }
  }
  return HermitianMatrix(out);
}

CMat kron(const CMat& a, const CMat& b) {
  CMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia)
    for (int ja = 0; ja < a.cols(); ++ja) {
      const Complex aij = a(ia, ja);
      if (aij == Complex(0.0)) continue;
      for (int ib = 0; ib < b.rows(); ++ib)
        for (int jb = 0; jb < b.cols(); ++jb)
          r(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
    }
  return r;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.mat(), b.mat()));
}

HermitianMatrix kron(const std::vector<HermitianMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("kron: empty factor list");
  CMat acc = factors.front().mat();
  for (size_t k = 1; k < factors.size(); ++k) acc = kron(acc, factors[k].mat());
  return HermitianMatrix(acc);
}

CMat partial_trace(const CMat& m, const DimSplit& split, const std::vector<int>& keep) {
  split.check_matches(m.rows(), "partial_trace");
  const int nsys = static_cast<int>(split.count());
  std::vector<bool> kept(nsys, false);
  for (int k : keep) {
    if (k < 0 || k >= nsys) throw std::invalid_argument("partial_trace: keep index out of range");
    if (kept[k]) throw std::invalid_argument("partial_trace: duplicate keep index");
    kept[k] = true;
  }
  std::vector<int> keep_sorted, traced;
  for (int k = 0; k < nsys; ++k) (kept[k] ? keep_sorted : traced).push_back(k);

  const std::vector<int> strides = split.strides();
  int dim_keep = 1, dim_traced = 1;
  for (int k : keep_sorted) dim_keep *= split.factors[k];
  for (int k : traced) dim_traced *= split.factors[k];

  // Offsets of every kept and traced multi-index in the full composite index.
  std::vector<int> keep_offsets(dim_keep, 0);
  for (int r = 0; r < dim_keep; ++r) {
    int rem = r;
    for (int pos = static_cast<int>(keep_sorted.size()) - 1; pos >= 0; --pos) {
      const int sys = keep_sorted[pos];
      keep_offsets[r] += (rem % split.factors[sys]) * strides[sys];
      rem /= split.factors[sys];
    }
  }
  std::vector<int> traced_offsets(dim_traced, 0);
  for (int t = 0; t < dim_traced; ++t) {
    int rem = t;
    for (int pos = static_cast<int>(traced.size()) - 1; pos >= 0; --pos) {
      const int sys = traced[pos];
      traced_offsets[t] += (rem % split.factors[sys]) * strides[sys];
      rem /= split.factors[sys];
    }
  }

  CMat out(dim_keep, dim_keep);
  for (int r = 0; r < dim_keep; ++r)
    for (int c = 0; c < dim_keep; ++c) {
      Complex acc = 0.0;
      for (int t = 0; t < dim_traced; ++t)
        acc += m(keep_offsets[r] + traced_offsets[t], keep_offsets[c] + traced_offsets[t]);
      out(r, c) = acc;
    }
  return out;
}

HermitianMatrix partial_trace(const HermitianMatrix& m, const DimSplit& split, const std::vector<int>& keep) {
  return HermitianMatrix(partial_trace(m.mat(), split, keep));
}

HermitianMatrix permute_systems(const HermitianMatrix& m, const DimSplit& split, const std::vector<int>& order) {
  split.check_matches(m.dim(), "permute_systems");
  const int nsys = static_cast<int>(split.count());
  if (static_cast<int>(order.size()) != nsys) throw std::invalid_argument("permute_systems: order size mismatch");
  std::vector<bool> seen(nsys, false);
  for (int o : order) {
    if (o < 0 || o >= nsys || seen[o]) throw std::invalid_argument("permute_systems: invalid permutation");
    seen[o] = true;
  }

  const std::vector<int> old_strides = split.strides();
  DimSplit new_split;
  for (int o : order) new_split.factors.push_back(split.factors[o]);
  const int dim = m.dim();

  // map[newIndex] = oldIndex
  std::vector<int> map(dim, 0);
  for (int x = 0; x < dim; ++x) {
    int rem = x, old_index = 0;
    for (int pos = nsys - 1; pos >= 0; --pos) {
      const int sys = order[pos];
      old_index += (rem % new_split.factors[pos]) * old_strides[sys];
      rem /= new_split.factors[pos];
    }
    map[x] = old_index;
  }

  CMat out(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out(i, j) = m(map[i], map[j]);
  return HermitianMatrix(out);
}

double min_eig(const HermitianMatrix& h) {
  return eig_hermitian(h).values.back();
}

double frobenius_dist(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("frobenius_dist: shape mismatch");
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - b(i, j));
  return std::sqrt(s);
}

double frobenius_dist(const HermitianMatrix& a, const HermitianMatrix& b) {
  return frobenius_dist(a.mat(), b.mat());
}

}  // namespace steercert
