#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace steercert {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage. The raw carrier under the typed
/// wrappers; products and Kraus operators live here, validated operators in
/// HermitianMatrix.
class CMat {
 public:
  CMat() = default;
  CMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("CMat: negative dimension");
  }

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  CMat adjoint() const;
  CMat transpose() const;
  CMat conj() const;
  Complex trace() const;
  double frobenius_norm() const;

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(Complex s);

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(Complex s, CMat a) { return a *= s; }
  friend CMat operator*(CMat a, Complex s) { return a *= s; }
  friend CMat operator*(const CMat& a, const CMat& b);

  bool all_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

/// Subsystem dimensions of a composite space, in tensor order.
/// Composite indices are row-major: the first factor is the most significant
/// digit, matching kron(A, B) index layout (iA * dimB + iB).
struct DimSplit {
  std::vector<int> factors;

  DimSplit() = default;
  DimSplit(std::initializer_list<int> f) : factors(f) {}
  explicit DimSplit(std::vector<int> f) : factors(std::move(f)) {}

  int total_dim() const {
    int d = 1;
    for (int f : factors) d *= f;
    return d;
  }
  size_t count() const { return factors.size(); }

  /// strides()[k] = product of factor dims after position k.
  std::vector<int> strides() const {
    std::vector<int> s(factors.size(), 1);
    for (int k = static_cast<int>(factors.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * factors[k + 1];
    return s;
  }

  void check_matches(int dim, const std::string& where) const {
    if (factors.empty()) throw std::invalid_argument(where + ": empty DimSplit");
    for (int f : factors)
      if (f < 1) throw std::invalid_argument(where + ": non-positive subsystem dimension");
    if (total_dim() != dim) throw std::invalid_argument(where + ": DimSplit product does not match matrix dim");
  }
};

/// Square complex matrix hermitized at construction: the stored entries are
/// (M + M^dagger)/2. The asymmetry of the ingested matrix is recorded, and
/// anything above 1e-9 raises the warning flag rather than being rejected.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int dim) : mat_(dim, dim) {}
  /// Hermitize an arbitrary square matrix.
  explicit HermitianMatrix(const CMat& m);

  int dim() const { return mat_.rows(); }
  Complex operator()(int i, int j) const { return mat_(i, j); }
  const CMat& mat() const { return mat_; }

  double asymmetry() const { return asymmetry_; }
  bool asymmetry_warning() const { return asymmetry_ > 1e-9; }

  double trace() const { return mat_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

  static HermitianMatrix identity(int n) { return HermitianMatrix(CMat::identity(n)); }
  static HermitianMatrix diagonal(const std::vector<double>& d);
  /// Rank-1 projector |v><v| (v need not be normalized).
  static HermitianMatrix outer(const std::vector<Complex>& v);

 private:
  CMat mat_;
  double asymmetry_ = 0.0;
};

struct EigResult {
  std::vector<double> values;  // descending
  CMat vectors;                // column k is the eigenvector for values[k]
};

/// Cyclic Jacobi diagonalization for Hermitian matrices. Sweeps are capped at
/// 100; failure to drive the off-diagonal norm below threshold throws.
EigResult eig_hermitian(const HermitianMatrix& h);

/// Frobenius-nearest PSD matrix: eigendecompose, clamp negatives, recompose.
HermitianMatrix project_psd(const HermitianMatrix& h);

CMat kron(const CMat& a, const CMat& b);
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix kron(const std::vector<HermitianMatrix>& factors);

/// Reduced operator on the kept subsystems (indices into split, kept in their
/// original relative order). Total trace is preserved.
HermitianMatrix partial_trace(const HermitianMatrix& m, const DimSplit& split, const std::vector<int>& keep);
CMat partial_trace(const CMat& m, const DimSplit& split, const std::vector<int>& keep);

/// Reorder tensor factors: order[j] names the original subsystem that becomes
/// factor j of the result. permute_systems(kron(A,B), {dA,dB}, {1,0}) == kron(B,A).
HermitianMatrix permute_systems(const HermitianMatrix& m, const DimSplit& split, const std::vector<int>& order);

double min_eig(const HermitianMatrix& h);
double frobenius_dist(const HermitianMatrix& a, const HermitianMatrix& b);
double frobenius_dist(const CMat& a, const CMat& b);

}  // namespace steercert
