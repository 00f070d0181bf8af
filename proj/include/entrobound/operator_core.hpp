#pragma once

// Dense finite-dimensional operator algebra: Hermitian operators, density
// matrices, pure states, tensor/partial-trace bookkeeping, purifications.

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "entrobound/error.hpp"

namespace entrobound {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNormTol = 1e-10;
/// Eigenvalues with |x| <= kZeroCutoff * max|x| are treated as zero.
inline constexpr double kZeroCutoff = 1e-12;

/// Largest |A_ij - conj(A_ji)|.
double hermiticity_defect(const Matrix& a);

class HermitianOperator {
 public:
  /// Validates hermiticity to kHermiticityTol and stores the exactly
  /// symmetrized matrix.
  explicit HermitianOperator(const Matrix& m);

  static HermitianOperator diagonal(std::span<const double> entries);
  static HermitianOperator diagonal(const RealVector& entries);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }

 private:
  struct Unchecked {};
  HermitianOperator(Matrix m, Unchecked) : m_(std::move(m)) {}
  friend class DensityMatrix;

  Matrix m_;
};

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator operator*(double s, const HermitianOperator& a);

class PureStateVector {
 public:
  /// Requires unit norm within kNormTol.
  explicit PureStateVector(Vector amplitudes);
  static PureStateVector normalized(const Vector& v);
  static PureStateVector basis(Index dim, Index k);

  Index dim() const { return v_.size(); }
  const Vector& amplitudes() const { return v_; }
  Matrix projector() const { return v_ * v_.adjoint(); }

 private:
  Vector v_;
};

class DensityMatrix {
 public:
  /// Validates eigenvalues >= -kPositivityTol and unit trace.
  explicit DensityMatrix(const HermitianOperator& op);
  explicit DensityMatrix(const Matrix& m) : DensityMatrix(HermitianOperator(m)) {}

  /// For results that are positive by construction (partial traces, channel
  /// outputs, convex combinations). Checks hermiticity and trace only.
  static DensityMatrix from_positive(const Matrix& m);

  static DensityMatrix maximally_mixed(Index dim);
  static DensityMatrix basis_state(Index dim, Index k);
  static DensityMatrix pure(const PureStateVector& psi);
  static DensityMatrix diagonal(std::span<const double> probs);

  Index dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }

  /// Tr(H rho) for a Hermitian observable of matching dimension.
  double expectation(const HermitianOperator& h) const;

 private:
  explicit DensityMatrix(HermitianOperator op, HermitianOperator::Unchecked) : op_(std::move(op)) {}
  HermitianOperator op_;
};

/// Convex combination p*a + (1-p)*b.
DensityMatrix mix(double p, const DensityMatrix& a, const DensityMatrix& b);

/// Ordered tensor factor dimensions (d_1, ..., d_n), first factor slowest.
class SubsystemShape {
 public:
  SubsystemShape() = default;
  SubsystemShape(std::initializer_list<Index> dims);
  explicit SubsystemShape(std::vector<Index> dims);

  std::size_t size() const { return dims_.size(); }
  Index operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<Index>& dims() const { return dims_; }
  Index total() const;

  void require_total(Index dim) const;
  void require_bipartite() const;

 private:
  std::vector<Index> dims_;
};

struct EigenDecomposition {
  RealVector values;  // descending
  Matrix vectors;     // columns are eigenvectors
};

EigenDecomposition eig_hermitian(const HermitianOperator& a);
/// Eigenvalues only, descending.
RealVector eigenvalues(const HermitianOperator& a);

double trace_norm(const HermitianOperator& a);
/// ½‖rho - sigma‖₁.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct JordanParts {
  HermitianOperator plus;
  HermitianOperator minus;
};

/// A = A₊ - A₋ with orthogonal supports; near-zero eigenvalues are dropped.
JordanParts jordan_parts(const HermitianOperator& a);

/// Kronecker product, first argument indexing the slow axis.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Marginal on the factors listed in `keep` (0-based; kept in ascending
/// factor order).
DensityMatrix partial_trace(const DensityMatrix& x, const SubsystemShape& shape,
                            std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& x, const SubsystemShape& shape,
                            std::initializer_list<std::size_t> keep);
/// Same as above on raw matrices; no state validation.
Matrix partial_trace_matrix(const Matrix& x, const SubsystemShape& shape,
                            std::span<const std::size_t> keep);

/// Tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Positive square root of a positive semidefinite operator (negative
/// eigenvalues clipped to zero).
Matrix psd_sqrt(const HermitianOperator& a);

/// Canonical purification sum_i sqrt(l_i) |e_i>|i>, reference factor second.
PureStateVector purify(const DensityMatrix& rho);

struct AlignedPurifications {
  PureStateVector phi;
  PureStateVector psi;
  double overlap;  // <phi|psi>, real and nonnegative by construction
  double delta;    // sqrt(1 - overlap^2)
};

/// Purifications with maximal overlap (equal to the fidelity).
AlignedPurifications aligned_purifications(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Purifications with overlap reduced to exactly `target_overlap`, which must
/// lie in [0, F(rho, sigma)]. The reference rotation interpolates between the
/// optimal alignment and a cyclic shift that has zero overlap.
AlignedPurifications purifications_with_overlap(const DensityMatrix& rho, const DensityMatrix& sigma,
                                                double target_overlap);

/// Partial trace over the second (reference) factor of a bipartite pure state.
DensityMatrix reduce_first(const PureStateVector& psi, Index dim_first);

/// Largest |A_ij|.
double max_abs(const Matrix& a);

}  // namespace entrobound
