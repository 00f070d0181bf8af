#include "entrobound/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace entrobound {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(what) + ": matrix must be square and nonempty, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

double cutoff_for(const RealVector& values) {
  const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  return kZeroCutoff * std::max(scale, 1e-300);
}

// Matrix form of a bipartite vector: M(a, r) = v[a * dr + r].
Matrix as_matrix(const Vector& v, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index a = 0; a < rows; ++a)
    for (Index r = 0; r < cols; ++r) m(a, r) = v[a * cols + r];
  return m;
}

Vector as_vector(const Matrix& m) {
  Vector v(m.rows() * m.cols());
  for (Index a = 0; a < m.rows(); ++a)
    for (Index r = 0; r < m.cols(); ++r) v[a * m.cols() + r] = m(a, r);
  return v;
}

}  // namespace

double hermiticity_defect(const Matrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs(const Matrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

// ---------------------------------------------------------------------------

HermitianOperator::HermitianOperator(const Matrix& m) {
  require_square(m, "HermitianOperator");
  const double defect = hermiticity_defect(m);
  if (!(defect <= kHermiticityTol)) {
    throw ValidationError("HermitianOperator: matrix is not Hermitian (max deviation " +
                          std::to_string(defect) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> entries) {
  RealVector d(static_cast<Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) d[static_cast<Index>(i)] = entries[i];
  return diagonal(d);
}

HermitianOperator HermitianOperator::diagonal(const RealVector& entries) {
  if (entries.size() == 0) throw ValidationError("HermitianOperator: empty diagonal");
  Matrix m = Matrix::Zero(entries.size(), entries.size());
  for (Index i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return HermitianOperator(std::move(m), Unchecked{});
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "operator+");
  return HermitianOperator(a.matrix() + b.matrix());
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "operator-");
  return HermitianOperator(a.matrix() - b.matrix());
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(s * a.matrix());
}

// ---------------------------------------------------------------------------

PureStateVector::PureStateVector(Vector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw ValidationError("PureStateVector: empty vector");
  const double n = v_.norm();
  if (!(std::abs(n - 1.0) <= kNormTol)) {
    throw ValidationError("PureStateVector: norm " + std::to_string(n) + " is not 1");
  }
}

PureStateVector PureStateVector::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("PureStateVector: zero vector");
  return PureStateVector(v / n);
}

PureStateVector PureStateVector::basis(Index dim, Index k) {
  if (k < 0 || k >= dim) throw ValidationError("PureStateVector::basis: index out of range");
  Vector v = Vector::Zero(dim);
  v[k] = 1.0;
  return PureStateVector(std::move(v));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(const HermitianOperator& op) : op_(op) {
  const double tr = op_.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTol)) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  }
  const RealVector ev = eigenvalues(op_);
  if (ev[ev.size() - 1] < -kPositivityTol) {
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(ev[ev.size() - 1]));
  }
}

DensityMatrix DensityMatrix::from_positive(const Matrix& m) {
  require_square(m, "DensityMatrix");
  const double defect = hermiticity_defect(m);
  if (!(defect <= 1e-8)) {
    throw NumericalError("DensityMatrix::from_positive: hermiticity lost (" +
                         std::to_string(defect) + ")");
  }
  const double tr = m.trace().real();
  if (!(std::abs(tr - 1.0) <= 1e-8)) {
    throw NumericalError("DensityMatrix::from_positive: trace drifted to " + std::to_string(tr));
  }
  Matrix h = 0.5 * (m + m.adjoint());
  return DensityMatrix(HermitianOperator(std::move(h), HermitianOperator::Unchecked{}),
                       HermitianOperator::Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim <= 0) throw ValidationError("maximally_mixed: dimension must be positive");
  return from_positive(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(Index dim, Index k) {
  return pure(PureStateVector::basis(dim, k));
}

DensityMatrix DensityMatrix::pure(const PureStateVector& psi) { return from_positive(psi.projector()); }

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs) {
  Matrix m = Matrix::Zero(static_cast<Index>(probs.size()), static_cast<Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < -kPositivityTol) throw ValidationError("DensityMatrix::diagonal: negative entry");
    m(static_cast<Index>(i), static_cast<Index>(i)) = probs[i];
  }
  return DensityMatrix(HermitianOperator(m));
}

double DensityMatrix::expectation(const HermitianOperator& h) const {
  require_same_dim(dim(), h.dim(), "expectation");
  return (h.matrix().cwiseProduct(matrix().transpose())).sum().real();
}

DensityMatrix mix(double p, const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "mix");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mix: weight outside [0, 1]");
  return DensityMatrix::from_positive(p * a.matrix() + (1.0 - p) * b.matrix());
}

// ---------------------------------------------------------------------------

SubsystemShape::SubsystemShape(std::initializer_list<Index> dims) : SubsystemShape(std::vector<Index>(dims)) {}

SubsystemShape::SubsystemShape(std::vector<Index> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ValidationError("SubsystemShape: no factors");
  for (Index d : dims_)
    if (d <= 0) throw ValidationError("SubsystemShape: factor dimensions must be positive");
}

Index SubsystemShape::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), Index{1}, std::multiplies<>());
}

void SubsystemShape::require_total(Index dim) const {
  if (total() != dim) {
    throw ValidationError("SubsystemShape: factor product " + std::to_string(total()) +
                          " does not match operator dimension " + std::to_string(dim));
  }
}

void SubsystemShape::require_bipartite() const {
  if (dims_.size() != 2) {
    throw ValidationError("SubsystemShape: expected a bipartite shape, got " +
                          std::to_string(dims_.size()) + " factors");
  }
}

// ---------------------------------------------------------------------------

EigenDecomposition eig_hermitian(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("eig_hermitian: solver did not converge");
  // Eigen sorts ascending.
  const Index n = a.dim();
  EigenDecomposition out{solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
  (void)n;
  return out;
}

RealVector eigenvalues(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues: solver did not converge");
  return solver.eigenvalues().reverse();
}

double trace_norm(const HermitianOperator& a) { return eigenvalues(a).cwiseAbs().sum(); }

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
  return 0.5 * trace_norm(HermitianOperator(rho.matrix() - sigma.matrix()));
}

JordanParts jordan_parts(const HermitianOperator& a) {
  const EigenDecomposition e = eig_hermitian(a);
  const double cut = cutoff_for(e.values);
  const Index n = a.dim();
  Matrix plus = Matrix::Zero(n, n);
  Matrix minus = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const double l = e.values[i];
    if (std::abs(l) <= cut) continue;
    const Vector& u = e.vectors.col(i);
    if (l > 0)
      plus.noalias() += l * (u * u.adjoint());
    else
      minus.noalias() += (-l) * (u * u.adjoint());
  }
  return {HermitianOperator(plus), HermitianOperator(minus)};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_positive(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace_matrix(const Matrix& x, const SubsystemShape& shape,
                            std::span<const std::size_t> keep_in) {
  shape.require_total(x.rows());
  std::vector<bool> kept(shape.size(), false);
  for (std::size_t k : keep_in) {
    if (k >= shape.size()) throw ValidationError("partial_trace: factor index out of range");
    if (kept[k]) throw ValidationError("partial_trace: duplicate factor index");
    kept[k] = true;
  }

  const std::size_t n = shape.size();
  std::vector<Index> stride(n);
  Index s = 1;
  for (std::size_t k = n; k-- > 0;) {
    stride[k] = s;
    s *= shape[k];
  }

  Index dim_keep = 1, dim_trace = 1;
  for (std::size_t k = 0; k < n; ++k) (kept[k] ? dim_keep : dim_trace) *= shape[k];

  // full_index[t * dim_keep + kidx] for kept composite kidx and traced composite t.
  std::vector<Index> full_index(static_cast<std::size_t>(dim_keep * dim_trace));
  for (Index i = 0; i < x.rows(); ++i) {
    Index kidx = 0, tidx = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const Index digit = (i / stride[k]) % shape[k];
      if (kept[k])
        kidx = kidx * shape[k] + digit;
      else
        tidx = tidx * shape[k] + digit;
    }
    full_index[static_cast<std::size_t>(tidx * dim_keep + kidx)] = i;
  }

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (Index t = 0; t < dim_trace; ++t) {
    const Index* row = &full_index[static_cast<std::size_t>(t * dim_keep)];
    for (Index a = 0; a < dim_keep; ++a)
      for (Index b = 0; b < dim_keep; ++b) out(a, b) += x(row[a], row[b]);
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& x, const SubsystemShape& shape,
                            std::span<const std::size_t> keep) {
  return DensityMatrix::from_positive(partial_trace_matrix(x.matrix(), shape, keep));
}

DensityMatrix partial_trace(const DensityMatrix& x, const SubsystemShape& shape,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(x, shape, std::span<const std::size_t>(keep.begin(), keep.size()));
}

Matrix psd_sqrt(const HermitianOperator& a) {
  const EigenDecomposition e = eig_hermitian(a);
  const RealVector r = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * r.asDiagonal() * e.vectors.adjoint();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "fidelity");
  const Matrix sr = psd_sqrt(rho.op());
  const Matrix inner = sr * sigma.matrix() * sr;
  const RealVector ev = eigenvalues(HermitianOperator(0.5 * (inner + inner.adjoint())));
  const double f = ev.cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(f, 0.0, 1.0);
}

PureStateVector purify(const DensityMatrix& rho) {
  const EigenDecomposition e = eig_hermitian(rho.op());
  const Index d = rho.dim();
  Matrix phi = Matrix::Zero(d, d);  // phi(a, i) = sqrt(l_i) e_i[a]
  for (Index i = 0; i < d; ++i) {
    const double l = std::max(e.values[i], 0.0);
    phi.col(i) = std::sqrt(l) * e.vectors.col(i);
  }
  return PureStateVector::normalized(as_vector(phi));
}

namespace {

struct AlignmentFrame {
  Matrix phi;         // matrix form of purify(rho)
  Matrix sqrt_sigma;
  Matrix x, y;        // SVD of phi^dagger sqrt(sigma) = X S Y^dagger
  double fid;         // sum of singular values
};

AlignmentFrame alignment_frame(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "aligned_purifications");
  const Index d = rho.dim();
  AlignmentFrame f;
  f.phi = as_matrix(purify(rho).amplitudes(), d, d);
  f.sqrt_sigma = psd_sqrt(sigma.op());
  const Matrix m = f.phi.adjoint() * f.sqrt_sigma;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  f.x = svd.matrixU();
  f.y = svd.matrixV();
  f.fid = svd.singularValues().sum();
  return f;
}

AlignedPurifications finish(const AlignmentFrame& f, const Matrix& v) {
  Matrix psi_m = f.sqrt_sigma * v;
  Complex ov = (f.phi.adjoint() * psi_m).trace();
  // Global phase on psi so that <phi|psi> is real and nonnegative.
  if (std::abs(ov) > 0.0) psi_m *= std::conj(ov) / std::abs(ov);
  const double overlap = std::min(1.0, std::abs(ov));
  return AlignedPurifications{PureStateVector::normalized(as_vector(f.phi)),
                              PureStateVector::normalized(as_vector(psi_m)), overlap,
                              std::sqrt(std::max(0.0, 1.0 - overlap * overlap))};
}

}  // namespace

AlignedPurifications aligned_purifications(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const AlignmentFrame f = alignment_frame(rho, sigma);
  return finish(f, f.y * f.x.adjoint());
}

AlignedPurifications purifications_with_overlap(const DensityMatrix& rho, const DensityMatrix& sigma,
                                                double target_overlap) {
  const AlignmentFrame f = alignment_frame(rho, sigma);
  if (!(target_overlap >= 0.0) || target_overlap > f.fid + 1e-9) {
    throw ValidationError("purifications_with_overlap: target overlap " +
                          std::to_string(target_overlap) + " outside [0, fidelity = " +
                          std::to_string(f.fid) + "]");
  }
  const Index d = rho.dim();
  if (target_overlap >= f.fid || d == 1) return finish(f, f.y * f.x.adjoint());

  // W(s) = Fourier^dagger diag(exp(2 pi i k s / d)) Fourier has constant
  // diagonal c(s) with |c(0)| = 1, |c(1)| = 0 and |c| decreasing in between,
  // so Tr(S W(s)) = c(s) * F.
  const double two_pi = 2.0 * std::numbers::pi;
  auto c_abs = [d, two_pi](double s) {
    Complex c = 0.0;
    for (Index k = 0; k < d; ++k) c += std::polar(1.0, two_pi * static_cast<double>(k) * s / static_cast<double>(d));
    return std::abs(c) / static_cast<double>(d);
  };
  const double ratio = target_overlap / f.fid;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (c_abs(mid) > ratio ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);

  Matrix fourier(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k)
      fourier(k, j) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                                 -two_pi * static_cast<double>(j * k) / static_cast<double>(d));
  Vector phases(d);
  for (Index k = 0; k < d; ++k) phases[k] = std::polar(1.0, two_pi * static_cast<double>(k) * s / static_cast<double>(d));
  const Matrix w = fourier.adjoint() * phases.asDiagonal() * fourier;
  return finish(f, f.y * w * f.x.adjoint());
}

DensityMatrix reduce_first(const PureStateVector& psi, Index dim_first) {
  if (dim_first <= 0 || psi.dim() % dim_first != 0) {
    throw ValidationError("reduce_first: vector length not divisible by first factor dimension");
  }
  const Matrix m = as_matrix(psi.amplitudes(), dim_first, psi.dim() / dim_first);
  return DensityMatrix::from_positive(m * m.adjoint());
}

}  // namespace entrobound
