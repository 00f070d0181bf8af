#include "entrobound/entropic.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace entrobound {

namespace {

double eta(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

}  // namespace

ExtendedReal::ExtendedReal(double v) : v_(v) {
  if (std::isnan(v)) throw NumericalError("ExtendedReal: NaN");
  if (std::isinf(v)) {
    if (v < 0) throw NumericalError("ExtendedReal: -infinity is not representable");
    inf_ = true;
    v_ = 0.0;
  }
}

ExtendedReal ExtendedReal::infinity() {
  ExtendedReal r;
  r.inf_ = true;
  return r;
}

double ExtendedReal::value() const {
  if (inf_) throw NumericalError("ExtendedReal: value requested from +infinity");
  return v_;
}

double ExtendedReal::as_double() const {
  return inf_ ? std::numeric_limits<double>::infinity() : v_;
}

ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
  if (a.inf_ || b.inf_) return ExtendedReal::infinity();
  return ExtendedReal(a.v_ + b.v_);
}

ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
  if (b.inf_) {
    if (a.inf_) throw NumericalError("ExtendedReal: +infinity - +infinity is undefined");
    throw NumericalError("ExtendedReal: finite - +infinity is not representable");
  }
  if (a.inf_) return a;
  return ExtendedReal(a.v_ - b.v_);
}

ExtendedReal operator*(double s, ExtendedReal a) {
  if (!(s >= 0.0)) throw DomainError("ExtendedReal: negative scale factor");
  if (a.inf_) return s == 0.0 ? ExtendedReal(0.0) : a;
  return ExtendedReal(s * a.v_);
}

bool operator==(ExtendedReal a, ExtendedReal b) {
  return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
}

// ---------------------------------------------------------------------------

Ensemble::Ensemble(std::vector<double> weights, std::vector<DensityMatrix> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.empty()) throw ValidationError("Ensemble: no members");
  if (weights_.size() != states_.size()) {
    throw ValidationError("Ensemble: " + std::to_string(weights_.size()) + " weights for " +
                          std::to_string(states_.size()) + " states");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw ValidationError("Ensemble: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw ValidationError("Ensemble: weights sum to " + std::to_string(total));
  }
  for (const auto& s : states_)
    if (s.dim() != states_.front().dim()) throw ValidationError("Ensemble: state dimensions differ");
}

DensityMatrix Ensemble::average() const {
  Matrix m = Matrix::Zero(dim(), dim());
  for (std::size_t i = 0; i < size(); ++i) m += weights_[i] * states_[i].matrix();
  return DensityMatrix::from_positive(m);
}

// ---------------------------------------------------------------------------

double spectral_entropy(const RealVector& probs) {
  const double cut = kZeroCutoff * std::max(probs.cwiseAbs().maxCoeff(), 1e-300);
  double h = 0.0;
  for (Index i = 0; i < probs.size(); ++i)
    if (probs[i] > cut) h += eta(probs[i]);
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return std::max(0.0, spectral_entropy(eigenvalues(rho.op())));
}

double h2(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("h2: argument " + std::to_string(p) + " outside [0, 1]");
  return eta(p) + eta(1.0 - p);
}

double g_func(double x) {
  if (!(x >= 0.0)) throw DomainError("g: argument " + std::to_string(x) + " is negative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  return std::log1p(x) + x * std::log1p(1.0 / x);
}

double g_func_binary(double x) {
  if (!(x >= 0.0)) throw DomainError("g: argument " + std::to_string(x) + " is negative");
  // h2 at p = x/(1+x), with 1-p formed directly as 1/(1+x).
  return (1.0 + x) * (eta(x / (1.0 + x)) + eta(1.0 / (1.0 + x)));
}

ExtendedReal relative_entropy_spectral(const DensityMatrix& rho, const Matrix& s_vectors, const RealVector& s_logs) {
  const EigenDecomposition r = eig_hermitian(rho.op());
  const double rcut = kZeroCutoff * std::max(r.values.cwiseAbs().maxCoeff(), 1e-300);

  // overlap(j, i) = |<s_j|r_i>|^2
  const Eigen::MatrixXd overlap = (s_vectors.adjoint() * r.vectors).cwiseAbs2();

  // Support inclusion is judged by the rho-weight sitting on the numerical
  // kernel of sigma, so tiny eigenvalues of rho cannot flip the verdict.
  double value = 0.0;
  double kernel_mass = 0.0;
  for (Index i = 0; i < r.values.size(); ++i) {
    const double p = r.values[i];
    if (p <= rcut) continue;
    double cross = 0.0;
    for (Index j = 0; j < s_logs.size(); ++j) {
      if (std::isinf(s_logs[j]))
        kernel_mass += p * overlap(j, i);
      else
        cross += overlap(j, i) * s_logs[j];
    }
    value += p * std::log(p) - p * cross;
  }
  if (kernel_mass > kSupportTol) return ExtendedReal::infinity();
  if (value < 0.0 && value > -1e-10) value = 0.0;
  return ExtendedReal(value);
}

namespace {

RealVector cut_logs(const RealVector& values) {
  const double cut = kZeroCutoff * std::max(values.cwiseAbs().maxCoeff(), 1e-300);
  RealVector logs(values.size());
  for (Index j = 0; j < values.size(); ++j)
    logs[j] = values[j] <= cut ? -std::numeric_limits<double>::infinity() : std::log(values[j]);
  return logs;
}

}  // namespace

ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("relative_entropy: dimension mismatch");
  const EigenDecomposition s = eig_hermitian(sigma.op());
  return relative_entropy_spectral(rho, s.vectors, cut_logs(s.values));
}

double mutual_information(const DensityMatrix& rho_ab, const SubsystemShape& shape) {
  shape.require_bipartite();
  shape.require_total(rho_ab.dim());
  // D(rho_AB || rho_A (x) rho_B) in the exact product eigenframe.
  const EigenDecomposition a = eig_hermitian(partial_trace(rho_ab, shape, {0}).op());
  const EigenDecomposition b = eig_hermitian(partial_trace(rho_ab, shape, {1}).op());
  const RealVector la = cut_logs(a.values), lb = cut_logs(b.values);
  RealVector logs(la.size() * lb.size());
  for (Index i = 0; i < la.size(); ++i)
    for (Index j = 0; j < lb.size(); ++j) logs[i * lb.size() + j] = la[i] + lb[j];
  return relative_entropy_spectral(rho_ab, kron(a.vectors, b.vectors), logs).value();
}

double mutual_information_entropic(const DensityMatrix& rho_ab, const SubsystemShape& shape) {
  shape.require_bipartite();
  shape.require_total(rho_ab.dim());
  return von_neumann_entropy(partial_trace(rho_ab, shape, {0})) +
         von_neumann_entropy(partial_trace(rho_ab, shape, {1})) - von_neumann_entropy(rho_ab);
}

double conditional_entropy_ext(const DensityMatrix& rho_ab, const SubsystemShape& shape) {
  shape.require_bipartite();
  shape.require_total(rho_ab.dim());
  return von_neumann_entropy(partial_trace(rho_ab, shape, {0})) - mutual_information(rho_ab, shape);
}

double conditional_entropy(const DensityMatrix& rho_ab, const SubsystemShape& shape) {
  shape.require_bipartite();
  shape.require_total(rho_ab.dim());
  return von_neumann_entropy(rho_ab) - von_neumann_entropy(partial_trace(rho_ab, shape, {1}));
}

double holevo_chi(const Ensemble& mu) {
  const DensityMatrix avg = mu.average();
  double chi = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.weight(i) == 0.0) continue;
    chi += mu.weight(i) * relative_entropy(mu.state(i), avg).value();
  }
  return chi;
}

double holevo_chi_entropic(const Ensemble& mu) {
  double chi = von_neumann_entropy(mu.average());
  for (std::size_t i = 0; i < mu.size(); ++i) chi -= mu.weight(i) * von_neumann_entropy(mu.state(i));
  return chi;
}

}  // namespace entrobound
