#pragma once

// Entropic functionals in nats: von Neumann entropy, relative entropy,
// mutual information, extended conditional entropy, Holevo quantity.

#include <vector>

#include "entrobound/operator_core.hpp"

namespace entrobound {

/// A finite real or +infinity. Subtracting two infinities is an error.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  ExtendedReal(double v);  // NOLINT(google-explicit-constructor)
  static ExtendedReal infinity();

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }
  /// Throws NumericalError when infinite.
  double value() const;
  /// Finite value or std::numeric_limits<double>::infinity().
  double as_double() const;

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b);
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b);
  /// Nonnegative scaling; 0 * inf is 0.
  friend ExtendedReal operator*(double s, ExtendedReal a);
  friend bool operator==(ExtendedReal a, ExtendedReal b);

 private:
  double v_ = 0.0;
  bool inf_ = false;
};

/// Weighted list of states on a common space; weights sum to one.
class Ensemble {
 public:
  Ensemble(std::vector<double> weights, std::vector<DensityMatrix> states);

  std::size_t size() const { return weights_.size(); }
  Index dim() const { return states_.front().dim(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const DensityMatrix& state(std::size_t i) const { return states_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<DensityMatrix>& states() const { return states_; }

  DensityMatrix average() const;

 private:
  std::vector<double> weights_;
  std::vector<DensityMatrix> states_;
};

/// -sum l ln l over a spectrum, skipping entries below the relative cutoff.
double spectral_entropy(const RealVector& probs);
double von_neumann_entropy(const DensityMatrix& rho);

/// Binary entropy; h2(0) = h2(1) = 0.
double h2(double p);
/// g(x) = (x+1) ln(x+1) - x ln x.
double g_func(double x);
/// g(x) written as (1+x) h2(x/(1+x)); algebraically identical to g_func.
double g_func_binary(double x);

/// Support overlap above which H(rho||sigma) is declared infinite.
inline constexpr double kSupportTol = 1e-8;

ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// H(rho||sigma) for sigma = sum_j exp(log_eigenvalues[j]) |v_j><v_j| with
/// orthonormal columns v_j of `vectors`; -inf entries mark the kernel.
ExtendedReal relative_entropy_spectral(const DensityMatrix& rho, const Matrix& vectors,
                                       const RealVector& log_eigenvalues);

/// I(A:B) as H(rho_AB || rho_A (x) rho_B).
double mutual_information(const DensityMatrix& rho_ab, const SubsystemShape& shape);
/// I(A:B) as H(A) + H(B) - H(AB).
double mutual_information_entropic(const DensityMatrix& rho_ab, const SubsystemShape& shape);

/// H(A) - I(A:B); may be negative.
double conditional_entropy_ext(const DensityMatrix& rho_ab, const SubsystemShape& shape);
/// H(AB) - H(B).
double conditional_entropy(const DensityMatrix& rho_ab, const SubsystemShape& shape);

/// sum_i p_i H(rho_i || rho_bar).
double holevo_chi(const Ensemble& mu);
/// H(rho_bar) - sum_i p_i H(rho_i).
double holevo_chi_entropic(const Ensemble& mu);

}  // namespace entrobound
