#pragma once

// Purification-based decomposition of two close states into a common
// mixture, with the energy certificate for the auxiliary states.

#include <utility>

#include "entrobound/operator_core.hpp"

namespace entrobound {

struct AfwCertificate {
  PureStateVector phi;
  PureStateVector psi;
  double overlap;  // <phi|psi>, real and nonnegative
  double delta;    // sqrt(1 - overlap^2) = trace distance of the purifications
  DensityMatrix tau_plus;
  DensityMatrix tau_minus;
  DensityMatrix omega_star;  // on the doubled space
  double energy_tau_plus;
  double energy_tau_minus;
  double bound_exact;  // (1 + overlap) E / delta^2
  double bound_2E;     // 2E / delta^2
  double epsilon_used;
  double energy_cap;  // E
  double mixing_residual;
};

enum class PurificationMode {
  /// Overlap lowered so that delta = sqrt(2 eps); this keeps 2E/delta^2 = E/eps.
  sqrt_two_eps,
  /// Uhlmann-optimal overlap (delta = sqrt(1 - F^2), the smallest possible).
  uhlmann,
};

/// Requires Tr H rho <= E, Tr H sigma <= E, (1/2)||rho - sigma||_1 <= eps <= 1/2.
AfwCertificate afw_decompose(const DensityMatrix& rho, const DensityMatrix& sigma, const HermitianOperator& h,
                             double energy, double epsilon, PurificationMode mode = PurificationMode::sqrt_two_eps);

/// Unit vectors with |gamma_pm><gamma_pm| = delta^-1 [|phi><phi| - |psi><psi|]_pm.
/// Requires 1e-10 < delta < 1 - 1e-10.
std::pair<PureStateVector, PureStateVector> gamma_vectors(const PureStateVector& phi, const PureStateVector& psi);

/// Closed-form coefficients (p_plus, q_plus, p_minus, q_minus) for a real
/// nonnegative overlap c with delta = sqrt(1 - c^2).
struct GammaCoefficients {
  double p_plus, q_plus, p_minus, q_minus;
};
GammaCoefficients gamma_coefficients(double overlap);

/// ((1 + |<phi|psi>|) E / delta^2, 2E / delta^2). Both marginals must have
/// Tr H(.) <= E within 1e-8.
std::pair<double, double> energy_estimate(const PureStateVector& phi, const PureStateVector& psi,
                                          const HermitianOperator& h, double energy);

}  // namespace entrobound
