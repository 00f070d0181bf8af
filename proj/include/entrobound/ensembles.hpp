#pragma once

// Ensemble metrics: the ordered distance D0, the transport distance D*,
// and qc-state encodings.

#include <utility>
#include <vector>

#include "entrobound/entropic.hpp"

namespace entrobound {

/// (1/2) sum_i ||p_i rho_i - q_i sigma_i||_1; the shorter ensemble is
/// padded with zero-weight members.
double d0(const Ensemble& mu, const Ensemble& nu);

struct TransportPlan {
  Eigen::MatrixXd weights;  // rows follow p, columns follow q
  double cost = 0.0;
};

inline constexpr Index kTransportCap = 12;

/// Exact minimum-cost transport between marginals p and q (transportation
/// simplex). Sizes above kTransportCap are rejected.
TransportPlan solve_transport(const std::vector<double>& p, const std::vector<double>& q, const Eigen::MatrixXd& cost);

/// min over couplings w of sum w_ij (1/2)||rho_i - sigma_j||_1.
TransportPlan dstar_plan(const Ensemble& mu, const Ensemble& nu);
double dstar(const Ensemble& mu, const Ensemble& nu);

/// sum_i p_i rho_i (x) |i><i| with shape (dim, n).
std::pair<DensityMatrix, SubsystemShape> qc_state(const Ensemble& mu);

/// sum_i p_i Tr H rho_i.
double average_energy(const Ensemble& mu, const HermitianOperator& h);

}  // namespace entrobound
