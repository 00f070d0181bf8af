#include "entrobound/afw.hpp"

#include <cmath>
#include <string>

namespace entrobound {

namespace {

constexpr double kDeltaTol = 1e-10;

double marginal_energy(const PureStateVector& v, const HermitianOperator& h) {
  return reduce_first(v, h.dim()).expectation(h);
}

}  // namespace

GammaCoefficients gamma_coefficients(double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw DomainError("gamma_coefficients: overlap outside [0, 1]");
  const double delta = std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
  if (!(delta > kDeltaTol && delta < 1.0 - kDeltaTol))
    throw DomainError("gamma_coefficients: delta = " + std::to_string(delta) + " outside the open interval (0, 1)");
  const double np = delta * std::sqrt(2.0 * (1.0 - delta));
  const double nm = delta * std::sqrt(2.0 * (1.0 + delta));
  return {overlap / np, -(1.0 - delta) / np, overlap / nm, -(1.0 + delta) / nm};
}

std::pair<PureStateVector, PureStateVector> gamma_vectors(const PureStateVector& phi, const PureStateVector& psi) {
  if (phi.dim() != psi.dim()) throw ValidationError("gamma_vectors: dimension mismatch");
  const Complex c = phi.amplitudes().dot(psi.amplitudes());
  const double a = std::min(1.0, std::abs(c));
  // Global phase on psi so that <phi|psi> is real and nonnegative.
  const Vector psi_aligned = a > 0.0 ? Vector(psi.amplitudes() * (std::conj(c) / std::abs(c))) : psi.amplitudes();
  // 1 - a = |phi - psi_aligned|^2 / 2 without cancellation near a = 1.
  const double delta = std::sqrt((1.0 + a) * 0.5 * (phi.amplitudes() - psi_aligned).squaredNorm());
  if (!(delta > kDeltaTol && delta < 1.0 - kDeltaTol))
    throw ValidationError("gamma_vectors: delta = " + std::to_string(delta) + " outside the open interval (0, 1)");
  const GammaCoefficients k = gamma_coefficients(a);
  return {PureStateVector::normalized(k.p_plus * phi.amplitudes() + k.q_plus * psi_aligned),
          PureStateVector::normalized(k.p_minus * phi.amplitudes() + k.q_minus * psi_aligned)};
}

std::pair<double, double> energy_estimate(const PureStateVector& phi, const PureStateVector& psi,
                                          const HermitianOperator& h, double energy) {
  if (phi.dim() != psi.dim() || phi.dim() != h.dim() * h.dim())
    throw ValidationError("energy_estimate: purifications must live on the doubled space of H");
  const double slack = 1e-8 * std::max(1.0, std::abs(energy));
  const double e_phi = marginal_energy(phi, h);
  const double e_psi = marginal_energy(psi, h);
  if (e_phi > energy + slack || e_psi > energy + slack) {
    throw ValidationError("energy_estimate: marginal energy " + std::to_string(std::max(e_phi, e_psi)) +
                          " exceeds E = " + std::to_string(energy));
  }
  const double a = std::min(1.0, std::abs(phi.amplitudes().dot(psi.amplitudes())));
  const double d2 = 1.0 - a * a;
  if (!(d2 > kDeltaTol * kDeltaTol)) throw ValidationError("energy_estimate: purifications coincide (delta = 0)");
  return {(1.0 + a) * energy / d2, 2.0 * energy / d2};
}

AfwCertificate afw_decompose(const DensityMatrix& rho, const DensityMatrix& sigma, const HermitianOperator& h,
                             double energy, double epsilon, PurificationMode mode) {
  const Index d = rho.dim();
  if (sigma.dim() != d || h.dim() != d) throw ValidationError("afw_decompose: dimension mismatch among rho, sigma, H");
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw ValidationError("afw_decompose: epsilon = " + std::to_string(epsilon) + " outside (0, 1/2]");
  const double slack = 1e-10 * std::max(1.0, std::abs(energy));
  const double e_rho = rho.expectation(h);
  const double e_sigma = sigma.expectation(h);
  if (e_rho > energy + slack)
    throw ValidationError("afw_decompose: energy constraint violated, Tr H rho = " + std::to_string(e_rho) +
                          " > E = " + std::to_string(energy));
  if (e_sigma > energy + slack)
    throw ValidationError("afw_decompose: energy constraint violated, Tr H sigma = " + std::to_string(e_sigma) +
                          " > E = " + std::to_string(energy));
  const double t = trace_distance(rho, sigma);
  if (t > epsilon + 1e-12)
    throw ValidationError("afw_decompose: trace distance " + std::to_string(t) + " exceeds epsilon = " +
                          std::to_string(epsilon));

  const AlignedPurifications ap = mode == PurificationMode::uhlmann
                                      ? aligned_purifications(rho, sigma)
                                      : purifications_with_overlap(rho, sigma, std::sqrt(1.0 - 2.0 * epsilon));
  if (!(ap.delta > kDeltaTol)) throw ValidationError("afw_decompose: states indistinguishable at tolerance");

  const Matrix phi_hat = ap.phi.projector();
  const Matrix psi_hat = ap.psi.projector();
  Matrix tau_p_hat, tau_m_hat;
  if (ap.delta >= 1.0 - kDeltaTol) {
    tau_p_hat = phi_hat;
    tau_m_hat = psi_hat;
  } else {
    const JordanParts jp = jordan_parts(HermitianOperator(phi_hat - psi_hat));
    tau_p_hat = jp.plus.matrix() / ap.delta;
    tau_m_hat = jp.minus.matrix() / ap.delta;
  }

  const double dl = ap.delta;
  const Matrix left = (phi_hat + dl * tau_m_hat) / (1.0 + dl);
  const Matrix right = (psi_hat + dl * tau_p_hat) / (1.0 + dl);

  const SubsystemShape doubled{d, d};
  const std::size_t keep0[] = {0};
  DensityMatrix tau_plus = DensityMatrix::from_positive(partial_trace_matrix(tau_p_hat, doubled, keep0));
  DensityMatrix tau_minus = DensityMatrix::from_positive(partial_trace_matrix(tau_m_hat, doubled, keep0));
  const double ep = tau_plus.expectation(h);
  const double em = tau_minus.expectation(h);
  const auto [bound_exact, bound_2e] = energy_estimate(ap.phi, ap.psi, h, energy);

  return AfwCertificate{ap.phi,
                        ap.psi,
                        ap.overlap,
                        ap.delta,
                        std::move(tau_plus),
                        std::move(tau_minus),
                        DensityMatrix::from_positive(left),
                        ep,
                        em,
                        bound_exact,
                        bound_2e,
                        epsilon,
                        energy,
                        max_abs(left - right)};
}

}  // namespace entrobound
