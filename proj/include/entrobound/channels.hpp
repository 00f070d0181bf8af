#pragma once

// Quantum channels in Kraus form, Stinespring isometries, channel mutual
// information and output Holevo quantities.

#include <string>
#include <vector>

#include "entrobound/entropic.hpp"
#include "entrobound/operator_core.hpp"

namespace entrobound {

/// CPTP map rho -> sum_k K_k rho K_k^dagger.
class Channel {
 public:
  /// Requires sum_k K_k^dagger K_k = I within 1e-9.
  explicit Channel(std::vector<Matrix> kraus, std::string name = "custom");

  Index dim_in() const { return kraus_.front().cols(); }
  Index dim_out() const { return kraus_.front().rows(); }
  std::size_t size() const { return kraus_.size(); }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const std::string& name() const { return name_; }

  DensityMatrix apply(const DensityMatrix& rho) const;
  Matrix apply_matrix(const Matrix& x) const;

  static Channel identity(Index d);
  /// (1-p) rho + p diag(rho).
  static Channel dephasing(Index d, double p);
  /// (1-p) rho + p I/d.
  static Channel depolarizing(Index d, double p);
  /// Each excitation |n> -> |n-1> with probability gamma.
  static Channel amplitude_damping(Index d, double gamma);
  /// Pure-loss beam splitter of transmissivity eta on Fock levels < d.
  static Channel attenuator(Index d, double eta);

 private:
  std::vector<Matrix> kraus_;
  std::string name_;
};

/// Applies the channel to factor `factor` of a multipartite state; the
/// returned shape has that factor replaced by the output dimension.
DensityMatrix apply_local(const Channel& phi, const DensityMatrix& rho, const SubsystemShape& shape,
                          std::size_t factor, SubsystemShape* out_shape = nullptr);

/// Isometry V: C^{d_in} -> C^{d_out} (x) C^{n_kraus}, environment second.
Matrix stinespring(const Channel& phi);

/// I(B:R) of (Phi (x) Id)(|phi><phi|) for the canonical purification.
double channel_mi(const Channel& phi, const DensityMatrix& rho);

/// chi({p_i, Phi(rho_i)}).
double output_holevo(const Channel& phi, const Ensemble& mu);
/// Same value as I(B:C) of (Phi (x) Id)(qc_state(mu)).
double output_holevo_qc(const Channel& phi, const Ensemble& mu);

/// identity, dephasing(0.3), depolarizing(0.4), amplitude damping(0.5),
/// attenuator(0.7), all on dimension d.
std::vector<Channel> channel_zoo(Index d);

}  // namespace entrobound
