#include "entrobound/channels.hpp"

#include <cmath>

#include "entrobound/ensembles.hpp"

namespace entrobound {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + ": parameter outside [0, 1]");
}

double binomial(Index n, Index k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

}  // namespace

Channel::Channel(std::vector<Matrix> kraus, std::string name) : kraus_(std::move(kraus)), name_(std::move(name)) {
  if (kraus_.empty()) throw ValidationError("channel: no Kraus operators");
  const Index din = kraus_.front().cols(), dout = kraus_.front().rows();
  if (din == 0 || dout == 0) throw ValidationError("channel: empty Kraus operator");
  Matrix s = Matrix::Zero(din, din);
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    if (kraus_[k].cols() != din || kraus_[k].rows() != dout)
      throw ValidationError("channel: Kraus operator " + std::to_string(k) + " has inconsistent shape");
    s += kraus_[k].adjoint() * kraus_[k];
  }
  const double dev = max_abs(s - Matrix::Identity(din, din));
  if (!(dev <= 1e-9)) throw ValidationError("channel: not trace preserving (deviation " + std::to_string(dev) + ")");
}

Matrix Channel::apply_matrix(const Matrix& x) const {
  if (x.rows() != dim_in() || x.cols() != dim_in()) throw ValidationError("channel: input dimension mismatch");
  Matrix out = Matrix::Zero(dim_out(), dim_out());
  for (const Matrix& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const { return DensityMatrix::from_positive(apply_matrix(rho.matrix())); }

Channel Channel::identity(Index d) { return Channel({Matrix::Identity(d, d)}, "identity"); }

Channel Channel::dephasing(Index d, double p) {
  require_probability(p, "dephasing");
  std::vector<Matrix> k{std::sqrt(1.0 - p) * Matrix::Identity(d, d)};
  for (Index i = 0; i < d; ++i) {
    Matrix m = Matrix::Zero(d, d);
    m(i, i) = std::sqrt(p);
    k.push_back(std::move(m));
  }
  return Channel(std::move(k), "dephasing");
}

Channel Channel::depolarizing(Index d, double p) {
  require_probability(p, "depolarizing");
  std::vector<Matrix> k{std::sqrt(1.0 - p) * Matrix::Identity(d, d)};
  const double a = std::sqrt(p / static_cast<double>(d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Matrix m = Matrix::Zero(d, d);
      m(i, j) = a;
      k.push_back(std::move(m));
    }
  return Channel(std::move(k), "depolarizing");
}

Channel Channel::amplitude_damping(Index d, double gamma) {
  require_probability(gamma, "amplitude damping");
  Matrix k0 = Matrix::Zero(d, d), k1 = Matrix::Zero(d, d);
  k0(0, 0) = 1.0;
  for (Index n = 1; n < d; ++n) {
    k0(n, n) = std::sqrt(1.0 - gamma);
    k1(n - 1, n) = std::sqrt(gamma);
  }
  return Channel({k0, k1}, "amplitude-damping");
}

Channel Channel::attenuator(Index d, double eta) {
  require_probability(eta, "attenuator");
  std::vector<Matrix> ks;
  for (Index k = 0; k < d; ++k) {
    Matrix m = Matrix::Zero(d, d);
    for (Index n = k; n < d; ++n)
      m(n - k, n) = std::sqrt(binomial(n, k) * std::pow(eta, static_cast<double>(n - k)) *
                              std::pow(1.0 - eta, static_cast<double>(k)));
    ks.push_back(std::move(m));
  }
  return Channel(std::move(ks), "attenuator");
}

DensityMatrix apply_local(const Channel& phi, const DensityMatrix& rho, const SubsystemShape& shape,
                          std::size_t factor, SubsystemShape* out_shape) {
  shape.require_total(rho.dim());
  if (factor >= shape.size()) throw ValidationError("apply_local: factor index out of range");
  if (shape[factor] != phi.dim_in()) throw ValidationError("apply_local: channel input dimension does not match factor");
  Index before = 1, after = 1;
  for (std::size_t k = 0; k < factor; ++k) before *= shape[k];
  for (std::size_t k = factor + 1; k < shape.size(); ++k) after *= shape[k];
  const Index din = phi.dim_in(), dout_f = phi.dim_out();
  const Index din_all = rho.dim(), dout = before * dout_f * after;
  // (I (x) K (x) I) X (I (x) K (x) I)^dagger by row and column blocks of
  // height `after`, skipping zero Kraus entries.
  Matrix out = Matrix::Zero(dout, dout);
  Matrix left(dout, din_all);
  for (const Matrix& k : phi.kraus()) {
    left.setZero();
    for (Index b = 0; b < before; ++b)
      for (Index i = 0; i < dout_f; ++i)
        for (Index m = 0; m < din; ++m) {
          const Complex c = k(i, m);
          if (c == Complex(0.0)) continue;
          left.middleRows((b * dout_f + i) * after, after) += c * rho.matrix().middleRows((b * din + m) * after, after);
        }
    for (Index b = 0; b < before; ++b)
      for (Index j = 0; j < dout_f; ++j)
        for (Index n = 0; n < din; ++n) {
          const Complex c = std::conj(k(j, n));
          if (c == Complex(0.0)) continue;
          out.middleCols((b * dout_f + j) * after, after) += c * left.middleCols((b * din + n) * after, after);
        }
  }
  if (out_shape) {
    std::vector<Index> dims = shape.dims();
    dims[factor] = phi.dim_out();
    *out_shape = SubsystemShape(std::move(dims));
  }
  return DensityMatrix::from_positive(out);
}

Matrix stinespring(const Channel& phi) {
  const Index n = static_cast<Index>(phi.size());
  Matrix v = Matrix::Zero(phi.dim_out() * n, phi.dim_in());
  for (Index k = 0; k < n; ++k) {
    const Matrix& kk = phi.kraus()[static_cast<std::size_t>(k)];
    for (Index b = 0; b < phi.dim_out(); ++b) v.row(b * n + k) = kk.row(b);
  }
  return v;
}

double channel_mi(const Channel& phi, const DensityMatrix& rho) {
  if (rho.dim() != phi.dim_in()) throw ValidationError("channel_mi: input dimension mismatch");
  const DensityMatrix joint = DensityMatrix::pure(purify(rho));
  SubsystemShape out;
  const DensityMatrix br = apply_local(phi, joint, SubsystemShape{rho.dim(), rho.dim()}, 0, &out);
  return mutual_information(br, out);
}

double output_holevo(const Channel& phi, const Ensemble& mu) {
  std::vector<DensityMatrix> out;
  out.reserve(mu.size());
  for (const auto& s : mu.states()) out.push_back(phi.apply(s));
  return holevo_chi(Ensemble(mu.weights(), std::move(out)));
}

double output_holevo_qc(const Channel& phi, const Ensemble& mu) {
  const auto [qc, shape] = qc_state(mu);
  SubsystemShape out;
  const DensityMatrix bc = apply_local(phi, qc, shape, 0, &out);
  return mutual_information(bc, out);
}

std::vector<Channel> channel_zoo(Index d) {
  return {Channel::identity(d), Channel::dephasing(d, 0.3), Channel::depolarizing(d, 0.4),
          Channel::amplitude_damping(d, 0.5), Channel::attenuator(d, 0.7)};
}

}  // namespace entrobound
