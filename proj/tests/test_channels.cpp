#include <cmath>
#include <numbers>

#include "doctest.h"
#include "entrobound/channels.hpp"
#include "entrobound/ensembles.hpp"
#include "test_util.hpp"

using namespace entrobound;

namespace {

const double ln2 = std::numbers::ln2;

// Kraus operators cut from the first d columns of a Haar unitary on d * n.
Channel random_channel(Index d, Index n, Rng& rng) {
  const Matrix u = random_unitary(d * n, rng);
  std::vector<Matrix> kraus;
  for (Index k = 0; k < n; ++k) kraus.push_back(u.block(k * d, 0, d, d));
  return Channel(kraus, "random");
}

Channel fully_depolarizing(Index d) { return Channel::depolarizing(d, 1.0); }

// (Phi (x) Id) by dense Kraus products.
Matrix apply_first_dense(const Channel& phi, const Matrix& x, Index d_other) {
  Matrix out = Matrix::Zero(phi.dim_out() * d_other, phi.dim_out() * d_other);
  for (const Matrix& k : phi.kraus()) {
    const Matrix kk = kron(k, Matrix::Identity(d_other, d_other));
    out += kk * x * kk.adjoint();
  }
  return out;
}

}  // namespace

TEST_CASE("channel validation and zoo") {
  CHECK_THROWS_AS(Channel({Matrix::Identity(2, 2) * 0.9}), ValidationError);
  for (const Channel& c : channel_zoo(4)) {
    Matrix s = Matrix::Zero(4, 4);
    for (const Matrix& k : c.kraus()) s += k.adjoint() * k;
    CHECK(max_abs(s - Matrix::Identity(4, 4)) <= 1e-9);
  }
  CHECK(channel_zoo(4).size() == 5);
}

TEST_CASE("channel action") {
  Rng rng(1);
  const DensityMatrix r = random_density(3, rng);
  CHECK(max_abs(Channel::identity(3).apply(r).matrix() - r.matrix()) <= 1e-15);
  for (int t = 0; t < 5; ++t)
    CHECK(max_abs(fully_depolarizing(2).apply(random_density(2, rng)).matrix() -
                  DensityMatrix::maximally_mixed(2).matrix()) <= 1e-14);
  const DensityMatrix deph = Channel::dephasing(3, 1.0).apply(r);
  CHECK(max_abs(deph.matrix() - Matrix(r.matrix().diagonal().asDiagonal())) <= 1e-14);

  // one excitation lost from |1> under amplitude damping
  const DensityMatrix ad = Channel::amplitude_damping(2, 0.5).apply(DensityMatrix::basis_state(2, 1));
  CHECK(max_abs(ad.matrix() - test::diag_state({0.5, 0.5}).matrix()) <= 1e-14);
}

TEST_CASE("local application") {
  Rng rng(2);
  const Channel c = random_channel(2, 3, rng);
  const DensityMatrix bell = DensityMatrix::pure(test::bell());
  SubsystemShape out_shape{1};
  const DensityMatrix out = apply_local(c, bell, SubsystemShape{2, 2}, 0, &out_shape);
  CHECK(max_abs(partial_trace(out, out_shape, {1}).matrix() - DensityMatrix::maximally_mixed(2).matrix()) <= 1e-12);

  // against dense Kraus products on each factor of a 3x2x2 state
  const Channel c3 = random_channel(3, 2, rng), c2 = random_channel(2, 3, rng);
  const DensityMatrix x = random_density(12, rng);
  CHECK(max_abs(apply_local(c3, x, SubsystemShape{3, 2, 2}, 0).matrix() - apply_first_dense(c3, x.matrix(), 4)) <=
        1e-12);
  Matrix mid = Matrix::Zero(12, 12);
  for (const Matrix& k : c2.kraus()) {
    const Matrix kk = kron(kron(Matrix::Identity(3, 3), k), Matrix::Identity(2, 2));
    mid += kk * x.matrix() * kk.adjoint();
  }
  CHECK(max_abs(apply_local(c2, x, SubsystemShape{3, 2, 2}, 1).matrix() - mid) <= 1e-12);
  CHECK_THROWS_AS(apply_local(c2, x, SubsystemShape{3, 2, 2}, 0), ValidationError);
}

TEST_CASE("Stinespring isometry") {
  const Matrix vid = stinespring(Channel::identity(2));
  CHECK(vid.rows() == 2);
  CHECK(max_abs(vid - Matrix::Identity(2, 2)) <= 1e-15);

  Rng rng(3);
  const Channel deph = Channel::dephasing(2, 0.3);
  const Matrix v = stinespring(deph);
  CHECK(v.rows() == 2 * static_cast<Index>(deph.size()));
  const DensityMatrix r = random_density(2, rng);
  const DensityMatrix joint = DensityMatrix::from_positive(v * r.matrix() * v.adjoint());
  CHECK(max_abs(partial_trace(joint, SubsystemShape{2, static_cast<Index>(deph.size())}, {0}).matrix() -
                deph.apply(r).matrix()) <= 1e-9);

  const Matrix w = stinespring(random_channel(3, 3, rng));
  CHECK(max_abs(w.adjoint() * w - Matrix::Identity(3, 3)) <= 1e-9);
}

TEST_CASE("channel mutual information") {
  CHECK(channel_mi(Channel::identity(2), DensityMatrix::maximally_mixed(2)) == doctest::Approx(2.0 * ln2));
  Rng rng(4);
  CHECK(channel_mi(fully_depolarizing(2), random_density(2, rng)) == doctest::Approx(0.0).epsilon(1e-12));

  // joint state (Phi (x) Id)(|Phi+><Phi+|) built directly
  for (double p : {0.0, 0.3, 0.8}) {
    const Channel deph = Channel::dephasing(2, p);
    const Matrix joint = apply_first_dense(deph, DensityMatrix::pure(test::bell()).matrix(), 2);
    const double direct = mutual_information_entropic(DensityMatrix::from_positive(joint), SubsystemShape{2, 2});
    CHECK(channel_mi(deph, DensityMatrix::maximally_mixed(2)) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("output Holevo quantity") {
  Rng rng(5);
  const Ensemble mu({0.2, 0.5, 0.3}, {random_density(3, rng), random_density(3, rng, 1), random_density(3, rng, 2)});
  CHECK(output_holevo(Channel::identity(3), mu) == doctest::Approx(holevo_chi(mu)).epsilon(1e-12));
  CHECK(output_holevo(fully_depolarizing(3), mu) == doctest::Approx(0.0).epsilon(1e-12));
  for (int t = 0; t < 5; ++t) {
    const Channel c = random_channel(3, 2, rng);
    CHECK(std::abs(output_holevo(c, mu) - output_holevo_qc(c, mu)) <= 1e-8);
  }
}
