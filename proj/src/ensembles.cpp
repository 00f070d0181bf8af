#include "entrobound/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace entrobound {

double d0(const Ensemble& mu, const Ensemble& nu) {
  if (mu.dim() != nu.dim()) throw ValidationError("d0: state dimensions differ");
  const std::size_t n = std::max(mu.size(), nu.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix diff = Matrix::Zero(mu.dim(), mu.dim());
    if (i < mu.size()) diff += mu.weight(i) * mu.state(i).matrix();
    if (i < nu.size()) diff -= nu.weight(i) * nu.state(i).matrix();
    total += trace_norm(HermitianOperator(diff));
  }
  return 0.5 * total;
}

namespace {

struct Cell {
  Index i, j;
};

// Basic cells forming a spanning tree over row nodes 0..m-1 and column
// nodes m..m+n-1.
class Basis {
 public:
  Basis(Index m, Index n) : m_(m), n_(n), in_(m, n) { in_.setZero(); }

  void add(Index i, Index j) {
    cells_.push_back({i, j});
    in_(i, j) = 1;
  }
  void remove(Index i, Index j) {
    for (std::size_t k = 0; k < cells_.size(); ++k)
      if (cells_[k].i == i && cells_[k].j == j) {
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(k));
        break;
      }
    in_(i, j) = 0;
  }
  bool contains(Index i, Index j) const { return in_(i, j) != 0; }
  const std::vector<Cell>& cells() const { return cells_; }

  // Potentials with u_0 = 0 and u_i + v_j = c_ij on basic cells.
  void potentials(const Eigen::MatrixXd& c, std::vector<double>& u, std::vector<double>& v) const {
    u.assign(static_cast<std::size_t>(m_), 0.0);
    v.assign(static_cast<std::size_t>(n_), 0.0);
    std::vector<bool> seen(static_cast<std::size_t>(m_ + n_), false);
    std::queue<Index> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
      const Index node = q.front();
      q.pop();
      for (const Cell& e : cells_) {
        if (node < m_ && e.i == node && !seen[static_cast<std::size_t>(m_ + e.j)]) {
          v[static_cast<std::size_t>(e.j)] = c(e.i, e.j) - u[static_cast<std::size_t>(e.i)];
          seen[static_cast<std::size_t>(m_ + e.j)] = true;
          q.push(m_ + e.j);
        } else if (node >= m_ && e.j == node - m_ && !seen[static_cast<std::size_t>(e.i)]) {
          u[static_cast<std::size_t>(e.i)] = c(e.i, e.j) - v[static_cast<std::size_t>(e.j)];
          seen[static_cast<std::size_t>(e.i)] = true;
          q.push(e.i);
        }
      }
    }
  }

  // Tree path of cells from row node `row` to column node `col`.
  std::vector<Cell> path(Index row, Index col) const {
    const std::size_t total = static_cast<std::size_t>(m_ + n_);
    std::vector<std::ptrdiff_t> via(total, -1);
    std::vector<Index> parent(total, -1);
    std::vector<bool> seen(total, false);
    std::queue<Index> q;
    q.push(row);
    seen[static_cast<std::size_t>(row)] = true;
    while (!q.empty()) {
      const Index node = q.front();
      q.pop();
      for (std::size_t k = 0; k < cells_.size(); ++k) {
        const Cell& e = cells_[k];
        Index next = -1;
        if (node < m_ && e.i == node) next = m_ + e.j;
        if (node >= m_ && e.j == node - m_) next = e.i;
        if (next < 0 || seen[static_cast<std::size_t>(next)]) continue;
        seen[static_cast<std::size_t>(next)] = true;
        parent[static_cast<std::size_t>(next)] = node;
        via[static_cast<std::size_t>(next)] = static_cast<std::ptrdiff_t>(k);
        q.push(next);
      }
    }
    const Index target = m_ + col;
    if (!seen[static_cast<std::size_t>(target)]) throw NumericalError("transport: basis is not a spanning tree");
    std::vector<Cell> out;
    for (Index node = target; node != row; node = parent[static_cast<std::size_t>(node)])
      out.push_back(cells_[static_cast<std::size_t>(via[static_cast<std::size_t>(node)])]);
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  Index m_, n_;
  Eigen::MatrixXi in_;
  std::vector<Cell> cells_;
};

}  // namespace

TransportPlan solve_transport(const std::vector<double>& p, const std::vector<double>& q, const Eigen::MatrixXd& cost) {
  const Index m = static_cast<Index>(p.size()), n = static_cast<Index>(q.size());
  if (m == 0 || n == 0) throw ValidationError("transport: empty marginal");
  if (m > kTransportCap || n > kTransportCap)
    throw ValidationError("transport: instance too large (" + std::to_string(m) + "x" + std::to_string(n) +
                          ", cap " + std::to_string(kTransportCap) + ")");
  if (cost.rows() != m || cost.cols() != n) throw ValidationError("transport: cost matrix shape mismatch");
  double sp = 0.0, sq = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw ValidationError("transport: negative mass");
    sp += x;
  }
  for (double x : q) {
    if (!(x >= 0.0)) throw ValidationError("transport: negative mass");
    sq += x;
  }
  if (std::abs(sp - sq) > 1e-9) throw ValidationError("transport: marginals carry different total mass");

  // Northwest-corner start; exactly m + n - 1 basic cells.
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(m, n);
  Basis basis(m, n);
  {
    std::vector<double> r(p), c(q);
    Index i = 0, j = 0;
    while (i < m && j < n) {
      const double a = std::min(r[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]);
      x(i, j) = a;
      basis.add(i, j);
      r[static_cast<std::size_t>(i)] -= a;
      c[static_cast<std::size_t>(j)] -= a;
      if (i == m - 1)
        ++j;
      else if (j == n - 1)
        ++i;
      else if (r[static_cast<std::size_t>(i)] <= c[static_cast<std::size_t>(j)])
        ++i;
      else
        ++j;
    }
  }

  std::vector<double> u, v;
  const int max_iter = 10000;
  for (int it = 0;; ++it) {
    if (it == max_iter) throw NumericalError("transport: simplex iteration limit reached");
    basis.potentials(cost, u, v);
    // Bland: first improving cell in index order.
    Index ei = -1, ej = -1;
    for (Index i = 0; i < m && ei < 0; ++i)
      for (Index j = 0; j < n; ++j) {
        if (basis.contains(i, j)) continue;
        if (cost(i, j) - u[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)] < -1e-12) {
          ei = i;
          ej = j;
          break;
        }
      }
    if (ei < 0) break;

    // Path cells alternate -, +, -, ...; odd length, so both ends are -.
    const std::vector<Cell> cyc = basis.path(ei, ej);
    double theta = std::numeric_limits<double>::infinity();
    Cell leave{-1, -1};
    for (std::size_t k = 0; k < cyc.size(); k += 2) {
      const Cell& e = cyc[k];
      const double val = x(e.i, e.j);
      const bool smaller_index = leave.i < 0 || e.i * n + e.j < leave.i * n + leave.j;
      if (val < theta || (val == theta && smaller_index)) {
        theta = val;
        leave = e;
      }
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) x(cyc[k].i, cyc[k].j) += (k % 2 == 0 ? -theta : theta);
    x(ei, ej) += theta;
    x(leave.i, leave.j) = 0.0;
    basis.remove(leave.i, leave.j);
    basis.add(ei, ej);
  }

  TransportPlan plan{x.cwiseMax(0.0), 0.0};
  plan.cost = (plan.weights.array() * cost.array()).sum();
  return plan;
}

TransportPlan dstar_plan(const Ensemble& mu, const Ensemble& nu) {
  if (mu.dim() != nu.dim()) throw ValidationError("dstar: state dimensions differ");
  const Index m = static_cast<Index>(mu.size()), n = static_cast<Index>(nu.size());
  if (m > kTransportCap || n > kTransportCap)
    throw ValidationError("dstar: instance too large (" + std::to_string(m) + "x" + std::to_string(n) + ", cap " +
                          std::to_string(kTransportCap) + ")");
  Eigen::MatrixXd cost(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j)
      cost(i, j) = trace_distance(mu.state(static_cast<std::size_t>(i)), nu.state(static_cast<std::size_t>(j)));
  return solve_transport(mu.weights(), nu.weights(), cost);
}

double dstar(const Ensemble& mu, const Ensemble& nu) { return dstar_plan(mu, nu).cost; }

std::pair<DensityMatrix, SubsystemShape> qc_state(const Ensemble& mu) {
  const Index d = mu.dim(), n = static_cast<Index>(mu.size());
  Matrix m = Matrix::Zero(d * n, d * n);
  for (Index i = 0; i < n; ++i) {
    Matrix e = Matrix::Zero(n, n);
    e(i, i) = 1.0;
    m += mu.weight(static_cast<std::size_t>(i)) * kron(mu.state(static_cast<std::size_t>(i)).matrix(), e);
  }
  return {DensityMatrix::from_positive(m), SubsystemShape{d, n}};
}

double average_energy(const Ensemble& mu, const HermitianOperator& h) {
  double e = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) e += mu.weight(i) * mu.state(i).expectation(h);
  return e;
}

}  // namespace entrobound
