#pragma once

// Walk graphs and their generator matrices.  The generator of a walk with
// uniform jumping rate gamma on an undirected simple graph is
// H = gamma (D - A), the scaled graph Laplacian: symmetric, zero row sums,
// off-diagonal entries in {0, -gamma}, and positive semidefinite (it is
// diagonally dominant with nonnegative diagonal).

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ctqw/errors.hpp"
#include "ctqw/linalg.hpp"

namespace ctqw {

// undirected simple graph with a uniform jumping rate on every edge
class WalkGraph {
 public:
  WalkGraph(Eigen::MatrixXi adjacency, double jump_rate)
      : adj_(std::move(adjacency)), gamma_(jump_rate) {
    if (!(gamma_ > 0.0)) throw std::invalid_argument("jump rate must be positive");
    if (adj_.rows() != adj_.cols()) throw InvalidGraphError("adjacency matrix must be square");
    if (adj_.rows() < 2) throw InvalidGraphError("graph needs at least 2 nodes");
    for (Eigen::Index i = 0; i < adj_.rows(); ++i) {
      if (adj_(i, i) != 0) throw InvalidGraphError("self-loops are not allowed");
      for (Eigen::Index j = 0; j < adj_.cols(); ++j) {
        if (adj_(i, j) != 0 && adj_(i, j) != 1)
          throw InvalidGraphError("adjacency entries must be 0 or 1");
        if (adj_(i, j) != adj_(j, i)) throw InvalidGraphError("adjacency must be symmetric");
      }
    }
  }

  // cycle on n nodes; a 2-node "circle" is ambiguous (single vs. double edge)
  // and is rejected
  static WalkGraph cycle(int num_nodes, double jump_rate) {
    if (num_nodes < 3) throw InvalidGraphError("a cycle needs at least 3 nodes");
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(num_nodes, num_nodes);
    for (int k = 0; k < num_nodes; ++k) {
      adj(k, (k + 1) % num_nodes) = 1;
      adj((k + 1) % num_nodes, k) = 1;
    }
    return WalkGraph(std::move(adj), jump_rate);
  }

  int num_nodes() const { return static_cast<int>(adj_.rows()); }
  const Eigen::MatrixXi& adjacency() const { return adj_; }
  double jump_rate() const { return gamma_; }

 private:
  Eigen::MatrixXi adj_;
  double gamma_;
};

// real symmetric generator matrix, validated on construction
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(Matrix h) : h_(std::move(h)) {
    if (h_.rows() != h_.cols()) throw std::invalid_argument("generator must be square");
    const double scale = std::max(1.0, max_abs(h_));
    for (Eigen::Index i = 0; i < h_.rows(); ++i) {
      double row_sum = 0.0;
      for (Eigen::Index j = 0; j < h_.cols(); ++j) {
        row_sum += h_(i, j);
        if (std::abs(h_(i, j) - h_(j, i)) > 1e-12 * scale)
          throw std::invalid_argument("generator must be symmetric");
        if (i != j && h_(i, j) > 1e-12 * scale)
          throw std::invalid_argument("generator off-diagonals must be non-positive");
      }
      if (std::abs(row_sum) > 1e-9 * scale)
        throw std::invalid_argument("generator rows must sum to zero");
    }
  }

  Eigen::Index dim() const { return h_.rows(); }
  const Matrix& matrix() const { return h_; }

 private:
  Matrix h_;
};

// generator of the n-node cycle: diagonal 2*gamma, -gamma on the two
// neighbours of each node
inline GeneratorMatrix cycle_generator(int n, double gamma) {
  if (n < 3) throw InvalidGraphError("a cycle needs at least 3 nodes");
  if (!(gamma > 0.0)) throw std::invalid_argument("jump rate must be positive");
  Matrix h = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    h(k, k) = 2.0 * gamma;
    h(k, (k + 1) % n) = -gamma;
    h(k, (k + n - 1) % n) = -gamma;
  }
  return GeneratorMatrix(std::move(h));
}

// gamma (D - A) for an arbitrary walk graph
inline GeneratorMatrix graph_generator(const WalkGraph& graph) {
  const int n = graph.num_nodes();
  const double gamma = graph.jump_rate();
  Matrix h = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    int degree = 0;
    for (int j = 0; j < n; ++j) {
      if (graph.adjacency()(i, j)) {
        ++degree;
        h(i, j) = -gamma;
      }
    }
    h(i, i) = gamma * degree;
  }
  return GeneratorMatrix(std::move(h));
}

}  // namespace ctqw
