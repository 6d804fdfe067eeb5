#pragma once

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace crnli {

/// Directed cross-immunoreactivity network over n antigen variants.
///
/// Node indices are 0-based internally; every file format and CLI surface
/// uses 1-based labels. Self-loops are rejected, and the edge list and
/// adjacency matrix are kept consistent by construction.
class CRNetwork {
 public:
  /// Build from 0-based directed edges (from, to). Throws
  /// std::invalid_argument on out-of-range indices, self-loops or
  /// duplicate edges.
  CRNetwork(int n, std::vector<std::pair<int, int>> edges);

  /// Convenience constructor taking the 1-based labels used by file
  /// formats and the paper's figures.
  static CRNetwork from_edges_1based(int n,
                                     const std::vector<std::pair<int, int>>& edges);

  int size() const { return n_; }

  /// Edges as 0-based (from, to) pairs, sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Dense 0/1 adjacency, adjacency()(i, j) == 1 iff edge i -> j.
  const Eigen::MatrixXd& adjacency() const { return adj_; }

  bool has_edge(int from, int to) const { return adj_(from, to) != 0.0; }
  const std::vector<int>& out_neighbors(int i) const { return out_[i]; }
  const std::vector<int>& in_neighbors(int i) const { return in_[i]; }
  int indegree(int i) const { return static_cast<int>(in_[i].size()); }
  int outdegree(int i) const { return static_cast<int>(out_[i].size()); }

  bool operator==(const CRNetwork& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  Eigen::MatrixXd adj_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

}  // namespace crnli
