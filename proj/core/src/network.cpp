#include "crnli/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace crnli {

CRNetwork::CRNetwork(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw std::invalid_argument("CRNetwork: n must be >= 1");
  std::sort(edges_.begin(), edges_.end());
  adj_ = Eigen::MatrixXd::Zero(n_, n_);
  out_.assign(n_, {});
  in_.assign(n_, {});
  std::set<std::pair<int, int>> seen;
  for (const auto& [from, to] : edges_) {
    if (from < 0 || from >= n_ || to < 0 || to >= n_)
      throw std::invalid_argument("CRNetwork: edge index out of range: (" +
                                  std::to_string(from + 1) + "," +
                                  std::to_string(to + 1) + ")");
    if (from == to)
      throw std::invalid_argument("CRNetwork: self-loop at node " +
                                  std::to_string(from + 1));
    if (!seen.insert({from, to}).second)
      throw std::invalid_argument("CRNetwork: duplicate edge (" +
                                  std::to_string(from + 1) + "," +
                                  std::to_string(to + 1) + ")");
    adj_(from, to) = 1.0;
    out_[from].push_back(to);
    in_[to].push_back(from);
  }
}

CRNetwork CRNetwork::from_edges_1based(int n,
                                       const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::pair<int, int>> shifted;
  shifted.reserve(edges.size());
  for (const auto& [i, j] : edges) shifted.emplace_back(i - 1, j - 1);
  return CRNetwork(n, std::move(shifted));
}

}  // namespace crnli
