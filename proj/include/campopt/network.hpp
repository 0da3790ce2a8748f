// Copyright 2026 The camp-opt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAMPOPT_NETWORK_HPP_
#define CAMPOPT_NETWORK_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "campopt/errors.hpp"
#include "campopt/rng.hpp"

namespace campopt {

// Opinion model in one line: each node averages its neighbours' current
// opinions (weights w_ij), its own initial opinion (anchor weight w0), and the
// two camps' investments (susceptibilities wg, wb):
//
//   v_i <- w0_i * bias_i + sum_j w_ij * v_j + wg_i * x_i - wb_i * y_i.
//
// Convergence needs every row of w to have absolute sum strictly below one;
// opinions additionally stay inside [-1, 1] when the full per-row weight
// budget |w0_i| + sum_j |w_ij| + |wg_i| + |wb_i| stays within one.

inline constexpr double kSubstochasticSlack = 1e-9;   // strict-inequality margin
inline constexpr double kRowBudgetTol = 1e-12;        // equality-like tolerance
inline constexpr double kBudgetSlack = 1e-9;          // allocation budget slack

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 0.0;
};

// Anchor weight and camp susceptibilities of one node.
struct NodeWeights {
  double self = 0.0;  // w0_i, paired with the node's initial opinion
  double good = 0.0;  // wg_i
  double bad = 0.0;   // wb_i
};

struct Budgets {
  double k_g = 0.0;
  double k_b = 0.0;
};

// By default every row must fit the convex-combination budget above. The
// weighted-influence-class constructor with alpha < 3 produces rows whose
// budget exceeds one while remaining strictly substochastic; those networks
// have well-defined equilibria and influence scores, but the |v| <= 1
// trajectory bound no longer holds. Relax exists for exactly that case.
enum class RowBudgetPolicy { Enforce, Relax };

class Network {
 public:
  using SparseMatrix = Eigen::SparseMatrix<double>;

  int n() const noexcept { return static_cast<int>(bias_.size()); }
  const SparseMatrix& w() const noexcept { return w_; }
  const Eigen::VectorXd& self_weight() const noexcept { return self_weight_; }
  const Eigen::VectorXd& good_weight() const noexcept { return good_weight_; }
  const Eigen::VectorXd& bad_weight() const noexcept { return bad_weight_; }
  const Eigen::VectorXd& bias() const noexcept { return bias_; }
  const Eigen::VectorXd& row_abs_sums() const noexcept { return row_abs_sums_; }
  bool nonnegative_weights() const noexcept { return nonnegative_; }

  // Set-once cell for the cached influence vector; filled lazily by
  // influence_vector() and shared across copies of the same network.
  struct InfluenceCell {
    std::once_flag once;
    Eigen::VectorXd r;
    double residual = 0.0;
  };
  const std::shared_ptr<InfluenceCell>& influence_cache() const noexcept { return cache_; }

  friend Network build_network(int n, const std::vector<Edge>& edges,
                               const std::vector<NodeWeights>& extra,
                               const Eigen::VectorXd& bias, RowBudgetPolicy policy);

 private:
  Network() = default;

  SparseMatrix w_;
  Eigen::VectorXd self_weight_, good_weight_, bad_weight_, bias_;
  Eigen::VectorXd row_abs_sums_;
  bool nonnegative_ = true;
  std::shared_ptr<InfluenceCell> cache_;
};

// Assembles and validates a network. Parallel edges accumulate additively.
// On validation failure, throws one ValidationError that lists every violated
// row (substochasticity, weight budget, and bias range all included).
inline Network build_network(int n, const std::vector<Edge>& edges,
                             const std::vector<NodeWeights>& extra,
                             const Eigen::VectorXd& bias,
                             RowBudgetPolicy policy = RowBudgetPolicy::Enforce) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "network needs at least one node");
  if (static_cast<int>(extra.size()) != n || static_cast<int>(bias.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(n) + " extra-weight tuples and biases, got " +
                    std::to_string(extra.size()) + " and " + std::to_string(bias.size()));
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                      ") outside a " + std::to_string(n) + "-node network");
    }
    if (e.src == e.dst) {
      throw Error(ErrorCode::SelfLoopError,
                  "self-loop on node " + std::to_string(e.src) +
                      "; self-influence belongs to the anchor weight");
    }
    if (!std::isfinite(e.weight)) {
      throw Error(ErrorCode::InvalidArgument,
                  "non-finite weight on edge (" + std::to_string(e.src) + ", " +
                      std::to_string(e.dst) + ")");
    }
    triplets.emplace_back(e.src, e.dst, e.weight);
  }

  Network net;
  net.w_.resize(n, n);
  net.w_.setFromTriplets(triplets.begin(), triplets.end());
  net.w_.prune(0.0);
  net.w_.makeCompressed();

  net.self_weight_.resize(n);
  net.good_weight_.resize(n);
  net.bad_weight_.resize(n);
  for (int i = 0; i < n; ++i) {
    const NodeWeights& t = extra[i];
    if (!std::isfinite(t.self) || !std::isfinite(t.good) || !std::isfinite(t.bad)) {
      throw Error(ErrorCode::InvalidArgument,
                  "non-finite extra weight on node " + std::to_string(i));
    }
    net.self_weight_[i] = t.self;
    net.good_weight_[i] = t.good;
    net.bad_weight_[i] = t.bad;
  }
  net.bias_ = bias;

  net.row_abs_sums_ = Eigen::VectorXd::Zero(n);
  net.nonnegative_ = true;
  for (int col = 0; col < net.w_.outerSize(); ++col) {
    for (Network::SparseMatrix::InnerIterator it(net.w_, col); it; ++it) {
      net.row_abs_sums_[it.row()] += std::abs(it.value());
      if (it.value() < 0.0) net.nonnegative_ = false;
    }
  }

  std::vector<ValidationError::Violation> violations;
  for (int i = 0; i < n; ++i) {
    const double row = net.row_abs_sums_[i];
    if (row > 1.0 - kSubstochasticSlack) {
      violations.push_back({ErrorCode::SubstochasticityViolation, i, row});
    }
    const double budget = row + std::abs(net.self_weight_[i]) +
                          std::abs(net.good_weight_[i]) + std::abs(net.bad_weight_[i]);
    if (policy == RowBudgetPolicy::Enforce && budget > 1.0 + kRowBudgetTol) {
      violations.push_back({ErrorCode::WeightBudgetViolation, i, budget});
    }
    if (std::abs(bias[i]) > 1.0 + kRowBudgetTol || !std::isfinite(bias[i])) {
      violations.push_back({ErrorCode::BiasRangeViolation, i, bias[i]});
    }
  }
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << violations.size() << " invalid row(s):";
    for (const auto& v : violations) {
      msg << " [node " << v.node << " " << to_string(v.code) << " " << v.magnitude << "]";
    }
    throw ValidationError(std::move(violations), msg.str());
  }

  net.cache_ = std::make_shared<Network::InfluenceCell>();
  return net;
}

// ---------------------------------------------------------------------------
// Weight generation
// ---------------------------------------------------------------------------

// Random anchor/susceptibility tuples: per node, three independent uniforms
// normalized to sum to `s`. Nodes iterate in ascending index order and draw
// exactly three variates each, so a seed pins the whole sequence. Isolated
// nodes (degree zero) spend the entire unit budget on the tuple instead,
// because they have no neighbour weights to carry the remaining 1 - s.
inline std::vector<NodeWeights> generate_extra_weights(const std::vector<int>& degrees,
                                                       double s, std::uint64_t rng_seed) {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "tuple sum s must lie strictly inside (0, 1), got " + std::to_string(s));
  }
  Rng rng(rng_seed);
  std::vector<NodeWeights> out(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 0) {
      throw Error(ErrorCode::InvalidArgument, "negative degree on node " + std::to_string(i));
    }
    double u0 = 0.0, u1 = 0.0, u2 = 0.0, total = 0.0;
    do {
      u0 = rng.uniform01();
      u1 = rng.uniform01();
      u2 = rng.uniform01();
      total = u0 + u1 + u2;
    } while (total <= 0.0);
    const double target = degrees[i] == 0 ? 1.0 : s;
    out[i] = {target * u0 / total, target * u1 / total, target * u2 / total};
  }
  return out;
}

// Weighted-influence-class tuples: every weight a node hands out (anchor,
// both camps, and each incident edge) equals 1 / (alpha + degree). In this
// class the influence score of node i is exactly (alpha + d_i) / alpha, so
// score * susceptibility is the constant 1 / alpha for every node and no
// targeted strategy beats a random one.
inline std::vector<NodeWeights> weighted_class_weights(const std::vector<int>& degrees,
                                                       double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  }
  std::vector<NodeWeights> out(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 0) {
      throw Error(ErrorCode::InvalidArgument, "negative degree on node " + std::to_string(i));
    }
    const double v = 1.0 / (alpha + degrees[i]);
    out[i] = {v, v, v};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list input
// ---------------------------------------------------------------------------

struct LoadedEdge {
  int src = 0;
  int dst = 0;
  std::optional<double> weight;
};

struct EdgeListData {
  int n = 0;
  std::vector<LoadedEdge> edges;           // directed, after symmetrization
  std::vector<std::int64_t> original_ids;  // dense index -> id in the file
};

// Reads "src dst" or "src dst weight" lines. Blank lines and lines starting
// with '#' are skipped. Two-column rows describe an undirected tie and expand
// to both directions; three-column rows are taken as directed arcs as given.
// Node ids may be any nonnegative integers; they are remapped to a dense
// 0..n-1 range in ascending id order, and the original ids are returned.
inline EdgeListData load_edge_list(std::istream& in) {
  struct RawEdge {
    std::int64_t src, dst;
    std::optional<double> weight;
  };
  std::vector<RawEdge> raw;
  std::map<std::int64_t, int> id_map;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;       // blank line
    if (first[0] == '#') continue;      // comment

    const auto parse_id = [line_no](const std::string& token, const char* what) {
      std::istringstream tok(token);
      std::int64_t id = 0;
      if (!(tok >> id) || !tok.eof()) {
        throw ParseError(line_no, std::string("expected an integer ") + what + " id, got '" +
                                      token + "'");
      }
      return id;
    };
    const std::int64_t src = parse_id(first, "source");
    std::string second;
    if (!(ls >> second)) throw ParseError(line_no, "missing destination id");
    const std::int64_t dst = parse_id(second, "destination");
    if (src < 0 || dst < 0) throw ParseError(line_no, "node ids must be nonnegative");
    if (src == dst) {
      throw Error(ErrorCode::SelfLoopError,
                  "line " + std::to_string(line_no) + ": self-loop on node " +
                      std::to_string(src));
    }

    std::optional<double> weight;
    double w = 0.0;
    if (ls >> w) {
      if (!std::isfinite(w)) throw ParseError(line_no, "non-finite edge weight");
      weight = w;
    } else if (!ls.eof()) {
      throw ParseError(line_no, "malformed edge weight");
    }
    std::string extra;
    ls.clear();
    if (ls >> extra) throw ParseError(line_no, "unexpected trailing token '" + extra + "'");

    raw.push_back({src, dst, weight});
    id_map.emplace(src, 0);
    id_map.emplace(dst, 0);
  }

  EdgeListData out;
  out.original_ids.reserve(id_map.size());
  for (auto& [id, dense] : id_map) {  // std::map iterates ids in ascending order
    dense = static_cast<int>(out.original_ids.size());
    out.original_ids.push_back(id);
  }
  out.n = static_cast<int>(out.original_ids.size());

  for (const RawEdge& e : raw) {
    const int s = id_map.at(e.src), d = id_map.at(e.dst);
    out.edges.push_back({s, d, e.weight});
    if (!e.weight.has_value()) out.edges.push_back({d, s, e.weight});
  }
  return out;
}

inline std::vector<int> out_degrees(int n, const std::vector<LoadedEdge>& edges) {
  std::vector<int> deg(n, 0);
  for (const LoadedEdge& e : edges) ++deg[e.src];
  return deg;
}

// ---------------------------------------------------------------------------
// End-to-end constructors used by the CLI and the test corpus
// ---------------------------------------------------------------------------

// Random-tuple network: neighbour weights split 1 - s evenly over each node's
// out-edges, anchor/susceptibility tuples drawn by generate_extra_weights.
inline Network make_generated_network(const EdgeListData& data, double s,
                                      std::uint64_t rng_seed,
                                      std::optional<Eigen::VectorXd> bias = std::nullopt) {
  const std::vector<int> deg = out_degrees(data.n, data.edges);
  const std::vector<NodeWeights> extra = generate_extra_weights(deg, s, rng_seed);
  std::vector<Edge> edges;
  edges.reserve(data.edges.size());
  for (const LoadedEdge& e : data.edges) {
    edges.push_back({e.src, e.dst, (1.0 - s) / deg[e.src]});
  }
  Eigen::VectorXd v0 = bias.value_or(Eigen::VectorXd::Zero(data.n));
  return build_network(data.n, edges, extra, v0);
}

// Weighted-influence-class network: every outgoing weight is 1/(alpha + d_i).
// Row budgets exceed one for alpha < 3 (see RowBudgetPolicy), so validation
// runs in Relax mode here; substochasticity is still enforced.
inline Network make_weighted_class_network(const EdgeListData& data, double alpha,
                                           std::optional<Eigen::VectorXd> bias = std::nullopt) {
  const std::vector<int> deg = out_degrees(data.n, data.edges);
  const std::vector<NodeWeights> extra = weighted_class_weights(deg, alpha);
  std::vector<Edge> edges;
  edges.reserve(data.edges.size());
  for (const LoadedEdge& e : data.edges) {
    edges.push_back({e.src, e.dst, 1.0 / (alpha + deg[e.src])});
  }
  Eigen::VectorXd v0 = bias.value_or(Eigen::VectorXd::Zero(data.n));
  return build_network(data.n, edges, extra, v0, RowBudgetPolicy::Relax);
}

}  // namespace campopt

#endif  // CAMPOPT_NETWORK_HPP_
