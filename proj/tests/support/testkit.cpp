// Copyright 2026 The bnexplain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "testkit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bnx/graph.hpp"

#ifndef BNX_DATA_DIR
#define BNX_DATA_DIR "data"
#endif

namespace bnx::testkit {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data_path(const std::string& name) { return std::string(BNX_DATA_DIR) + "/" + name; }

Network load_network(const std::string& name) { return parse_network(read_file(data_path(name))); }

EvidenceSet load_evidence(const Network& net, const std::string& name) {
  return parse_evidence(net, read_file(data_path(name)));
}

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n, double zero_p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = -std::log(1.0 - u(rng));
  if (zero_p > 0.0) {
    std::size_t keep = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != keep && u(rng) < zero_p) v[i] = 0.0;
    }
  }
  double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= s;
  return v;
}

Network random_network(std::mt19937_64& rng, const RandomNetworkOptions& o) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> card(2, std::max<std::size_t>(2, o.max_states));
  std::vector<NodeSpec> nodes(o.nodes);
  // Node i may only take parents among 0..i-1, then ids are shuffled so
  // that index order is not topological.
  std::vector<std::size_t> perm(o.nodes);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < o.nodes; ++i) {
    NodeSpec& n = nodes[i];
    n.id = "N" + std::to_string(perm[i]);
    n.label = "Node " + std::to_string(perm[i]);
    std::size_t k = card(rng);
    for (std::size_t s = 0; s < k; ++s) n.states.push_back("s" + std::to_string(s));
    std::vector<std::size_t> candidates(i);
    std::iota(candidates.begin(), candidates.end(), 0);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (std::size_t c : candidates) {
      if (n.parents.size() >= o.max_parents) break;
      if (u(rng) < o.edge_probability) n.parents.push_back(nodes[c].id);
    }
  }
  for (std::size_t i = 0; i < o.nodes; ++i) {
    NodeSpec& n = nodes[i];
    std::size_t rows = 1;
    for (const auto& p : n.parents) {
      auto it = std::find_if(nodes.begin(), nodes.end(), [&](const NodeSpec& x) { return x.id == p; });
      rows *= it->states.size();
    }
    for (std::size_t r = 0; r < rows; ++r) {
      n.cpt.push_back(random_simplex(rng, n.states.size(), o.zero_probability));
    }
  }
  std::shuffle(nodes.begin(), nodes.end(), rng);
  return Network::build("random", std::move(nodes));
}

namespace {

std::vector<NodeIndex> pick_nodes(const Network& net, std::mt19937_64& rng, std::size_t count,
                                  const std::vector<NodeIndex>& exclude) {
  std::vector<NodeIndex> pool;
  for (NodeIndex i = 0; i < net.size(); ++i) {
    if (std::find(exclude.begin(), exclude.end(), i) == exclude.end()) pool.push_back(i);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(count, pool.size()));
  return pool;
}

std::size_t row_of(const Network& net, NodeIndex v, const std::vector<std::size_t>& assignment) {
  std::size_t row = 0;
  for (NodeIndex p : net.parents(v)) row = row * net.cardinality(p) + assignment[p];
  return row;
}

}  // namespace

EvidenceSet random_evidence(const Network& net, std::mt19937_64& rng, std::size_t count,
                            const std::vector<NodeIndex>& exclude) {
  std::vector<std::pair<NodeIndex, std::size_t>> states;
  for (NodeIndex v : pick_nodes(net, rng, count, exclude)) {
    states.emplace_back(v, std::uniform_int_distribution<std::size_t>(0, net.cardinality(v) - 1)(rng));
  }
  return EvidenceSet::from_states(net, states);
}

EvidenceSet sampled_evidence(const Network& net, std::mt19937_64& rng, std::size_t count,
                             const std::vector<NodeIndex>& exclude) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::size_t> sample(net.size(), 0);
  for (NodeIndex v : net.topological_order()) {
    const auto& row = net.node(v).cpt[row_of(net, v, sample)];
    double x = u(rng), acc = 0.0;
    std::size_t s = 0;
    for (; s + 1 < row.size(); ++s) {
      acc += row[s];
      if (x < acc && row[s] > 0.0) break;
    }
    while (row[s] == 0.0) s = (s + row.size() - 1) % row.size();
    sample[v] = s;
  }
  std::vector<std::pair<NodeIndex, std::size_t>> states;
  for (NodeIndex v : pick_nodes(net, rng, count, exclude)) states.emplace_back(v, sample[v]);
  return EvidenceSet::from_states(net, states);
}

std::vector<double> enumerate_posterior(const Network& net, const EvidenceSet& evidence,
                                        NodeIndex query) {
  const std::size_t n = net.size();
  std::vector<std::size_t> a(n, 0);
  std::vector<double> acc(net.cardinality(query), 0.0);
  // Odometer over every joint assignment consistent with the evidence.
  for (const auto& f : evidence.findings()) a[f.node] = f.state;
  std::vector<NodeIndex> free;
  for (NodeIndex v = 0; v < n; ++v) {
    if (!evidence.contains(v)) free.push_back(v);
  }
  while (true) {
    double p = 1.0;
    for (NodeIndex v = 0; v < n && p > 0.0; ++v) p *= net.node(v).cpt[row_of(net, v, a)][a[v]];
    acc[a[query]] += p;
    std::size_t k = 0;
    for (; k < free.size(); ++k) {
      if (++a[free[k]] < net.cardinality(free[k])) break;
      a[free[k]] = 0;
    }
    if (k == free.size()) break;
  }
  double z = std::accumulate(acc.begin(), acc.end(), 0.0);
  if (z == 0.0) return {};
  for (auto& x : acc) x /= z;
  return acc;
}

std::vector<std::vector<NodeIndex>> simple_paths(const Network& net, NodeIndex x, NodeIndex y) {
  std::vector<std::vector<NodeIndex>> out;
  std::vector<NodeIndex> path{x};
  std::vector<bool> on(net.size(), false);
  on[x] = true;
  std::function<void(NodeIndex)> dfs = [&](NodeIndex v) {
    if (v == y) {
      out.push_back(path);
      return;
    }
    std::set<NodeIndex> nbrs(net.parents(v).begin(), net.parents(v).end());
    nbrs.insert(net.children(v).begin(), net.children(v).end());
    for (NodeIndex w : nbrs) {
      if (on[w]) continue;
      on[w] = true;
      path.push_back(w);
      dfs(w);
      path.pop_back();
      on[w] = false;
    }
  };
  dfs(x);
  return out;
}

namespace {

bool is_parent(const Network& net, NodeIndex p, NodeIndex c) {
  auto ps = net.parents(c);
  return std::find(ps.begin(), ps.end(), p) != ps.end();
}

bool has_observed_descendant(const Network& net, NodeIndex v, const std::vector<bool>& observed) {
  std::vector<NodeIndex> stack{v};
  std::vector<bool> seen(net.size(), false);
  while (!stack.empty()) {
    NodeIndex w = stack.back();
    stack.pop_back();
    if (seen[w]) continue;
    seen[w] = true;
    if (observed[w]) return true;
    for (NodeIndex c : net.children(w)) stack.push_back(c);
  }
  return false;
}

}  // namespace

bool path_active(const Network& net, const std::vector<NodeIndex>& path,
                 const std::vector<bool>& observed) {
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    NodeIndex prev = path[i - 1], v = path[i], next = path[i + 1];
    bool collider = is_parent(net, prev, v) && is_parent(net, next, v);
    if (collider) {
      if (!has_observed_descendant(net, v, observed)) return false;
    } else if (observed[v]) {
      return false;
    }
  }
  return true;
}

bool path_d_separated(const Network& net, NodeIndex x, NodeIndex y,
                      const std::vector<bool>& observed) {
  for (const auto& p : simple_paths(net, x, y)) {
    if (path_active(net, p, observed)) return false;
  }
  return true;
}

std::vector<NodeIndex> trail_intermediates(const Network& net, const EvidenceSet& evidence,
                                           NodeIndex target,
                                           const std::vector<NodeIndex>& significant) {
  std::vector<bool> observed = evidence.observed_mask(net.size());
  std::set<NodeIndex> mb;
  for (NodeIndex p : net.parents(target)) mb.insert(p);
  for (NodeIndex c : net.children(target)) {
    mb.insert(c);
    for (NodeIndex q : net.parents(c)) mb.insert(q);
  }
  mb.erase(target);
  std::set<NodeIndex> found;
  for (NodeIndex e : significant) {
    std::vector<bool> rest = observed;
    rest[e] = false;
    for (const auto& p : simple_paths(net, e, target)) {
      if (!path_active(net, p, rest)) continue;
      for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (mb.count(p[i]) && !observed[p[i]]) found.insert(p[i]);
      }
    }
  }
  std::vector<NodeIndex> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(),
            [&](NodeIndex a, NodeIndex b) { return net.node(a).id < net.node(b).id; });
  return out;
}

double oracle_hellinger(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    s += d * d;
  }
  return std::sqrt(s / 2.0);
}

double oracle_kl10(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s += p[i] * std::log(p[i] / q[i]) / std::log(10.0);
  }
  return s;
}

ConflictCategory oracle_category(const std::vector<double>& posterior,
                                 const std::vector<double>& retracted,
                                 const std::vector<double>& prior) {
  const double tol = 1e-9;
  bool every_state_agrees = true;
  bool every_state_disagrees = true;
  double agree = 0.0, disagree = 0.0;
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    double de = posterior[i] - retracted[i];
    double da = posterior[i] - prior[i];
    bool flat = std::fabs(de) < tol || std::fabs(da) < tol;
    bool same = flat || (de > 0) == (da > 0);
    bool opposite = flat || (de > 0) != (da > 0);
    every_state_agrees = every_state_agrees && same;
    every_state_disagrees = every_state_disagrees && opposite;
    double term = std::pow(std::sqrt(posterior[i]) - std::sqrt(retracted[i]), 2);
    if (!flat && same) agree += term;
    if (!flat && opposite) disagree += term;
  }
  if (every_state_agrees) {
    return oracle_hellinger(posterior, retracted) > oracle_hellinger(posterior, prior) + 1e-12
               ? ConflictCategory::kDominant
               : ConflictCategory::kConsistent;
  }
  if (every_state_disagrees) return ConflictCategory::kConflicting;
  return std::sqrt(agree / 2.0) > std::sqrt(disagree / 2.0) ? ConflictCategory::kMixedConsistent
                                                            : ConflictCategory::kMixedConflicting;
}

}  // namespace bnx::testkit
