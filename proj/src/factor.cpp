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

#include "factor.hpp"

#include <algorithm>

namespace bnx::detail {

bool Factor::mentions(NodeIndex v) const {
  return std::binary_search(vars.begin(), vars.end(), v);
}

Factor cpt_factor(const Network& net, NodeIndex node, const EvidenceSet& evidence) {
  const NodeSpec& spec = net.node(node);
  auto parents = net.parents(node);

  Factor f;
  for (NodeIndex p : parents) {
    if (!evidence.contains(p)) f.vars.push_back(p);
  }
  if (!evidence.contains(node)) f.vars.push_back(node);
  std::sort(f.vars.begin(), f.vars.end());
  for (NodeIndex v : f.vars) f.cards.push_back(net.cardinality(v));

  std::size_t size = 1;
  for (std::size_t c : f.cards) size *= c;
  f.values.assign(size, 0.0);

  // Current state of every variable touched by the CPT.
  std::vector<std::size_t> assignment(f.vars.size(), 0);
  auto state_of = [&](NodeIndex v) -> std::size_t {
    if (auto s = evidence.state_of(v)) return *s;
    auto it = std::lower_bound(f.vars.begin(), f.vars.end(), v);
    return assignment[static_cast<std::size_t>(it - f.vars.begin())];
  };

  for (std::size_t idx = 0; idx < size; ++idx) {
    std::size_t row = 0;
    for (NodeIndex p : parents) row = row * net.cardinality(p) + state_of(p);
    f.values[idx] = spec.cpt[row][state_of(node)];
    for (std::size_t k = f.vars.size(); k-- > 0;) {
      if (++assignment[k] < f.cards[k]) break;
      assignment[k] = 0;
    }
  }
  return f;
}

Factor multiply(std::span<const Factor* const> factors) {
  Factor out;
  for (const Factor* f : factors) {
    out.vars.insert(out.vars.end(), f->vars.begin(), f->vars.end());
  }
  std::sort(out.vars.begin(), out.vars.end());
  out.vars.erase(std::unique(out.vars.begin(), out.vars.end()), out.vars.end());

  const std::size_t nv = out.vars.size();
  out.cards.assign(nv, 0);
  for (const Factor* f : factors) {
    for (std::size_t k = 0; k < f->vars.size(); ++k) {
      auto it = std::lower_bound(out.vars.begin(), out.vars.end(), f->vars[k]);
      out.cards[static_cast<std::size_t>(it - out.vars.begin())] = f->cards[k];
    }
  }
  std::size_t size = 1;
  for (std::size_t c : out.cards) size *= c;
  out.values.assign(size, 1.0);

  // strides[i][k]: step in factor i's table when output variable k advances.
  std::vector<std::vector<std::size_t>> strides(factors.size(), std::vector<std::size_t>(nv, 0));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Factor& f = *factors[i];
    std::size_t stride = 1;
    for (std::size_t k = f.vars.size(); k-- > 0;) {
      auto it = std::lower_bound(out.vars.begin(), out.vars.end(), f.vars[k]);
      strides[i][static_cast<std::size_t>(it - out.vars.begin())] = stride;
      stride *= f.cards[k];
    }
  }

  std::vector<std::size_t> assignment(nv, 0);
  std::vector<std::size_t> index(factors.size(), 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    double v = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i) v *= factors[i]->values[index[i]];
    out.values[idx] = v;
    for (std::size_t k = nv; k-- > 0;) {
      if (++assignment[k] < out.cards[k]) {
        for (std::size_t i = 0; i < factors.size(); ++i) index[i] += strides[i][k];
        break;
      }
      assignment[k] = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        index[i] -= strides[i][k] * (out.cards[k] - 1);
      }
    }
  }
  return out;
}

Factor sum_out(const Factor& f, NodeIndex var) {
  auto it = std::lower_bound(f.vars.begin(), f.vars.end(), var);
  if (it == f.vars.end() || *it != var) return f;
  std::size_t k = static_cast<std::size_t>(it - f.vars.begin());

  Factor out;
  out.vars = f.vars;
  out.cards = f.cards;
  out.vars.erase(out.vars.begin() + static_cast<std::ptrdiff_t>(k));
  out.cards.erase(out.cards.begin() + static_cast<std::ptrdiff_t>(k));

  std::size_t inner = 1;
  for (std::size_t j = k + 1; j < f.cards.size(); ++j) inner *= f.cards[j];
  std::size_t card = f.cards[k];
  std::size_t outer = f.values.size() / (inner * card);
  out.values.assign(outer * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < card; ++s) {
      const double* src = &f.values[(o * card + s) * inner];
      double* dst = &out.values[o * inner];
      for (std::size_t i = 0; i < inner; ++i) dst[i] += src[i];
    }
  }
  return out;
}

}  // namespace bnx::detail
