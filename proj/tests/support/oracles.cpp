// Copyright 2026 The Diagraph Authors
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

#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "json.hpp"

namespace oracle {

namespace {

// Share of ordered annotator pairs (a != b) that agree, averaged over items.
double mean_pair_agreement(const std::vector<std::vector<int>>& labels) {
  double sum = 0.0;
  for (const auto& item : labels) {
    long agree = 0, pairs = 0;
    for (std::size_t a = 0; a < item.size(); ++a)
      for (std::size_t b = 0; b < item.size(); ++b) {
        if (a == b) continue;
        ++pairs;
        if (item[a] == item[b]) ++agree;
      }
    sum += static_cast<double>(agree) / static_cast<double>(pairs);
  }
  return sum / static_cast<double>(labels.size());
}

std::vector<double> shares(const std::vector<std::vector<int>>& labels, int k) {
  std::vector<double> p(static_cast<std::size_t>(k), 0.0);
  double total = 0.0;
  for (const auto& item : labels)
    for (int v : item) {
      p[static_cast<std::size_t>(v)] += 1.0;
      total += 1.0;
    }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace

double fleiss_kappa(const std::vector<std::vector<int>>& labels, int k) {
  const double pbar = mean_pair_agreement(labels);
  double pe = 0.0;
  for (double p : shares(labels, k)) pe += p * p;
  return (pbar - pe) / (1.0 - pe);
}

double randolph_kappa(const std::vector<std::vector<int>>& labels, int k) {
  const double pbar = mean_pair_agreement(labels);
  const double chance = 1.0 / static_cast<double>(k);
  return (pbar - chance) / (1.0 - chance);
}

double classwise_kappa(const std::vector<std::vector<int>>& labels, int k, int j) {
  const double pj = shares(labels, k)[static_cast<std::size_t>(j)];
  double split_pairs = 0.0, all_pairs = 0.0;
  for (const auto& item : labels)
    for (std::size_t a = 0; a < item.size(); ++a)
      for (std::size_t b = 0; b < item.size(); ++b) {
        if (a == b) continue;
        all_pairs += 1.0;
        if (item[a] == j && item[b] != j) split_pairs += 1.0;
      }
  return 1.0 - split_pairs / (all_pairs * pj * (1.0 - pj));
}

bool is_tree(const std::vector<std::string>& nodes,
             const std::vector<std::pair<std::string, std::string>>& edges) {
  if (nodes.empty()) return edges.empty();
  if (edges.size() != nodes.size() - 1) return false;
  std::map<std::string, std::string> parent;
  for (const auto& n : nodes) parent[n] = n;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    if (parent[x] == x) return x;
    return parent[x] = find(parent[x]);
  };
  for (const auto& [a, b] : edges) {
    if (!parent.count(a) || !parent.count(b)) return false;
    const std::string ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

bool is_forest(const std::vector<std::string>& nodes,
               const std::vector<std::pair<std::string, std::string>>& child_parent) {
  std::map<std::string, std::string> up;
  for (const auto& [c, p] : child_parent)
    if (!up.emplace(c, p).second) return false;
  for (const auto& n : nodes) {
    std::string cur = n;
    for (std::size_t steps = 0; up.count(cur); ++steps) {
      if (steps > nodes.size()) return false;
      cur = up[cur];
    }
  }
  return true;
}

std::map<std::string, double> recount_features(
    const std::string& serialized_document,
    const std::vector<std::string>& layout_ids) {
  const auto doc = nlohmann::json::parse(serialized_document);
  std::map<std::string, double> out;
  for (const auto& id : layout_ids) {
    switch (id.front()) {
      case 'B': out["elements.blob"] += 1; break;
      case 'T': out["elements.text"] += 1; break;
      case 'A': out["elements.arrow"] += 1; break;
      case 'H': out["elements.arrowhead"] += 1; break;
      case 'I': out["elements.imageConstant"] += 1; break;
    }
  }
  for (const auto& m : doc["grouping"]["macro"])
    out["macro." + m["label"].get<std::string>()] += 1;
  for (const auto& n : doc["rst"]["nodes"]) {
    if (n["kind"] != "relation") continue;
    std::string name = n["name"].get<std::string>();
    for (char& ch : name)
      if (ch == ' ') ch = '_';
    out["relation." + name] += 1;
  }
  for (const auto& e : doc["rst"]["edges"])
    out[e["nuclearity"] == "nucleus" ? "nucleusCount" : "satelliteCount"] += 1;
  for (const auto& e : doc["connectivity"]["edges"])
    out["connection." + e["kind"].get<std::string>()] += 1;
  const double density = enumerate_density(serialized_document);
  if (density != 0.0) out["density"] = density;
  return out;
}

double enumerate_density(const std::string& serialized_document) {
  const auto doc = nlohmann::json::parse(serialized_document);
  const auto& c = doc["connectivity"];
  std::set<std::string> nodes;
  if (c.contains("nodes"))
    for (const auto& n : c["nodes"]) nodes.insert(n.get<std::string>());
  for (const auto& e : c["edges"]) {
    nodes.insert(e["source"].get<std::string>());
    nodes.insert(e["target"].get<std::string>());
  }
  if (nodes.size() < 2) return 0.0;
  long realised = 0, possible = 0;
  for (const auto& u : nodes)
    for (const auto& v : nodes) {
      if (u == v) continue;
      ++possible;
      for (const auto& e : c["edges"]) {
        const bool forward = e["source"] == u && e["target"] == v;
        const bool backward = e["source"] == v && e["target"] == u;
        if (forward || (backward && e["kind"] != "directed")) {
          ++realised;
          break;
        }
      }
    }
  return static_cast<double>(realised) / static_cast<double>(possible);
}

double silhouette(const std::vector<std::vector<double>>& points,
                  const std::vector<int>& cluster) {
  auto dist = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t d = 0; d < points[a].size(); ++d)
      s += (points[a][d] - points[b][d]) * (points[a][d] - points[b][d]);
    return std::sqrt(s);
  };
  std::set<int> labels(cluster.begin(), cluster.end());
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::map<int, std::pair<double, int>> sums;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      auto& s = sums[cluster[j]];
      s.first += dist(i, j);
      s.second += 1;
    }
    const auto own = sums[cluster[i]];
    if (own.second == 0) continue;  // singleton cluster scores 0
    const double a = own.first / own.second;
    double b = std::numeric_limits<double>::infinity();
    for (int l : labels) {
      if (l == cluster[i] || !sums.count(l) || sums[l].second == 0) continue;
      b = std::min(b, sums[l].first / sums[l].second);
    }
    total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(points.size());
}

}  // namespace oracle
