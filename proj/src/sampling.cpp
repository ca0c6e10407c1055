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

#include "diagraph/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "diagraph/error.hpp"
#include "diagraph/graph_ops.hpp"
#include "diagraph/rng.hpp"

namespace diagraph {

std::string_view task_layer_name(TaskLayer layer) {
  switch (layer) {
    case TaskLayer::kGrouping: return "grouping";
    case TaskLayer::kMacro: return "macro";
    case TaskLayer::kConnectivity: return "connectivity";
    case TaskLayer::kRst: return "rst";
  }
  return "?";
}

std::optional<TaskLayer> parse_task_layer(std::string_view name) {
  if (name == "grouping") return TaskLayer::kGrouping;
  if (name == "macro") return TaskLayer::kMacro;
  if (name == "connectivity") return TaskLayer::kConnectivity;
  if (name == "rst" || name == "discourse") return TaskLayer::kRst;
  return std::nullopt;
}

std::vector<AgreementTask> task_population(const std::vector<Diagram>& corpus,
                                           TaskLayer layer) {
  std::vector<AgreementTask> out;
  for (const Diagram& d : corpus) {
    auto task = [&](std::string unit) {
      AgreementTask t;
      t.diagram_id = d.diagram_id;
      t.layer = layer;
      t.unit = std::move(unit);
      return t;
    };
    switch (layer) {
      case TaskLayer::kGrouping:
        for (const ElementId& g : d.grouping.groups()) {
          const auto children = d.grouping.children(g);
          if (std::any_of(children.begin(), children.end(),
                          [](const ElementId& c) { return c.is_group(); }))
            continue;
          AgreementTask t = task(g.str());
          t.highlight = children;
          out.push_back(std::move(t));
        }
        break;
      case TaskLayer::kMacro:
        for (const auto& [node, label] : d.grouping.macro_labels) {
          AgreementTask t = task(node.str());
          t.highlight = {node};
          t.reference_label = std::string(macro_group_name(label));
          out.push_back(std::move(t));
        }
        break;
      case TaskLayer::kConnectivity:
        for (const Connection& c : d.connectivity.edges) {
          AgreementTask t = task(c.source.str() + "->" + c.target.str() + ":" +
                                 std::string(connection_kind_name(c.kind)));
          t.highlight = {c.source, c.target};
          t.reference_label = std::string(connection_kind_name(c.kind));
          out.push_back(std::move(t));
        }
        break;
      case TaskLayer::kRst:
        for (const ElementId& r : d.rst.relations()) {
          AgreementTask t = task(r.str());
          t.highlight = {r};
          for (const RstEdge* e : d.rst.incoming(r)) t.highlight.push_back(e->child);
          t.reference_label = d.rst.nodes.at(r).relation;
          t.hop_depth = rst_hop_depth(d.rst, r);
          out.push_back(std::move(t));
        }
        break;
    }
  }
  return out;
}

std::size_t sample_size(std::size_t population, double fraction) {
  // The epsilon keeps e.g. 0.1 * 2560 from rounding down to 255.
  const auto n = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(population) + 1e-9));
  return std::min(population, std::max<std::size_t>(1, n));
}

std::vector<AgreementTask> sample_agreement_tasks(
    const std::vector<Diagram>& corpus, TaskLayer layer, double fraction,
    std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "fraction must lie in (0, 1]");
  std::vector<AgreementTask> population = task_population(corpus, layer);
  if (population.empty())
    throw Error(ErrorCode::kEmptyPopulation,
                "no eligible " + std::string(task_layer_name(layer)) + " units");
  const std::size_t count = sample_size(population.size(), fraction);
  // Partial Fisher-Yates shuffle.
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(population.size() - i);
    std::swap(population[i], population[j]);
  }
  population.resize(count);
  return population;
}

}  // namespace diagraph
