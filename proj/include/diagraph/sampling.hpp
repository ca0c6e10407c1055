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

// Sampling of annotation units for agreement experiments.

#ifndef DIAGRAPH_SAMPLING_HPP_
#define DIAGRAPH_SAMPLING_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diagraph/model.hpp"

namespace diagraph {

enum class TaskLayer { kGrouping, kMacro, kConnectivity, kRst };

std::string_view task_layer_name(TaskLayer layer);
std::optional<TaskLayer> parse_task_layer(std::string_view name);

/// One unit to be judged by every annotator.
struct AgreementTask {
  std::string diagram_id;
  TaskLayer layer = TaskLayer::kGrouping;
  std::string unit;                    // G3, I0, "B1->T2", R4 ...
  std::vector<ElementId> highlight;    // ids shown to the annotator
  std::string reference_label;         // label in the annotated corpus
  std::optional<int> hop_depth;        // discourse units only

  /// "<diagram>:<unit>", unique within a population.
  std::string key() const { return diagram_id + ":" + unit; }
};

/// Every eligible unit of `layer`, in corpus then canonical order:
///   grouping      groups whose children are all diagram elements
///   macro         nodes carrying a macro-group label
///   connectivity  connectivity edges
///   rst           relation nodes, with their hop depth
std::vector<AgreementTask> task_population(const std::vector<Diagram>& corpus,
                                           TaskLayer layer);

/// max(1, floor(fraction * population)).
std::size_t sample_size(std::size_t population, double fraction);

/// Simple random sample without replacement of sample_size(|population|,
/// fraction) units, returned in draw order.
/// Errors: kEmptyPopulation; kInvalidArgument unless 0 < fraction <= 1.
std::vector<AgreementTask> sample_agreement_tasks(
    const std::vector<Diagram>& corpus, TaskLayer layer, double fraction,
    std::uint64_t seed);

}  // namespace diagraph

#endif  // DIAGRAPH_SAMPLING_HPP_
