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

// Multi-rater agreement statistics over an items x annotators label matrix.
//
// With N items, n annotators, k categories and n_ij the number of annotators
// who put item i in category j:
//
//   P_i  = sum_j n_ij (n_ij - 1) / (n (n - 1))      observed agreement
//   p_j  = sum_i n_ij / (N n)                       category marginal
//   Pbar = mean_i P_i
//
//   marginal (Fleiss)     kappa = (Pbar - Pe) / (1 - Pe),  Pe = sum_j p_j^2
//   uniform (Randolph)    kappa = (Pbar - 1/k) / (1 - 1/k)
//   class-wise            kappa_j = 1 - sum_i n_ij (n - n_ij)
//                                       / (N n (n - 1) p_j (1 - p_j))
//
// Class-wise z-scores use the null variance 2 / (N n (n - 1)); the overall
// z uses the large-sample null variance of Fleiss, Nee and Landis (1979).
// p-values are two-tailed under the standard normal.

#ifndef DIAGRAPH_AGREEMENT_HPP_
#define DIAGRAPH_AGREEMENT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diagraph {

struct ItemMeta {
  std::string layer;
  std::string diagram;
  std::optional<int> hop;
};

/// Items x annotators matrix of category indices. Always complete: every
/// annotator labelled every item.
class AnnotationMatrix {
 public:
  /// Throws Error(kInvalidMatrix) unless n >= 2, k >= 2, rows are complete
  /// and every label indexes `categories`.
  AnnotationMatrix(std::vector<std::string> categories,
                   std::vector<std::string> annotators,
                   std::vector<std::vector<int>> labels,
                   std::vector<std::string> item_ids = {},
                   std::vector<ItemMeta> meta = {});

  /// Builds a matrix realising the given per-item category counts; every row
  /// must sum to the same number of annotators. Categories are named "c0",
  /// "c1", ... unless given.
  static AnnotationMatrix from_counts(
      const std::vector<std::vector<int>>& counts,
      std::vector<std::string> categories = {});

  std::size_t item_count() const noexcept { return labels_.size(); }
  std::size_t annotator_count() const noexcept { return annotators_.size(); }
  std::size_t category_count() const noexcept { return categories_.size(); }

  const std::vector<std::string>& categories() const noexcept { return categories_; }
  const std::vector<std::string>& annotators() const noexcept { return annotators_; }
  const std::vector<std::string>& item_ids() const noexcept { return item_ids_; }
  const std::vector<ItemMeta>& meta() const noexcept { return meta_; }
  const std::vector<std::vector<int>>& labels() const noexcept { return labels_; }
  int label(std::size_t item, std::size_t annotator) const {
    return labels_[item][annotator];
  }

  /// N x k table of n_ij.
  std::vector<std::vector<int>> counts() const;

  /// Rows `items`, in the given order.
  AnnotationMatrix subset(const std::vector<std::size_t>& items) const;

 private:
  std::vector<std::string> categories_;
  std::vector<std::string> annotators_;
  std::vector<std::vector<int>> labels_;
  std::vector<std::string> item_ids_;
  std::vector<ItemMeta> meta_;
};

enum class KappaVariant { kMarginal, kUniform };

struct CategoryKappa {
  std::string category;
  bool defined = true;  // false when the category marginal is 0 or 1
  double kappa = 0.0;
  double z = 0.0;
  double p = 1.0;
};

struct KappaResult {
  KappaVariant variant = KappaVariant::kMarginal;
  bool defined = true;  // false when expected agreement is 1
  double kappa = 0.0;
  double z = 0.0;
  double p = 1.0;
  double observed = 0.0;  // Pbar
  double expected = 0.0;  // Pe or 1/k
};

KappaResult fleiss_kappa(const AnnotationMatrix& m);
KappaResult randolph_kappa(const AnnotationMatrix& m);
std::vector<CategoryKappa> classwise_kappa(const AnnotationMatrix& m);

/// Null standard error of a class-wise kappa, sqrt(2 / (N n (n - 1))).
double classwise_null_se(std::size_t items, std::size_t annotators);
/// Two-tailed standard-normal p-value.
double two_tailed_p(double z);
/// "<0.001" style rendering used in agreement tables.
std::string format_p(double p);

struct HopStratum {
  int hop = 0;
  std::size_t items = 0;
  bool sufficient = true;  // false when fewer than two items
  KappaResult marginal;
  KappaResult uniform;
};

/// Agreement per RST hop depth, ascending by hop.
/// Errors: kMissingDepth when an item has no hop.
std::vector<HopStratum> kappa_by_hop(const AnnotationMatrix& m);

/// Reads the raw-annotation CSV: header `item,<annotator>...` followed by the
/// optional trailing columns `layer`, `diagram`, `hop`. Categories are the
/// sorted distinct labels, extended by `declared_categories`.
/// Errors: kMalformedDocument, kInvalidMatrix.
AnnotationMatrix read_annotation_csv(
    std::string_view text, const std::vector<std::string>& declared_categories = {});
std::string write_annotation_csv(const AnnotationMatrix& m);

}  // namespace diagraph

#endif  // DIAGRAPH_AGREEMENT_HPP_
