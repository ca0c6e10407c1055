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

#ifndef DIAGRAPH_IDS_HPP_
#define DIAGRAPH_IDS_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace diagraph {

/// Node identifier shared by the layout and every annotation layer.
///
/// Textual form is `[BTAHIGR][0-9]+(\.[0-9]+)?`. The prefix letter encodes
/// the kind of node; the optional decimal suffix marks a split copy of a
/// discourse unit (e.g. `T7.1` is the first copy of `T7`). Leading zeros are
/// rejected so that every id has exactly one spelling.
///
/// Ordering is natural: by prefix letter, then numeric index, then split
/// suffix (unsplit first), so `T2 < T10 < T10.1`.
class ElementId {
 public:
  enum class Prefix : char {
    kArrow = 'A',
    kBlob = 'B',
    kGroup = 'G',
    kArrowhead = 'H',
    kImageConstant = 'I',
    kRelation = 'R',
    kText = 'T',
  };

  ElementId() = default;
  ElementId(Prefix prefix, std::uint32_t index,
            std::optional<std::uint32_t> split = std::nullopt)
      : prefix_(prefix), index_(index), split_(split) {}

  /// Throws Error(kInvalidId) when `text` does not match the id pattern.
  static ElementId parse(std::string_view text);
  static std::optional<ElementId> try_parse(std::string_view text) noexcept;

  Prefix prefix() const noexcept { return prefix_; }
  std::uint32_t index() const noexcept { return index_; }
  std::optional<std::uint32_t> split() const noexcept { return split_; }

  bool is_split() const noexcept { return split_.has_value(); }
  bool is_group() const noexcept { return prefix_ == Prefix::kGroup; }
  bool is_relation() const noexcept { return prefix_ == Prefix::kRelation; }
  bool is_image_constant() const noexcept {
    return prefix_ == Prefix::kImageConstant;
  }
  /// True for the root of every grouping graph, I0.
  bool is_root() const noexcept { return is_image_constant() && index_ == 0 && !split_; }

  /// The id with any split suffix removed.
  ElementId base() const noexcept { return ElementId(prefix_, index_); }

  std::string str() const;

  friend bool operator==(const ElementId&, const ElementId&) = default;
  friend std::strong_ordering operator<=>(const ElementId& a,
                                          const ElementId& b) noexcept {
    if (auto c = static_cast<char>(a.prefix_) <=> static_cast<char>(b.prefix_);
        c != 0)
      return c;
    if (auto c = a.index_ <=> b.index_; c != 0) return c;
    return a.split_.value_or(0) <=> b.split_.value_or(0);
  }

 private:
  Prefix prefix_ = Prefix::kImageConstant;
  std::uint32_t index_ = 0;
  std::optional<std::uint32_t> split_;
};

/// The image constant I0.
inline ElementId root_id() { return ElementId(ElementId::Prefix::kImageConstant, 0); }

}  // namespace diagraph

#endif  // DIAGRAPH_IDS_HPP_
