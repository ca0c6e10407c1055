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

#include <cmath>

#include "common.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include "diagraph/agreement.hpp"

using namespace diagraph;

namespace {

// Fourteen raters, ten subjects, five categories.
const std::vector<std::vector<int>> kTextbook = {
    {0, 0, 0, 0, 14}, {0, 2, 6, 4, 2}, {0, 0, 3, 5, 6}, {0, 3, 9, 2, 0}, {2, 2, 8, 1, 1},
    {7, 7, 0, 0, 0},  {3, 2, 6, 3, 0}, {2, 5, 3, 2, 2}, {6, 5, 2, 1, 0}, {0, 2, 2, 3, 7}};

}  // namespace

TEST_CASE("textbook fleiss example") {
  const AnnotationMatrix m = AnnotationMatrix::from_counts(kTextbook);
  CHECK(m.item_count() == 10);
  CHECK(m.annotator_count() == 14);
  CHECK(m.counts() == kTextbook);
  const KappaResult k = fleiss_kappa(m);
  CHECK(k.observed == doctest::Approx(0.378).epsilon(1e-3));
  CHECK(k.expected == doctest::Approx(0.213).epsilon(1e-2));
  CHECK(k.kappa == doctest::Approx(0.20993).epsilon(1e-4));
  const KappaResult u = randolph_kappa(m);
  CHECK(u.expected == doctest::Approx(0.2));
  CHECK(u.kappa == doctest::Approx((k.observed - 0.2) / 0.8));
}

TEST_CASE("kappas match the pairwise oracle") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(5);
    const int k = 2 + static_cast<int>(rng.below(4));
    const auto labels = gen::simulate_annotators(rng, 5 + rng.below(40), k,
                                                 std::vector<double>(n, 0.7));
    std::vector<std::string> cats, anns;
    for (int c = 0; c < k; ++c) cats.push_back("c" + std::to_string(c));
    for (std::size_t a = 0; a < n; ++a) anns.push_back("a" + std::to_string(a));
    const AnnotationMatrix m(cats, anns, labels);
    const KappaResult f = fleiss_kappa(m);
    if (f.defined) CHECK(f.kappa == doctest::Approx(oracle::fleiss_kappa(labels, k)).epsilon(1e-12));
    CHECK(randolph_kappa(m).kappa ==
          doctest::Approx(oracle::randolph_kappa(labels, k)).epsilon(1e-12));
    const auto classes = classwise_kappa(m);
    REQUIRE(classes.size() == static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      if (!classes[static_cast<std::size_t>(j)].defined) continue;
      CHECK(classes[static_cast<std::size_t>(j)].kappa ==
            doctest::Approx(oracle::classwise_kappa(labels, k, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("class-wise z and p under the null") {
  const AnnotationMatrix m = AnnotationMatrix::from_counts(kTextbook);
  const auto classes = classwise_kappa(m);
  const double se = std::sqrt(2.0 / (10.0 * 14.0 * 13.0));
  CHECK(classwise_null_se(10, 14) == doctest::Approx(se));
  for (const auto& c : classes) {
    CHECK(c.z == doctest::Approx(c.kappa / se));
    CHECK(c.p == doctest::Approx(std::erfc(std::fabs(c.z) / std::sqrt(2.0))));
  }
  CHECK(two_tailed_p(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(two_tailed_p(0.0) == doctest::Approx(1.0));
  CHECK(format_p(0.0004) == "<0.001");
  CHECK(format_p(0.0312) == "0.031");
}

TEST_CASE("degenerate matrices") {
  // Every rater always picks the same category: chance agreement is 1.
  const AnnotationMatrix same = AnnotationMatrix::from_counts({{3, 0}, {3, 0}});
  const KappaResult f = fleiss_kappa(same);
  CHECK_FALSE(f.defined);
  CHECK(std::isnan(f.kappa));
  CHECK(randolph_kappa(same).kappa == doctest::Approx(1.0));
  CHECK_FALSE(classwise_kappa(same)[0].defined);

  CHECK_THROWS_CODE(AnnotationMatrix({"a", "b"}, {"x"}, {{0}}), ErrorCode::kInvalidMatrix);
  CHECK_THROWS_CODE(AnnotationMatrix({"a"}, {"x", "y"}, {{0, 0}}), ErrorCode::kInvalidMatrix);
  CHECK_THROWS_CODE(AnnotationMatrix({"a", "b"}, {"x", "y"}, {{0, 2}}), ErrorCode::kInvalidMatrix);
  CHECK_THROWS_CODE(AnnotationMatrix({"a", "b"}, {"x", "y"}, {{0}}), ErrorCode::kInvalidMatrix);
  CHECK_THROWS_CODE(AnnotationMatrix::from_counts({{2, 1}, {1, 1}}), ErrorCode::kInvalidMatrix);
}

TEST_CASE("subsets and hop strata") {
  const std::string text =
      "item,a1,a2,a3,layer,diagram,hop\n"
      "0:R1,joint,joint,joint,rst,0,0\n"
      "0:R2,list,joint,list,rst,0,1\n"
      "1:R1,list,list,list,rst,1,0\n"
      "2:R1,joint,list,joint,rst,2,0\n"
      "3:R4,joint,joint,joint,rst,3,2\n";
  const AnnotationMatrix m = read_annotation_csv(text);
  CHECK(m.categories() == std::vector<std::string>{"joint", "list"});
  CHECK(m.meta()[1].hop == 1);
  CHECK(m.meta()[1].diagram == "0");
  const auto strata = kappa_by_hop(m);
  REQUIRE(strata.size() == 3);
  CHECK(strata[0].hop == 0);
  CHECK(strata[0].items == 3);
  CHECK(strata[0].sufficient);
  CHECK_FALSE(strata[1].sufficient);
  const AnnotationMatrix zero = m.subset({0, 2, 3});
  CHECK(strata[0].marginal.kappa == doctest::Approx(fleiss_kappa(zero).kappa));
  CHECK(strata[0].uniform.kappa == doctest::Approx(randolph_kappa(zero).kappa));

  CHECK(read_annotation_csv(write_annotation_csv(m)).labels() == m.labels());
  CHECK(write_annotation_csv(read_annotation_csv(write_annotation_csv(m))) ==
        write_annotation_csv(m));
  CHECK_THROWS_CODE(kappa_by_hop(read_annotation_csv("item,a,b\n1,x,y\n2,x,x\n")),
                    ErrorCode::kMissingDepth);
}

TEST_CASE("annotation csv errors and declared categories") {
  CHECK_THROWS_CODE(read_annotation_csv(""), ErrorCode::kMalformedDocument);
  CHECK_THROWS_CODE(read_annotation_csv("id,a,b\n1,x,y\n"), ErrorCode::kMalformedDocument);
  CHECK_THROWS_CODE(read_annotation_csv("item,a\n1,x\n"), ErrorCode::kMalformedDocument);
  CHECK_THROWS_CODE(read_annotation_csv("item,a,b\n1,x\n"), ErrorCode::kMalformedDocument);
  CHECK_THROWS_CODE(read_annotation_csv("item,a,b\n1,x,\n"), ErrorCode::kInvalidMatrix);
  const AnnotationMatrix m =
      read_annotation_csv("item,a,b\n1,x,x\n2,y,y\n", {"x", "y", "z"});
  CHECK(m.category_count() == 3);
  // An unused declared category lowers chance agreement under the uniform model.
  CHECK(randolph_kappa(m).expected == doctest::Approx(1.0 / 3.0));
  const AnnotationMatrix quoted = read_annotation_csv("item,a,b\n\"1,2\",\"x y\",\"x y\"\n3,z,z\n");
  CHECK(quoted.item_ids()[0] == "1,2");
  CHECK(quoted.categories()[0] == "x y");
}
