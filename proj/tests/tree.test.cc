// Copyright 2026 The clinr Authors
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


#include "clinr/tree.h"

#include <cmath>

#include "gtest/gtest.h"

#include "clinr/error.h"

using namespace clinr;

TEST(CliNRTree, single_child_is_valid) {
    CliNRTree t(10);
    t.add_child(0, 10, 3);
    ASSERT_TRUE(t.validate().empty());
    ASSERT_EQ(t.depth(), 1);
    ASSERT_EQ(t.vertex(t.find({1, 0})).r, 3);
}

TEST(CliNRTree, reports_violations) {
    CliNRTree t(10);
    t.add_child(0, 3, 0);
    t.add_child(0, 4, 0);
    auto report = t.validate();
    ASSERT_EQ(report.size(), 1);
    ASSERT_NE(report[0].find("v(0,0)"), std::string::npos);

    CliNRTree u(5);
    u.set_r(0, 2);
    ASSERT_EQ(u.validate().size(), 1);
    ASSERT_THROW(u.require_valid(), ClinrError);
}

TEST(CliNRTree, addresses_follow_level_order) {
    // Children added out of level order still get left-to-right indices.
    CliNRTree t(8);
    size_t a = t.add_child(0, 4, 1);
    size_t b = t.add_child(0, 4, 1);
    size_t b0 = t.add_child(b, 4, 1);
    size_t a0 = t.add_child(a, 2, 1);
    size_t a1 = t.add_child(a, 2, 1);
    ASSERT_EQ(t.vertex(a0).address, (VertexAddress{2, 0}));
    ASSERT_EQ(t.vertex(a1).address, (VertexAddress{2, 1}));
    ASSERT_EQ(t.vertex(b0).address, (VertexAddress{2, 2}));
    ASSERT_EQ(t.leaves(), (std::vector<size_t>{a0, a1, b0}));
    ASSERT_THROW(t.find({3, 0}), ClinrError);
    ASSERT_THROW(t.find({2, 3}), ClinrError);
}

TEST(CliNRTree, subtree) {
    auto t = preset_tree("binary2", 20);
    ASSERT_EQ(t.subtree({0, 0}), t);
    auto leaf = t.subtree({2, 3});
    ASSERT_EQ(leaf.num_vertices(), 1);
    ASSERT_EQ(leaf.vertex(0).r, 0);
    auto mid = t.subtree({1, 0});
    ASSERT_EQ(mid.depth(), 1);
    ASSERT_TRUE(mid.validate().empty());
    uint64_t sum = 0;
    for (size_t id : mid.leaves()) {
        sum += mid.vertex(id).s;
    }
    ASSERT_EQ(sum, t.vertex(t.find({1, 0})).s);
    ASSERT_THROW(t.subtree({4, 0}), ClinrError);
}

TEST(CliNRTree, json_round_trip) {
    Rng rng(4);
    for (int trial = 0; trial < 30; trial++) {
        auto t = random_tree(50, 3, 3, 4, rng);
        std::string text = to_json(t);
        auto back = tree_from_json(text);
        ASSERT_EQ(back, t);
        ASSERT_EQ(to_json(back), text);
    }
    ASSERT_THROW(tree_from_json("{"), ClinrError);
    ASSERT_THROW(tree_from_json("{\"format\":\"x\"}"), ClinrError);
    ASSERT_THROW(tree_from_json(R"({"format":"clinr-tree","vertices":[{"level":0,"index":0,"parent":null,"s":1,"r":0},
        {"level":1,"index":0,"parent":3,"s":1,"r":0}]})"),
                 ClinrError);
}

TEST(bounded_params, capacity_T_values) {
    ASSERT_EQ(capacity_T(1e-5, 70), 40);
    ASSERT_THROW(capacity_T(1e-3, 70), ClinrError);
    ASSERT_EQ(capacity_T_unchecked(1e-3, 70), 0);
    uint64_t prev = 0;
    for (double p : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        uint64_t t = capacity_T_unchecked(p, 10);
        ASSERT_GE(t, prev);
        prev = t;
    }
}

TEST(bounded_params, threshold_R_values) {
    ASSERT_EQ(threshold_R(1e-5, 70), 9);
    // Away from ceiling boundaries, doubling p lowers R by one.
    for (double p : {1e-6, 3e-6, 1e-5, 3e-5}) {
        double nd = 70;
        double raw = std::log2(p * 3 * nd / 3 + 2.0 / 3) - std::log2(3 * nd * p);
        double raw2 = std::log2(2 * p * 3 * nd / 3 + 2.0 / 3) - std::log2(6 * nd * p);
        if (std::ceil(raw) - raw > 0.05 && std::ceil(raw2) - raw2 > 0.05) {
            ASSERT_EQ(threshold_R(p, 70) - threshold_R(2 * p, 70), 1) << p;
        }
    }
    for (double p : {1e-6, 1e-5, 1e-4, 1e-3}) {
        ASSERT_GE(threshold_R(p, 10), 0);
    }
    ASSERT_THROW(threshold_R(0, 10), ClinrError);
}

TEST(bounded_tree, depth_one_example) {
    auto t = bounded_tree(4900, 1e-3, 1, 1);
    ASSERT_EQ(t.depth(), 1);
    const auto &leaves = t.level(1);
    ASSERT_EQ(leaves.size(), 8);
    for (size_t j = 0; j < 8; j++) {
        ASSERT_EQ(t.vertex(leaves[j]).s, j < 4 ? 613u : 612u);
    }
    ASSERT_TRUE(t.validate().empty());
}

TEST(bounded_tree, deeper_trees_valid) {
    Rng rng(9);
    for (int trial = 0; trial < 200; trial++) {
        double p = std::pow(10.0, -5 + 3 * uniform01(rng));
        uint64_t n = 1 + rng() % 20;
        uint32_t d = 1 + rng() % 3;
        uint64_t s = static_cast<uint64_t>(std::ceil(1 / p)) + rng() % static_cast<uint64_t>(20 / p);
        if (d >= 2 && capacity_T_unchecked(p, n) == 0) {
            ASSERT_THROW(bounded_tree(s, p, n, d), ClinrError);
            continue;
        }
        auto t = bounded_tree(s, p, n, d);
        ASSERT_TRUE(t.validate().empty());
        ASSERT_EQ(t.depth(), d);
        for (uint32_t l = 0; l <= d; l++) {
            uint64_t sum = 0;
            for (size_t id : t.level(l)) {
                sum += t.vertex(id).s;
            }
            ASSERT_EQ(sum, s);
        }
        ASSERT_EQ(bounded_tree(s, p, n, d), t);
    }
}

TEST(bounded_tree, small_leaf_counterexample) {
    // 1.5 s p = 2.1 rounds up to 3 leaves of ~467 gates, below 1/(2p) = 500.
    auto t = bounded_tree(1400, 1e-3, 1, 1);
    ASSERT_EQ(t.level(1).size(), 3);
    ASSERT_LT(t.vertex(t.level(1).back()).s, 500u);
}

TEST(uniform_tree, shapes) {
    auto d1 = uniform_tree(100, 3, 0, 2);
    ASSERT_EQ(d1.depth(), 1);
    ASSERT_EQ(d1.vertex(d1.level(1)[0]).s, 34);
    ASSERT_EQ(d1.vertex(d1.level(1)[2]).s, 33);
    auto d2 = uniform_tree(10, 2, 3, 1);
    ASSERT_EQ(d2.depth(), 2);
    ASSERT_EQ(d2.level(2).size(), 6);
    ASSERT_TRUE(d2.validate().empty());
    uint64_t lo = 100, hi = 0;
    for (size_t id : d2.level(2)) {
        lo = std::min(lo, d2.vertex(id).s);
        hi = std::max(hi, d2.vertex(id).s);
    }
    ASSERT_LE(hi - lo, 1);
}

TEST(preset_tree, names) {
    auto b = preset_tree("binary2", 12);
    ASSERT_EQ(b.depth(), 2);
    ASSERT_EQ(b.num_vertices(), 7);
    auto c = preset_tree("clinr1:4", 12);
    ASSERT_EQ(c.num_vertices(), 2);
    ASSERT_EQ(c.vertex(1).r, 4);
    ASSERT_EQ(preset_tree("direct", 5).num_vertices(), 1);
    ASSERT_THROW(preset_tree("nope", 1), ClinrError);
    ASSERT_THROW(preset_tree("clinr1:x", 1), ClinrError);
}
