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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>

#include "clinr/error.h"
#include "json.hpp"

namespace clinr {

std::string VertexAddress::str() const {
    return "v(" + std::to_string(level) + "," + std::to_string(index) + ")";
}

void ImplConstants::validate() const {
    if (!(a_p > 0 && a_v > 0 && b_v > 0 && a_i > 0)) {
        fail(ErrorCode::InvalidArgument, "implementation constants must be strictly positive");
    }
}

CliNRTree::CliNRTree(uint64_t s) {
    TreeVertex root;
    root.s = s;
    vertices_.push_back(root);
    relabel();
}

size_t CliNRTree::add_child(size_t parent, uint64_t s, uint32_t r) {
    if (parent >= vertices_.size()) {
        fail(ErrorCode::Address, "parent id " + std::to_string(parent) + " does not exist");
    }
    TreeVertex v;
    v.parent = parent;
    v.s = s;
    v.r = r;
    size_t id = vertices_.size();
    vertices_.push_back(v);
    vertices_[parent].children.push_back(id);
    relabel();
    return id;
}

void CliNRTree::set_s(size_t id, uint64_t s) {
    if (id >= vertices_.size()) {
        fail(ErrorCode::Address, "vertex id " + std::to_string(id) + " does not exist");
    }
    vertices_[id].s = s;
}

void CliNRTree::set_r(size_t id, uint32_t r) {
    if (id >= vertices_.size()) {
        fail(ErrorCode::Address, "vertex id " + std::to_string(id) + " does not exist");
    }
    vertices_[id].r = r;
}

const TreeVertex &CliNRTree::vertex(size_t id) const {
    if (id >= vertices_.size()) {
        fail(ErrorCode::Address, "vertex id " + std::to_string(id) + " does not exist");
    }
    return vertices_[id];
}

size_t CliNRTree::find(VertexAddress address) const {
    if (address.level >= levels_.size() || address.index >= levels_[address.level].size()) {
        fail(ErrorCode::Address, "no vertex " + address.str());
    }
    return levels_[address.level][address.index];
}

const std::vector<size_t> &CliNRTree::level(uint32_t l) const {
    if (l >= levels_.size()) {
        fail(ErrorCode::Address, "no level " + std::to_string(l));
    }
    return levels_[l];
}

std::vector<size_t> CliNRTree::leaves() const {
    std::vector<size_t> out;
    std::vector<size_t> stack{0};
    while (!stack.empty()) {
        size_t id = stack.back();
        stack.pop_back();
        const auto &ch = vertices_[id].children;
        if (ch.empty()) {
            out.push_back(id);
        }
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
            stack.push_back(*it);
        }
    }
    return out;
}

std::vector<size_t> CliNRTree::level_order() const {
    std::vector<size_t> out;
    for (const auto &lvl : levels_) {
        out.insert(out.end(), lvl.begin(), lvl.end());
    }
    return out;
}

void CliNRTree::relabel() {
    levels_.clear();
    std::deque<size_t> queue{0};
    vertices_[0].address = {0, 0};
    while (!queue.empty()) {
        size_t id = queue.front();
        queue.pop_front();
        uint32_t lvl = vertices_[id].address.level;
        if (levels_.size() <= lvl) {
            levels_.resize(lvl + 1);
        }
        vertices_[id].address.index = static_cast<uint32_t>(levels_[lvl].size());
        levels_[lvl].push_back(id);
        for (size_t c : vertices_[id].children) {
            vertices_[c].address.level = lvl + 1;
            queue.push_back(c);
        }
    }
}

std::vector<std::string> CliNRTree::validate() const {
    std::vector<std::string> report;
    if (vertices_[0].r != 0) {
        report.push_back(vertices_[0].address.str() + ": root must have r = 0, has " + std::to_string(vertices_[0].r));
    }
    for (size_t id : level_order()) {
        const auto &v = vertices_[id];
        if (v.children.empty()) {
            continue;
        }
        uint64_t sum = 0;
        for (size_t c : v.children) {
            sum += vertices_[c].s;
        }
        if (sum != v.s) {
            report.push_back(v.address.str() + ": children sizes sum to " + std::to_string(sum) + " but s = " +
                             std::to_string(v.s));
        }
    }
    return report;
}

void CliNRTree::require_valid() const {
    auto report = validate();
    if (!report.empty()) {
        std::string msg = "invalid tree";
        for (const auto &line : report) {
            msg += "; " + line;
        }
        fail(ErrorCode::Partition, msg);
    }
}

CliNRTree CliNRTree::subtree(VertexAddress address) const {
    size_t top = find(address);
    CliNRTree out(vertices_[top].s);
    std::vector<std::pair<size_t, size_t>> stack{{top, 0}};
    while (!stack.empty()) {
        auto [src, dst] = stack.back();
        stack.pop_back();
        for (size_t c : vertices_[src].children) {
            size_t nc = out.add_child(dst, vertices_[c].s, vertices_[c].r);
            stack.push_back({c, nc});
        }
    }
    return out;
}

bool CliNRTree::operator==(const CliNRTree &other) const {
    if (levels_.size() != other.levels_.size()) {
        return false;
    }
    for (size_t l = 0; l < levels_.size(); l++) {
        if (levels_[l].size() != other.levels_[l].size()) {
            return false;
        }
        for (size_t j = 0; j < levels_[l].size(); j++) {
            const auto &a = vertices_[levels_[l][j]];
            const auto &b = other.vertices_[other.levels_[l][j]];
            if (a.s != b.s || a.r != b.r || a.children.size() != b.children.size()) {
                return false;
            }
            if (l > 0 && vertices_[*a.parent].address.index != other.vertices_[*b.parent].address.index) {
                return false;
            }
        }
    }
    return true;
}

std::string to_json(const CliNRTree &tree) {
    nlohmann::ordered_json doc;
    doc["format"] = "clinr-tree";
    doc["version"] = 1;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (size_t id : tree.level_order()) {
        const auto &v = tree.vertex(id);
        nlohmann::ordered_json e;
        e["level"] = v.address.level;
        e["index"] = v.address.index;
        if (v.parent.has_value()) {
            e["parent"] = tree.vertex(*v.parent).address.index;
        } else {
            e["parent"] = nullptr;
        }
        e["s"] = v.s;
        e["r"] = v.r;
        list.push_back(std::move(e));
    }
    doc["vertices"] = std::move(list);
    return doc.dump(2) + "\n";
}

CliNRTree tree_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("tree document is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || doc.value("format", "") != "clinr-tree") {
            fail(ErrorCode::Parse, "tree document must have format \"clinr-tree\"");
        }
        const auto &list = doc.at("vertices");
        if (!list.is_array() || list.empty()) {
            fail(ErrorCode::Parse, "tree document needs a non-empty vertex list");
        }
        const auto &root = list[0];
        if (root.at("level").get<uint32_t>() != 0 || !root.at("parent").is_null()) {
            fail(ErrorCode::Parse, "first vertex must be the root");
        }
        CliNRTree tree(root.at("s").get<uint64_t>());
        tree.set_r(0, root.at("r").get<uint32_t>());
        // Ids of the vertices of the previous and current level, by index.
        std::vector<size_t> prev{0};
        std::vector<size_t> cur;
        uint32_t cur_level = 0;
        for (size_t k = 1; k < list.size(); k++) {
            const auto &e = list[k];
            uint32_t level = e.at("level").get<uint32_t>();
            uint32_t index = e.at("index").get<uint32_t>();
            if (level == cur_level + 1) {
                prev = cur_level == 0 ? std::vector<size_t>{0} : cur;
                cur.clear();
                cur_level = level;
            } else if (level != cur_level) {
                fail(ErrorCode::Parse, "vertices must be listed level by level");
            }
            if (index != cur.size()) {
                fail(ErrorCode::Parse, "vertex indices must be consecutive within a level");
            }
            uint32_t parent = e.at("parent").get<uint32_t>();
            if (parent >= prev.size()) {
                fail(ErrorCode::Parse, "vertex " + VertexAddress{level, index}.str() + " has a missing parent");
            }
            if (!cur.empty() && tree.vertex(cur.back()).parent.has_value() &&
                tree.vertex(*tree.vertex(cur.back()).parent).address.index > parent) {
                fail(ErrorCode::Parse, "vertex order within a level must follow parent order");
            }
            cur.push_back(tree.add_child(prev[parent], e.at("s").get<uint64_t>(), e.at("r").get<uint32_t>()));
        }
        return tree;
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("malformed tree document: ") + e.what());
    }
}

std::string describe(const CliNRTree &tree) {
    std::string out;
    std::vector<std::pair<size_t, size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [id, indent] = stack.back();
        stack.pop_back();
        const auto &v = tree.vertex(id);
        out += std::string(2 * indent, ' ') + v.address.str() + " s=" + std::to_string(v.s) +
               " r=" + std::to_string(v.r) + "\n";
        for (auto it = v.children.rbegin(); it != v.children.rend(); ++it) {
            stack.push_back({*it, indent + 1});
        }
    }
    return out;
}

namespace {

void check_rate(double p) {
    if (!(p > 0 && p < 1)) {
        fail(ErrorCode::InvalidArgument, "error rate must lie in (0, 1)");
    }
}

}  // namespace

uint64_t capacity_T_unchecked(double p, uint64_t n, const ImplConstants &k) {
    check_rate(p);
    k.validate();
    double nd = static_cast<double>(n);
    double denom = 9 * (4 * k.a_v * nd + 2 * k.b_v) * p + 3 * k.a_i * nd * p;
    return static_cast<uint64_t>(std::floor(2 / denom));
}

uint64_t capacity_T(double p, uint64_t n, const ImplConstants &k) {
    uint64_t t = capacity_T_unchecked(p, n, k);
    if (t == 0) {
        fail(ErrorCode::RegimeUnreachable, "regime unreachable: np too large (T = 0)");
    }
    return t;
}

int64_t threshold_R(double p, uint64_t n, const ImplConstants &k) {
    check_rate(p);
    k.validate();
    double nd = static_cast<double>(n);
    double num = p * k.a_p * nd * (1.0 - 2.0 / 3.0) + 2.0 / 3.0;
    double den = 2 * k.a_v * nd * p;
    if (!(num > 0) || !(den > 0)) {
        fail(ErrorCode::InvalidRegime, "log argument not positive");
    }
    return static_cast<int64_t>(std::ceil(std::log2(num) - std::log2(den)));
}

uint64_t bounded_leaf_count(uint64_t s, double p) {
    double x = 1.5 * static_cast<double>(s) * p;
    double r = std::round(x);
    if (std::abs(x - r) < 1e-9) {
        return static_cast<uint64_t>(r);
    }
    return static_cast<uint64_t>(std::ceil(x));
}

CliNRTree bounded_tree(uint64_t s, double p, uint64_t n, uint32_t depth, const ImplConstants &k) {
    check_rate(p);
    if (depth < 1) {
        fail(ErrorCode::InvalidArgument, "depth must be at least 1");
    }
    int64_t r = threshold_R(p, n, k);
    if (r < 0) {
        fail(ErrorCode::InvalidRegime, "R(p, n) is negative");
    }
    uint64_t t = 0;
    if (depth >= 2) {
        t = capacity_T(p, n, k);
    }
    uint64_t leaves = std::max<uint64_t>(1, bounded_leaf_count(s, p));
    std::vector<uint64_t> sizes(leaves, s / leaves);
    for (uint64_t j = 0; j < s % leaves; j++) {
        sizes[j]++;
    }

    // levels[l] holds (size, children indices into levels[l + 1]).
    std::vector<std::vector<std::pair<uint64_t, std::vector<size_t>>>> levels(depth + 1);
    for (uint64_t sz : sizes) {
        levels[depth].push_back({sz, {}});
    }
    for (uint32_t l = depth - 1; l >= 1; l--) {
        const auto &below = levels[l + 1];
        for (size_t start = 0; start < below.size(); start += t) {
            std::pair<uint64_t, std::vector<size_t>> v{0, {}};
            for (size_t j = start; j < std::min<size_t>(below.size(), start + t); j++) {
                v.first += below[j].first;
                v.second.push_back(j);
            }
            levels[l].push_back(std::move(v));
        }
    }

    CliNRTree tree(s);
    std::vector<size_t> ids;
    for (size_t j = 0; j < levels[1].size(); j++) {
        ids.push_back(tree.add_child(0, levels[1][j].first, static_cast<uint32_t>(r)));
    }
    for (uint32_t l = 1; l < depth; l++) {
        std::vector<size_t> next(levels[l + 1].size());
        for (size_t j = 0; j < levels[l].size(); j++) {
            for (size_t c : levels[l][j].second) {
                next[c] = tree.add_child(ids[j], levels[l + 1][c].first, static_cast<uint32_t>(r));
            }
        }
        ids = std::move(next);
    }
    return tree;
}

std::vector<uint64_t> even_split(uint64_t s, size_t parts) {
    if (parts == 0) {
        fail(ErrorCode::InvalidArgument, "cannot split into zero parts");
    }
    std::vector<uint64_t> out(parts, s / parts);
    for (uint64_t j = 0; j < s % parts; j++) {
        out[j]++;
    }
    return out;
}

CliNRTree uniform_tree(uint64_t s, uint32_t t1, uint32_t children, uint32_t r) {
    if (t1 == 0) {
        fail(ErrorCode::InvalidArgument, "t1 must be at least 1");
    }
    CliNRTree tree(s);
    if (children == 0) {
        for (uint64_t sz : even_split(s, t1)) {
            tree.add_child(0, sz, r);
        }
        return tree;
    }
    auto leaf_sizes = even_split(s, size_t{t1} * children);
    for (uint32_t i = 0; i < t1; i++) {
        uint64_t sum = 0;
        for (uint32_t c = 0; c < children; c++) {
            sum += leaf_sizes[i * children + c];
        }
        size_t mid = tree.add_child(0, sum, r);
        for (uint32_t c = 0; c < children; c++) {
            tree.add_child(mid, leaf_sizes[i * children + c], r);
        }
    }
    return tree;
}

namespace {

std::vector<uint64_t> random_split(uint64_t s, size_t parts, Rng &rng) {
    std::vector<uint64_t> cuts;
    for (size_t k = 0; k + 1 < parts; k++) {
        cuts.push_back(s == 0 ? 0 : rng() % (s + 1));
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<uint64_t> out;
    uint64_t prev = 0;
    for (uint64_t c : cuts) {
        out.push_back(c - prev);
        prev = c;
    }
    out.push_back(s - prev);
    return out;
}

void grow(CliNRTree &tree, size_t id, uint32_t remaining, uint32_t max_children, uint32_t max_r, bool force, Rng &rng) {
    if (remaining == 0) {
        return;
    }
    if (!force && rng() % 3 == 0) {
        return;
    }
    size_t k = 1 + rng() % max_children;
    auto sizes = random_split(tree.vertex(id).s, k, rng);
    for (uint64_t sz : sizes) {
        uint32_t r = static_cast<uint32_t>(rng() % (uint64_t{max_r} + 1));
        size_t c = tree.add_child(id, sz, r);
        grow(tree, c, remaining - 1, max_children, max_r, false, rng);
    }
}

}  // namespace

CliNRTree random_tree(uint64_t s, uint32_t max_depth, uint32_t max_children, uint32_t max_r, Rng &rng) {
    if (max_children == 0) {
        fail(ErrorCode::InvalidArgument, "max_children must be at least 1");
    }
    CliNRTree tree(s);
    grow(tree, 0, max_depth, max_children, max_r, true, rng);
    return tree;
}

CliNRTree preset_tree(std::string_view name, uint64_t s) {
    if (name == "binary2") {
        return uniform_tree(s, 2, 2, 1);
    }
    if (name == "direct") {
        return CliNRTree(s);
    }
    if (name.substr(0, 7) == "clinr1:") {
        uint32_t r = 0;
        auto rest = name.substr(7);
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), r);
        if (ec != std::errc() || ptr != rest.data() + rest.size()) {
            fail(ErrorCode::InvalidArgument, "bad check count in preset '" + std::string(name) + "'");
        }
        return uniform_tree(s, 1, 0, r);
    }
    fail(ErrorCode::InvalidArgument, "unknown tree preset '" + std::string(name) + "'");
}

}  // namespace clinr
