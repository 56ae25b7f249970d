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


#ifndef CLINR_TREE_H
#define CLINR_TREE_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clinr/random.h"

namespace clinr {

/// Vertex v(level, index): level is the distance to the root, index the
/// left-to-right position among the vertices of that level.
struct VertexAddress {
    uint32_t level = 0;
    uint32_t index = 0;

    bool operator==(const VertexAddress &other) const = default;
    std::string str() const;
};

/// Gate-count coefficients of the three block kinds: RSP costs a_p*n + s,
/// each check a_v*n + b_v, and injection a_i*n counted operations.
struct ImplConstants {
    double a_p = 3.0;
    double a_v = 1.5;
    double b_v = 3.0;
    double a_i = 5.0;

    void validate() const;
    bool operator==(const ImplConstants &other) const = default;
};

struct TreeVertex {
    VertexAddress address;
    std::optional<size_t> parent;
    std::vector<size_t> children;
    uint64_t s = 0;
    uint32_t r = 0;
};

/// Ordered rooted tree with a size map s and a check-count map r.
///
/// Vertices are referred to by stable ids (insertion order, root = 0);
/// addresses are recomputed after every structural change.
class CliNRTree {
   public:
    /// A single root vertex with s(root) = s and r(root) = 0.
    explicit CliNRTree(uint64_t s = 0);

    size_t add_child(size_t parent, uint64_t s, uint32_t r);
    void set_s(size_t id, uint64_t s);
    void set_r(size_t id, uint32_t r);

    size_t root() const {
        return 0;
    }
    size_t num_vertices() const {
        return vertices_.size();
    }
    const TreeVertex &vertex(size_t id) const;
    /// Id of v(level, index); throws an address error if absent.
    size_t find(VertexAddress address) const;
    /// Max level.
    uint32_t depth() const {
        return static_cast<uint32_t>(levels_.size() - 1);
    }
    /// Vertex ids of one level, left to right.
    const std::vector<size_t> &level(uint32_t l) const;
    /// All vertices without children, left to right in depth-first order.
    std::vector<size_t> leaves() const;
    /// Ids in level order (the order used by serialization).
    std::vector<size_t> level_order() const;

    /// Every violated invariant, prefixed with the offending vertex. Empty iff
    /// the tree is valid.
    std::vector<std::string> validate() const;
    /// Throws a partition error carrying the validation report when invalid.
    void require_valid() const;

    /// The vertex at `address` with all descendants; the new root has r = 0.
    CliNRTree subtree(VertexAddress address) const;

    /// Structural equality (shape, s, r), independent of insertion order.
    bool operator==(const CliNRTree &other) const;

   private:
    void relabel();

    std::vector<TreeVertex> vertices_;
    std::vector<std::vector<size_t>> levels_;
};

/// Structured text (JSON) form; serialization is canonical, so
/// to_json(tree_from_json(text)) == text for any text produced by to_json.
std::string to_json(const CliNRTree &tree);
CliNRTree tree_from_json(std::string_view text);
/// Indented human readable outline.
std::string describe(const CliNRTree &tree);

/// Fan-in limit floor(2 / (9(4 a_v n + 2 b_v) p + 3 a_i n p)). Throws a
/// regime-unreachable error when it evaluates to 0.
uint64_t capacity_T(double p, uint64_t n, const ImplConstants &k = {});
/// Same formula without the zero check.
uint64_t capacity_T_unchecked(double p, uint64_t n, const ImplConstants &k = {});
/// Check count ceil(log2(p a_p n (1 - 2/3) + 2/3) - log2(2 a_v n p)). May be
/// negative; throws an invalid-regime error if a log argument is not positive.
int64_t threshold_R(double p, uint64_t n, const ImplConstants &k = {});

/// Number of leaves ceil(3 s p / 2) used by the bounded construction. Values
/// within 1e-9 of an integer are not rounded up.
uint64_t bounded_leaf_count(uint64_t s, double p);

/// The uniformly bounded tree: ceil(3sp/2) near-equal leaves at level D, then
/// levels D-1..1 grouping consecutive orphans T at a time, r = R off-root.
/// T is only needed (and only checked) when D >= 2.
CliNRTree bounded_tree(uint64_t s, double p, uint64_t n, uint32_t depth, const ImplConstants &k = {});

/// Splits s into `parts` contiguous sizes differing by at most one, with the
/// larger sizes first.
std::vector<uint64_t> even_split(uint64_t s, size_t parts);

/// t1 level-1 vertices, each with `children` leaves (0 means a depth-1 tree);
/// sizes are even splits of s over the leaves; r = r off-root.
CliNRTree uniform_tree(uint64_t s, uint32_t t1, uint32_t children, uint32_t r);

/// A random valid tree of depth at most max_depth (at least 1 level below the
/// root when max_depth >= 1) with random contiguous sizes and r in [0, max_r].
CliNRTree random_tree(uint64_t s, uint32_t max_depth, uint32_t max_children, uint32_t max_r, Rng &rng);

/// Named shapes. "binary2": root with two level-1 vertices, each with two
/// leaves, r = 1 off-root. "clinr1:<r>": a root with a single child.
/// "direct": the root alone (no noise reduction).
CliNRTree preset_tree(std::string_view name, uint64_t s);

}  // namespace clinr

#endif
