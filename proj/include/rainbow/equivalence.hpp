#pragma once

// Neighbourhood equivalence relative to a vertex set X, the order relation
// relative to X, and the class-count bound satisfied by every k-rainbow
// threshold graph.

#include <algorithm>
#include <map>
#include <vector>

#include <json.hpp>

#include "rainbow/graph.hpp"
#include "rainbow/rational.hpp"

namespace rainbow {

/// Equivalence relation on a sorted domain, stored as blocks. Blocks are kept
/// sorted internally and ordered by their least element.
class Partition {
public:
    Partition() = default;

    Partition(VertexSet domain, std::vector<VertexSet> blocks)
        : domain_(std::move(domain)), blocks_(std::move(blocks)) {
        for (auto& b : blocks_) std::sort(b.begin(), b.end());
        std::sort(blocks_.begin(), blocks_.end());
        validate();
    }

    const VertexSet& domain() const noexcept { return domain_; }
    const std::vector<VertexSet>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }

    /// Index of the block containing v; throws if v is outside the domain.
    std::size_t block_of(Vertex v) const {
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), v)) return b;
        throw std::out_of_range("Partition::block_of: vertex not in domain");
    }

    bool same_block(Vertex u, Vertex v) const { return block_of(u) == block_of(v); }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    void validate() const {
        VertexSet all;
        for (const auto& b : blocks_) {
            if (b.empty()) throw std::invalid_argument("Partition: empty block");
            all.insert(all.end(), b.begin(), b.end());
        }
        std::sort(all.begin(), all.end());
        if (all != domain_) throw std::invalid_argument("Partition: blocks do not partition the domain");
    }

    VertexSet domain_;
    std::vector<VertexSet> blocks_;
};

inline std::size_t count_classes(const Partition& p) { return p.size(); }

/// Sorted list of sorted blocks.
inline nlohmann::ordered_json partition_to_json(const Partition& p) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& b : p.blocks()) j.push_back(b);
    return j;
}

/// Vertices of A inside X are singletons; the rest are grouped by their
/// adjacency pattern towards X.
inline Partition neighborhood_partition(const Graph& g, const VertexSet& domain, const VertexSet& x) {
    check_vertex_set(domain, g.order(), "neighborhood_partition domain");
    check_vertex_set(x, g.order(), "neighborhood_partition X");
    std::vector<VertexSet> blocks;
    std::map<std::vector<bool>, std::size_t> by_pattern;
    std::vector<bool> pattern(x.size());
    for (Vertex v : domain) {
        if (std::binary_search(x.begin(), x.end(), v)) {
            blocks.push_back({v});
            continue;
        }
        for (std::size_t c = 0; c < x.size(); ++c) pattern[c] = g.adjacent(v, x[c]);
        auto [it, inserted] = by_pattern.try_emplace(pattern, blocks.size());
        if (inserted) {
            blocks.push_back({v});
        } else {
            blocks[it->second].push_back(v);
        }
    }
    return Partition(domain, std::move(blocks));
}

/// Number of neighbourhood classes of [n] \ X relative to X. Same value as
/// count_classes(neighborhood_partition(g, complement(n, x), x)) without
/// materializing blocks.
inline std::size_t count_outside_classes(const Graph& g, const VertexSet& x) {
    check_vertex_set(x, g.order(), "count_outside_classes X");
    const std::size_t words = bits::words_for(x.size());
    std::vector<std::vector<std::uint64_t>> patterns;
    std::vector<std::uint64_t> pattern(words);
    std::size_t next = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (next < x.size() && x[next] == v) {
            ++next;
            continue;
        }
        std::fill(pattern.begin(), pattern.end(), 0);
        for (std::size_t c = 0; c < x.size(); ++c)
            if (g.adjacent(v, x[c])) bits::set(pattern, c, true);
        patterns.push_back(pattern);
    }
    std::sort(patterns.begin(), patterns.end());
    return static_cast<std::size_t>(std::unique(patterns.begin(), patterns.end()) - patterns.begin());
}

/// i, j outside X are related iff no element of X lies strictly between them.
inline Partition order_partition(std::size_t n, const VertexSet& x) {
    check_vertex_set(x, n, "order_partition X");
    std::vector<VertexSet> blocks;
    VertexSet gap;
    std::size_t next = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (next < x.size() && x[next] == v) {
            if (!gap.empty()) blocks.push_back(std::move(gap));
            gap.clear();
            blocks.push_back({v});
            ++next;
        } else {
            gap.push_back(v);
        }
    }
    if (!gap.empty()) blocks.push_back(std::move(gap));
    return Partition(all_vertices(n), std::move(blocks));
}

/// k * 2^k * (1 + t/2), exact.
inline Rational class_bound(std::size_t k, std::size_t t) {
    if (k == 0) throw std::invalid_argument("class_bound: k must be positive");
    const Rational symbols = Rational(BigInt(k) << k);
    return symbols * (Rational(1) + Rational(static_cast<std::int64_t>(t), 2));
}

/// True when X has more outside classes than any k-rainbow threshold graph
/// allows, so no graph isomorphic to g is a k-rainbow threshold graph.
inline bool certify_not_k_rainbow(const Graph& g, const VertexSet& x, std::size_t k) {
    return Rational(count_outside_classes(g, x)) > class_bound(k, x.size());
}

}  // namespace rainbow
