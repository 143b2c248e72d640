#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

using Vertex = std::size_t;
/// Strictly increasing list of vertices.
using VertexSet = std::vector<Vertex>;

namespace bits {

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

inline bool test(std::span<const std::uint64_t> row, std::size_t i) {
    return (row[i / kWordBits] >> (i % kWordBits)) & 1u;
}

inline void set(std::span<std::uint64_t> row, std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
        row[i / kWordBits] |= mask;
    } else {
        row[i / kWordBits] &= ~mask;
    }
}

inline std::size_t popcount(std::span<const std::uint64_t> row) {
    std::size_t c = 0;
    for (auto w : row) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

}  // namespace bits

/// Throws std::out_of_range unless `set` is strictly increasing with every element below n.
inline void check_vertex_set(const VertexSet& set, std::size_t n, const char* what = "vertex set") {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] >= n) {
            throw std::out_of_range(std::string(what) + ": vertex " + std::to_string(set[i]) +
                                    " out of range for n=" + std::to_string(n));
        }
        if (i > 0 && set[i] <= set[i - 1]) {
            throw std::out_of_range(std::string(what) + ": vertices must be strictly increasing");
        }
    }
}

inline VertexSet all_vertices(std::size_t n) {
    VertexSet v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

/// [0, n) minus `removed` (which must be a valid vertex set).
inline VertexSet complement(std::size_t n, const VertexSet& removed) {
    VertexSet out;
    out.reserve(n - std::min(n, removed.size()));
    std::size_t r = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (r < removed.size() && removed[r] == v) {
            ++r;
        } else {
            out.push_back(v);
        }
    }
    return out;
}

/// Finite simple undirected graph on [n], stored as a symmetric bit matrix.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), words_(bits::words_for(n)), bits_(n * words_, 0) {}

    static Graph complete(std::size_t n) {
        Graph g(n);
        for (Vertex j = 1; j < n; ++j)
            for (Vertex i = 0; i < j; ++i) g.set_edge(i, j, true);
        return g;
    }

    static Graph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.set_edge(u, v, true);
        return g;
    }

    static Graph from_edges(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
        return from_edges(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size()));
    }

    std::size_t order() const noexcept { return n_; }

    bool adjacent(Vertex i, Vertex j) const { return bits::test(row(i), j); }

    /// Sets or clears edge {i, j}; self-loops are rejected.
    void set_edge(Vertex i, Vertex j, bool present) {
        if (i >= n_ || j >= n_) throw std::out_of_range("Graph::set_edge: vertex out of range");
        if (i == j) throw std::invalid_argument("Graph::set_edge: self-loops are not allowed");
        bits::set(mutable_row(i), j, present);
        bits::set(mutable_row(j), i, present);
    }

    std::span<const std::uint64_t> row(Vertex i) const {
        return {bits_.data() + i * words_, words_};
    }

    std::size_t words_per_row() const noexcept { return words_; }

    std::size_t degree(Vertex i) const { return bits::popcount(row(i)); }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (Vertex i = 0; i < n_; ++i) total += degree(i);
        return total / 2;
    }

    /// Edges (i, j) with i < j in lexicographic order.
    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (Vertex i = 0; i < n_; ++i)
            for (Vertex j = i + 1; j < n_; ++j)
                if (adjacent(i, j)) out.emplace_back(i, j);
        return out;
    }

    std::vector<std::size_t> degree_sequence_sorted() const {
        std::vector<std::size_t> d(n_);
        for (Vertex i = 0; i < n_; ++i) d[i] = degree(i);
        std::sort(d.begin(), d.end());
        return d;
    }

    /// Relabels vertex v to perm[v].
    Graph permuted(std::span<const Vertex> perm) const {
        if (perm.size() != n_) throw std::invalid_argument("Graph::permuted: size mismatch");
        Graph g(n_);
        for (Vertex i = 0; i < n_; ++i)
            for (Vertex j = i + 1; j < n_; ++j)
                if (adjacent(i, j)) g.set_edge(perm[i], perm[j], true);
        return g;
    }

    friend bool operator==(const Graph&, const Graph&) = default;
    friend auto operator<=>(const Graph&, const Graph&) = default;

    std::size_t hash() const noexcept {
        std::size_t h = std::hash<std::size_t>{}(n_);
        for (auto w : bits_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    std::span<std::uint64_t> mutable_row(Vertex i) { return {bits_.data() + i * words_, words_}; }

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct GraphHash {
    std::size_t operator()(const Graph& g) const noexcept { return g.hash(); }
};

}  // namespace rainbow
