#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace abclust {

/// Undirected simple graph. Vertices carry 0-based internal ids; `labels`
/// keeps the caller-facing names (file labels, 1-based dataset numbering).
/// Adjacency lists are sorted, symmetric, self-loop and duplicate free.
/// Immutable after construction; safe to share across threads.
class Graph {
public:
    Graph() = default;

    /// Build from an edge list over internal ids. Duplicate edges collapse,
    /// self-loops are rejected. `labels` defaults to the identity 0..n-1.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                            std::vector<long long> labels = {});

    int order() const { return static_cast<int>(adj_.size()); }
    long long edge_count() const { return edge_count_; }

    std::span<const int> neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;

    /// Mean degree 2|E|/n.
    double average_degree() const;

    long long label_of(int v) const { return labels_[v]; }
    const std::vector<long long>& labels() const { return labels_; }
    std::optional<int> id_of_label(long long label) const;

    std::vector<std::pair<int, int>> edges() const;

private:
    std::vector<std::vector<int>> adj_;
    std::vector<long long> labels_;
    std::unordered_map<long long, int> label_to_id_;
    long long edge_count_ = 0;
};

/// Two-class reference partition (per internal vertex id, values in {0,1}).
struct GroundTruth {
    std::vector<int> labels;
};

/// Parse whitespace-separated "label label" lines; '#'-prefixed lines are
/// comments. Labels are compacted to internal ids in first-appearance order.
/// Self-loops and non-integer tokens are rejected with their line number.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

void save_edge_list(const Graph& g, std::ostream& out);

/// Ring of `caves` near-cliques with `cave_size` vertices each: cave i is a
/// clique on [i*s, (i+1)*s) minus the edge {i*s, i*s+1}, and the freed
/// endpoints are relinked in a cycle by edges {i*s+1, ((i+1) mod caves)*s}.
Graph gen_caveman(int caves, int cave_size);

/// Erdos-Renyi G(n,p); every generator seed maps to exactly one edge set.
Graph gen_gnp(int n, double p, std::uint64_t rng_seed);

/// Zachary's karate club (34 vertices, 78 edges, labels 1..34) with the
/// two-faction split the club underwent.
std::pair<Graph, GroundTruth> builtin_karate();

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

} // namespace abclust
