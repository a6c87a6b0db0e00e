#include "abclust/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "abclust/errors.hpp"
#include "abclust/rng.hpp"

namespace abclust {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                        std::vector<long long> labels) {
    if (n < 0) throw InputError("graph order must be nonnegative");
    Graph g;
    g.adj_.assign(n, {});
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& list : g.adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        g.edge_count_ += static_cast<long long>(list.size());
    }
    g.edge_count_ /= 2;
    if (labels.empty()) {
        labels.resize(n);
        for (int i = 0; i < n; ++i) labels[i] = i;
    }
    if (static_cast<int>(labels.size()) != n)
        throw InputError("label vector length does not match graph order");
    g.labels_ = std::move(labels);
    for (int i = 0; i < n; ++i) g.label_to_id_.emplace(g.labels_[i], i);
    return g;
}

bool Graph::has_edge(int u, int v) const {
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

double Graph::average_degree() const {
    if (order() == 0) return 0.0;
    return 2.0 * static_cast<double>(edge_count_) / order();
}

std::optional<int> Graph::id_of_label(long long label) const {
    auto it = label_to_id_.find(label);
    if (it == label_to_id_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> result;
    result.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < order(); ++u)
        for (int v : adj_[u])
            if (u < v) result.emplace_back(u, v);
    return result;
}

namespace {

bool parse_integer(const std::string& token, long long& out) {
    if (token.empty()) return false;
    errno = 0;
    char* end = nullptr;
    long long value = std::strtoll(token.c_str(), &end, 10);
    if (errno != 0 || end != token.c_str() + token.size()) return false;
    out = value;
    return true;
}

} // namespace

Graph load_edge_list(std::istream& in) {
    std::vector<std::pair<long long, long long>> raw_edges;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream row(line);
        std::string first;
        if (!(row >> first) || first[0] == '#') continue;
        std::string second, extra;
        if (!(row >> second) || (row >> extra))
            throw InputError("line " + std::to_string(line_no) +
                             ": expected exactly two vertex labels");
        long long a = 0, b = 0;
        if (!parse_integer(first, a) || !parse_integer(second, b))
            throw InputError("line " + std::to_string(line_no) + ": non-integer vertex label");
        if (a == b)
            throw InputError("line " + std::to_string(line_no) + ": self-loop on label " +
                             std::to_string(a));
        raw_edges.emplace_back(a, b);
    }
    if (raw_edges.empty()) throw InputError("edge list contains no edges");

    std::unordered_map<long long, int> id_of;
    std::vector<long long> labels;
    auto intern = [&](long long label) {
        auto [it, inserted] = id_of.emplace(label, static_cast<int>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };
    std::vector<std::pair<int, int>> edges;
    edges.reserve(raw_edges.size());
    for (auto [a, b] : raw_edges) {
        const int ia = intern(a); // interning order defines the id order
        const int ib = intern(b);
        edges.emplace_back(ia, ib);
    }
    const int n = static_cast<int>(labels.size());
    return Graph::from_edges(n, edges, std::move(labels));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file: " + path);
    return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    for (auto [u, v] : g.edges())
        out << g.label_of(u) << ' ' << g.label_of(v) << '\n';
}

Graph gen_caveman(int caves, int cave_size) {
    if (caves < 2) throw InputError("caveman graph needs at least 2 caves");
    if (cave_size < 3) throw InputError("caveman graph needs cave size of at least 3");
    std::vector<std::pair<int, int>> edges;
    for (int c = 0; c < caves; ++c) {
        const int base = c * cave_size;
        for (int a = 0; a < cave_size; ++a)
            for (int b = a + 1; b < cave_size; ++b) {
                if (a == 0 && b == 1) continue; // opened edge
                edges.emplace_back(base + a, base + b);
            }
        edges.emplace_back(base + 1, ((c + 1) % caves) * cave_size);
    }
    return Graph::from_edges(caves * cave_size, edges);
}

Graph gen_gnp(int n, double p, std::uint64_t rng_seed) {
    if (n < 2) throw InputError("G(n,p) needs n >= 2");
    if (!(p > 0.0 && p < 1.0)) throw InputError("G(n,p) needs 0 < p < 1");
    Xoshiro256ss rng(rng_seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

bool is_connected(const Graph& g) {
    const int n = g.order();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop();
        for (int v : g.neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                frontier.push(v);
            }
    }
    return reached == n;
}

bool is_bipartite(const Graph& g) {
    const int n = g.order();
    std::vector<int> color(n, -1);
    std::queue<int> frontier;
    for (int start = 0; start < n; ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        frontier.push(start);
        while (!frontier.empty()) {
            int u = frontier.front();
            frontier.pop();
            for (int v : g.neighbors(u)) {
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    frontier.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace abclust
