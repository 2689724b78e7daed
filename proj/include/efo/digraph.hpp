// digraph.hpp -- window digraphs, de Bruijn strings, minimum covering walks

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "ntype.hpp"
#include "order.hpp"

namespace efo {

/// Plain directed multigraph on vertices 0..vertex_count-1.
struct Multigraph {
    std::size_t vertex_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// De Bruijn string: length m^k, and read cyclically every word of length k
/// over colours 0..m-1 occurs exactly once as a window. Built as an Eulerian
/// circuit of the (k-1)-window graph, taking the least unused symbol first
/// and starting from the all-zero window.
inline ColouredOrder debruijn(std::size_t m, std::size_t k) {
    if (m < 2 || k < 2) throw std::invalid_argument("debruijn requires m >= 2 and k >= 2");
    if (m > kMaxColours) throw std::invalid_argument("debruijn alphabet exceeds the palette limit");
    auto total = capped_power(m, k, search_budget());
    require_budget(total, "debruijn");
    const std::size_t vertices = total / m;

    // Iterative Hierholzer over vertices; next[v] is the least unused symbol.
    std::vector<std::size_t> next(vertices, 0);
    std::vector<std::size_t> stack{0};
    std::vector<std::size_t> circuit;
    circuit.reserve(total + 1);
    while (!stack.empty()) {
        auto v = stack.back();
        if (next[v] < m) {
            auto c = next[v]++;
            stack.push_back((v * m + c) % vertices);
        } else {
            circuit.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    std::vector<Colour> out;
    out.reserve(total);
    for (std::size_t i = 1; i < circuit.size(); ++i)
        out.push_back(Colour{static_cast<std::uint8_t>(circuit[i] % m)});
    return ColouredOrder(std::move(out));
}

/// Number of distinct cyclic windows of width k.
inline std::size_t distinct_cyclic_windows(const ColouredOrder& s, std::size_t k) {
    std::set<std::vector<Colour>> seen;
    const auto n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Colour> w;
        for (std::size_t j = 0; j < k; ++j) w.push_back(s[(i + j) % n]);
        seen.insert(std::move(w));
    }
    return seen.size();
}

/// True iff every cyclic window of width k occurs exactly once.
inline bool all_cyclic_windows_distinct(const ColouredOrder& s, std::size_t k) {
    return !s.empty() && distinct_cyclic_windows(s, k) == s.size();
}

/// Digraph of a region's sliding windows: vertices are the (k-1)-windows,
/// edges the k-windows joining consecutive ones, with multiplicity.
class WindowDigraph {
public:
    struct Edge {
        std::size_t from;
        std::size_t to;
        ColouredOrder window;
        std::size_t multiplicity;
    };

    WindowDigraph(const IntervalView& region, std::size_t width) : _width(width) {
        if (width < 2) throw std::invalid_argument("window width must be at least 2");
        if (region.size() < width) return;
        auto s = region.entries();
        std::map<std::vector<Colour>, std::size_t> vertex_index;
        std::map<std::vector<Colour>, std::size_t> edge_index;
        auto vertex = [&](std::size_t at) {
            std::vector<Colour> w(s.begin() + static_cast<std::ptrdiff_t>(at),
                                  s.begin() + static_cast<std::ptrdiff_t>(at + width - 1));
            auto [it, fresh] = vertex_index.emplace(w, _vertices.size());
            if (fresh) _vertices.emplace_back(std::move(w));
            return it->second;
        };
        _start = vertex(0);
        for (std::size_t i = 0; i + width <= s.size(); ++i) {
            auto from = vertex(i);
            auto to = vertex(i + 1);
            std::vector<Colour> w(s.begin() + static_cast<std::ptrdiff_t>(i),
                                  s.begin() + static_cast<std::ptrdiff_t>(i + width));
            auto [it, fresh] = edge_index.emplace(w, _edges.size());
            if (fresh) _edges.push_back(Edge{from, to, ColouredOrder(std::move(w)), 0});
            _edges[it->second].multiplicity++;
            _walk.push_back(it->second);
        }
    }

    std::size_t width() const noexcept { return _width; }
    const std::vector<ColouredOrder>& vertices() const noexcept { return _vertices; }
    const std::vector<Edge>& edges() const noexcept { return _edges; }
    /// Edge indices in the order the region traverses them.
    const std::vector<std::size_t>& walk() const noexcept { return _walk; }
    std::size_t start_vertex() const noexcept { return _start; }

    std::size_t total_multiplicity() const {
        std::size_t t = 0;
        for (const auto& e : _edges) t += e.multiplicity;
        return t;
    }

    std::optional<std::size_t> find_vertex(const ColouredOrder& w) const {
        for (std::size_t v = 0; v < _vertices.size(); ++v)
            if (_vertices[v] == w) return v;
        return std::nullopt;
    }

    /// The digraph with each edge once.
    Multigraph collapsed() const {
        Multigraph g{_vertices.size(), {}};
        for (const auto& e : _edges) g.edges.emplace_back(e.from, e.to);
        return g;
    }

    /// Re-emits the region by following the recorded walk.
    ColouredOrder reconstruct() const {
        if (_vertices.empty()) return ColouredOrder{};
        std::vector<Colour> out(_vertices[_start].entries().begin(), _vertices[_start].entries().end());
        for (auto e : _walk) out.push_back(_edges[e].window[_width - 1]);
        return ColouredOrder(std::move(out));
    }

    void write_dot(std::ostream& os, const Palette& palette, const std::string& name = "D") const {
        os << "digraph " << name << " {\n";
        for (const auto& v : _vertices) os << "  \"" << glyphs(v, palette) << "\";\n";
        for (const auto& e : _edges)
            os << "  \"" << glyphs(_vertices[e.from], palette) << "\" -> \"" << glyphs(_vertices[e.to], palette)
               << "\" [label=\"" << e.multiplicity << "\"];\n";
        os << "}\n";
    }

private:
    std::size_t _width;
    std::vector<ColouredOrder> _vertices;
    std::vector<Edge> _edges;
    std::vector<std::size_t> _walk;
    std::size_t _start = 0;
};

inline WindowDigraph window_digraph(const IntervalView& region, std::size_t width) {
    return WindowDigraph(region, width);
}

/// The walk of a string through its level-2 characters.
struct CharacterDigraph {
    std::vector<Character> vertices;  // distinct, in order of first visit
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges;  // (from, to) -> multiplicity
    std::vector<std::size_t> walk;  // vertex index of each position

    std::size_t steps() const { return walk.empty() ? 0 : walk.size() - 1; }
};

inline CharacterDigraph character_digraph(const ColouredOrder& order, unsigned level = 2,
                                          TypeTable& table = TypeTable::shared()) {
    CharacterDigraph g;
    std::map<Character, std::size_t> index;
    for (const auto& c : characters(order, level, table)) {
        auto [it, fresh] = index.emplace(c, g.vertices.size());
        if (fresh) g.vertices.push_back(c);
        if (!g.walk.empty()) g.edges[{g.walk.back(), it->second}]++;
        g.walk.push_back(it->second);
    }
    return g;
}

/// Walk that must use every edge of `graph` at least once, starting in
/// `starts` and ending in `ends`.
struct WalkProblem {
    Multigraph graph;
    std::vector<std::size_t> starts;
    std::vector<std::size_t> ends;
};

struct CoveringWalk {
    bool feasible = false;
    std::size_t length = 0;             // edge traversals
    std::vector<std::size_t> vertices;  // the witness walk
    std::vector<std::size_t> multiplicity;  // per edge of the problem graph
    std::string reason;                 // set when infeasible
};

namespace detail {

/// Min-cost flow by successive shortest paths (Bellman-Ford); graphs here are tiny.
class MinCostFlow {
public:
    explicit MinCostFlow(std::size_t n) : _adj(n) {}

    std::size_t add_edge(std::size_t u, std::size_t v, std::int64_t cap, std::int64_t cost) {
        _arcs.push_back(Arc{v, cap, cost});
        _adj[u].push_back(_arcs.size() - 1);
        _arcs.push_back(Arc{u, 0, -cost});
        _adj[v].push_back(_arcs.size() - 1);
        return _arcs.size() - 2;
    }

    std::int64_t flow_on(std::size_t arc) const { return _arcs[arc ^ 1].cap; }

    /// Pushes up to `want` units from s to t; returns (flow, cost).
    std::pair<std::int64_t, std::int64_t> run(std::size_t s, std::size_t t, std::int64_t want) {
        constexpr auto inf = std::numeric_limits<std::int64_t>::max() / 4;
        std::int64_t flow = 0, cost = 0;
        const auto n = _adj.size();
        while (flow < want) {
            std::vector<std::int64_t> dist(n, inf);
            std::vector<std::size_t> via(n, SIZE_MAX);
            dist[s] = 0;
            for (std::size_t round = 0; round < n; ++round) {
                bool changed = false;
                for (std::size_t u = 0; u < n; ++u) {
                    if (dist[u] == inf) continue;
                    for (auto a : _adj[u]) {
                        const auto& arc = _arcs[a];
                        if (arc.cap > 0 && dist[u] + arc.cost < dist[arc.to]) {
                            dist[arc.to] = dist[u] + arc.cost;
                            via[arc.to] = a;
                            changed = true;
                        }
                    }
                }
                if (!changed) break;
            }
            if (dist[t] == inf) break;
            std::int64_t push = want - flow;
            for (auto v = t; v != s; v = _arcs[via[v] ^ 1].to) push = std::min(push, _arcs[via[v]].cap);
            for (auto v = t; v != s; v = _arcs[via[v] ^ 1].to) {
                _arcs[via[v]].cap -= push;
                _arcs[via[v] ^ 1].cap += push;
            }
            flow += push;
            cost += push * dist[t];
        }
        return {flow, cost};
    }

private:
    struct Arc {
        std::size_t to;
        std::int64_t cap;
        std::int64_t cost;
    };
    std::vector<std::vector<std::size_t>> _adj;
    std::vector<Arc> _arcs;
};

inline bool weakly_connected_edges(const Multigraph& g) {
    if (g.edges.empty()) return true;
    std::vector<std::size_t> parent(g.vertex_count);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (auto [u, v] : g.edges) parent[find(u)] = find(v);
    auto root = find(g.edges.front().first);
    for (auto [u, v] : g.edges)
        if (find(u) != root) return false;
    return true;
}

/// Euler path from s through the multigraph with the given edge multiplicities.
inline std::vector<std::size_t> euler_path(const Multigraph& g, const std::vector<std::size_t>& mult,
                                           std::size_t s) {
    std::vector<std::vector<std::size_t>> out(g.vertex_count);
    for (std::size_t e = 0; e < g.edges.size(); ++e) out[g.edges[e].first].push_back(e);
    std::vector<std::size_t> left = mult;
    std::vector<std::size_t> cursor(g.vertex_count, 0);
    std::vector<std::size_t> stack{s}, path;
    while (!stack.empty()) {
        auto v = stack.back();
        auto& c = cursor[v];
        while (c < out[v].size() && left[out[v][c]] == 0) ++c;
        if (c < out[v].size()) {
            auto e = out[v][c];
            --left[e];
            stack.push_back(g.edges[e].second);
        } else {
            path.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace detail

/// Shortest walk covering every edge, by minimum-cost integer multiplicities
/// x_e >= 1 meeting the Euler balance conditions for each allowed
/// (start, end) pair; the witness is an Euler path of the resulting multigraph.
inline CoveringWalk min_covering_walk(const WalkProblem& problem) {
    const auto& g = problem.graph;
    CoveringWalk best;
    if (!detail::weakly_connected_edges(g)) {
        best.reason = "required edges are not weakly connected";
        return best;
    }
    std::vector<bool> touched(g.vertex_count, false);
    std::vector<std::int64_t> surplus(g.vertex_count, 0);  // out - in with every x_e = 1
    for (auto [u, v] : g.edges) {
        touched[u] = touched[v] = true;
        surplus[u]++;
        surplus[v]--;
    }
    const std::size_t base = g.edges.size();
    best.reason = "no allowed start/end pair admits a covering walk";

    for (auto s : problem.starts) {
        for (auto t : problem.ends) {
            if (s >= g.vertex_count || t >= g.vertex_count) continue;
            if (g.edges.empty()) {
                if (s == t && (!best.feasible || best.length > 0)) {
                    best = CoveringWalk{true, 0, {s}, {}, {}};
                }
                continue;
            }
            if (!touched[s] || !touched[t]) continue;
            // Extra flow y_e = x_e - 1 must fix the imbalance: out - in = [v=s] - [v=t].
            const std::size_t source = g.vertex_count, sink = g.vertex_count + 1;
            detail::MinCostFlow mcf(g.vertex_count + 2);
            std::vector<std::size_t> arcs;
            for (auto [u, v] : g.edges)
                arcs.push_back(mcf.add_edge(u, v, std::numeric_limits<std::int32_t>::max(), 1));
            std::int64_t need = 0;
            for (std::size_t v = 0; v < g.vertex_count; ++v) {
                std::int64_t want = (v == s ? 1 : 0) - (v == t ? 1 : 0);
                std::int64_t d = want - surplus[v];
                if (d > 0) {
                    mcf.add_edge(source, v, d, 0);
                    need += d;
                } else if (d < 0) {
                    mcf.add_edge(v, sink, -d, 0);
                }
            }
            auto [flow, cost] = mcf.run(source, sink, need);
            if (flow != need) continue;
            auto length = base + static_cast<std::size_t>(cost);
            if (best.feasible && length >= best.length) continue;
            std::vector<std::size_t> mult(g.edges.size());
            for (std::size_t e = 0; e < g.edges.size(); ++e)
                mult[e] = 1 + static_cast<std::size_t>(mcf.flow_on(arcs[e]));
            auto walk = detail::euler_path(g, mult, s);
            if (walk.size() != length + 1 || walk.back() != t) continue;
            best = CoveringWalk{true, length, std::move(walk), std::move(mult), {}};
        }
    }
    return best;
}

}  // namespace efo
