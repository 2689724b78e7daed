// support.hpp -- shared helpers for the test suites

#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <efo/order.hpp>

namespace efo::testing {

inline const Palette rb = Palette::standard(2);
inline const Palette rbg = Palette::standard(3);

/// Parses glyph text over {r, b, g}.
inline ColouredOrder s(const std::string& text) { return parse(text, rbg); }

/// Every string over m colours of length <= max_len, shortlex order.
inline std::vector<ColouredOrder> all_strings(std::size_t m, std::size_t max_len) {
    std::vector<ColouredOrder> out;
    std::vector<Colour> cur;
    for (std::size_t len = 0; len <= max_len; ++len) {
        cur.assign(len, Colour{0});
        for (;;) {
            out.emplace_back(cur);
            std::size_t p = len;
            while (p > 0 && cur[p - 1].id + 1u == m) cur[--p] = Colour{0};
            if (p == 0) break;
            cur[p - 1].id++;
        }
    }
    return out;
}

/// Whether `sub` is an order-preserving selection of `whole`.
inline bool is_subword(const ColouredOrder& sub, const ColouredOrder& whole) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < whole.size() && i < sub.size(); ++j)
        if (whole[j] == sub[i]) ++i;
    return i == sub.size();
}

}  // namespace efo::testing

#include <efo/game.hpp>

namespace efo::testing {

/// Legal moves of the player to move (II must answer in the other structure).
inline std::vector<Move> legal_moves(const GameState& st) {
    std::vector<Move> out;
    for (Side side : {Side::A, Side::B}) {
        if (st.pending && side == st.pending->side) continue;
        for (std::size_t p = 0; p < st.structure(side).size(); ++p) out.push_back(Move{side, p});
    }
    return out;
}

/// Plays `engine` via best_move against every possible line of the
/// adversary. True iff the engine wins all of them.
inline bool engine_defeats_all(GameState st, Player engine) {
    if (st.finished()) return (engine == Player::II) == !st.lost_for_two;
    auto moves = legal_moves(st);
    if (moves.empty()) {
        // I stuck: both structures empty, II wins. II stuck: II loses.
        return st.to_move() == Player::I ? engine == Player::II : engine == Player::I;
    }
    if (st.to_move() == engine) {
        auto advice = best_move(st, engine);
        if (!advice.move) return false;
        st.play(*advice.move);
        return engine_defeats_all(std::move(st), engine);
    }
    for (auto m : moves) {
        GameState next = st;
        next.play(m);
        if (!engine_defeats_all(std::move(next), engine)) return false;
    }
    return true;
}

}  // namespace efo::testing

#include <deque>
#include <optional>
#include <random>

#include <efo/digraph.hpp>

namespace efo::testing {

/// Breadth-first search over (vertex, covered-edge-set) states: the length
/// of the shortest walk from a start to an end using every edge, if any.
inline std::optional<std::size_t> covering_walk_bfs(const WalkProblem& p) {
    const auto& g = p.graph;
    const std::size_t e = g.edges.size();
    if (e > 20) return std::nullopt;
    const std::uint32_t full = (std::uint32_t{1} << e) - 1;
    const std::size_t states = g.vertex_count << e;
    std::vector<std::int32_t> dist(states, -1);
    std::deque<std::size_t> queue;
    auto id = [&](std::size_t v, std::uint32_t mask) { return (v << e) | mask; };
    for (auto s : p.starts) {
        if (dist[id(s, 0)] < 0) {
            dist[id(s, 0)] = 0;
            queue.push_back(id(s, 0));
        }
    }
    std::vector<bool> is_end(g.vertex_count, false);
    for (auto t : p.ends) is_end[t] = true;
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        std::size_t v = cur >> e;
        auto mask = static_cast<std::uint32_t>(cur & full);
        if (mask == full && is_end[v]) return static_cast<std::size_t>(dist[cur]);
        for (std::size_t k = 0; k < e; ++k) {
            if (g.edges[k].first != v) continue;
            auto next = id(g.edges[k].second, mask | (std::uint32_t{1} << k));
            if (dist[next] < 0) {
                dist[next] = dist[cur] + 1;
                queue.push_back(next);
            }
        }
    }
    return std::nullopt;
}

/// Random walk problem on up to `max_vertices` vertices with 1..max_edges
/// distinct edges (loops allowed); start/end sets are random non-empty.
inline WalkProblem random_walk_problem(std::mt19937& rng, std::size_t max_vertices, std::size_t max_edges) {
    std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
    WalkProblem p;
    p.graph.vertex_count = nv(rng);
    std::uniform_int_distribution<std::size_t> vert(0, p.graph.vertex_count - 1);
    std::uniform_int_distribution<std::size_t> ne(1, max_edges);
    auto want = std::min(ne(rng), p.graph.vertex_count * p.graph.vertex_count);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    while (edges.size() < want) edges.emplace(vert(rng), vert(rng));
    p.graph.edges.assign(edges.begin(), edges.end());
    std::shuffle(p.graph.edges.begin(), p.graph.edges.end(), rng);
    std::bernoulli_distribution coin(0.4);
    for (std::size_t v = 0; v < p.graph.vertex_count; ++v) {
        if (coin(rng)) p.starts.push_back(v);
        if (coin(rng)) p.ends.push_back(v);
    }
    if (p.starts.empty()) p.starts.push_back(vert(rng));
    if (p.ends.empty()) p.ends.push_back(vert(rng));
    return p;
}

/// Checks a reported covering walk: consecutive vertices joined by edges,
/// every edge used, endpoints allowed, length consistent.
inline bool valid_covering_walk(const WalkProblem& p, const CoveringWalk& w) {
    if (!w.feasible || w.vertices.size() != w.length + 1) return false;
    auto allowed = [](const std::vector<std::size_t>& set, std::size_t v) {
        return std::find(set.begin(), set.end(), v) != set.end();
    };
    if (!allowed(p.starts, w.vertices.front()) || !allowed(p.ends, w.vertices.back())) return false;
    std::set<std::pair<std::size_t, std::size_t>> edges(p.graph.edges.begin(), p.graph.edges.end()), used;
    for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i) {
        std::pair step{w.vertices[i], w.vertices[i + 1]};
        if (!edges.count(step)) return false;
        used.insert(step);
    }
    return used == edges;
}

}  // namespace efo::testing
