// game.hpp -- the n-move Ehrenfeucht-Fraisse game on coloured orders
//
// Two independent routes to the winner: game_oracle() searches the full move
// tree, while best_move() and two_wins() read the answer off n-types, using
// the fact that after some rounds II wins the remaining r-move game iff the
// chosen pairs form a partial isomorphism and each pair of corresponding
// gaps is r-equivalent.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "ntype.hpp"
#include "order.hpp"

namespace efo {

enum class Player { I, II };
enum class Side { A, B };

constexpr Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
constexpr Player opponent(Player p) { return p == Player::I ? Player::II : Player::I; }

/// A point picked in one of the two structures (0-based position).
struct Move {
    Side side = Side::A;
    std::size_t position = 0;

    friend constexpr bool operator==(const Move&, const Move&) = default;
};

/// A completed round: the point of A and the point of B it was matched with.
using Round = std::pair<std::size_t, std::size_t>;

/// True if the rounds define an order- and colour-preserving partial map A -> B.
inline bool is_partial_isomorphism(const ColouredOrder& a, const ColouredOrder& b,
                                   const std::vector<Round>& rounds) {
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        auto [ai, bi] = rounds[i];
        if (a[ai] != b[bi]) return false;
        for (std::size_t j = 0; j < i; ++j) {
            auto [aj, bj] = rounds[j];
            if ((ai < aj) != (bi < bj) || (ai == aj) != (bi == bj)) return false;
        }
    }
    return true;
}

namespace detail {

/// Exhaustive minimax with memo on the (sorted) set of chosen pairs.
class Minimax {
public:
    Minimax(const ColouredOrder& a, const ColouredOrder& b) : _a(a), _b(b) {}

    bool two_wins(std::vector<Round>& rounds, unsigned moves_left) {
        if (!is_partial_isomorphism(_a, _b, rounds)) return false;
        if (moves_left == 0) return true;
        auto key = rounds;
        std::sort(key.begin(), key.end());
        key.erase(std::unique(key.begin(), key.end()), key.end());
        auto memo_key = std::pair{key, moves_left};
        if (auto it = _memo.find(memo_key); it != _memo.end()) return it->second;

        bool result = true;
        for (int s = 0; s < 2 && result; ++s) {
            const auto& here = s == 0 ? _a : _b;
            const auto& there = s == 0 ? _b : _a;
            for (std::size_t x = 0; x < here.size() && result; ++x) {
                bool answered = false;
                for (std::size_t y = 0; y < there.size() && !answered; ++y) {
                    rounds.push_back(s == 0 ? Round{x, y} : Round{y, x});
                    answered = two_wins(rounds, moves_left - 1);
                    rounds.pop_back();
                }
                if (!answered) result = false;
            }
        }
        _memo.emplace(std::move(memo_key), result);
        return result;
    }

private:
    const ColouredOrder& _a;
    const ColouredOrder& _b;
    std::map<std::pair<std::vector<Round>, unsigned>, bool> _memo;
};

}  // namespace detail

/// Winner of the n-move game by exhaustive search of the move tree.
/// Exponential; refuses inputs whose tree exceeds the search budget.
inline Player game_oracle(const ColouredOrder& a, const ColouredOrder& b, unsigned n) {
    std::uint64_t branching = (a.size() + b.size()) * std::max(a.size(), b.size());
    require_budget(capped_power(std::max<std::uint64_t>(branching, 1), n, search_budget()),
                   "game_oracle");
    std::vector<Round> rounds;
    return detail::Minimax(a, b).two_wins(rounds, n) ? Player::II : Player::I;
}

/// Position of an n-move game. `pending` holds I's pick awaiting II's answer.
struct GameState {
    ColouredOrder a;
    ColouredOrder b;
    unsigned n = 0;
    std::vector<Round> history;
    std::optional<Move> pending;
    bool lost_for_two = false;

    GameState() = default;
    GameState(ColouredOrder a_, ColouredOrder b_, unsigned n_)
      : a(std::move(a_)), b(std::move(b_)), n(n_) {}

    unsigned moves_left() const { return n - static_cast<unsigned>(history.size()); }
    bool finished() const { return lost_for_two || (moves_left() == 0 && !pending); }
    Player to_move() const { return pending ? Player::II : Player::I; }

    const ColouredOrder& structure(Side s) const { return s == Side::A ? a : b; }

    /// Plays a move for whoever is to move. Throws std::invalid_argument on an
    /// illegal move, leaving the state unchanged.
    void play(Move m) {
        if (finished()) throw std::invalid_argument("game is finished");
        if (m.position >= structure(m.side).size())
            throw std::invalid_argument("position " + std::to_string(m.position + 1) +
                                        " out of range for structure of length " +
                                        std::to_string(structure(m.side).size()));
        if (!pending) {
            pending = m;
            return;
        }
        if (m.side == pending->side)
            throw std::invalid_argument("player II must answer in the other structure");
        Round r = m.side == Side::B ? Round{pending->position, m.position}
                                    : Round{m.position, pending->position};
        history.push_back(r);
        pending.reset();
        lost_for_two = !is_partial_isomorphism(a, b, history);
    }

    /// Ends the game in I's favour (II had no point to answer with).
    void concede() { lost_for_two = true; pending.reset(); }
};

/// Engine move suggestion. `winning` reports whether the mover wins with best play.
struct MoveAdvice {
    std::optional<Move> move;
    bool winning = false;
};

namespace detail {

/// Gap of a structure between consecutive chosen points, half-open.
struct Gap {
    std::size_t lo;
    std::size_t hi;
};

/// Chosen points of each side, sorted; index-aligned when the map is a partial isomorphism.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> chosen(const GameState& st) {
    std::vector<std::size_t> ca, cb;
    for (auto [x, y] : st.history) {
        ca.push_back(x);
        cb.push_back(y);
    }
    for (auto* v : {&ca, &cb}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return {ca, cb};
}

inline std::vector<Gap> gaps(const std::vector<std::size_t>& points, std::size_t size) {
    std::vector<Gap> out;
    std::size_t lo = 0;
    for (auto p : points) {
        out.push_back(Gap{lo, p});
        lo = p + 1;
    }
    out.push_back(Gap{lo, size});
    return out;
}

}  // namespace detail

/// Strategy engine for one game; caches the typing of both structures.
class Strategist {
public:
    explicit Strategist(const GameState& st, TypeTable& table = TypeTable::shared())
      : _ta(st.a, table), _tb(st.b, table) {}

    /// Whether II wins from `st` with best play.
    bool two_wins(const GameState& st) {
        if (st.lost_for_two) return false;
        if (st.pending) return answer(st).winning;
        if (st.moves_left() == 0) return true;
        auto [ca, cb] = detail::chosen(st);
        auto ga = detail::gaps(ca, st.a.size());
        auto gb = detail::gaps(cb, st.b.size());
        for (std::size_t g = 0; g < ga.size(); ++g)
            if (_ta.type(ga[g].lo, ga[g].hi, st.moves_left()) !=
                _tb.type(gb[g].lo, gb[g].hi, st.moves_left()))
                return false;
        return true;
    }

    MoveAdvice best_move(const GameState& st, Player mover) {
        if (st.finished()) throw std::invalid_argument("game is finished");
        if (mover != st.to_move()) throw std::invalid_argument("not this player's turn");
        return mover == Player::I ? attack(st) : answer(st);
    }

private:
    Typer& typer(Side s) { return s == Side::A ? _ta : _tb; }

    MoveAdvice attack(const GameState& st) {
        std::optional<Move> fallback;
        if (!st.a.empty()) fallback = Move{Side::A, 0};
        else if (!st.b.empty()) fallback = Move{Side::B, 0};
        if (st.lost_for_two) return {fallback, true};

        const unsigned r = st.moves_left();
        auto [ca, cb] = detail::chosen(st);
        auto ga = detail::gaps(ca, st.a.size());
        auto gb = detail::gaps(cb, st.b.size());
        for (Side s : {Side::A, Side::B}) {
            const auto& mine = s == Side::A ? ga : gb;
            const auto& theirs = s == Side::A ? gb : ga;
            for (std::size_t g = 0; g < mine.size(); ++g) {
                if (typer(s).type(mine[g].lo, mine[g].hi, r) ==
                    typer(other(s)).type(theirs[g].lo, theirs[g].hi, r))
                    continue;
                // The gaps differ, so some point's (r-1)-character is unmatched.
                std::vector<Character> answers;
                for (auto q = theirs[g].lo; q < theirs[g].hi; ++q)
                    answers.push_back(typer(other(s)).character_in(theirs[g].lo, theirs[g].hi, q, r - 1));
                std::sort(answers.begin(), answers.end());
                for (auto p = mine[g].lo; p < mine[g].hi; ++p) {
                    auto c = typer(s).character_in(mine[g].lo, mine[g].hi, p, r - 1);
                    if (!std::binary_search(answers.begin(), answers.end(), c))
                        return {Move{s, p}, true};
                }
            }
        }
        return {fallback, false};
    }

    MoveAdvice answer(const GameState& st) {
        const Move pick = *st.pending;
        const Side s = pick.side;
        const Side o = other(s);
        const auto& there = st.structure(o);
        std::optional<Move> fallback;
        if (!there.empty()) fallback = Move{o, 0};
        if (st.lost_for_two) return {fallback, false};

        // Re-picking a chosen point: only its partner keeps the map injective.
        for (auto [x, y] : st.history) {
            auto here = s == Side::A ? x : y;
            auto partner = s == Side::A ? y : x;
            if (here == pick.position) return {Move{o, partner}, true};
        }

        const unsigned r = st.moves_left();
        auto [ca, cb] = detail::chosen(st);
        const auto& mine_pts = s == Side::A ? ca : cb;
        auto g = static_cast<std::size_t>(
            std::lower_bound(mine_pts.begin(), mine_pts.end(), pick.position) - mine_pts.begin());
        auto mine = detail::gaps(mine_pts, st.structure(s).size())[g];
        auto theirs = detail::gaps(s == Side::A ? cb : ca, there.size())[g];
        if (theirs.lo == theirs.hi) return {fallback, false};

        auto want = typer(s).character_in(mine.lo, mine.hi, pick.position, r - 1);
        std::optional<Move> same_colour;
        for (auto q = theirs.lo; q < theirs.hi; ++q) {
            if (there[q] != want.colour) continue;
            if (!same_colour) same_colour = Move{o, q};
            if (typer(o).character_in(theirs.lo, theirs.hi, q, r - 1) == want)
                return {Move{o, q}, true};
        }
        return {same_colour ? same_colour : Move{o, theirs.lo}, false};
    }

    Typer _ta;
    Typer _tb;
};

inline MoveAdvice best_move(const GameState& st, Player mover,
                            TypeTable& table = TypeTable::shared()) {
    return Strategist(st, table).best_move(st, mover);
}

}  // namespace efo
