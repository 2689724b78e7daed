// session.hpp -- game sessions between a human and the strategy engine
//
// Wire format (JSON, "schema": 1): positions are 1-based, structures are
// glyph strings, sides are "A"/"B", players "I"/"II".

#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "game.hpp"
#include "order.hpp"

namespace efo {

inline constexpr int kWireSchema = 1;

class SessionNotFound : public std::out_of_range {
public:
    explicit SessionNotFound(const std::string& id) : std::out_of_range("unknown session " + id) {}
};

/// Move on a finished session, or by the wrong party.
class SessionConflict : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline std::string player_name(Player p) { return p == Player::I ? "I" : "II"; }
inline std::string side_name(Side s) { return s == Side::A ? "A" : "B"; }

inline Player parse_player(const std::string& s) {
    if (s == "I") return Player::I;
    if (s == "II") return Player::II;
    throw std::invalid_argument("player must be \"I\" or \"II\", got \"" + s + "\"");
}

inline Side parse_side(const std::string& s) {
    if (s == "A" || s == "a") return Side::A;
    if (s == "B" || s == "b") return Side::B;
    throw std::invalid_argument("structure must be \"A\" or \"B\", got \"" + s + "\"");
}

struct TranscriptEntry {
    std::size_t seq = 0;
    Player player = Player::I;
    bool by_engine = false;
    std::optional<Move> move;  // empty for a concession
    std::chrono::system_clock::time_point time;
};

inline std::string iso8601(std::chrono::system_clock::time_point t) {
    auto secs = std::chrono::system_clock::to_time_t(t);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

struct Session {
    std::string id;
    Palette palette = Palette::standard(3);
    GameState state;
    Player human = Player::I;
    std::vector<TranscriptEntry> transcript;

    /// Both structures empty: I has nothing to pick, so the game is over.
    bool finished() const { return state.finished() || (state.a.empty() && state.b.empty()); }

    std::optional<Player> winner() const {
        if (!finished()) return std::nullopt;
        return state.lost_for_two ? Player::I : Player::II;
    }

    std::optional<Player> to_move() const {
        if (finished()) return std::nullopt;
        return state.to_move();
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["schema"] = kWireSchema;
        j["id"] = id;
        j["a"] = glyphs(state.a, palette);
        j["b"] = glyphs(state.b, palette);
        j["n"] = state.n;
        j["human"] = player_name(human);
        j["engine"] = player_name(opponent(human));
        j["moves_left"] = state.moves_left();
        auto tm = to_move();
        j["to_move"] = tm ? nlohmann::ordered_json(player_name(*tm)) : nlohmann::ordered_json(nullptr);
        if (state.pending)
            j["pending"] = {{"structure", side_name(state.pending->side)}, {"position", state.pending->position + 1}};
        else
            j["pending"] = nullptr;
        auto rounds = nlohmann::ordered_json::array();
        for (auto [x, y] : state.history) rounds.push_back({{"a", x + 1}, {"b", y + 1}});
        j["rounds"] = std::move(rounds);
        j["finished"] = finished();
        auto w = winner();
        j["winner"] = w ? nlohmann::ordered_json(player_name(*w)) : nlohmann::ordered_json(nullptr);
        if (finished()) {
            j["partial_isomorphism"] = !state.lost_for_two;
            auto map = nlohmann::ordered_json::array();
            for (auto [x, y] : state.history) map.push_back({x + 1, y + 1});
            j["map"] = std::move(map);
        }
        auto log = nlohmann::ordered_json::array();
        for (const auto& e : transcript) {
            nlohmann::ordered_json m;
            m["seq"] = e.seq;
            m["player"] = player_name(e.player);
            m["by"] = e.by_engine ? "engine" : "human";
            if (e.move) {
                m["structure"] = side_name(e.move->side);
                m["position"] = e.move->position + 1;
            } else {
                m["concede"] = true;
            }
            m["time"] = iso8601(e.time);
            log.push_back(std::move(m));
        }
        j["transcript"] = std::move(log);
        return j;
    }
};

/// Replays transcript moves on a fresh game; returns the winner.
inline Player replay_winner(const ColouredOrder& a, const ColouredOrder& b, unsigned n,
                            const std::vector<std::optional<Move>>& moves) {
    GameState st(a, b, n);
    for (const auto& m : moves) {
        if (m) st.play(*m);
        else st.concede();
    }
    if (!st.finished() && !(a.empty() && b.empty()))
        throw std::invalid_argument("transcript does not finish the game");
    return st.lost_for_two ? Player::I : Player::II;
}

inline Player replay_winner(const nlohmann::json& state, const Palette& palette) {
    std::vector<std::optional<Move>> moves;
    for (const auto& e : state.at("transcript")) {
        if (e.contains("concede")) moves.emplace_back();
        else
            moves.emplace_back(Move{parse_side(e.at("structure").get<std::string>()),
                                    e.at("position").get<std::size_t>() - 1});
    }
    return replay_winner(parse(state.at("a").get<std::string>(), palette),
                         parse(state.at("b").get<std::string>(), palette), state.at("n").get<unsigned>(), moves);
}

/// Thread-safe session store. Sessions are independent; moves within one
/// session are serialized.
class SessionManager {
public:
    explicit SessionManager(Palette palette = Palette::standard(3), TypeTable& table = TypeTable::shared())
      : _palette(std::move(palette)), _table(table), _rng(std::random_device{}()) {}

    const Palette& palette() const { return _palette; }

    nlohmann::ordered_json create(const std::string& a, const std::string& b, unsigned n, Player human) {
        auto entry = std::make_shared<Entry>();
        entry->session.palette = _palette;
        entry->session.state = GameState(parse(a, _palette), parse(b, _palette), n);
        entry->session.human = human;
        {
            std::unique_lock lock(_mutex);
            do entry->session.id = token();
            while (_sessions.count(entry->session.id));
            _sessions.emplace(entry->session.id, entry);
        }
        std::lock_guard guard(entry->mutex);
        advance(entry->session);
        return entry->session.to_json();
    }

    nlohmann::ordered_json get(const std::string& id) const {
        auto entry = find(id);
        std::lock_guard guard(entry->mutex);
        return entry->session.to_json();
    }

    /// Plays the human's move, then the engine's replies until the human is
    /// to move again or the game ends. Illegal moves leave the session as it was.
    nlohmann::ordered_json move(const std::string& id, Move m) {
        auto entry = find(id);
        std::lock_guard guard(entry->mutex);
        auto& s = entry->session;
        if (s.finished()) throw SessionConflict("session " + id + " is finished");
        if (s.state.to_move() != s.human) throw SessionConflict("not the human's turn");
        s.state.play(m);
        record(s, s.human, false, m);
        advance(s);
        return s.to_json();
    }

    /// Whether the human, playing `m` now, keeps a winning position.
    nlohmann::ordered_json hint(const std::string& id, Move m) const {
        auto entry = find(id);
        std::lock_guard guard(entry->mutex);
        const auto& s = entry->session;
        nlohmann::ordered_json j;
        j["schema"] = kWireSchema;
        j["structure"] = side_name(m.side);
        j["position"] = m.position + 1;
        j["legal"] = legal(s, m);
        j["alive"] = j["legal"].get<bool>() && alive(s, m);
        return j;
    }

    /// Every legal human move with its alive flag.
    nlohmann::ordered_json hints(const std::string& id) const {
        auto entry = find(id);
        std::lock_guard guard(entry->mutex);
        const auto& s = entry->session;
        nlohmann::ordered_json j;
        j["schema"] = kWireSchema;
        auto cells = nlohmann::ordered_json::array();
        for (Side side : {Side::A, Side::B}) {
            for (std::size_t p = 0; p < s.state.structure(side).size(); ++p) {
                Move m{side, p};
                if (!legal(s, m)) continue;
                cells.push_back({{"structure", side_name(side)}, {"position", p + 1}, {"alive", alive(s, m)}});
            }
        }
        j["moves"] = std::move(cells);
        return j;
    }

    std::size_t size() const {
        std::shared_lock lock(_mutex);
        return _sessions.size();
    }

private:
    struct Entry {
        mutable std::mutex mutex;
        Session session;
    };

    std::shared_ptr<Entry> find(const std::string& id) const {
        std::shared_lock lock(_mutex);
        auto it = _sessions.find(id);
        if (it == _sessions.end()) throw SessionNotFound(id);
        return it->second;
    }

    std::string token() {
        static constexpr char hex[] = "0123456789abcdef";
        std::string out;
        for (int i = 0; i < 2; ++i) {
            auto v = _rng();
            for (int k = 0; k < 16; ++k, v >>= 4) out += hex[v & 15];
        }
        return out;
    }

    static bool legal(const Session& s, Move m) {
        if (s.finished() || s.state.to_move() != s.human) return false;
        if (m.position >= s.state.structure(m.side).size()) return false;
        return !(s.state.pending && s.state.pending->side == m.side);
    }

    bool alive(const Session& s, Move m) const {
        GameState next = s.state;
        next.play(m);
        if (next.finished()) return (next.lost_for_two ? Player::I : Player::II) == s.human;
        bool two = Strategist(next, _table).two_wins(next);
        return two == (s.human == Player::II);
    }

    static void record(Session& s, Player p, bool by_engine, std::optional<Move> m) {
        s.transcript.push_back(
            TranscriptEntry{s.transcript.size() + 1, p, by_engine, m, std::chrono::system_clock::now()});
    }

    void advance(Session& s) {
        while (!s.finished()) {
            const Player mover = s.state.to_move();
            // II with an empty structure to answer in has lost, human or not.
            if (mover == Player::II && s.state.structure(other(s.state.pending->side)).empty()) {
                s.state.concede();
                record(s, mover, mover != s.human, std::nullopt);
                return;
            }
            if (mover == s.human) return;
            auto advice = Strategist(s.state, _table).best_move(s.state, mover);
            s.state.play(*advice.move);
            record(s, mover, true, advice.move);
        }
    }

    Palette _palette;
    TypeTable& _table;
    mutable std::shared_mutex _mutex;
    std::map<std::string, std::shared_ptr<Entry>> _sessions;
    std::mt19937_64 _rng;
};

}  // namespace efo
