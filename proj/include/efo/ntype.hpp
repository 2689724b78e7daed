// ntype.hpp -- n-types, n-characters and the cutting reduction
//
// The level-(n+1) type of a string is the set of its level-n characters,
// where the character of a position is (colour, type of the part to its
// left, type of the part to its right). Two strings are n-equivalent exactly
// when their level-n types coincide. Types are hash-consed in a TypeTable so
// equality is an id comparison, across strings.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "order.hpp"

namespace efo {

/// Identity of a level-n equivalence class. Equal handles mean equal classes.
struct NType {
    std::uint32_t level = 0;
    std::uint32_t id = 0;

    friend constexpr bool operator==(NType, NType) = default;
    friend constexpr auto operator<=>(NType, NType) = default;
};

/// The n-character of a point: its colour and the types on either side.
struct Character {
    Colour colour;
    NType left;
    NType right;

    friend constexpr bool operator==(const Character&, const Character&) = default;
    friend constexpr auto operator<=>(const Character&, const Character&) = default;
};

/// Interning table for NTypes. Lookups take a shared lock, inserts an
/// exclusive one, so one table may serve many threads.
class TypeTable {
public:
    TypeTable() {
        // Level 0: every order, empty or not, shares the unit type.
        _entries.push_back(Entry{0, ColouredOrder{}, {}});
    }

    TypeTable(const TypeTable&) = delete;
    TypeTable& operator=(const TypeTable&) = delete;

    /// Process-wide table used by the free functions below.
    static TypeTable& shared() {
        static TypeTable table;
        return table;
    }

    static constexpr NType unit() { return NType{0, 0}; }

    /// Interns a level-(level) type whose body is the given sorted, duplicate-free
    /// character set. `witness` is called only when the type is new.
    template <typename WitnessFn>
    NType intern(std::uint32_t level, const std::vector<Character>& body, WitnessFn&& witness) {
        Key key{level, body};
        {
            std::shared_lock lock(_mutex);
            if (auto it = _index.find(key); it != _index.end()) return NType{level, it->second};
        }
        std::unique_lock lock(_mutex);
        if (auto it = _index.find(key); it != _index.end()) return NType{level, it->second};
        auto id = static_cast<std::uint32_t>(_entries.size());
        _entries.push_back(Entry{level, witness(), body});
        _index.emplace(std::move(key), id);
        return NType{level, id};
    }

    /// Some string realizing the type (the first one seen).
    ColouredOrder witness(NType t) const {
        std::shared_lock lock(_mutex);
        return _entries.at(t.id).witness;
    }

    /// The character set defining a type of level >= 1.
    std::vector<Character> body(NType t) const {
        std::shared_lock lock(_mutex);
        return _entries.at(t.id).body;
    }

    std::size_t size() const {
        std::shared_lock lock(_mutex);
        return _entries.size();
    }

private:
    struct Entry {
        std::uint32_t level;
        ColouredOrder witness;
        std::vector<Character> body;
    };

    struct Key {
        std::uint32_t level;
        std::vector<Character> body;
        bool operator==(const Key&) const = default;
    };

    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::uint64_t h = 0x9e3779b97f4a7c15ull ^ k.level;
            auto mix = [&h](std::uint64_t v) {
                h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            };
            for (const auto& c : k.body) {
                mix((std::uint64_t{c.colour.id} << 56) ^ (std::uint64_t{c.left.id} << 28) ^ c.right.id);
            }
            return static_cast<std::size_t>(h);
        }
    };

    mutable std::shared_mutex _mutex;
    std::deque<Entry> _entries;
    std::unordered_map<Key, std::uint32_t, KeyHash> _index;
};

/// Types of the subintervals of one string, memoized by (level, lo, hi).
class Typer {
public:
    explicit Typer(ColouredOrder order, TypeTable& table = TypeTable::shared())
      : _order(std::move(order)), _table(&table), _stride(_order.size() + 1) {}

    const ColouredOrder& order() const noexcept { return _order; }
    TypeTable& table() const noexcept { return *_table; }

    /// Level-`level` type of the interval [lo, hi).
    NType type(std::size_t lo, std::size_t hi, unsigned level) {
        if (level == 0) return TypeTable::unit();
        auto& memo = layer(level);
        auto& slot = memo[lo * _stride + hi];
        if (slot != kUnset) return NType{level, slot};

        std::vector<Character> body;
        body.reserve(hi - lo);
        for (std::size_t p = lo; p < hi; ++p) body.push_back(character_in(lo, hi, p, level - 1));
        std::sort(body.begin(), body.end());
        body.erase(std::unique(body.begin(), body.end()), body.end());
        auto t = _table->intern(level, body, [&] { return _order.slice(lo, hi); });
        // `memo` may have been invalidated by recursion growing _memo; re-index.
        _memo[level - 1][lo * _stride + hi] = t.id;
        return t;
    }

    NType type(unsigned level) { return type(0, _order.size(), level); }

    /// Level-`level` character of position p inside the interval [lo, hi).
    Character character_in(std::size_t lo, std::size_t hi, std::size_t p, unsigned level) {
        auto left = type(lo, p, level);
        auto right = type(p + 1, hi, level);
        return Character{_order[p], left, right};
    }

    Character character(std::size_t p, unsigned level) {
        return character_in(0, _order.size(), p, level);
    }

    /// Characters of every position, in order.
    std::vector<Character> characters(unsigned level) {
        std::vector<Character> out;
        out.reserve(_order.size());
        for (std::size_t p = 0; p < _order.size(); ++p) out.push_back(character(p, level));
        return out;
    }

private:
    static constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

    std::vector<std::uint32_t>& layer(unsigned level) {
        while (_memo.size() < level) _memo.emplace_back(_stride * _stride, kUnset);
        return _memo[level - 1];
    }

    ColouredOrder _order;
    TypeTable* _table;
    std::size_t _stride;
    std::vector<std::vector<std::uint32_t>> _memo;
};

inline NType ntype(const ColouredOrder& order, unsigned level,
                   TypeTable& table = TypeTable::shared()) {
    return Typer(order, table).type(level);
}

inline bool equiv(const ColouredOrder& a, const ColouredOrder& b, unsigned level,
                  TypeTable& table = TypeTable::shared()) {
    return ntype(a, level, table) == ntype(b, level, table);
}

/// The level-`level` character of every position of `order`.
inline std::vector<Character> characters(const ColouredOrder& order, unsigned level,
                                         TypeTable& table = TypeTable::shared()) {
    return Typer(order, table).characters(level);
}

/// Cuts intervals until no cut applies: removes (a, b] when
/// a and b share a level-`level` character and every point of (a, b] has its
/// character realized at or before a. Leftmost a first, then the largest b.
/// The result is a subword of `order` and (level+1)-equivalent to it.
inline ColouredOrder cut(const ColouredOrder& order, unsigned level,
                         TypeTable& table = TypeTable::shared()) {
    ColouredOrder current = order;
    for (;;) {
        auto chars = characters(current, level, table);
        const std::size_t k = chars.size();
        std::optional<std::pair<std::size_t, std::size_t>> found;
        for (std::size_t a = 0; a < k && !found; ++a) {
            std::vector<Character> seen(chars.begin(), chars.begin() + static_cast<std::ptrdiff_t>(a + 1));
            std::sort(seen.begin(), seen.end());
            // Extend b while every point of (a, b] is represented at or before a.
            for (std::size_t b = a + 1; b < k; ++b) {
                if (!std::binary_search(seen.begin(), seen.end(), chars[b])) break;
                if (chars[b] == chars[a]) found = std::pair{a, b};
            }
        }
        if (!found) return current;
        auto [a, b] = *found;
        current = current.slice(0, a + 1) + current.slice(b + 1, k);
    }
}

}  // namespace efo
