// order.hpp -- coloured linear orders, palettes, interval views

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace efo {

/// Maximum number of colours a palette may declare.
inline constexpr std::size_t kMaxColours = 64;

/// A colour is a small integer id; glyphs live in the Palette.
struct Colour {
    std::uint8_t id = 0;

    friend constexpr bool operator==(Colour, Colour) = default;
    friend constexpr auto operator<=>(Colour, Colour) = default;
};

/// Rejected textual input (unknown glyph, malformed encoding).
class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t position, std::string glyph, const std::string& what)
      : std::invalid_argument(what), _position(position), _glyph(std::move(glyph)) {}

    /// 1-based position of the offending glyph.
    std::size_t position() const noexcept { return _position; }
    const std::string& glyph() const noexcept { return _glyph; }

private:
    std::size_t _position;
    std::string _glyph;
};

/// Set of colours, as a bitmask over colour ids.
class ColourSet {
public:
    constexpr ColourSet() = default;
    constexpr explicit ColourSet(std::uint64_t bits) : _bits(bits) {}

    constexpr void insert(Colour c) { _bits |= std::uint64_t{1} << c.id; }
    constexpr bool contains(Colour c) const { return (_bits >> c.id) & 1u; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(_bits)); }
    constexpr bool empty() const { return _bits == 0; }
    constexpr std::uint64_t bits() const { return _bits; }

    constexpr ColourSet operator|(ColourSet o) const { return ColourSet{_bits | o._bits}; }
    constexpr ColourSet operator&(ColourSet o) const { return ColourSet{_bits & o._bits}; }
    constexpr bool subset_of(ColourSet o) const { return (_bits & ~o._bits) == 0; }

    /// Members in increasing id order.
    std::vector<Colour> members() const {
        std::vector<Colour> out;
        for (std::uint64_t b = _bits; b != 0; b &= b - 1)
            out.push_back(Colour{static_cast<std::uint8_t>(std::countr_zero(b))});
        return out;
    }

    friend constexpr bool operator==(ColourSet, ColourSet) = default;
    friend constexpr auto operator<=>(ColourSet, ColourSet) = default;

private:
    std::uint64_t _bits = 0;
};

/// Maps colour ids to display glyphs.
///
/// Palettes of up to 26 colours print as single letters, with r, b, g first
/// and the remaining letters in alphabetical order. Larger palettes print as
/// comma-separated integers.
class Palette {
public:
    /// The letter palette (or numeric palette when size > 26) with `size` colours.
    static Palette standard(std::size_t size) {
        if (size == 0 || size > kMaxColours)
            throw std::invalid_argument("palette size must be between 1 and " +
                                        std::to_string(kMaxColours));
        Palette p;
        p._size = size;
        if (size <= 26) {
            std::string letters = "rbg";
            for (char ch = 'a'; ch <= 'z'; ++ch)
                if (ch != 'r' && ch != 'b' && ch != 'g') letters.push_back(ch);
            p._glyphs = letters.substr(0, size);
        }
        return p;
    }

    /// A letter palette with explicitly given glyphs, in id order.
    static Palette from_glyphs(std::string_view glyphs) {
        if (glyphs.empty() || glyphs.size() > 26)
            throw std::invalid_argument("glyph palette must have 1 to 26 glyphs");
        for (std::size_t i = 0; i < glyphs.size(); ++i) {
            char ch = glyphs[i];
            if (ch < 'a' || ch > 'z')
                throw std::invalid_argument(std::string("palette glyph must be a lowercase letter: ") + ch);
            if (glyphs.find(ch) != i)
                throw std::invalid_argument(std::string("duplicate palette glyph: ") + ch);
        }
        Palette p;
        p._size = glyphs.size();
        p._glyphs = std::string(glyphs);
        return p;
    }

    std::size_t size() const noexcept { return _size; }
    bool numeric() const noexcept { return _glyphs.empty(); }

    std::string glyph(Colour c) const {
        if (c.id >= _size) throw std::out_of_range("colour outside palette");
        return numeric() ? std::to_string(c.id) : std::string(1, _glyphs[c.id]);
    }

    std::optional<Colour> lookup(char ch) const {
        auto at = _glyphs.find(ch);
        if (numeric() || at == std::string::npos) return std::nullopt;
        return Colour{static_cast<std::uint8_t>(at)};
    }

    ColourSet all() const {
        return ColourSet{_size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << _size) - 1};
    }

    friend bool operator==(const Palette&, const Palette&) = default;

private:
    Palette() = default;

    std::size_t _size = 0;
    std::string _glyphs;
};

/// A finite coloured linear order: the colour of each position, left to right.
class ColouredOrder {
public:
    ColouredOrder() = default;
    explicit ColouredOrder(std::vector<Colour> entries) : _entries(std::move(entries)) {}

    /// Convenience constructor from raw colour ids.
    static ColouredOrder from_ids(std::initializer_list<int> ids) {
        std::vector<Colour> e;
        for (int id : ids) e.push_back(Colour{static_cast<std::uint8_t>(id)});
        return ColouredOrder(std::move(e));
    }

    std::size_t size() const noexcept { return _entries.size(); }
    bool empty() const noexcept { return _entries.empty(); }

    /// 0-based access.
    Colour operator[](std::size_t i) const { return _entries[i]; }

    std::span<const Colour> entries() const noexcept { return _entries; }

    /// Order obtained by keeping the given 0-based positions (must be increasing).
    ColouredOrder select(std::span<const std::size_t> positions) const {
        std::vector<Colour> out;
        out.reserve(positions.size());
        for (auto p : positions) out.push_back(_entries.at(p));
        return ColouredOrder(std::move(out));
    }

    ColouredOrder slice(std::size_t lo, std::size_t hi) const {
        return ColouredOrder(std::vector<Colour>(_entries.begin() + static_cast<std::ptrdiff_t>(lo),
                                                 _entries.begin() + static_cast<std::ptrdiff_t>(hi)));
    }

    /// Largest colour id present plus one (0 for the empty order).
    std::size_t colour_bound() const {
        std::size_t bound = 0;
        for (auto c : _entries) bound = std::max<std::size_t>(bound, c.id + 1u);
        return bound;
    }

    friend ColouredOrder operator+(const ColouredOrder& x, const ColouredOrder& y) {
        std::vector<Colour> out(x._entries);
        out.insert(out.end(), y._entries.begin(), y._entries.end());
        return ColouredOrder(std::move(out));
    }

    friend bool operator==(const ColouredOrder&, const ColouredOrder&) = default;

    /// Shortlex: shorter first, then lexicographic by colour id.
    friend bool shortlex_less(const ColouredOrder& x, const ColouredOrder& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x._entries < y._entries;
    }

private:
    std::vector<Colour> _entries;
};

/// Non-owning half-open window [lo, hi) onto a coloured order.
class IntervalView {
public:
    IntervalView(const ColouredOrder& base, std::size_t lo, std::size_t hi)
      : _base(&base), _lo(lo), _hi(hi) {
        if (lo > hi || hi > base.size()) throw std::out_of_range("interval view out of range");
    }
    explicit IntervalView(const ColouredOrder& base) : IntervalView(base, 0, base.size()) {}

    const ColouredOrder& base() const noexcept { return *_base; }
    std::size_t lo() const noexcept { return _lo; }
    std::size_t hi() const noexcept { return _hi; }
    std::size_t size() const noexcept { return _hi - _lo; }
    bool empty() const noexcept { return _hi == _lo; }

    std::span<const Colour> entries() const { return _base->entries().subspan(_lo, _hi - _lo); }
    ColouredOrder materialize() const { return _base->slice(_lo, _hi); }

private:
    const ColouredOrder* _base;
    std::size_t _lo;
    std::size_t _hi;
};

inline ColourSet colour_set(std::span<const Colour> entries) {
    ColourSet s;
    for (auto c : entries) s.insert(c);
    return s;
}

inline ColourSet colour_set(const IntervalView& view) { return colour_set(view.entries()); }
inline ColourSet colour_set(const ColouredOrder& order) { return colour_set(order.entries()); }

inline ColouredOrder reverse(const ColouredOrder& order) {
    std::vector<Colour> out(order.entries().rbegin(), order.entries().rend());
    return ColouredOrder(std::move(out));
}

/// Parses glyph text. The literal "-" is the empty order.
inline ColouredOrder parse(std::string_view text, const Palette& palette) {
    std::vector<Colour> out;
    if (text == "-") return ColouredOrder{};
    if (palette.numeric()) {
        std::size_t index = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find(',', start);
            if (end == std::string_view::npos) end = text.size();
            auto token = text.substr(start, end - start);
            ++index;
            std::size_t value = 0;
            bool ok = !token.empty() && token.size() <= 3;
            for (char ch : token) {
                ok = ok && ch >= '0' && ch <= '9';
                value = value * 10 + static_cast<std::size_t>(ch - '0');
            }
            if (!ok || value >= palette.size())
                throw ParseError(index, std::string(token),
                                 "unknown colour '" + std::string(token) + "' at position " +
                                     std::to_string(index));
            out.push_back(Colour{static_cast<std::uint8_t>(value)});
            start = end + 1;
        }
        return ColouredOrder(std::move(out));
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto c = palette.lookup(text[i]);
        if (!c)
            throw ParseError(i + 1, std::string(1, text[i]),
                             "unknown glyph '" + std::string(1, text[i]) + "' at position " +
                                 std::to_string(i + 1));
        out.push_back(*c);
    }
    return ColouredOrder(std::move(out));
}

inline std::string print(std::span<const Colour> entries, const Palette& palette) {
    if (entries.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (palette.numeric() && i > 0) out.push_back(',');
        out += palette.glyph(entries[i]);
    }
    return out;
}

inline std::string print(const ColouredOrder& order, const Palette& palette) {
    return print(order.entries(), palette);
}

/// Like print, but the empty order renders as "" rather than "-".
inline std::string glyphs(std::span<const Colour> entries, const Palette& palette) {
    return entries.empty() ? std::string{} : print(entries, palette);
}

inline std::string glyphs(const ColouredOrder& order, const Palette& palette) {
    return glyphs(order.entries(), palette);
}

/// Reads newline-separated orders; blank lines and lines starting with '#' are skipped.
inline std::vector<ColouredOrder> read_orders(std::istream& in, const Palette& palette) {
    std::vector<ColouredOrder> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        out.push_back(parse(line, palette));
    }
    return out;
}

}  // namespace efo
