// two_equiv.hpp -- classification of 2-equivalence classes
//
// A string with m colours has x_i = first point where i colours have been
// seen from the left and y_j = last point from which j colours are seen to
// the right. The order induced on these points (the T-configuration), their
// colours, and the set of colours strictly inside each gap between them
// determine the 2-equivalence class exactly.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ntype.hpp"
#include "order.hpp"

namespace efo {

/// One point of a T-configuration: x_x and/or y_y (0 when absent).
struct TPoint {
    unsigned x = 0;
    unsigned y = 0;

    friend constexpr bool operator==(const TPoint&, const TPoint&) = default;
    friend constexpr auto operator<=>(const TPoint&, const TPoint&) = default;
};

/// Uncoloured T-configuration: the T-points from left to right.
using TPattern = std::vector<TPoint>;

struct TConfiguration {
    std::size_t m = 0;
    TPattern pattern;
    std::vector<Colour> colours;  // one per T-point

    friend bool operator==(const TConfiguration&, const TConfiguration&) = default;
    friend auto operator<=>(const TConfiguration&, const TConfiguration&) = default;
};

/// C_{T,g}: coloured configuration plus the colours inside each gap.
struct ClassDescriptor2 {
    TConfiguration config;
    std::vector<ColourSet> gaps;  // gap t lies between T-points t and t+1

    friend bool operator==(const ClassDescriptor2&, const ClassDescriptor2&) = default;
    friend auto operator<=>(const ClassDescriptor2&, const ClassDescriptor2&) = default;
};

/// Rejection of a T-configuration that no coloured order induces.
class InfeasibleError : public std::invalid_argument {
public:
    InfeasibleError(unsigned i, unsigned j)
      : std::invalid_argument("infeasible T-configuration: i + j <= m + 1 but x" +
                              std::to_string(i) + " > y" + std::to_string(j)),
        _i(i), _j(j) {}
    unsigned i() const noexcept { return _i; }
    unsigned j() const noexcept { return _j; }

private:
    unsigned _i, _j;
};

/// Positions (0-based, increasing) of the T-points of `order`, with their labels.
inline std::vector<std::pair<std::size_t, TPoint>> t_points(std::span<const Colour> order) {
    const std::size_t k = order.size();
    std::vector<std::pair<std::size_t, TPoint>> pts;
    std::vector<TPoint> label(k);
    std::vector<bool> used(k, false);
    ColourSet seen;
    for (std::size_t p = 0; p < k; ++p) {
        auto before = seen.size();
        seen.insert(order[p]);
        if (seen.size() > before) {
            label[p].x = static_cast<unsigned>(seen.size());
            used[p] = true;
        }
    }
    seen = ColourSet{};
    for (std::size_t p = k; p-- > 0;) {
        auto before = seen.size();
        seen.insert(order[p]);
        if (seen.size() > before) {
            label[p].y = static_cast<unsigned>(seen.size());
            used[p] = true;
        }
    }
    for (std::size_t p = 0; p < k; ++p)
        if (used[p]) pts.emplace_back(p, label[p]);
    return pts;
}

inline TConfiguration tconfig_of(const ColouredOrder& order) {
    TConfiguration t;
    t.m = colour_set(order).size();
    for (auto [p, label] : t_points(order.entries())) {
        t.pattern.push_back(label);
        t.colours.push_back(order[p]);
    }
    return t;
}

/// Text form, e.g. "x1<x2=y2<y1".
inline std::string pattern_string(const TPattern& pattern) {
    if (pattern.empty()) return "empty";
    std::string out;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i > 0) out += '<';
        const auto& pt = pattern[i];
        if (pt.x) out += "x" + std::to_string(pt.x);
        if (pt.x && pt.y) out += '=';
        if (pt.y) out += "y" + std::to_string(pt.y);
    }
    return out;
}

/// Every T-configuration for m colours: x's increase and y's decrease left
/// to right, x1 is first and y1 last.
inline std::vector<TPattern> all_patterns(std::size_t m) {
    std::vector<TPattern> out;
    if (m == 0) return {TPattern{}};
    TPattern cur;
    auto rec = [&](auto&& self, unsigned next_x, unsigned next_y) -> void {
        if (next_x > m && next_y == 0) {
            if (cur.back().y == 1) out.push_back(cur);
            return;
        }
        const bool can_x = next_x <= m;
        const bool can_y = next_y >= 1 && !cur.empty();  // x1 comes first
        if (can_x && next_y >= 1) {
            cur.push_back(TPoint{next_x, next_y});
            self(self, next_x + 1, next_y - 1);
            cur.pop_back();
        }
        if (can_x) {
            cur.push_back(TPoint{next_x, 0});
            self(self, next_x + 1, next_y);
            cur.pop_back();
        }
        if (can_y) {
            cur.push_back(TPoint{0, next_y});
            self(self, next_x, next_y - 1);
            cur.pop_back();
        }
    };
    rec(rec, 1, static_cast<unsigned>(m));
    return out;
}

inline std::size_t pattern_colour_count(const TPattern& pattern) {
    unsigned m = 0;
    for (auto pt : pattern) m = std::max(m, pt.x);
    return m;
}

/// The first (i, j) with i + j <= m + 1 and x_i after y_j, if any.
inline std::optional<std::pair<unsigned, unsigned>> feasibility_violation(const TPattern& pattern) {
    const auto m = pattern_colour_count(pattern);
    std::vector<std::size_t> xpos(m + 1), ypos(m + 1);
    for (std::size_t t = 0; t < pattern.size(); ++t) {
        if (pattern[t].x) xpos[pattern[t].x] = t;
        if (pattern[t].y) ypos[pattern[t].y] = t;
    }
    for (unsigned i = 1; i <= m; ++i)
        for (unsigned j = 1; i + j <= m + 1; ++j)
            if (xpos[i] > ypos[j]) return std::pair{i, j};
    return std::nullopt;
}

inline bool feasible(const TPattern& pattern) { return !feasibility_violation(pattern); }

/// A coloured order on exactly the T-points inducing `pattern`. The x_i take
/// colours 0..m-1 in order; the y_j, left to right, copy a coinciding x or
/// take the smallest colour of x_1..x_i (x_i the nearest x to the left) not
/// yet used by a y.
inline ColouredOrder realize(const TPattern& pattern) {
    if (auto v = feasibility_violation(pattern)) throw InfeasibleError(v->first, v->second);
    std::vector<Colour> out;
    ColourSet used_by_y;
    unsigned last_x = 0;
    for (auto pt : pattern) {
        Colour c{};
        if (pt.x) {
            last_x = pt.x;
            c = Colour{static_cast<std::uint8_t>(pt.x - 1)};
        } else {
            bool assigned = false;
            for (unsigned id = 0; id < last_x && !assigned; ++id) {
                Colour cand{static_cast<std::uint8_t>(id)};
                if (!used_by_y.contains(cand)) {
                    c = cand;
                    assigned = true;
                }
            }
            if (!assigned) throw InfeasibleError(last_x + 1, pt.y);
        }
        if (pt.y) used_by_y.insert(c);
        out.push_back(c);
    }
    return ColouredOrder(std::move(out));
}

inline ClassDescriptor2 descriptor(const ColouredOrder& order) {
    ClassDescriptor2 d;
    d.config = tconfig_of(order);
    auto pts = t_points(order.entries());
    for (std::size_t t = 0; t + 1 < pts.size(); ++t)
        d.gaps.push_back(colour_set(order.entries().subspan(pts[t].first + 1,
                                                            pts[t + 1].first - pts[t].first - 1)));
    return d;
}

/// Colours that may be inserted strictly between T-points t and t+1 without
/// moving any T-point: those seen up to t and also from t+1 onwards.
inline std::vector<ColourSet> legal_gap_colours(const TConfiguration& config) {
    std::vector<ColourSet> out;
    const auto n = config.colours.size();
    for (std::size_t t = 0; t + 1 < n; ++t) {
        ColourSet left, right;
        for (std::size_t u = 0; u <= t; ++u) left.insert(config.colours[u]);
        for (std::size_t u = t + 1; u < n; ++u) right.insert(config.colours[u]);
        out.push_back(left & right);
    }
    return out;
}

inline bool gaps_legal(const ClassDescriptor2& d) {
    auto legal = legal_gap_colours(d.config);
    if (legal.size() != d.gaps.size()) return false;
    for (std::size_t t = 0; t < legal.size(); ++t)
        if (!d.gaps[t].subset_of(legal[t])) return false;
    return true;
}

/// Finite iff singleton iff no gap carries a colour.
inline bool is_finite_class(const ClassDescriptor2& d) {
    return std::all_of(d.gaps.begin(), d.gaps.end(), [](ColourSet s) { return s.empty(); });
}

/// 0-based positions kept by canon2: every T-point, plus the first occurrence
/// of each colour inside each gap.
inline std::vector<std::size_t> canon2_positions(const ColouredOrder& order) {
    std::vector<std::size_t> keep;
    auto pts = t_points(order.entries());
    for (std::size_t t = 0; t < pts.size(); ++t) {
        keep.push_back(pts[t].first);
        if (t + 1 == pts.size()) break;
        ColourSet seen;
        for (auto p = pts[t].first + 1; p < pts[t + 1].first; ++p) {
            if (seen.contains(order[p])) continue;
            seen.insert(order[p]);
            keep.push_back(p);
        }
    }
    return keep;
}

/// A 2-equivalent, 2-optimal subword of `order`.
inline ColouredOrder canon2(const ColouredOrder& order) {
    auto keep = canon2_positions(order);
    return order.select(keep);
}

/// True iff no 1-character repeats, which is exactly 2-optimality.
inline bool is_optimal2(const ColouredOrder& order, TypeTable& table = TypeTable::shared()) {
    auto chars = characters(order, 1, table);
    std::sort(chars.begin(), chars.end());
    return std::adjacent_find(chars.begin(), chars.end()) == chars.end();
}

/// Left / middle / right split for the two-move analysis:
/// L = (-inf, x_m), R = (y_m, inf), M = [x_m, y_m].
struct LmrSplit {
    IntervalView left;
    IntervalView middle;
    IntervalView right;
    bool overlap = false;  // L and R share points (x_m > y_m + 1)
};

inline LmrSplit lmr_split2(const ColouredOrder& order) {
    const std::size_t k = order.size();
    if (k == 0) return LmrSplit{IntervalView(order), IntervalView(order), IntervalView(order), false};
    const auto m = colour_set(order).size();
    std::size_t xm = 0, ym = 0;
    for (auto [p, label] : t_points(order.entries())) {
        if (label.x == m) xm = p;
        if (label.y == m) ym = p;
    }
    IntervalView left(order, 0, xm);
    IntervalView right(order, ym + 1, k);
    if (xm <= ym) return LmrSplit{left, IntervalView(order, xm, ym + 1), right, false};
    return LmrSplit{left, IntervalView(order, xm, xm), right, ym + 1 < xm};
}

/// Glyph rendering of a gap map, gaps separated by '|'.
inline std::string gaps_string(const std::vector<ColourSet>& gaps, const Palette& palette) {
    std::string out;
    for (std::size_t t = 0; t < gaps.size(); ++t) {
        if (t > 0) out += '|';
        auto members = gaps[t].members();
        out += glyphs(ColouredOrder(members), palette);
    }
    return out;
}

}  // namespace efo
