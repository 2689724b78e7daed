// three_equiv.hpp -- 3-optimality certificates for two-coloured strings

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "budget.hpp"
#include "digraph.hpp"
#include "ntype.hpp"
#include "order.hpp"
#include "two_equiv.hpp"

namespace efo {

/// Reference strings over {r, b} (glyph text, standard palette).
namespace fixtures {

/// Left block shared by the length-70 and length-74 strings.
inline constexpr const char* kLeft = "rrrrrrbbbbbbrbbbbbr";
/// Right block: the left block reversed.
inline constexpr const char* kRight = "rbbbbbrbbbbbbrrrrrr";
/// Length-32 middle of the 70-string; cyclically a de Bruijn string of order 5.
inline constexpr const char* kMiddle70 = "rbrbrrbbbrbrbbrbbbbbrrrrrbrrrbbr";
/// Length-36 middle of the 74-string.
inline constexpr const char* kMiddle74 = "rbrbbbbbrbbrrbrbrrrrrbrrrbbrbrrrbbbr";
/// Length-15 palindrome whose 7th and 9th points share a 2-character.
inline constexpr const char* kPalindrome15 = "rbrbrbrbrbrbrbr";

inline std::string len70() { return std::string(kLeft) + kMiddle70 + kRight; }
inline std::string len74() { return std::string(kLeft) + kMiddle74 + kRight; }

/// Start windows of the 74 covering-walk problem (those beginning with L' = br).
inline const std::vector<std::string> kWalkStarts = {"brrr", "brrb", "brbr", "brbb"};
/// End windows (those ending with R' = rb).
inline const std::vector<std::string> kWalkEnds = {"rrrb", "rbrb", "brrb", "bbrb"};

}  // namespace fixtures

/// Whether a string's own two-move split has a middle showing every colour:
/// x_m < y_m and all m colours occur strictly between them.
inline bool has_full_middle(const ColouredOrder& s, std::size_t palette_size) {
    auto d = descriptor(s);
    if (d.config.m != palette_size || palette_size == 0) return false;
    const auto& pat = d.config.pattern;
    std::optional<std::size_t> xm, ym;
    for (std::size_t t = 0; t < pat.size(); ++t) {
        if (pat[t].x == palette_size) xm = t;
        if (pat[t].y == palette_size) ym = t;
    }
    if (!xm || !ym || *xm >= *ym) return false;
    ColourSet inside;
    for (auto t = *xm; t < *ym; ++t) inside = inside | d.gaps[t];
    return inside.size() == palette_size;
}

struct LmrSplit3 {
    std::size_t left = 0;    // |L|
    std::size_t middle = 0;  // |M|
    std::size_t right = 0;   // |R|
    bool convex = true;      // the qualifying points formed one block
};

/// L / M / R for the three-move analysis of a two-coloured string: M holds
/// the points whose left and right 2-characters both have a two-colour
/// middle. Each side's class is read from a witness of its NType.
inline LmrSplit3 lmr_split3(const ColouredOrder& order, TypeTable& table = TypeTable::shared()) {
    Typer typer(order, table);
    const auto k = order.size();
    std::vector<bool> in_m(k, false);
    for (std::size_t p = 0; p < k; ++p) {
        auto c = typer.character(p, 2);
        in_m[p] = has_full_middle(table.witness(c.left), 2) && has_full_middle(table.witness(c.right), 2);
    }
    auto first = std::find(in_m.begin(), in_m.end(), true);
    if (first == in_m.end()) return LmrSplit3{k, 0, 0, true};
    auto lo = static_cast<std::size_t>(first - in_m.begin());
    auto hi = k - static_cast<std::size_t>(std::find(in_m.rbegin(), in_m.rend(), true) - in_m.rbegin());
    bool convex = std::all_of(in_m.begin() + static_cast<std::ptrdiff_t>(lo),
                              in_m.begin() + static_cast<std::ptrdiff_t>(hi), [](bool b) { return b; });
    return LmrSplit3{lo, hi - lo, k - hi, convex};
}

struct DistinctnessReport {
    bool all_distinct = true;
    std::size_t distinct = 0;
    std::vector<std::pair<std::size_t, std::size_t>> repeats;  // 1-based position pairs
};

/// Lists positions sharing a level-n character. All distinct certifies
/// (n+1)-optimality.
inline DistinctnessReport verify_distinct_characters(const ColouredOrder& order, unsigned level,
                                                     TypeTable& table = TypeTable::shared()) {
    auto chars = characters(order, level, table);
    DistinctnessReport r;
    std::map<Character, std::vector<std::size_t>> by_char;
    for (std::size_t p = 0; p < chars.size(); ++p) by_char[chars[p]].push_back(p + 1);
    r.distinct = by_char.size();
    for (const auto& [c, positions] : by_char)
        for (std::size_t i = 0; i < positions.size(); ++i)
            for (std::size_t j = i + 1; j < positions.size(); ++j) r.repeats.emplace_back(positions[i], positions[j]);
    std::sort(r.repeats.begin(), r.repeats.end());
    r.all_distinct = r.repeats.empty();
    return r;
}

/// True iff no strictly shorter string over the same colours is
/// 3-equivalent to `order`. Exhaustive, guarded by the search budget.
inline bool verify_optimal3_bruteforce(const ColouredOrder& order, TypeTable& table = TypeTable::shared()) {
    const std::size_t m = std::max<std::size_t>(order.colour_bound(), 1);
    std::uint64_t work = 0;
    const auto cap = search_budget();
    for (std::size_t len = 0; len < order.size() && work <= cap; ++len) work += capped_power(m, len, cap);
    require_budget(work, "verify_optimal3_bruteforce");

    const auto target = ntype(order, 3, table);
    std::vector<Colour> s;
    for (std::size_t len = 0; len < order.size(); ++len) {
        s.assign(len, Colour{0});
        for (;;) {
            if (ntype(ColouredOrder(s), 3, table) == target) return false;
            std::size_t p = len;
            while (p > 0 && s[p - 1].id + 1u == m) s[--p] = Colour{0};
            if (p == 0) break;
            s[p - 1].id++;
        }
    }
    return true;
}

/// One named check of a certificate.
struct CertificateCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Certificate74 {
    std::vector<CertificateCheck> checks;
    std::size_t walk_bound = 0;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["certificate"] = "len74";
        j["passed"] = passed();
        j["conclusion"] = passed() ? "3-optimal, given that every 3-equivalent string shares its L and R blocks"
                                   : "not certified";
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        j["checks"] = std::move(arr);
        return j;
    }
};

/// Certificate for the length-74 construction: shared L/R blocks, distinct
/// and separated 2-characters on L and R, the 28-edge window digraph of
/// L'ML' (L' = br, R' = rb), its minimum covering walk, and the implied
/// length bound |L| + walk + |R| = |A|.
inline Certificate74 verify74(const ColouredOrder& a, TypeTable& table = TypeTable::shared()) {
    const auto palette = Palette::standard(2);
    const auto left_ref = parse(fixtures::kLeft, palette);
    const auto right_ref = parse(fixtures::kRight, palette);
    Certificate74 cert;

    auto split = lmr_split3(a, table);
    bool blocks = split.convex && split.left == left_ref.size() && split.right == right_ref.size() &&
                  a.size() >= split.left + split.right && a.slice(0, split.left) == left_ref &&
                  a.slice(a.size() - split.right, a.size()) == right_ref;
    cert.checks.push_back({"L and R match the length-70 blocks", blocks,
                           "split " + std::to_string(split.left) + "/" + std::to_string(split.middle) + "/" +
                               std::to_string(split.right)});
    if (!blocks) return cert;

    auto chars = characters(a, 2, table);
    const std::size_t m_lo = split.left, m_hi = a.size() - split.right;
    std::vector<Character> outer, inner;
    for (std::size_t p = 0; p < a.size(); ++p) (p < m_lo || p >= m_hi ? outer : inner).push_back(chars[p]);
    std::sort(outer.begin(), outer.end());
    std::sort(inner.begin(), inner.end());
    bool outer_distinct = std::adjacent_find(outer.begin(), outer.end()) == outer.end();
    std::vector<Character> shared;
    std::set_intersection(outer.begin(), outer.end(), inner.begin(), inner.end(), std::back_inserter(shared));
    cert.checks.push_back({"L and R 2-characters distinct and disjoint from M", outer_distinct && shared.empty(),
                           std::to_string(outer.size()) + " outer points, " + std::to_string(shared.size()) +
                               " shared with M"});

    // Region L' M R': two points either side of M.
    IntervalView region(a, m_lo - 2, m_hi + 2);
    auto d = window_digraph(region, 5);
    bool shape = d.edges().size() == 28 && d.vertices().size() == 16;
    cert.checks.push_back({"window digraph has 28 edges on 16 vertices", shape,
                           std::to_string(d.edges().size()) + " edges, " + std::to_string(d.vertices().size()) +
                               " vertices"});

    WalkProblem problem{d.collapsed(), {}, {}};
    for (const auto& w : fixtures::kWalkStarts)
        if (auto v = d.find_vertex(parse(w, palette))) problem.starts.push_back(*v);
    for (const auto& w : fixtures::kWalkEnds)
        if (auto v = d.find_vertex(parse(w, palette))) problem.ends.push_back(*v);
    auto walk = min_covering_walk(problem);
    cert.walk_bound = walk.feasible ? walk.length : 0;
    cert.checks.push_back({"min covering walk = 36", walk.feasible && walk.length == 36,
                           walk.feasible ? "length " + std::to_string(walk.length) : walk.reason});

    auto bound = split.left + cert.walk_bound + split.right;
    cert.checks.push_back({"length bound |L| + walk + |R| = |A|", walk.feasible && bound == a.size(),
                           std::to_string(split.left) + " + " + std::to_string(cert.walk_bound) + " + " +
                               std::to_string(split.right) + " = " + std::to_string(bound) + " vs " +
                               std::to_string(a.size())});
    return cert;
}

/// Display name of an NType: for levels <= 2 a 2-optimal representative of a
/// witness (level 1: its colours once each, ascending), otherwise the stored
/// witness itself, which is not canonical. The empty order prints as "-".
inline std::string type_name(NType t, const Palette& palette, TypeTable& table = TypeTable::shared()) {
    auto w = table.witness(t);
    if (t.level == 0) return "*";
    if (t.level == 1) return print(ColouredOrder(colour_set(w).members()), palette);
    if (t.level == 2) return print(canon2(w), palette);
    return print(w, palette);
}

}  // namespace efo
