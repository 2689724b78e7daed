// acceptance -- one PASS/FAIL line per acceptance criterion; exit 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <efo/enumerate2.hpp>
#include <efo/game.hpp>
#include <efo/three_equiv.hpp>

#include "support.hpp"

using namespace efo;
using efo::testing::all_strings;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

/// Runs one criterion; `limit` seconds is part of the criterion.
void criterion(const std::string& name, double limit, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = limit <= 0 || secs < limit;
    bool pass = r.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s  %s  [%.2fs%s]%s%s\n", pass ? "PASS" : "FAIL", name.c_str(), secs,
                limit > 0 ? (" < " + std::to_string(static_cast<int>(limit)) + "s").c_str() : "",
                r.detail.empty() ? "" : "  ", r.detail.c_str());
    if (!in_time) std::printf("      time limit exceeded\n");
    std::fflush(stdout);
}

/// Independent window check: the cyclic k-windows of s as strings.
std::set<std::string> cyclic_windows(const std::string& s, std::size_t k) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::string w;
        for (std::size_t j = 0; j < k; ++j) w += s[(i + j) % s.size()];
        out.insert(w);
    }
    return out;
}

ColouredOrder random_string(std::mt19937& rng, std::size_t m, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> colour(0, static_cast<int>(m) - 1);
    std::vector<Colour> out(len(rng));
    for (auto& c : out) c = Colour{static_cast<std::uint8_t>(colour(rng))};
    return ColouredOrder(std::move(out));
}

}  // namespace

int main() {
    const auto rb = Palette::standard(2);

    criterion("oracle agreement: equiv = game winner, 2 colours, length <= 5, n <= 3", 30, [] {
        auto strings = all_strings(2, 5);
        std::size_t pairs = 0;
        for (const auto& a : strings)
            for (const auto& b : strings)
                for (unsigned n = 0; n <= 3; ++n, ++pairs)
                    if ((game_oracle(a, b, n) == Player::II) != equiv(a, b, n))
                        return Outcome{false, "disagree on " + print(a, Palette::standard(2)) + " / " +
                                                  print(b, Palette::standard(2)) + " n=" + std::to_string(n)};
        return Outcome{true, std::to_string(pairs) + " cases"};
    });

    criterion("2-equivalence class counts: 90 two-colour, 3 one-colour, 97 total", 0, [] {
        auto one = enumerate2(1, optimal_length_bound2(1));
        auto two = enumerate2(2, optimal_length_bound2(2));
        auto n2 = two.count_using(2), n1 = one.count_using(1), total = two.records.size();
        // Direct (T, g) generation must produce the same classes.
        auto direct = direct_classes(2);
        std::set<ClassDescriptor2> swept, generated;
        for (const auto& r : two.records)
            if (r.descriptor.config.m == 2) swept.insert(r.descriptor);
        for (const auto& r : direct) generated.insert(r.descriptor);
        bool ok = n2 == 90 && n1 == 3 && total == 97 && swept == generated && direct.size() == 90;
        return Outcome{ok, std::to_string(n2) + " / " + std::to_string(n1) + " / " + std::to_string(total) +
                               ", direct generation " + std::to_string(direct.size())};
    });

    criterion("longest 2-optimal string: 8 for m=2, 15 for m=3 (full sweep to length 15)", 600, [] {
        auto l2 = max_optimal_length2(2);
        auto cat = enumerate2(3, optimal_length_bound2(3));
        const TPattern nested{{1, 0}, {2, 0}, {3, 0}, {0, 3}, {0, 2}, {0, 1}};
        std::size_t in_nested = 0;
        for (const auto& r : cat.records) in_nested += r.descriptor.config.pattern == nested;
        auto direct_nested = direct_classes(3, nested).size();
        bool ok = l2 == 8 && cat.max_length() == 15 && in_nested == 18432 && direct_nested == 18432;
        return Outcome{ok, "m=2: " + std::to_string(l2) + ", m=3: " + std::to_string(cat.max_length()) + ", " +
                               pattern_string(nested) + ": " + std::to_string(in_nested) + " (direct " +
                               std::to_string(direct_nested) + ")"};
    });

    criterion("T-configurations for m=3: 26 patterns, 22 feasible", 0, [] {
        auto patterns = all_patterns(3);
        std::size_t feasible_count = 0, realized = 0;
        for (const auto& p : patterns) {
            if (!feasible(p)) continue;
            ++feasible_count;
            realized += tconfig_of(realize(p)).pattern == p;
        }
        bool ok = patterns.size() == 26 && feasible_count == 22 && realized == 22;
        return Outcome{ok, std::to_string(patterns.size()) + " patterns, " + std::to_string(feasible_count) +
                               " feasible, " + std::to_string(realized) + " realized"};
    });

    criterion("canon2 on 10^4 random strings (m <= 3, length <= 40)", 0, [] {
        std::mt19937 rng(20240611);
        for (int i = 0; i < 10000; ++i) {
            std::size_t m = 1 + static_cast<std::size_t>(i % 3);
            auto a = random_string(rng, m, 40);
            auto c = canon2(a);
            auto used = colour_set(a).size();
            bool ok = efo::testing::is_subword(c, a) && equiv(a, c, 2) && canon2(c) == c && is_optimal2(c) &&
                      c.size() <= optimal_length_bound2(used);
            if (!ok) return Outcome{false, "fails on " + print(a, Palette::standard(3))};
        }
        return Outcome{true, "10000 strings"};
    });

    criterion("2-optimal iff no repeated 1-character, 2 colours, length <= 8", 0, [] {
        auto strings = all_strings(2, 8);
        std::map<NType, std::size_t> shortest;
        for (const auto& s : strings) {
            auto t = ntype(s, 2);
            auto it = shortest.find(t);
            if (it == shortest.end() || s.size() < it->second) shortest[t] = s.size();
        }
        std::size_t optimal = 0;
        for (const auto& s : strings) {
            bool is_shortest = shortest.at(ntype(s, 2)) == s.size();
            if (is_shortest != is_optimal2(s)) return Outcome{false, "fails on " + print(s, Palette::standard(2))};
            optimal += is_shortest;
        }
        return Outcome{true, std::to_string(strings.size()) + " strings, " + std::to_string(optimal) + " optimal"};
    });

    criterion("length-70 string: distinct 2-characters, split 19/32/19, a18..a21 = a50..a53", 1, [&] {
        auto a = parse(fixtures::len70(), rb);
        auto report = verify_distinct_characters(a, 2);
        auto split = lmr_split3(a);
        bool windows = a.slice(17, 21) == a.slice(49, 53);
        bool ok = a.size() == 70 && report.all_distinct && report.distinct == 70 && split.convex &&
                  split.left == 19 && split.middle == 32 && split.right == 19 && windows;
        return Outcome{ok, std::to_string(report.distinct) + " distinct, split " + std::to_string(split.left) + "/" +
                               std::to_string(split.middle) + "/" + std::to_string(split.right)};
    });

    criterion("de Bruijn: debruijn(2,5) has 32 distinct cyclic windows; the length-70 middle passes", 0, [&] {
        auto d = debruijn(2, 5);
        auto text = glyphs(d, rb);
        bool ok = d.size() == 32 && cyclic_windows(text, 5).size() == 32 && all_cyclic_windows_distinct(d, 5);
        bool middle = cyclic_windows(fixtures::kMiddle70, 5).size() == 32 &&
                      all_cyclic_windows_distinct(parse(fixtures::kMiddle70, rb), 5);
        auto d22 = glyphs(debruijn(2, 2), rb);
        bool small = d22.size() == 4 && cyclic_windows(d22, 2) == std::set<std::string>{"rr", "rb", "bb", "br"};
        // A corrupted middle must be rejected.
        auto broken = std::string(fixtures::kMiddle70);
        broken[0] = 'b';
        bool rejects = !all_cyclic_windows_distinct(parse(broken, rb), 5);
        return Outcome{ok && middle && small && rejects, text};
    });

    criterion("palindrome-15: no shorter 3-equivalent string (all lengths <= 14)", 60, [&] {
        auto a = parse(fixtures::kPalindrome15, rb);
        bool ok = reverse(a) == a && verify_optimal3_bruteforce(a);
        return Outcome{ok, "checked " + std::to_string((std::size_t{1} << 15) - 1) + " candidates"};
    });

    criterion("74-certificate: 16 vertices, 28 edges, min covering walk 36, 19 + 36 + 19 = 74", 5, [&] {
        auto cert = verify74(parse(fixtures::len74(), rb));
        std::string detail;
        for (const auto& c : cert.checks) detail += (c.passed ? "+" : "-") + c.detail + "; ";
        return Outcome{cert.passed() && cert.checks.size() == 5 && cert.walk_bound == 36, detail};
    });

    criterion("min covering walk = breadth-first oracle on 200 random digraphs (|E| <= 14)", 0, [] {
        std::mt19937 rng(7);
        std::size_t feasible_count = 0;
        for (int i = 0; i < 200; ++i) {
            auto p = efo::testing::random_walk_problem(rng, 6, 14);
            auto w = min_covering_walk(p);
            auto oracle = efo::testing::covering_walk_bfs(p);
            bool agree = oracle ? (w.feasible && w.length == *oracle && efo::testing::valid_covering_walk(p, w))
                                : !w.feasible;
            if (!agree) return Outcome{false, "disagree on problem " + std::to_string(i)};
            feasible_count += w.feasible;
        }
        return Outcome{true, std::to_string(feasible_count) + " of 200 feasible"};
    });

    criterion("strategy soundness: engine beats every line, 2 colours, length <= 4, n <= 2", 0, [] {
        auto strings = all_strings(2, 4);
        std::size_t games = 0;
        for (const auto& a : strings)
            for (const auto& b : strings)
                for (unsigned n = 0; n <= 2; ++n, ++games) {
                    auto winner = game_oracle(a, b, n);
                    if (!efo::testing::engine_defeats_all(GameState(a, b, n), winner))
                        return Outcome{false, "engine loses " + print(a, Palette::standard(2)) + " / " +
                                                  print(b, Palette::standard(2)) + " n=" + std::to_string(n)};
                }
        return Outcome{true, std::to_string(games) + " games"};
    });

    std::printf("%s: %d failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
