#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include <efo/ntype.hpp>
#include <efo/two_equiv.hpp>

#include "support.hpp"

using namespace efo;
using efo::testing::all_strings;
using efo::testing::rbg;
using efo::testing::s;

namespace {

std::string pattern_of(const char* text) { return pattern_string(tconfig_of(s(text)).pattern); }

ColouredOrder random_string(std::mt19937& rng, int max_colours, int max_len) {
    std::uniform_int_distribution<int> colours(1, max_colours), len(0, max_len);
    std::uniform_int_distribution<int> colour(0, colours(rng) - 1);
    std::vector<Colour> e(static_cast<std::size_t>(len(rng)));
    for (auto& c : e) c = Colour{static_cast<std::uint8_t>(colour(rng))};
    return ColouredOrder(e);
}

}  // namespace

TEST_CASE("T-configurations of small strings", "[two]") {
    CHECK(pattern_of("rbrb") == "x1<x2<y2<y1");
    CHECK(glyphs(ColouredOrder(tconfig_of(s("rbrb")).colours), rbg) == "rbrb");
    CHECK(pattern_of("rbb") == "x1=y2<x2<y1");
    CHECK(glyphs(ColouredOrder(tconfig_of(s("rbb")).colours), rbg) == "rbb");
    CHECK(pattern_of("r") == "x1=y1");
    CHECK(tconfig_of(ColouredOrder{}).pattern.empty());

    // The six m = 2 configurations and one singleton class of each.
    CHECK(pattern_of("rbr") == "x1<x2=y2<y1");
    CHECK(pattern_of("rrbb") == "x1<y2<x2<y1");
    CHECK(pattern_of("rrb") == "x1<y2<x2=y1");
    CHECK(pattern_of("rb") == "x1=y2<x2=y1");
}

TEST_CASE("pattern enumeration and feasibility", "[two]") {
    CHECK(all_patterns(1).size() == 2);
    CHECK(all_patterns(2).size() == 6);
    for (const auto& p : all_patterns(2)) CHECK(feasible(p));
    for (const auto& p : all_patterns(1)) CHECK(feasible(p));

    auto three = all_patterns(3);
    CHECK(three.size() == 26);
    std::size_t ok = 0;
    for (const auto& p : three) {
        if (feasible(p)) {
            ++ok;
            continue;
        }
        // Every infeasible one has the shape x1 <= y3 < y2 < x2 < x3 <= y1.
        std::vector<std::string> tokens;
        auto str = pattern_string(p);
        CHECK(str.find("y2<x2<x3") != std::string::npos);
        CHECK(str.find("y3<y2") != std::string::npos);
    }
    CHECK(ok == 22);

    TPattern bad{{1, 3}, {0, 2}, {2, 0}, {3, 1}};  // x1=y3 < y2 < x2 < x3=y1
    CHECK_FALSE(feasible(bad));
    CHECK(feasibility_violation(bad) == std::pair{2u, 2u});
}

TEST_CASE("realize", "[two]") {
    CHECK(realize(TPattern{{1, 0}, {0, 1}}) == s("rr"));
    CHECK(realize(tconfig_of(s("rrbb")).pattern) == s("rrbb"));

    TPattern bad{{1, 3}, {0, 2}, {2, 0}, {3, 1}};
    try {
        realize(bad);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.i() == 2);
        CHECK(e.j() == 2);
    }

    for (std::size_t m = 1; m <= 4; ++m)
        for (const auto& p : all_patterns(m)) {
            if (!feasible(p)) continue;
            auto o = realize(p);
            INFO(pattern_string(p));
            REQUIRE(o.size() == p.size());
            REQUIRE(tconfig_of(o).pattern == p);
        }
}

TEST_CASE("descriptors", "[two]") {
    CHECK(descriptor(s("rrbrbrbb")) == descriptor(s("rrbbrrbb")));
    auto d = descriptor(s("rbrb"));
    CHECK(d.gaps.size() == 3);
    CHECK(is_finite_class(d));
    CHECK(descriptor(s("rrrr")) == descriptor(s("rrr")));
    CHECK(pattern_string(descriptor(s("rrr")).config.pattern) == "x1<y1");
    CHECK(descriptor(s("rrr")).gaps == std::vector<ColourSet>{ColourSet{1}});

    CHECK(is_finite_class(descriptor(s("rb"))));
    CHECK_FALSE(is_finite_class(descriptor(s("rrr"))));
    CHECK(is_finite_class(descriptor(ColouredOrder{})));
}

TEST_CASE("descriptor equality is 2-equivalence", "[two][property]") {
    auto strings = all_strings(2, 8);
    std::map<NType, ClassDescriptor2> by_type;
    std::map<ClassDescriptor2, NType> by_desc;
    for (const auto& a : strings) {
        auto t = ntype(a, 2);
        auto d = descriptor(a);
        auto [it, fresh] = by_type.emplace(t, d);
        REQUIRE(it->second == d);
        auto [jt, fresh2] = by_desc.emplace(d, t);
        REQUIRE(jt->second == t);
    }
    std::mt19937 rng(99);
    std::vector<ColouredOrder> sample;
    for (int i = 0; i < 2000; ++i) sample.push_back(random_string(rng, 3, 20));
    std::map<ClassDescriptor2, NType> seen;
    for (const auto& a : sample) {
        auto [it, fresh] = seen.emplace(descriptor(a), ntype(a, 2));
        REQUIRE(it->second == ntype(a, 2));
    }
}

TEST_CASE("descriptor invariants", "[two][property]") {
    std::mt19937 rng(17);
    for (int i = 0; i < 3000; ++i) {
        auto a = random_string(rng, 4, 25);
        auto d = descriptor(a);
        REQUIRE(feasible(d.config.pattern));
        REQUIRE(gaps_legal(d));
        REQUIRE(d.gaps.size() + 1 == std::max<std::size_t>(d.config.pattern.size(), 1));
    }
}

TEST_CASE("canon2", "[two]") {
    CHECK(canon2(s("rrrr")) == s("rrr"));
    CHECK(canon2(s("rrbrbrbb")) == s("rrbrbrbb"));
    CHECK(canon2(s("rbrb")) == s("rbrb"));
    CHECK(canon2(s("rrrrrrbbbbbbrb")) == s("rrbbrb"));
    CHECK(canon2(ColouredOrder{}).empty());

    std::mt19937 rng(41);
    for (int i = 0; i < 2000; ++i) {
        auto a = random_string(rng, 3, 40);
        auto c = canon2(a);
        auto m = colour_set(a).size();
        REQUIRE(efo::testing::is_subword(c, a));
        REQUIRE(equiv(a, c, 2));
        REQUIRE(canon2(c) == c);
        REQUIRE(c.size() <= m * m + 2 * m);
        REQUIRE(is_optimal2(c));
    }
}

TEST_CASE("2-optimality", "[two]") {
    CHECK(is_optimal2(s("rbrb")));
    CHECK_FALSE(is_optimal2(s("rrrr")));
    CHECK(is_optimal2(ColouredOrder{}));

    // Shortest length per class among strings up to the bound 8.
    auto strings = all_strings(2, 8);
    std::map<NType, std::size_t> shortest;
    for (const auto& a : strings) shortest.emplace(ntype(a, 2), a.size());
    for (const auto& a : strings) {
        bool optimal = shortest.at(ntype(a, 2)) == a.size();
        REQUIRE(is_optimal2(a) == optimal);
        REQUIRE(is_optimal2(a) == (canon2(a).size() == a.size()));
    }
}

TEST_CASE("two-move L/M/R split", "[two]") {
    auto a = s("rrbb");
    auto split = lmr_split2(a);
    CHECK(split.left.lo() == 0);
    CHECK(split.left.hi() == 2);
    CHECK(split.middle.empty());
    CHECK(split.right.lo() == 2);
    CHECK(split.right.hi() == 4);
    CHECK_FALSE(split.overlap);

    auto b = s("rbbr");
    auto sb = lmr_split2(b);
    CHECK(sb.left.size() == 1);
    CHECK(sb.middle.lo() == 1);
    CHECK(sb.middle.size() == 2);
    CHECK(sb.right.lo() == 3);

    auto c = s("rrr");
    auto sc = lmr_split2(c);
    CHECK(sc.left.empty());
    CHECK(sc.middle.size() == 3);
    CHECK(sc.right.empty());

    auto d = s("rbg");  // L = {1,2} and R = {2,3} overlap
    auto sd = lmr_split2(d);
    CHECK(sd.overlap);
    CHECK(sd.left.size() == 2);
    CHECK(sd.right.size() == 2);
    CHECK(sd.middle.empty());
}
