// enumerate2.hpp -- exhaustive catalogue of 2-equivalence classes

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "budget.hpp"
#include "order.hpp"
#include "two_equiv.hpp"

namespace efo {

inline constexpr const char* kCatalogueGenerator = "efo-enumerate2/1";

/// Largest colour count the sweep supports.
inline constexpr std::size_t kMaxSweepColours = 3;

/// The level-2 type of a string over at most three colours, as a bitset over
/// all possible 1-characters (colour, left colour set, right colour set).
/// A level-1 type is literally the set of colours present, so this is the
/// level-2 NType in a flat encoding.
struct TwoTypeKey {
    std::array<std::uint64_t, 3> bits{};

    void set(Colour c, ColourSet left, ColourSet right) {
        auto index = c.id * 64u + static_cast<unsigned>(left.bits()) * 8u + static_cast<unsigned>(right.bits());
        bits[index / 64] |= std::uint64_t{1} << (index % 64);
    }

    friend bool operator==(const TwoTypeKey&, const TwoTypeKey&) = default;
};

struct TwoTypeKeyHash {
    std::size_t operator()(const TwoTypeKey& k) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (auto w : k.bits) {
            h ^= w;
            h *= 0x100000001b3ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

inline TwoTypeKey two_type_key(std::span<const Colour> s) {
    if (colour_set(s).bits() >= (1u << kMaxSweepColours))
        throw std::invalid_argument("two_type_key supports colour ids below 3");
    const std::size_t k = s.size();
    std::array<ColourSet, 64> suffix{};
    std::vector<ColourSet> suffix_big;
    ColourSet* right = suffix.data();
    if (k + 1 > suffix.size()) {
        suffix_big.resize(k + 1);
        right = suffix_big.data();
    }
    right[k] = ColourSet{};
    for (std::size_t p = k; p-- > 0;) {
        right[p] = right[p + 1];
        right[p].insert(s[p]);
    }
    TwoTypeKey key;
    ColourSet left;
    for (std::size_t p = 0; p < k; ++p) {
        key.set(s[p], left, right[p + 1]);
        left.insert(s[p]);
    }
    return key;
}

struct CatalogueRecord {
    ClassDescriptor2 descriptor;
    ColouredOrder representative;
    bool finite = false;
};

struct Catalogue {
    std::size_t m = 0;
    std::size_t budget = 0;
    std::vector<CatalogueRecord> records;  // shortlex by representative

    /// Number of classes whose representative uses exactly `colours` colours.
    std::size_t count_using(std::size_t colours) const {
        return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [&](const auto& r) {
            return colour_set(r.representative).size() == colours;
        }));
    }

    std::size_t max_length() const {
        std::size_t best = 0;
        for (const auto& r : records) best = std::max(best, r.representative.size());
        return best;
    }
};

/// Least length bound guaranteeing every class has a representative: m^2 + 2m.
constexpr std::size_t optimal_length_bound2(std::size_t m) { return m * m + 2 * m; }

/// Buckets every string of length <= budget over m colours by its level-2
/// type. One record per class; representative is the shortlex-least member.
inline Catalogue enumerate2(std::size_t m, std::size_t budget) {
    if (m == 0 || m > kMaxSweepColours)
        throw std::invalid_argument("enumerate2 supports 1 to " + std::to_string(kMaxSweepColours) +
                                    " colours");
    if (budget < optimal_length_bound2(m))
        throw std::invalid_argument("budget " + std::to_string(budget) + " is below m^2+2m = " +
                                    std::to_string(optimal_length_bound2(m)) +
                                    "; the catalogue would be incomplete");
    std::uint64_t work = 0;
    const auto cap = search_budget();
    for (std::size_t len = 0; len <= budget && work <= cap; ++len)
        work += capped_power(m, len, cap);
    require_budget(work, "enumerate2");

    std::unordered_map<TwoTypeKey, ColouredOrder, TwoTypeKeyHash> classes;
    std::vector<Colour> s;
    for (std::size_t len = 0; len <= budget; ++len) {
        s.assign(len, Colour{0});
        for (;;) {
            auto key = two_type_key(s);
            if (auto it = classes.find(key); it == classes.end()) classes.emplace(key, ColouredOrder(s));
            // Odometer step in lexicographic order.
            std::size_t p = len;
            while (p > 0 && s[p - 1].id + 1u == m) s[--p] = Colour{0};
            if (p == 0) break;
            s[p - 1].id++;
        }
    }

    Catalogue cat;
    cat.m = m;
    cat.budget = budget;
    cat.records.reserve(classes.size());
    for (auto& [key, rep] : classes) {
        auto d = descriptor(rep);
        bool finite = is_finite_class(d);
        cat.records.push_back(CatalogueRecord{std::move(d), rep, finite});
    }
    std::sort(cat.records.begin(), cat.records.end(), [](const auto& x, const auto& y) {
        return shortlex_less(x.representative, y.representative);
    });
    return cat;
}

inline std::size_t max_optimal_length2(std::size_t m) {
    return enumerate2(m, optimal_length_bound2(m)).max_length();
}

/// Classes with exactly m colours built directly from (T, g): every feasible
/// pattern, every colouring of its points that induces it, and every legal
/// choice of gap colour sets. Optionally restricted to one pattern.
inline std::vector<CatalogueRecord> direct_classes(std::size_t m,
                                                   const std::optional<TPattern>& only = std::nullopt) {
    std::vector<CatalogueRecord> out;
    for (const auto& pattern : all_patterns(m)) {
        if (!feasible(pattern) || (only && pattern != *only)) continue;
        const auto npts = pattern.size();
        std::vector<Colour> colouring(npts, Colour{0});
        for (;;) {
            ColouredOrder bare(colouring);
            auto config = tconfig_of(bare);
            if (config.m == m && config.pattern == pattern) {
                auto legal = legal_gap_colours(config);
                // Enumerate every choice of subsets, one per gap.
                std::vector<std::uint64_t> choice(legal.size(), 0);
                for (;;) {
                    ClassDescriptor2 d{config, {}};
                    std::vector<Colour> rep;
                    for (std::size_t t = 0; t < npts; ++t) {
                        rep.push_back(config.colours[t]);
                        if (t < legal.size()) {
                            d.gaps.push_back(ColourSet{choice[t]});
                            for (auto c : ColourSet{choice[t]}.members()) rep.push_back(c);
                        }
                    }
                    out.push_back(CatalogueRecord{d, ColouredOrder(std::move(rep)), is_finite_class(d)});
                    // Next subset combination (submask enumeration per gap).
                    std::size_t g = 0;
                    for (; g < legal.size(); ++g) {
                        auto full = legal[g].bits();
                        choice[g] = (choice[g] - full) & full;
                        if (choice[g] != 0) break;
                    }
                    if (g == legal.size()) break;
                }
            }
            std::size_t p = npts;
            while (p > 0 && colouring[p - 1].id + 1u == m) colouring[--p] = Colour{0};
            if (p == 0) break;
            colouring[p - 1].id++;
        }
    }
    return out;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string palette_label(const Palette& palette) {
    if (palette.numeric()) return "numeric:" + std::to_string(palette.size());
    std::string out;
    for (std::uint8_t id = 0; id < palette.size(); ++id) out += palette.glyph(Colour{id});
    return out;
}

}  // namespace detail

inline void write_catalogue_csv(std::ostream& os, const Catalogue& cat, const Palette& palette) {
    os << "# palette=" << detail::palette_label(palette) << " n=2 budget=" << cat.budget
       << " generator=" << kCatalogueGenerator << " classes=" << cat.records.size() << "\n";
    os << "pattern,colouring,gaps,representative,length,finite\n";
    for (const auto& r : cat.records) {
        os << detail::csv_field(pattern_string(r.descriptor.config.pattern)) << ','
           << detail::csv_field(glyphs(ColouredOrder(r.descriptor.config.colours), palette)) << ','
           << detail::csv_field(gaps_string(r.descriptor.gaps, palette)) << ','
           << detail::csv_field(print(r.representative, palette)) << ',' << r.representative.size() << ','
           << (r.finite ? "true" : "false") << "\n";
    }
}

inline nlohmann::ordered_json catalogue_json(const Catalogue& cat, const Palette& palette) {
    nlohmann::ordered_json j;
    j["palette"] = detail::palette_label(palette);
    j["n"] = 2;
    j["budget"] = cat.budget;
    j["generator"] = kCatalogueGenerator;
    j["classes"] = cat.records.size();
    auto records = nlohmann::ordered_json::array();
    for (const auto& r : cat.records) {
        nlohmann::ordered_json rec;
        rec["pattern"] = pattern_string(r.descriptor.config.pattern);
        rec["colouring"] = glyphs(ColouredOrder(r.descriptor.config.colours), palette);
        auto gaps = nlohmann::ordered_json::array();
        for (auto g : r.descriptor.gaps) gaps.push_back(glyphs(ColouredOrder(g.members()), palette));
        rec["gaps"] = std::move(gaps);
        rec["representative"] = print(r.representative, palette);
        rec["length"] = r.representative.size();
        rec["finite"] = r.finite;
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    return j;
}

}  // namespace efo
