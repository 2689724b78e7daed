// budget.hpp -- guards for exponential searches

#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace efo {

/// Thrown when an exhaustive search would exceed its work budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default ceiling on search work units; EFO_BUDGET overrides it.
inline constexpr std::uint64_t kDefaultSearchBudget = 50'000'000;

inline std::uint64_t search_budget() {
    if (const char* env = std::getenv("EFO_BUDGET")) {
        char* end = nullptr;
        auto value = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) return value;
    }
    return kDefaultSearchBudget;
}

/// Saturating a^b, capped just above `cap`.
inline std::uint64_t capped_power(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

inline void require_budget(std::uint64_t work, const std::string& what) {
    auto limit = search_budget();
    if (work > limit)
        throw BudgetError(what + ": estimated work " + std::to_string(work) +
                          " exceeds search budget " + std::to_string(limit) +
                          " (set EFO_BUDGET to raise it)");
}

}  // namespace efo
