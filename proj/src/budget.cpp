#include "weyl/budget.hpp"

#include <cstdlib>
#include <string>

#include "weyl/error.hpp"

namespace weyl {

Budget Budget::from_env() {
    Budget b;
    if (const char* env = std::getenv("WEYL_LAB_BUDGET")) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument("trailing");
            b.kernel_pairs = v;
        } catch (const std::exception&) {
            throw ValidationError("WEYL_LAB_BUDGET must be a non-negative integer");
        }
    }
    return b;
}

void charge(std::uint64_t amount, std::uint64_t limit, const char* what) {
    if (amount > limit)
        throw BudgetError(std::string(what) + ": needs " + std::to_string(amount) +
                          ", budget " + std::to_string(limit));
}

}  // namespace weyl
