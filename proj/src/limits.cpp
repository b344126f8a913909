#include "soclelab/limits.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "soclelab/errors.hpp"

namespace soclelab {

Limits Limits::from_environment() {
    Limits limits;
    if (const char* env = std::getenv("SOCLELAB_BUDGET"); env != nullptr && *env != '\0') {
        std::uint64_t value = 0;
        try {
            value = std::stoull(env);
        } catch (const std::exception&) {
            throw InputError(std::string("SOCLELAB_BUDGET is not an unsigned integer: ") + env);
        }
        limits = limits.with_budget(value);
    }
    return limits;
}

Limits Limits::with_budget(std::uint64_t budget) const {
    Limits out = *this;
    out.radical_elements = budget;
    out.combinations = budget;
    out.subspaces = budget;
    out.elements = budget;
    return out;
}

std::uint64_t checked_pow(std::uint64_t q, unsigned k) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (q != 0 && r > std::numeric_limits<std::uint64_t>::max() / q)
            return std::numeric_limits<std::uint64_t>::max();
        r *= q;
    }
    return r;
}

}  // namespace soclelab
