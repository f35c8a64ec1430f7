#include "aqse/outcome_source.hpp"

namespace aqse {

std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (trial_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

int simulated_draw(AngleRad theta_true, AngleRad setting, std::mt19937_64& rng) {
    const double p1 = outcome_probability(1, theta_true, setting);
    return uniform_unit(rng) < p1 ? 1 : 2;
}

}  // namespace aqse
