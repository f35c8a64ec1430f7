#pragma once

#include <cstdint>
#include <random>

#include "aqse/qubit_model.hpp"

namespace aqse {

/// Which detector clicked for one photon. Implementations either sample the
/// outcome distribution (simulation) or feed back a recorded trace (replay).
class OutcomeSource {
  public:
    virtual ~OutcomeSource() = default;

    /// Produce an outcome in {1,2} for a photon prepared at theta_true and
    /// measured at setting. Replay implementations ignore theta_true.
    virtual int draw(AngleRad theta_true, AngleRad setting) = 0;
};

/// Derives the per-trial seed from the ensemble master seed.
///
/// trial_seed = splitmix64_finalizer(master_seed + GOLDEN64 * (trial + 1))
/// with GOLDEN64 = 0x9E3779B97F4A7C15. This mixing is part of the trace
/// format contract: changing it changes every recorded ensemble, so treat
/// it as frozen.
std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t trial_index);

/// Uniform double in [0,1) from the top 53 bits of one generator step.
/// Used instead of std::uniform_real_distribution, whose output is not
/// pinned by the standard and may differ between library implementations.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One Bernoulli realization of the outcome density: returns 1 with
/// probability p(1; theta_true, setting), else 2. Advances the generator
/// by exactly one step.
int simulated_draw(AngleRad theta_true, AngleRad setting, std::mt19937_64& rng);

/// Ideal stochastic stand-in for the photon apparatus. No detector
/// imperfections are modeled; outcomes follow the Born probabilities
/// exactly (up to generator quality).
class SimulatedSource final : public OutcomeSource {
  public:
    explicit SimulatedSource(std::uint64_t seed) : rng_(seed) {}

    int draw(AngleRad theta_true, AngleRad setting) override {
        return simulated_draw(theta_true, setting, rng_);
    }

    /// The trial's generator; the harness also draws the random initial
    /// guess from this same stream.
    std::mt19937_64& rng() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace aqse
