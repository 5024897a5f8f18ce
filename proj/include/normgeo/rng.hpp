#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace normgeo {

/// Seed of the named sub-stream `name` of the run seed `seed`.
/// Streams are independent of each other, so adding a new task never
/// perturbs the numbers drawn by an existing one.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);

/// Deterministic random source; a pure function of its seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double gaussian() { return normal_(engine_); }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace normgeo
