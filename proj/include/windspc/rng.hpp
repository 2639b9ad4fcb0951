#pragma once

#include <cstdint>
#include <random>
#include <vector>
#include <string_view>

namespace windspc::rng {

// Deterministic random source for the simulator.
//
// Engine: std::mt19937_64, whose output sequence is pinned down by the C++
// standard, so identical seeds give identical streams on every platform.
// Distribution sampling is implemented here rather than with <random>
// distributions because those are implementation-defined.
//
// Stream splitting: each simulated variable draws from its own Rng seeded
// with splitmix64(master_seed ^ fnv1a(stream_name)). Serialized datasets are
// therefore reproducible from (seed, config) alone, and adding a variable
// does not disturb the streams of the others.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t stream_seed(std::uint64_t master_seed, std::string_view stream);

    static Rng for_stream(std::uint64_t master_seed, std::string_view stream) {
        return Rng(stream_seed(master_seed, stream));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on (0, 1]: top 53 bits mapped to (0,1], never exactly 0 so it
    // is safe inside log().
    double uniform01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller with the spare value cached; two uniforms per pair of
    // normals, fixed evaluation order.
    double normal(double mean = 0.0, double stddev = 1.0);

    // Index in [0, weights.size()) proportional to the given nonnegative
    // weights.
    std::size_t categorical(const std::vector<double>& weights);

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace windspc::rng
