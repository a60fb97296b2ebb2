// Deterministic per-worker random streams. All distribution algorithms are
// implemented here (not delegated to std:: distributions) so that a given
// (master_seed, stream_index) pair produces the same draws on any platform.
#pragma once

#include <cstdint>
#include <random>

namespace hetnet {

class RngStream {
  public:
    RngStream(uint64_t master_seed, uint64_t stream_index);

    uint64_t next_u64() { return eng_(); }

    // uniform on [0,1), 53-bit resolution
    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

    // uniform on (0,1]; safe as a log() argument
    double uniform_pos() { return ((eng_() >> 11) + 1.0) * 0x1.0p-53; }

    double exponential() { return -std::log(uniform_pos()); }

    double normal();

    // Marsaglia-Tsang for shape >= 1, boosted for shape < 1.
    double gamma(double shape, double scale);

    // Inversion for small means, Hormann's PTRS transformed rejection above.
    uint64_t poisson(double mean);

  private:
    std::mt19937_64 eng_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace hetnet
