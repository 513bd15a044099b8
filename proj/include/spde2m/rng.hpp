#pragma once

#include <array>
#include <cstdint>

namespace spde2m {

/// Philox 4x32-10 counter-based generator (Salmon et al., SC'11).
/// (key, stream) select a statistically independent sequence, so path i
/// draws from stream i of the master seed with no coordination: the same
/// (seed, stream) pair always reproduces the same block sequence.
class Philox4x32 {
  public:
    Philox4x32(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next32();
    std::uint64_t next64();

  private:
    void refill();

    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> block_{};
    int cursor_ = 4;  // empty
};

/// Standard normal variates over a Philox stream via Box-Muller (no
/// rejection, so consumption is a fixed two-uniforms-per-pair pattern).
class NormalStream {
  public:
    NormalStream(std::uint64_t seed, std::uint64_t stream) : gen_(seed, stream) {}

    /// Uniform in the open interval (0,1).
    double uniform();
    double next();

  private:
    Philox4x32 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace spde2m
