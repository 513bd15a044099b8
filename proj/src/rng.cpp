#include "spde2m/rng.hpp"

#include <cmath>

namespace spde2m {

namespace {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMultA = 0xD2511F53u;
constexpr std::uint32_t kMultB = 0xCD9E8D57u;

inline void round_once(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t product0 = static_cast<std::uint64_t>(kMultA) * x[0];
    const std::uint64_t product1 = static_cast<std::uint64_t>(kMultB) * x[2];
    const auto lo0 = static_cast<std::uint32_t>(product0);
    const auto hi0 = static_cast<std::uint32_t>(product0 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(product1);
    const auto hi1 = static_cast<std::uint32_t>(product1 >> 32);
    x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
    : counter_{0u, 0u, static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32)},
      key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

void Philox4x32::refill() {
    block_ = counter_;
    std::array<std::uint32_t, 2> key = key_;
    for (int r = 0; r < 10; ++r) {
        round_once(block_, key);
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    if (++counter_[0] == 0u) ++counter_[1];  // 64-bit block index within the stream
    cursor_ = 0;
}

std::uint32_t Philox4x32::next32() {
    if (cursor_ == 4) refill();
    return block_[static_cast<std::size_t>(cursor_++)];
}

std::uint64_t Philox4x32::next64() {
    const std::uint64_t lo = next32();
    const std::uint64_t hi = next32();
    return (hi << 32) | lo;
}

double NormalStream::uniform() {
    // (0,1): offset by half an ulp of the 53-bit lattice to avoid both ends.
    return (static_cast<double>(gen_.next64() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace spde2m
