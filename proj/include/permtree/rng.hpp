#pragma once

// Counter-based random substreams.
//
// Philox4x32-10 maps a 128-bit counter and a 64-bit key
// to 128 random bits with no state. A Substream fixes the key to the master
// seed and the upper counter words to (stream tag, sample index), and walks
// the lowest word. Every (seed, tag, index) triple is an independent stream,
// so samples can be drawn in any order on any number of workers.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace permtree {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

inline Philox4x32Counter philox4x32_10(Philox4x32Counter ctr, Philox4x32Key key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

/// Purpose tags; distinct tags give disjoint streams under one master seed.
enum class StreamTag : std::uint32_t {
    tree = 1,
    geometric = 2,
    normal = 3,
    cli_sample = 4,
};

class Substream {
public:
    using result_type = std::uint64_t;

    Substream(std::uint64_t seed, StreamTag tag, std::uint64_t index)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          tag_(static_cast<std::uint32_t>(tag)),
          index_(index) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (used_ == 2) refill();
        const auto w = used_++ * 2;
        return (std::uint64_t{buffer_[w + 1]} << 32) | buffer_[w];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_zero() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal by Box-Muller; pairs are cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open_zero()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t blocks_used() const { return block_; }

private:
    void refill() {
        buffer_ = philox4x32_10({block_, tag_, static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32)}, key_);
        ++block_;
        used_ = 0;
    }

    Philox4x32Key key_;
    std::uint32_t tag_;
    std::uint64_t index_;
    std::uint32_t block_ = 0;
    unsigned used_ = 2;
    Philox4x32Counter buffer_{};
    double spare_ = 0;
    bool has_spare_ = false;
};

}  // namespace permtree
