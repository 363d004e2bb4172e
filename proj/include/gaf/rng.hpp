#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace gaf {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Philox4x32-10 keyed counter permutation (round constants from the Random123
// reference implementation). A pure function of (counter, key), which is what
// makes per-trial streams reproducible under any work partition.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> x,
                                              std::array<std::uint32_t, 2> k) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(kMul0) * x[0];
            const std::uint64_t p1 = std::uint64_t(kMul1) * x[2];
            x = {std::uint32_t(p1 >> 32) ^ x[1] ^ k[0], std::uint32_t(p1),
                 std::uint32_t(p0 >> 32) ^ x[3] ^ k[1], std::uint32_t(p0)};
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        return x;
    }
};

// One logical stream of randomness addressed by (seed, stream). Distinct
// stream ids never overlap; consuming values advances a 64-bit block counter.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
          stream_lo_(std::uint32_t(stream)),
          stream_hi_(std::uint32_t(stream >> 32)) {}

    std::uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const auto out = Philox4x32::block(
            {std::uint32_t(block_), std::uint32_t(block_ >> 32), stream_lo_, stream_hi_}, key_);
        ++block_;
        spare_ = (std::uint64_t(out[3]) << 32) | out[2];
        have_spare_ = true;
        return (std::uint64_t(out[1]) << 32) | out[0];
    }

    // Uniform on (0, 1]; never returns 0, so -log stays finite.
    double next_uniform() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Standard complex Gaussian normalized so that E|xi|^2 = 1; equivalently
    // |xi|^2 is a unit-mean exponential and the phase is uniform.
    std::complex<double> next_complex_gaussian() {
        const double mod = std::sqrt(-std::log(next_uniform()));
        const double angle = kTwoPi * next_uniform();
        return {mod * std::cos(angle), mod * std::sin(angle)};
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t block_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace gaf
