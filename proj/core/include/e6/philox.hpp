#ifndef E6_PHILOX_HPP
#define E6_PHILOX_HPP

#include <array>
#include <cstdint>

namespace e6 {

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3").
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

/*
 * Deterministic stream keyed by (seed, stream id): the seed is the key, the
 * stream id fills the upper counter words and the block index the lower
 * ones.  Distinct streams never share a counter value.
 */
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1), 53 random bits.
    double uniform();
    /// Standard exponential.
    double exponential();

  private:
    PhiloxKey key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    PhiloxCounter buf_{};
    int pos_ = 4;
};

} // namespace e6

#endif
