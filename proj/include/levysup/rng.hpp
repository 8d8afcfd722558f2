#pragma once

#include <array>
#include <cstdint>

namespace levysup {

// Philox4x32-10 block cipher. Counter-based: every 128-bit counter maps to
// four independent 32-bit words under a 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

enum class StreamKind : std::uint32_t { path = 0, term = 1 };

// One independent random stream per (master_seed, kind, path index).
// Identical construction always reproduces the identical draw sequence,
// regardless of how many other streams run concurrently.
class PathStream {
  public:
    PathStream(std::uint64_t master_seed, std::uint64_t path_index,
               StreamKind kind = StreamKind::path);

    double uniform();        // in (0,1), both ends excluded
    double normal();         // N(0,1) by inverse transform
    double exponential();    // Exp(1)
    long poisson(double mean);
    double gamma(double shape, double scale);

  private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> stream_; // upper 64 bits of the counter
    std::uint64_t draw_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int avail_ = 0;

    std::uint32_t next_word();
};

} // namespace levysup
