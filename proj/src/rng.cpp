#include "levysup/rng.hpp"
#include "levysup/errors.hpp"
#include "levysup/math.hpp"

#include <cmath>

namespace levysup {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c,
                         const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

PathStream::PathStream(std::uint64_t master_seed, std::uint64_t path_index,
                       StreamKind kind) {
    key_ = {static_cast<std::uint32_t>(master_seed),
            static_cast<std::uint32_t>(master_seed >> 32)};
    // kind folded into the stream half of the counter so path/term streams
    // with the same index never collide
    const std::uint64_t stream =
        path_index ^ (static_cast<std::uint64_t>(kind) << 62);
    stream_ = {static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32)};
}

std::uint32_t PathStream::next_word() {
    if (avail_ == 0) {
        block_ = philox4x32({static_cast<std::uint32_t>(draw_),
                             static_cast<std::uint32_t>(draw_ >> 32), stream_[0],
                             stream_[1]},
                            key_);
        ++draw_;
        avail_ = 4;
    }
    return block_[4 - avail_--];
}

double PathStream::uniform() {
    const std::uint64_t hi = next_word();
    const std::uint64_t lo = next_word();
    const std::uint64_t bits = (hi << 32) | lo;
    // 52 significant bits centered in each cell: strictly inside (0,1)
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

double PathStream::normal() {
    return inv_norm_cdf(uniform());
}

double PathStream::exponential() {
    return -std::log(uniform());
}

long PathStream::poisson(double mean) {
    if (mean < 0.0) throw DomainError("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    // inversion by uniform products; fine for the moderate rates in the catalog
    const double limit = std::exp(-mean);
    long k = 0;
    double prod = uniform();
    while (prod > limit) {
        prod *= uniform();
        ++k;
    }
    return k;
}

double PathStream::gamma(double shape, double scale) {
    if (!(shape > 0.0 && scale > 0.0))
        throw DomainError("gamma: shape and scale must be > 0");
    // Marsaglia-Tsang; shape < 1 boosted via Gamma(shape+1) * U^{1/shape}
    double boost = 1.0;
    double a = shape;
    if (a < 1.0) {
        boost = std::pow(uniform(), 1.0 / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return boost * d * v * scale;
    }
}

} // namespace levysup
