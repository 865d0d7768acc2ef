#pragma once

#include "shortspec/hiprec.hpp"

#include <cstdint>

namespace shortspec {

// SplitMix64 (Steele, Lea, Flood). Streams derived with split() are
// independent of the parent's position, so per-sample or per-trial
// substreams can be drawn in any order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    SplitMix64 split(std::uint64_t stream) const noexcept {
        return SplitMix64(mix(state_ ^ mix(stream + 0x632be59bd9b4e019ULL)));
    }

    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Uniform variate in [0, 1) carrying every bit of ctx precision.
Real uniform01(SplitMix64& gen, const PrecisionContext& ctx);

// Uniform variate in the open interval (lo, hi); resamples the endpoints away.
Real uniform_open(SplitMix64& gen, const Real& lo, const Real& hi);

}  // namespace shortspec
