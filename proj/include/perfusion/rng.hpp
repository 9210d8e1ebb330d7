#pragma once

#include <cstdint>

namespace perfusion {

// Top-level stream ids, one per independent consumer of randomness, so the
// same base seed never feeds correlated draws into different pipeline stages.
inline constexpr std::uint64_t kPhantomNoiseDomain = 1;
inline constexpr std::uint64_t kAssimilationDomain = 2;
inline constexpr std::uint64_t kStudyDomain = 3;

// Counter-seeded xoshiro256++ stream with Box-Muller normal draws.
//
// A stream is fully determined by (base_seed, stream_id), so independent
// voxels and ensemble members can each own a stream and produce identical
// sequences regardless of scheduling or thread count. State is 4 words plus
// the Box-Muller spare, small enough to hold one stream per member.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t base_seed, std::uint64_t stream_id);

    std::uint64_t base_seed() const { return base_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Derived stream: substream(k) of (seed, id) equals RngStream(seed, mix(id, k)).
    RngStream substream(std::uint64_t key) const;

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01();

    // Standard normal via Box-Muller; every second call is served from the
    // cached spare, so draw parity is part of the stream's state.
    double normal();

private:
    std::uint64_t state_[4];
    std::uint64_t base_seed_;
    std::uint64_t stream_id_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace perfusion
