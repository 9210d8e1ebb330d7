#include "perfusion/rng.hpp"

#include <cmath>

namespace perfusion {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(x);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

RngStream::RngStream(std::uint64_t base_seed, std::uint64_t stream_id)
    : base_seed_(base_seed), stream_id_(stream_id) {
    std::uint64_t sm = mix64(base_seed, stream_id);
    for (auto& w : state_) {
        w = splitmix64(sm);
    }
    // splitmix64 never yields the all-zero state from any seed sequence of
    // length 4, so xoshiro's invalid state cannot occur here.
}

RngStream RngStream::substream(std::uint64_t key) const {
    return RngStream(base_seed_, mix64(stream_id_, key));
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    // log(1 - u1) stays finite because u1 < 1 exactly.
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

} // namespace perfusion
