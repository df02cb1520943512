#pragma once

#include <cstdint>

namespace onecircuit {

/// Counter-based random stream built on the splitmix64 output function.
///
/// A stream is keyed by (seed, stream id); draws are a pure function of the
/// key and an internal counter, so any (seed, stream) pair can be opened
/// independently on any worker and produces the same sequence. Shot i of a
/// sampling run uses stream id i, which makes results independent of
/// execution order.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream + 0xd1b54a32d192ed03ull))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection-free modulo is fine here: n is tiny compared to 2^64,
        // the bias is below 2^-50 for n < 2^14.
        return next_u64() % n;
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Derives a child seed for an independent sub-run (e.g. one per input or
/// per shifted-parameter setting) from a root seed and up to two tags.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b = 0) {
    std::uint64_t h = RngStream::mix(seed + 0x9e3779b97f4a7c15ull);
    h = RngStream::mix(h ^ RngStream::mix(tag_a + 0xbf58476d1ce4e5b9ull));
    h = RngStream::mix(h ^ RngStream::mix(tag_b + 0x94d049bb133111ebull));
    return h;
}

}  // namespace onecircuit
