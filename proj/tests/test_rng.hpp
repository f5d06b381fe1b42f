// Deterministic RNG for property-style tests.
#pragma once

#include <cstdint>

class TestRng {
public:
    explicit TestRng(uint64_t seed) : state_(seed * 2862933555777941757ULL + 3037000493ULL) {}

    uint64_t next() {
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        return state_;
    }

    // Uniform in [lo, hi], inclusive.
    int uniform(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    uint64_t state_;
};
