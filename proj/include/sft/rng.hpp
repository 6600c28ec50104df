#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sft::rng {

// All randomness in the library flows through std::mt19937_64 plus the
// mappings below. The engine's output sequence is fixed by the C++ standard;
// the distribution classes are not, so they are hand rolled here to keep
// results bit-identical across standard library implementations.

// Uniform double in [0, 1), 53 random bits.
inline double unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform double in [-1, 1).
inline double symmetric_unit(std::mt19937_64& gen) {
    return 2.0 * unit(gen) - 1.0;
}

// Uniform integer in [0, n). Plain modulo: the bias for the n used here
// (n << 2^64) is far below anything observable, and the result is portable.
inline std::uint64_t below(std::mt19937_64& gen, std::uint64_t n) {
    return gen() % n;
}

// Fisher-Yates shuffle driven by below(); std::shuffle is unspecified about
// how it consumes the engine.
template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& gen) {
    if (items.size() < 2) {
        return;
    }
    for (std::size_t i = items.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(below(gen, i + 1));
        std::swap(items[i], items[j]);
    }
}

// Strictly positive probability vector of length n: exponential weights
// normalized to sum one.
std::vector<double> simplex_point(std::mt19937_64& gen, std::size_t n);

} // namespace sft::rng
