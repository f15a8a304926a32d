#pragma once

#include <cstdint>
#include <random>

namespace seiscontrol {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives the generator for one (run, window) pair of a master seed.
///
/// Stream derivation: the three 64-bit words are each passed through mix64
/// after being xored with distinct odd constants, and the six resulting 32-bit
/// halves seed a std::seed_seq. A window's stream therefore depends only on
/// (master_seed, run, window), so ensemble members and windows can be drawn
/// in any order and still reproduce bit-for-bit.
Rng make_stream(std::uint64_t master_seed, std::uint64_t run, std::uint64_t window);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

}  // namespace seiscontrol
