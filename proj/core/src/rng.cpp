#include "seiscontrol/rng.hpp"

#include <array>

namespace seiscontrol {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t master_seed, std::uint64_t run, std::uint64_t window) {
    const std::uint64_t a = mix64(master_seed);
    const std::uint64_t b = mix64(run ^ 0xD1B54A32D192ED03ULL);
    const std::uint64_t c = mix64(window ^ 0x8CB92BA72F3D8DD7ULL);
    std::array<std::uint32_t, 6> words{
        static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
        static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
    };
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace seiscontrol
