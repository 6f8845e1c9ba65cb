#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qsel {

using Rng = std::mt19937_64;

// Derives a named sub-stream seed from a root seed (FNV-1a over the name,
// mixed with the root). All project randomness funnels through these streams
// so that every component is reproducible in isolation.
inline std::uint64_t substream_seed(std::uint64_t root, std::string_view name) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : name) {
        h ^= c;
        h *= 1099511628211ull;
    }
    h ^= root + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    // splitmix64 finalizer
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebull;
    h ^= h >> 31;
    return h;
}

inline Rng substream(std::uint64_t root, std::string_view name) {
    return Rng(substream_seed(root, name));
}

}  // namespace qsel
