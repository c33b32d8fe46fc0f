#include "rslab/rng.hpp"

namespace rslab {
namespace {

// splitmix64 finalizer; full-avalanche mixer used as the core hash
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomStream::value_at(std::uint64_t counter) const {
    // two chained finalizer rounds decorrelate nearby (seed, stream, counter)
    // triples; one round leaves visible structure between adjacent streams
    std::uint64_t key = mix64(seed_ ^ 0x6a09e667f3bcc909ULL);
    key = mix64(key ^ stream_);
    return mix64(mix64(key + counter));
}

RandomStream RandomStream::substream(std::uint64_t id) const {
    std::uint64_t child = mix64(stream_ ^ mix64(id ^ 0xbb67ae8584caa73bULL));
    return RandomStream(seed_, child);
}

}  // namespace rslab
