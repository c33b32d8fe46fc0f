#pragma once

#include <cstdint>
#include <cstddef>

#include "rslab/common.hpp"

namespace rslab {

// Counter-based random stream. A draw is a pure function of
// (seed, stream, counter), so results never depend on call interleaving,
// thread count, or platform. Substreams derive a fresh stream id from the
// parent, which lets nested estimators hand out independent generators
// deterministically. Jumping to an absolute counter is O(1); parallel chunk
// workers use that to consume disjoint counter ranges of one stream.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream), counter_(0) {}

    // next value in [0, 1), 53-bit resolution
    double next_unit() { return to_unit(next_u64()); }

    std::uint64_t next_u64() { return value_at(counter_++); }

    void fill_unit(double* out, std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) out[i] = next_unit();
    }

    // derived stream: same seed, child id folded into the stream id
    RandomStream substream(std::uint64_t id) const;

    // same stream positioned at an absolute counter (for chunked consumption)
    RandomStream at(std::uint64_t counter) const {
        RandomStream r(seed_, stream_);
        r.counter_ = counter;
        return r;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t value_at(std::uint64_t counter) const;
    static double to_unit(std::uint64_t x) {
        return double(x >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_;
};

}  // namespace rslab
