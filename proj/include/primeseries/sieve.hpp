#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace primeseries {

using prime_t = std::uint64_t;

/// Largest accepted sieve bound. Primes are carried as 64-bit unsigned values;
/// the signed maximum leaves headroom for segment arithmetic.
inline constexpr std::uint64_t max_sieve_limit = std::numeric_limits<std::int64_t>::max();
inline constexpr std::uint64_t default_segment_size = std::uint64_t{1} << 20;

struct SieveConfig {
    std::uint64_t limit = 0;                          // inclusive
    std::uint64_t segment_size = default_segment_size; // odd candidates per segment
    unsigned threads = 0;                             // 0: hardware concurrency

    /// Throws usage_error / capacity_error on an invalid configuration.
    void validate() const;
};

struct TwinPair {
    prime_t lesser;
    prime_t greater;

    friend bool operator==(const TwinPair&, const TwinPair&) = default;
};

std::vector<prime_t> primes_up_to(std::uint64_t limit);

/// The first n primes, growing the sieve bound until enough exist.
std::vector<prime_t> nth_primes(std::size_t n);

/// Twin pairs with greater <= limit, ascending.
std::vector<TwinPair> twin_pairs_up_to(std::uint64_t limit);

/// Flattened twin pairs: 3, 5, 5, 7, 11, 13, ... (shared members repeat).
std::vector<prime_t> twin_sequence_up_to(std::uint64_t limit);

using PrimeBatchConsumer = std::function<void(std::span<const prime_t>)>;
using TwinBatchConsumer = std::function<void(std::span<const TwinPair>)>;

/// Sieves [2, config.limit] segment by segment. Segments may be sieved
/// concurrently, but batches reach the consumer one segment at a time in
/// ascending order, and the primes inside a batch are ascending. Exceptions
/// thrown by the consumer stop the sieve and propagate.
void stream_segments(const SieveConfig& config, const PrimeBatchConsumer& consumer);

/// Same as stream_segments, but delivers twin pairs. A pair straddling a
/// segment boundary is delivered with the segment holding its greater member.
void stream_twin_pairs(const SieveConfig& config, const TwinBatchConsumer& consumer);

/// Unbounded ascending prime iterator; sieves successive windows on demand.
class PrimeCursor {
public:
    explicit PrimeCursor(prime_t first_at_least = 2);

    prime_t next();

private:
    void refill();

    std::vector<prime_t> window_;
    std::size_t pos_ = 0;
    std::uint64_t window_hi_;  // next window starts here
    std::uint64_t span_ = 1 << 16;
};

/// floor(sqrt(n)) for 64-bit n.
std::uint64_t isqrt(std::uint64_t n);

} // namespace primeseries
