#include "primeseries/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <thread>

#include "primeseries/error.hpp"

namespace primeseries {

namespace {

// Odd primes <= n by a plain odd-only sieve; used for the resident base primes.
std::vector<prime_t> small_odd_primes(std::uint64_t n)
{
    std::vector<prime_t> out;
    if (n < 3) return out;
    const std::uint64_t count = (n - 1) / 2; // candidates 3, 5, ..., index i -> 2i + 3
    std::vector<std::uint8_t> composite(count, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 3;
        out.push_back(p);
        for (std::uint64_t j = (p * p - 3) / 2; j < count && p <= n / p; j += p) composite[j] = 1;
    }
    return out;
}

// Appends the primes in [lo, hi] to `out`. `base` must hold every odd prime
// up to isqrt(hi), ascending.
void sieve_window(std::uint64_t lo, std::uint64_t hi, std::span<const prime_t> base,
                  std::vector<std::uint8_t>& flags, std::vector<prime_t>& out)
{
    if (hi < 2 || lo > hi) return;
    if (lo <= 2) out.push_back(2);
    std::uint64_t first_odd = std::max<std::uint64_t>(lo, 3);
    if (first_odd % 2 == 0) ++first_odd;
    if (first_odd > hi) return;
    const std::uint64_t count = (hi - first_odd) / 2 + 1;
    flags.assign(count, 0);

    for (const prime_t p : base) {
        if (p > hi / p) break;
        std::uint64_t start = p * p;
        if (start < first_odd) {
            start = (first_odd + p - 1) / p * p;
            if (start % 2 == 0) start += p;
        }
        for (std::uint64_t i = (start - first_odd) / 2; i < count; i += p) flags[i] = 1;
    }
    for (std::uint64_t i = 0; i < count; ++i) {
        if (!flags[i]) out.push_back(first_odd + 2 * i);
    }
}

unsigned resolve_threads(unsigned requested)
{
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return r;
}

void SieveConfig::validate() const
{
    if (limit > max_sieve_limit) {
        throw capacity_error("sieve limit " + std::to_string(limit) + " exceeds the supported maximum " +
                             std::to_string(max_sieve_limit));
    }
    if (segment_size < 64) throw usage_error("segment_size must be at least 64");
    if (segment_size > (std::uint64_t{1} << 40)) throw capacity_error("segment_size above 2^40");
}

void stream_segments(const SieveConfig& config, const PrimeBatchConsumer& consumer)
{
    config.validate();
    if (config.limit < 2) return;

    const std::vector<prime_t> base = small_odd_primes(isqrt(config.limit));
    const std::uint64_t span = 2 * config.segment_size; // integers per segment
    const std::uint64_t segments = config.limit / span + 1;
    const unsigned workers = resolve_threads(config.threads);

    auto run_segment = [&](std::uint64_t k, std::vector<std::uint8_t>& flags) {
        std::vector<prime_t> primes;
        const std::uint64_t lo = k * span;
        const std::uint64_t hi = (config.limit - lo < span - 1) ? config.limit : lo + span - 1;
        sieve_window(lo, hi, base, flags, primes);
        return primes;
    };

    if (workers == 1) {
        std::vector<std::uint8_t> flags;
        for (std::uint64_t k = 0; k < segments; ++k) {
            const auto primes = run_segment(k, flags);
            consumer(primes);
        }
        return;
    }

    // Sieve `workers` segments at a time, then hand them over in ascending order.
    for (std::uint64_t first = 0; first < segments; first += workers) {
        const std::uint64_t batch = std::min<std::uint64_t>(workers, segments - first);
        std::vector<std::future<std::vector<prime_t>>> pending;
        pending.reserve(batch);
        for (std::uint64_t j = 0; j < batch; ++j) {
            pending.push_back(std::async(std::launch::async, [&, k = first + j] {
                std::vector<std::uint8_t> flags;
                return run_segment(k, flags);
            }));
        }
        std::vector<std::vector<prime_t>> results;
        results.reserve(batch);
        for (auto& f : pending) results.push_back(f.get());
        for (const auto& primes : results) consumer(primes);
    }
}

void stream_twin_pairs(const SieveConfig& config, const TwinBatchConsumer& consumer)
{
    prime_t previous = 0;
    std::vector<TwinPair> pairs;
    stream_segments(config, [&](std::span<const prime_t> primes) {
        pairs.clear();
        for (const prime_t p : primes) {
            if (previous != 0 && p - previous == 2) pairs.push_back({previous, p});
            previous = p;
        }
        consumer(pairs);
    });
}

std::vector<prime_t> primes_up_to(std::uint64_t limit)
{
    std::vector<prime_t> out;
    stream_segments({.limit = limit}, [&](std::span<const prime_t> primes) {
        out.insert(out.end(), primes.begin(), primes.end());
    });
    return out;
}

std::vector<prime_t> nth_primes(std::size_t n)
{
    if (n == 0) return {};
    std::uint64_t bound = 16;
    if (n >= 6) {
        const double x = static_cast<double>(n);
        bound = static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 16;
    }
    for (;;) {
        auto primes = primes_up_to(bound);
        if (primes.size() >= n) {
            primes.resize(n);
            return primes;
        }
        bound *= 2;
    }
}

std::vector<TwinPair> twin_pairs_up_to(std::uint64_t limit)
{
    std::vector<TwinPair> out;
    stream_twin_pairs({.limit = limit}, [&](std::span<const TwinPair> pairs) {
        out.insert(out.end(), pairs.begin(), pairs.end());
    });
    return out;
}

std::vector<prime_t> twin_sequence_up_to(std::uint64_t limit)
{
    std::vector<prime_t> out;
    for (const auto& pair : twin_pairs_up_to(limit)) {
        out.push_back(pair.lesser);
        out.push_back(pair.greater);
    }
    return out;
}

PrimeCursor::PrimeCursor(prime_t first_at_least) : window_hi_(first_at_least) {}

prime_t PrimeCursor::next()
{
    while (pos_ == window_.size()) refill();
    return window_[pos_++];
}

void PrimeCursor::refill()
{
    if (window_hi_ > max_sieve_limit) throw capacity_error("prime cursor ran past the 64-bit sieve limit");
    const std::uint64_t lo = window_hi_;
    const std::uint64_t hi = std::min(max_sieve_limit, lo + span_ - 1);
    const auto base = small_odd_primes(isqrt(hi));
    std::vector<std::uint8_t> flags;
    window_.clear();
    pos_ = 0;
    sieve_window(lo, hi, base, flags, window_);
    window_hi_ = hi + 1;
    span_ = std::min<std::uint64_t>(span_ * 2, std::uint64_t{1} << 24);
}

} // namespace primeseries
