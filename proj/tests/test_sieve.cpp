#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "primeseries/error.hpp"
#include "primeseries/sieve.hpp"

using namespace primeseries;

TEST_CASE("primes_up_to small cases")
{
    CHECK(primes_up_to(0).empty());
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(2) == std::vector<prime_t>{2});
    CHECK(primes_up_to(10) == std::vector<prime_t>{2, 3, 5, 7});
    const auto thirty = primes_up_to(30);
    CHECK(thirty.size() == 10);
    CHECK(thirty.back() == 29);
    CHECK(thirty == oracle::primes_trial(30));
}

TEST_CASE("primes_up_to matches trial division at assorted limits")
{
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> pick(0, 20'000);
    for (int i = 0; i < 40; ++i) {
        const auto limit = pick(rng);
        CHECK(primes_up_to(limit) == oracle::primes_trial(limit));
    }
}

TEST_CASE("nth_primes")
{
    CHECK(nth_primes(1) == std::vector<prime_t>{2});
    CHECK(nth_primes(5) == std::vector<prime_t>{2, 3, 5, 7, 11});
    CHECK(nth_primes(25).back() == oracle::primes_trial(100).back());
    CHECK(nth_primes(25).back() == 97);
    CHECK(nth_primes(4)[3] == 7);
    CHECK(nth_primes(10'000).back() == 104'729);
}

TEST_CASE("twin pairs and the twin sequence")
{
    CHECK(twin_pairs_up_to(4).empty());
    CHECK(twin_pairs_up_to(20) == std::vector<TwinPair>{{3, 5}, {5, 7}, {11, 13}, {17, 19}});
    const auto hundred = twin_pairs_up_to(100);
    CHECK(hundred.size() == 8);
    CHECK(hundred.back() == TwinPair{71, 73});
    CHECK(hundred.size() * 2 == oracle::twin_sequence_brute(100).size());

    CHECK(twin_sequence_up_to(4).empty());
    CHECK(twin_sequence_up_to(20) == std::vector<prime_t>{3, 5, 5, 7, 11, 13, 17, 19});
    CHECK(twin_sequence_up_to(40) == std::vector<prime_t>{3, 5, 5, 7, 11, 13, 17, 19, 29, 31});
    // A pair counts only once its greater member is inside the limit.
    CHECK(twin_sequence_up_to(6) == std::vector<prime_t>{3, 5});
    CHECK(twin_sequence_up_to(7).size() == 4);
    CHECK(twin_sequence_up_to(10'000) == oracle::twin_sequence_brute(10'000));
}

TEST_CASE("twin sequence invariants")
{
    const auto seq = twin_sequence_up_to(200'000);
    CHECK(seq.size() == 2 * twin_pairs_up_to(200'000).size());
    for (std::size_t i = 0; i < seq.size(); i += 2) {
        CHECK(seq[i + 1] == seq[i] + 2);
        if (i + 2 < seq.size()) CHECK(seq[i + 2] >= seq[i + 1]);
        if (i + 2 < seq.size() && seq[i + 2] == seq[i + 1]) CHECK(seq[i + 1] == 5);
    }
}

TEST_CASE("segment size and thread count do not change output")
{
    const std::uint64_t limit = 300'001;
    std::vector<prime_t> reference;
    stream_segments({.limit = limit, .segment_size = 64, .threads = 1},
                    [&](std::span<const prime_t> b) { reference.insert(reference.end(), b.begin(), b.end()); });
    CHECK(reference == primes_up_to(limit));

    for (const std::uint64_t seg : {65u, 100u, 1000u, 4096u, 1u << 20}) {
        for (const unsigned threads : {1u, 3u}) {
            std::vector<prime_t> got;
            prime_t last = 0;
            bool ascending = true;
            stream_segments({.limit = limit, .segment_size = seg, .threads = threads},
                            [&](std::span<const prime_t> b) {
                                for (const prime_t p : b) {
                                    ascending = ascending && p > last;
                                    last = p;
                                }
                                got.insert(got.end(), b.begin(), b.end());
                            });
            CHECK(ascending);
            CHECK(got == reference);
        }
    }

    std::vector<TwinPair> pairs_small;
    std::vector<TwinPair> pairs_large;
    stream_twin_pairs({.limit = limit, .segment_size = 64, .threads = 2},
                      [&](std::span<const TwinPair> b) { pairs_small.insert(pairs_small.end(), b.begin(), b.end()); });
    stream_twin_pairs({.limit = limit}, [&](std::span<const TwinPair> b) {
        pairs_large.insert(pairs_large.end(), b.begin(), b.end());
    });
    CHECK(pairs_small == pairs_large);
}

TEST_CASE("prime count at one million")
{
    CHECK(primes_up_to(1'000'000).size() == 78'498);
    CHECK(twin_pairs_up_to(1'000'000).size() == 8'169);
}

TEST_CASE("configuration errors")
{
    CHECK_THROWS_AS(stream_segments({.limit = max_sieve_limit + 1}, [](auto) {}), capacity_error);
    CHECK_THROWS_AS(stream_segments({.limit = 100, .segment_size = 63}, [](auto) {}), usage_error);
}

TEST_CASE("consumer failures propagate and stop the stream")
{
    int batches = 0;
    CHECK_THROWS_AS(stream_segments({.limit = 100'000, .segment_size = 64},
                                    [&](std::span<const prime_t>) {
                                        if (++batches == 3) throw std::runtime_error("stop");
                                    }),
                    std::runtime_error);
    CHECK(batches == 3);
}

TEST_CASE("PrimeCursor walks primes across windows")
{
    PrimeCursor cursor;
    const auto expected = primes_up_to(200'000);
    for (const prime_t p : expected) REQUIRE(cursor.next() == p);

    PrimeCursor from_three(3);
    CHECK(from_three.next() == 3);
    CHECK(from_three.next() == 5);

    PrimeCursor high(1'000'000'000'000ull);
    const prime_t p = high.next();
    CHECK(p == 1'000'000'000'039ull);
    CHECK(oracle::is_prime_trial(p));
}

TEST_CASE("isqrt")
{
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(15) == 3);
    CHECK(isqrt(16) == 4);
    CHECK(isqrt(max_sieve_limit) == 3'037'000'499ull);
    CHECK(isqrt(~std::uint64_t{0}) == 4'294'967'295ull);
}
