#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "primeseries/rational.hpp"
#include "primeseries/series.hpp"
#include "primeseries/sieve.hpp"

namespace primeseries {

struct PrimorialValue {
    std::size_t n = 0;
    mpz_class value; // p_1 p_2 ... p_n
};

struct TotientOfPrimorial {
    std::size_t n = 0;
    mpz_class value; // (p_1 - 1)(p_2 - 1) ... (p_n - 1)
};

PrimorialValue primorial(std::size_t n);
TotientOfPrimorial totient_primorial(std::size_t n);

// Concrete series definitions.
SeriesDefinition prime_series_definition();          // F_i = p_i, a = 1
SeriesDefinition square_free_series_definition();    // F_i = p_i^2, a = 1
SeriesDefinition twin_prime_series_definition();     // F_i = p_{i+1} (3, 5, 7, ...), a = 2
SeriesDefinition twin_sequence_series_definition();  // F_i = p2_i (3, 5, 5, 7, ...), a = 1

std::vector<ReportRow> prime_series(std::size_t terms, std::size_t depth_guard = default_depth_guard);
std::vector<ReportRow> square_free_series(std::size_t terms, std::size_t depth_guard = default_depth_guard);
std::vector<ReportRow> twin_prime_series(std::size_t terms, std::size_t depth_guard = default_depth_guard);

/// Sum of 1/v over the twin sequence up to limit; 5 counts twice.
struct BrunPartial {
    std::uint64_t limit = 0;
    std::size_t pair_count = 0;
    ExactRational sum;
};

BrunPartial brun_partial(std::uint64_t limit);

/// Term-wise comparison of the a = 1 twin-sequence series against the Brun
/// terms 1/p2_k. comparison[k-1] is the sign of (series term - Brun term).
struct DominanceReport {
    std::size_t terms = 0;
    bool holds = false;
    std::size_t first_violation = 0; // 1-based; 0 when holds
    std::vector<int> comparison;
};

DominanceReport brun_dominance_check(std::size_t terms);

/// (1 - S_n) ln(p_n) e^gamma, which tends to 1 by Mertens' third theorem.
struct MertensPoint {
    std::size_t n = 0;
    prime_t prime = 0;
    double ratio = 0;
};

/// Euler-Mascheroni constant to double precision.
double euler_gamma();

/// One point per prime, for the first `terms` primes.
std::vector<MertensPoint> mertens_residual(std::size_t terms);
/// Points for all primes <= limit, keeping every `stride`-th one (and the last).
std::vector<MertensPoint> mertens_residual_up_to(std::uint64_t limit, std::size_t stride = 1);

} // namespace primeseries
