#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primeseries/sieve.hpp"

namespace primeseries {

/// log of prod (1 - 1/v) over the twin sequence up to `limit`.
struct PartialProduct {
    std::uint64_t limit = 0;
    double log_value = 0;
    std::size_t pair_count = 0;
};

PartialProduct partial_product(std::uint64_t limit, const SieveConfig& sieve = {});

/// Partial products at several limits from one sieve pass. Each entry is
/// bit-identical to partial_product(limit) with the same segment size.
std::vector<PartialProduct> partial_products(std::span<const std::uint64_t> limits, const SieveConfig& sieve = {});

/// Hardy-Littlewood twin prime constant, C2 = prod_{p>2} (1 - 1/(p-1)^2).
struct TwinConstant {
    double c2 = 0;
    std::uint64_t truncation = 0;      // primes <= truncation, plus a density tail
    double c2_doubled_truncation = 0;  // same with 2 * truncation
    double tail_correction = 0;        // log-space tail added at `truncation`
};

TwinConstant compute_twin_constant(std::uint64_t truncation, const SieveConfig& sieve = {});
/// compute_twin_constant(1e8), computed once per process.
const TwinConstant& twin_constant();

enum class EstimateMethod { hl_tail, aitken, both };

std::string_view to_string(EstimateMethod method);
EstimateMethod parse_method(std::string_view text);

struct ProductEstimate {
    EstimateMethod method = EstimateMethod::hl_tail;
    double k_estimate = 0;
    std::uint64_t limit_used = 0;
    double partial_log_value = 0;  // log of the raw partial product at limit_used
    double tail_correction = 0;    // k_estimate = exp(partial_log_value + tail_correction)
    double error_estimate = 0;
    double c2_used = 0;            // 0 when the method does not use C2
    std::string coordinate;        // aitken: "x" or "log"; empty otherwise
};

inline constexpr std::uint64_t min_extrapolation_limit = 10'000;

/// -4 C2 / ln L - 2 C2 / (L ln^2 L): log of the density-model tail beyond L.
double hl_tail_correction(std::uint64_t limit, double c2);

/// Adds the Hardy-Littlewood density tail beyond pp.limit:
///   -4 C2 / ln L  -  2 C2 / (L ln^2 L).
ProductEstimate extrapolate_hl(const PartialProduct& pp, double c2);
ProductEstimate extrapolate_hl(const PartialProduct& pp);

/// Convergence acceleration over >= 3 partials at geometric limits, in the
/// variable h = 1/ln(limit). Uses the last three points.
ProductEstimate extrapolate_aitken(std::span<const PartialProduct> partials);

/// hl-tail at `limit`; aitken over limit/100, limit/10, limit; both runs the
/// two and widens the hl-tail error to cover their spread.
ProductEstimate estimate_K(std::uint64_t limit, EstimateMethod method, const SieveConfig& sieve = {});

/// Integral of dt / ln^2 t over [2, x].
double li2(double x);

} // namespace primeseries
