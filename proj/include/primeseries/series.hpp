#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "primeseries/rational.hpp"

namespace primeseries {

/// Yields F_1, F_2, ... ; std::nullopt once a finite sequence is exhausted.
using SequenceGenerator = std::function<std::optional<std::uint64_t>()>;

/// The general (F, a) series
///     T_k = prod_{i<=k}(F_i - a) / ((F_k - a) prod_{i<=k} F_i),
/// whose partial sums satisfy 1/a - S_n = (1/a) prod_{i<=n}(1 - a/F_i).
struct SeriesDefinition {
    std::function<SequenceGenerator()> make_sequence; // each call restarts at F_1
    std::uint64_t offset_a = 1;
    std::string label;
};

SeriesDefinition explicit_series(std::vector<std::uint64_t> values, std::uint64_t a, std::string label = "custom");
/// F_i = start + (i - 1) * step, unbounded.
SeriesDefinition arithmetic_series(std::uint64_t start, std::uint64_t step, std::uint64_t a,
                                   std::string label = "custom");

inline constexpr std::size_t default_depth_guard = 5000;

/// Immutable snapshot after consuming k terms. All rationals are reduced.
class SeriesState {
public:
    /// Base case k = 1: T_1 = S_1 = 1/F_1, R_1 = (F_1 - a)/F_1.
    static SeriesState init(std::uint64_t a, std::uint64_t first);

    /// T_{k+1} = R_k / F_next, S_{k+1} = S_k + T_{k+1}, R_{k+1} = R_k (F_next - a)/F_next.
    SeriesState advance(std::uint64_t next) const;
    /// As advance(), but insists that `index` is k + 1.
    SeriesState advance(std::size_t index, std::uint64_t next) const;

    std::size_t k() const { return k_; }
    std::uint64_t a() const { return a_; }
    std::uint64_t last_value() const { return last_; }
    const ExactRational& term() const { return term_; }
    const ExactRational& partial_sum() const { return sum_; }
    const ExactRational& residual_product() const { return product_; }
    /// 1/a - S_k
    ExactRational residual() const;

    /// Fault-injection hook for verification harnesses: same state with S_k replaced.
    SeriesState with_partial_sum(ExactRational sum) const;

private:
    SeriesState() = default;

    std::size_t k_ = 0;
    std::uint64_t a_ = 1;
    std::uint64_t last_ = 0;
    ExactRational term_;
    ExactRational sum_;
    ExactRational product_;
};

/// 1/a - S_k == (1/a) R_k, exactly.
bool check_residual_identity(const SeriesState& state);
/// T_k == a (1/a - S_k) / (F_k - a), exactly. For a = 1 this is
/// T_k = (1 - S_k)/(F_k - 1); the factor a is needed for any other offset.
bool check_term_recursion(const SeriesState& state);

/// Runs `terms` exact steps of `defn`, handing each state to `visit`.
/// Throws capacity_error when terms exceeds depth_guard, domain_error when
/// some F_i <= a, usage_error when a finite sequence runs out.
void run_exact_series(const SeriesDefinition& defn, std::size_t terms,
                      const std::function<void(const SeriesState&)>& visit,
                      std::size_t depth_guard = default_depth_guard);

/// Floating-point counterpart for depths beyond the exact guard. S is
/// accumulated with Neumaier compensation; R is a running product.
struct FloatSeriesState {
    std::size_t k = 0;
    std::uint64_t a = 1;
    std::uint64_t last_value = 0;
    double term = 0;
    double partial_sum = 0;
    double residual_product = 1;
    double residual = 0; // 1/a - S_k, evaluated as R_k / a
};

/// Runs until `terms` steps are done or `visit` returns false.
void run_float_series(const SeriesDefinition& defn, std::size_t terms,
                      const std::function<bool(const FloatSeriesState&)>& visit);

struct ReportRow {
    std::size_t n = 0;
    std::uint64_t value = 0; // F_n
    ExactRational term;
    ExactRational partial_sum;
    ExactRational residual_product;
    ExactRational residual; // 1/a - S_n
};

ReportRow to_report_row(const SeriesState& state);
std::vector<ReportRow> exact_rows(const SeriesDefinition& defn, std::size_t terms,
                                  std::size_t depth_guard = default_depth_guard);

} // namespace primeseries
