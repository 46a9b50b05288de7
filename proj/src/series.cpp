#include "primeseries/series.hpp"

#include <cmath>
#include <memory>

#include "primeseries/error.hpp"

namespace primeseries {

namespace {

void require_above_offset(std::uint64_t value, std::uint64_t a, std::size_t index)
{
    if (value <= a) {
        throw domain_error("term undefined or nonpositive: F_" + std::to_string(index) + " = " +
                           std::to_string(value) + " <= a = " + std::to_string(a));
    }
}

// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;

    void add(double x)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) carry += (sum - t) + x;
        else carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

} // namespace

SeriesDefinition explicit_series(std::vector<std::uint64_t> values, std::uint64_t a, std::string label)
{
    auto shared = std::make_shared<const std::vector<std::uint64_t>>(std::move(values));
    return {
        .make_sequence =
            [shared] {
                return SequenceGenerator([shared, i = std::size_t{0}]() mutable -> std::optional<std::uint64_t> {
                    if (i == shared->size()) return std::nullopt;
                    return (*shared)[i++];
                });
            },
        .offset_a = a,
        .label = std::move(label),
    };
}

SeriesDefinition arithmetic_series(std::uint64_t start, std::uint64_t step, std::uint64_t a, std::string label)
{
    return {
        .make_sequence =
            [start, step] {
                return SequenceGenerator([next = start, step]() mutable -> std::optional<std::uint64_t> {
                    const std::uint64_t current = next;
                    next += step;
                    return current;
                });
            },
        .offset_a = a,
        .label = std::move(label),
    };
}

SeriesState SeriesState::init(std::uint64_t a, std::uint64_t first)
{
    if (a == 0) throw domain_error("offset a must be a positive integer");
    require_above_offset(first, a, 1);
    SeriesState s;
    s.k_ = 1;
    s.a_ = a;
    s.last_ = first;
    s.term_ = ExactRational::from_u64(1, first);
    s.sum_ = s.term_;
    s.product_ = ExactRational::from_u64(first - a, first);
    return s;
}

SeriesState SeriesState::advance(std::uint64_t next) const
{
    require_above_offset(next, a_, k_ + 1);
    SeriesState s;
    s.k_ = k_ + 1;
    s.a_ = a_;
    s.last_ = next;
    s.term_ = product_ * ExactRational::from_u64(1, next);
    s.sum_ = sum_ + s.term_;
    s.product_ = product_ * ExactRational::from_u64(next - a_, next);
    return s;
}

SeriesState SeriesState::advance(std::size_t index, std::uint64_t next) const
{
    if (index != k_ + 1) {
        throw usage_error("series advanced out of order: expected index " + std::to_string(k_ + 1) + ", got " +
                          std::to_string(index));
    }
    return advance(next);
}

ExactRational SeriesState::residual() const
{
    return ExactRational::from_u64(1, a_) - sum_;
}

SeriesState SeriesState::with_partial_sum(ExactRational sum) const
{
    SeriesState s = *this;
    s.sum_ = std::move(sum);
    return s;
}

bool check_residual_identity(const SeriesState& state)
{
    return state.residual() == state.residual_product() * ExactRational::from_u64(1, state.a());
}

bool check_term_recursion(const SeriesState& state)
{
    if (state.k() == 0) return false;
    const ExactRational a = ExactRational::from_u64(state.a());
    return state.term() == a * state.residual() * ExactRational::from_u64(1, state.last_value() - state.a());
}

void run_exact_series(const SeriesDefinition& defn, std::size_t terms,
                      const std::function<void(const SeriesState&)>& visit, std::size_t depth_guard)
{
    if (terms == 0) throw usage_error("series needs at least one term");
    if (terms > depth_guard) {
        throw capacity_error("exact-mode depth guard: " + std::to_string(terms) + " terms requested, guard is " +
                             std::to_string(depth_guard));
    }
    auto sequence = defn.make_sequence();
    auto pull = [&](std::size_t index) {
        const auto v = sequence();
        if (!v) throw usage_error("sequence '" + defn.label + "' exhausted at index " + std::to_string(index));
        return *v;
    };
    SeriesState state = SeriesState::init(defn.offset_a, pull(1));
    visit(state);
    for (std::size_t i = 2; i <= terms; ++i) {
        state = state.advance(i, pull(i));
        visit(state);
    }
}

void run_float_series(const SeriesDefinition& defn, std::size_t terms,
                      const std::function<bool(const FloatSeriesState&)>& visit)
{
    if (terms == 0) throw usage_error("series needs at least one term");
    if (defn.offset_a == 0) throw domain_error("offset a must be a positive integer");
    auto sequence = defn.make_sequence();
    const double a = static_cast<double>(defn.offset_a);
    FloatSeriesState state{.a = defn.offset_a};
    CompensatedSum sum;
    for (std::size_t i = 1; i <= terms; ++i) {
        const auto v = sequence();
        if (!v) throw usage_error("sequence '" + defn.label + "' exhausted at index " + std::to_string(i));
        require_above_offset(*v, defn.offset_a, i);
        const double f = static_cast<double>(*v);
        state.k = i;
        state.last_value = *v;
        state.term = state.residual_product / f;
        sum.add(state.term);
        state.partial_sum = sum.value();
        state.residual_product *= (f - a) / f;
        state.residual = state.residual_product / a;
        if (!visit(state)) return;
    }
}

ReportRow to_report_row(const SeriesState& state)
{
    return {
        .n = state.k(),
        .value = state.last_value(),
        .term = state.term(),
        .partial_sum = state.partial_sum(),
        .residual_product = state.residual_product(),
        .residual = state.residual(),
    };
}

std::vector<ReportRow> exact_rows(const SeriesDefinition& defn, std::size_t terms, std::size_t depth_guard)
{
    std::vector<ReportRow> rows;
    rows.reserve(terms);
    run_exact_series(defn, terms, [&](const SeriesState& s) { rows.push_back(to_report_row(s)); }, depth_guard);
    return rows;
}

} // namespace primeseries
