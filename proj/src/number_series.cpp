#include "primeseries/number_series.hpp"

#include <cmath>
#include <deque>
#include <utility>

#include <boost/math/constants/constants.hpp>

#include "primeseries/error.hpp"

namespace primeseries {

namespace {

SequenceGenerator prime_generator(prime_t first_at_least)
{
    return [cursor = PrimeCursor(first_at_least)]() mutable -> std::optional<std::uint64_t> { return cursor.next(); };
}

SequenceGenerator twin_sequence_generator()
{
    return [cursor = PrimeCursor(3), previous = prime_t{0},
            pending = std::deque<prime_t>{}]() mutable -> std::optional<std::uint64_t> {
        while (pending.empty()) {
            const prime_t p = cursor.next();
            if (previous != 0 && p - previous == 2) {
                pending.push_back(previous);
                pending.push_back(p);
            }
            previous = p;
        }
        const prime_t v = pending.front();
        pending.pop_front();
        return v;
    };
}

// Sum of 1/values[lo..hi) as an unreduced fraction, by binary splitting.
std::pair<mpz_class, mpz_class> reciprocal_sum(const std::vector<prime_t>& values, std::size_t lo, std::size_t hi)
{
    if (hi - lo == 1) return {mpz_class(1), mpz_class(static_cast<unsigned long>(values[lo]))};
    const std::size_t mid = lo + (hi - lo) / 2;
    auto [ln, ld] = reciprocal_sum(values, lo, mid);
    auto [rn, rd] = reciprocal_sum(values, mid, hi);
    return {ln * rd + rn * ld, ld * rd};
}

} // namespace

PrimorialValue primorial(std::size_t n)
{
    if (n == 0) throw usage_error("primorial index starts at 1");
    PrimorialValue out{.n = n, .value = 1};
    for (const prime_t p : nth_primes(n)) out.value *= static_cast<unsigned long>(p);
    return out;
}

TotientOfPrimorial totient_primorial(std::size_t n)
{
    if (n == 0) throw usage_error("primorial index starts at 1");
    TotientOfPrimorial out{.n = n, .value = 1};
    for (const prime_t p : nth_primes(n)) out.value *= static_cast<unsigned long>(p - 1);
    return out;
}

SeriesDefinition prime_series_definition()
{
    return {.make_sequence = [] { return prime_generator(2); }, .offset_a = 1, .label = "prime"};
}

SeriesDefinition square_free_series_definition()
{
    return {
        .make_sequence =
            [] {
                return SequenceGenerator([primes = prime_generator(2)]() mutable -> std::optional<std::uint64_t> {
                    const std::uint64_t p = *primes();
                    if (p > 0xFFFFFFFFu) throw capacity_error("p^2 exceeds 64 bits");
                    return p * p;
                });
            },
        .offset_a = 1,
        .label = "square-free",
    };
}

SeriesDefinition twin_prime_series_definition()
{
    return {.make_sequence = [] { return prime_generator(3); }, .offset_a = 2, .label = "twin"};
}

SeriesDefinition twin_sequence_series_definition()
{
    return {.make_sequence = [] { return twin_sequence_generator(); }, .offset_a = 1, .label = "twin-sequence"};
}

std::vector<ReportRow> prime_series(std::size_t terms, std::size_t depth_guard)
{
    return exact_rows(prime_series_definition(), terms, depth_guard);
}

std::vector<ReportRow> square_free_series(std::size_t terms, std::size_t depth_guard)
{
    return exact_rows(square_free_series_definition(), terms, depth_guard);
}

std::vector<ReportRow> twin_prime_series(std::size_t terms, std::size_t depth_guard)
{
    return exact_rows(twin_prime_series_definition(), terms, depth_guard);
}

BrunPartial brun_partial(std::uint64_t limit)
{
    const auto sequence = twin_sequence_up_to(limit);
    BrunPartial out{.limit = limit, .pair_count = sequence.size() / 2, .sum = ExactRational(0)};
    if (sequence.empty()) return out;
    auto [num, den] = reciprocal_sum(sequence, 0, sequence.size());
    out.sum = ExactRational(num, den);
    return out;
}

DominanceReport brun_dominance_check(std::size_t terms)
{
    if (terms == 0) throw usage_error("dominance check needs at least one term");
    DominanceReport report;
    report.terms = terms;
    report.holds = true;
    report.comparison.reserve(terms);

    auto sequence = twin_sequence_generator();
    // prefix = prod_{i<k}(1 - 1/p2_i); the k-th series term is prefix / p2_k.
    ExactRational prefix(1);
    for (std::size_t k = 1; k <= terms; ++k) {
        const std::uint64_t v = *sequence();
        const ExactRational brun_term = ExactRational::from_u64(1, v);
        const ExactRational series_term = prefix * brun_term;
        const int sign = series_term < brun_term ? -1 : (series_term == brun_term ? 0 : 1);
        report.comparison.push_back(sign);
        const bool ok = (k == 1) ? sign <= 0 : sign < 0;
        if (!ok && report.holds) {
            report.holds = false;
            report.first_violation = k;
        }
        prefix *= ExactRational::from_u64(v - 1, v);
    }
    return report;
}

double euler_gamma()
{
    return boost::math::constants::euler<double>();
}

namespace {

std::vector<MertensPoint> mertens_points(std::size_t terms, std::uint64_t limit, std::size_t stride)
{
    if (stride == 0) throw usage_error("stride must be positive");
    const double e_gamma = std::exp(euler_gamma());
    std::vector<MertensPoint> out;
    MertensPoint last;
    run_float_series(prime_series_definition(), terms, [&](const FloatSeriesState& s) {
        if (s.last_value > limit) return false;
        const MertensPoint point{
            .n = s.k,
            .prime = s.last_value,
            .ratio = s.residual_product * std::log(static_cast<double>(s.last_value)) * e_gamma,
        };
        if ((s.k - 1) % stride == 0) out.push_back(point);
        last = point;
        return true;
    });
    if (last.n != 0 && (out.empty() || out.back().n != last.n)) out.push_back(last);
    return out;
}

} // namespace

std::vector<MertensPoint> mertens_residual(std::size_t terms)
{
    if (terms == 0) throw usage_error("mertens residual needs at least one term");
    return mertens_points(terms, max_sieve_limit, 1);
}

std::vector<MertensPoint> mertens_residual_up_to(std::uint64_t limit, std::size_t stride)
{
    return mertens_points(static_cast<std::size_t>(-1), limit, stride);
}

} // namespace primeseries
