#include "primeseries/product_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/expint.hpp>

#include "primeseries/error.hpp"

namespace primeseries {

namespace {

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

double tiny_positive(double scale)
{
    const double e = std::abs(scale) * std::numeric_limits<double>::epsilon();
    return e > 0 ? e : std::numeric_limits<double>::denorm_min();
}

} // namespace

std::vector<PartialProduct> partial_products(std::span<const std::uint64_t> limits, const SieveConfig& sieve)
{
    std::vector<std::uint64_t> sorted(limits.begin(), limits.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<PartialProduct> out(sorted.size());
    if (sorted.empty()) return out;
    for (std::size_t i = 0; i < sorted.size(); ++i) out[i].limit = sorted[i];

    // Per-segment compensated sums, folded into `total` in ascending segment order.
    CompensatedSum total;
    std::size_t pairs = 0;
    std::size_t next = 0;

    auto snapshot = [&](const CompensatedSum& chunk, std::size_t chunk_pairs) {
        CompensatedSum t = total;
        t.add(chunk.value());
        out[next].log_value = t.value();
        out[next].pair_count = pairs + chunk_pairs;
        ++next;
    };

    SieveConfig config = sieve;
    config.limit = sorted.back();
    stream_twin_pairs(config, [&](std::span<const TwinPair> batch) {
        CompensatedSum chunk;
        std::size_t chunk_pairs = 0;
        for (const TwinPair& pair : batch) {
            while (next < out.size() && pair.greater > out[next].limit) snapshot(chunk, chunk_pairs);
            chunk.add(std::log1p(-1.0 / static_cast<double>(pair.lesser)));
            chunk.add(std::log1p(-1.0 / static_cast<double>(pair.greater)));
            ++chunk_pairs;
        }
        // A limit that ends inside this segment still sees the segment as its last chunk.
        // Limits beyond it are settled by later segments or after the stream ends.
        total.add(chunk.value());
        pairs += chunk_pairs;
    });
    while (next < out.size()) snapshot(CompensatedSum{}, 0);
    return out;
}

PartialProduct partial_product(std::uint64_t limit, const SieveConfig& sieve)
{
    const std::uint64_t one[] = {limit};
    return partial_products(one, sieve).front();
}

TwinConstant compute_twin_constant(std::uint64_t truncation, const SieveConfig& sieve)
{
    if (truncation < 3) throw usage_error("twin constant truncation must be at least 3");
    if (truncation > max_sieve_limit / 2) throw capacity_error("twin constant truncation too large");
    auto tail = [](double x) { return -1.0 / (x * std::log(x)); };

    CompensatedSum sum;
    double at_truncation = 0;
    bool captured = false;
    SieveConfig config = sieve;
    config.limit = 2 * truncation;
    stream_segments(config, [&](std::span<const prime_t> primes) {
        for (const prime_t p : primes) {
            if (p == 2) continue;
            if (!captured && p > truncation) {
                at_truncation = sum.value();
                captured = true;
            }
            const double d = static_cast<double>(p - 1);
            sum.add(std::log1p(-1.0 / (d * d)));
        }
    });
    if (!captured) at_truncation = sum.value();

    const double t1 = tail(static_cast<double>(truncation));
    return {
        .c2 = std::exp(at_truncation + t1),
        .truncation = truncation,
        .c2_doubled_truncation = std::exp(sum.value() + tail(2.0 * static_cast<double>(truncation))),
        .tail_correction = t1,
    };
}

const TwinConstant& twin_constant()
{
    static const TwinConstant cached = compute_twin_constant(100'000'000);
    return cached;
}

std::string_view to_string(EstimateMethod method)
{
    switch (method) {
    case EstimateMethod::hl_tail: return "hl-tail";
    case EstimateMethod::aitken: return "aitken";
    case EstimateMethod::both: return "both";
    }
    return "?";
}

EstimateMethod parse_method(std::string_view text)
{
    if (text == "hl-tail") return EstimateMethod::hl_tail;
    if (text == "aitken") return EstimateMethod::aitken;
    if (text == "both") return EstimateMethod::both;
    throw usage_error("unknown method '" + std::string(text) + "' (expected hl-tail, aitken or both)");
}

double li2(double x)
{
    if (x < 2) throw domain_error("li2 is defined here for x >= 2");
    auto antiderivative = [](double t) { return boost::math::expint(std::log(t)) - t / std::log(t); };
    return antiderivative(x) - antiderivative(2.0);
}

double hl_tail_correction(std::uint64_t limit, double c2)
{
    if (limit < 3) throw domain_error("hl tail needs limit >= 3");
    const double x = static_cast<double>(limit);
    const double ln_x = std::log(x);
    return -4.0 * c2 / ln_x - 2.0 * c2 / (x * ln_x * ln_x);
}

ProductEstimate extrapolate_hl(const PartialProduct& pp, double c2)
{
    if (pp.limit < min_extrapolation_limit) {
        throw domain_error("hl-tail extrapolation needs limit >= " + std::to_string(min_extrapolation_limit));
    }
    const double x = static_cast<double>(pp.limit);
    const double ln_x = std::log(x);
    const double second_order = -2.0 * c2 / (x * ln_x * ln_x);

    ProductEstimate e;
    e.method = EstimateMethod::hl_tail;
    e.limit_used = pp.limit;
    e.partial_log_value = pp.log_value;
    e.tail_correction = hl_tail_correction(pp.limit, c2);
    e.k_estimate = std::exp(pp.log_value + e.tail_correction);
    e.c2_used = c2;
    // Boundary term from swapping the observed pair count for the density model.
    const double count_gap = std::abs(static_cast<double>(pp.pair_count) - 2.0 * c2 * li2(x));
    e.error_estimate = e.k_estimate * (2.0 * count_gap / x + std::abs(second_order));
    if (!(e.error_estimate > 0)) e.error_estimate = tiny_positive(e.k_estimate);
    return e;
}

ProductEstimate extrapolate_hl(const PartialProduct& pp)
{
    return extrapolate_hl(pp, twin_constant().c2);
}

ProductEstimate extrapolate_aitken(std::span<const PartialProduct> partials)
{
    if (partials.size() < 3) throw usage_error("aitken extrapolation needs at least 3 partial products");
    const auto pts = partials.last(3);
    for (const auto& p : pts) {
        if (p.limit < 3) throw usage_error("aitken extrapolation needs limits >= 3");
    }
    if (!(pts[0].limit < pts[1].limit && pts[1].limit < pts[2].limit)) {
        throw usage_error("aitken partials must be at strictly increasing limits");
    }
    const double r01 = static_cast<double>(pts[1].limit) / static_cast<double>(pts[0].limit);
    const double r12 = static_cast<double>(pts[2].limit) / static_cast<double>(pts[1].limit);
    if (std::abs(r01 - r12) > 1e-6 * r12) throw usage_error("aitken partials must be at geometric limits");

    double h[3];
    double x[3];
    for (int j = 0; j < 3; ++j) {
        h[j] = 1.0 / std::log(static_cast<double>(pts[j].limit));
        x[j] = std::exp(pts[j].log_value);
    }

    ProductEstimate e;
    e.method = EstimateMethod::aitken;
    e.limit_used = pts[2].limit;
    e.partial_log_value = pts[2].log_value;

    if (x[0] == x[1] && x[1] == x[2]) {
        e.k_estimate = x[2];
        e.tail_correction = 0;
        e.error_estimate = tiny_positive(x[2]);
        e.coordinate = "x";
        return e;
    }

    // In each candidate coordinate v(x), compare the two first divided
    // differences in h. Their relative change (a scaled second difference)
    // says how far the sequence is from linear in h; extrapolate to h = 0 in
    // the coordinate where it is smallest.
    struct Candidate {
        const char* name;
        double v[3];
        double curvature = std::numeric_limits<double>::infinity();
        bool usable = false;
    };
    Candidate linear{"x", {x[0], x[1], x[2]}};
    Candidate logarithmic{"log", {pts[0].log_value, pts[1].log_value, pts[2].log_value}};
    std::string diagnostic;
    for (Candidate* c : {&linear, &logarithmic}) {
        const double s01 = (c->v[1] - c->v[0]) / (h[1] - h[0]);
        const double s12 = (c->v[2] - c->v[1]) / (h[2] - h[1]);
        const double scale = std::max(std::abs(s01), std::abs(s12));
        if (scale == 0 || s01 * s12 <= 0 || !std::isfinite(scale)) {
            diagnostic += std::string(" ") + c->name + ": slopes " + std::to_string(s01) + ", " + std::to_string(s12) +
                          " not of one sign;";
            continue;
        }
        c->curvature = std::abs(s12 - s01) / scale;
        c->usable = true;
    }
    if (!linear.usable && !logarithmic.usable) {
        throw degeneracy_error("aitken: sequence is not monotone in 1/ln(limit);" + diagnostic);
    }
    const Candidate& chosen =
        (!logarithmic.usable || (linear.usable && linear.curvature <= logarithmic.curvature)) ? linear : logarithmic;
    if (chosen.curvature > 0.5) {
        throw degeneracy_error("aitken: second difference is " + std::to_string(chosen.curvature) +
                               " of the first; partials are not in the asymptotic regime");
    }

    const bool in_log = &chosen == &logarithmic;
    auto back = [&](double v) { return in_log ? std::exp(v) : v; };
    const double s01 = (chosen.v[1] - chosen.v[0]) / (h[1] - h[0]);
    const double s12 = (chosen.v[2] - chosen.v[1]) / (h[2] - h[1]);
    const double latest = back(chosen.v[2] - h[2] * s12);
    const double earlier = back(chosen.v[1] - h[1] * s01);

    e.coordinate = chosen.name;
    e.k_estimate = latest;
    if (!(latest > 0)) throw degeneracy_error("aitken: extrapolated product is not positive");
    e.tail_correction = std::log(latest) - pts[2].log_value;
    e.error_estimate = std::abs(latest - earlier);
    if (!(e.error_estimate > 0)) e.error_estimate = tiny_positive(latest);
    return e;
}

ProductEstimate estimate_K(std::uint64_t limit, EstimateMethod method, const SieveConfig& sieve)
{
    if (method == EstimateMethod::hl_tail) {
        if (limit < min_extrapolation_limit) {
            throw usage_error("kconst needs limit >= " + std::to_string(min_extrapolation_limit));
        }
        return extrapolate_hl(partial_product(limit, sieve));
    }
    if (limit / 100 < min_extrapolation_limit) {
        throw usage_error("aitken needs limit >= " + std::to_string(100 * min_extrapolation_limit) +
                          " (partials at limit/100, limit/10, limit)");
    }
    const std::uint64_t limits[] = {limit / 100, limit / 10, limit};
    const auto partials = partial_products(limits, sieve);
    ProductEstimate aitken = extrapolate_aitken(partials);
    if (method == EstimateMethod::aitken) return aitken;

    ProductEstimate hl = extrapolate_hl(partials.back());
    hl.method = EstimateMethod::both;
    hl.error_estimate += std::abs(hl.k_estimate - aitken.k_estimate);
    return hl;
}

} // namespace primeseries
