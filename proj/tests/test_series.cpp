#include "doctest.h"

#include <random>
#include <set>

#include "oracles.hpp"
#include "primeseries/error.hpp"
#include "primeseries/number_series.hpp"
#include "primeseries/series.hpp"

using namespace primeseries;

namespace {

ExactRational q(std::uint64_t num, std::uint64_t den = 1)
{
    return ExactRational::from_u64(num, den);
}

ExactRational from_mpq(const mpq_class& v)
{
    return ExactRational(v);
}

} // namespace

TEST_CASE("init base case")
{
    const auto primes = SeriesState::init(1, 2);
    CHECK(primes.term() == q(1, 2));
    CHECK(primes.partial_sum() == q(1, 2));
    CHECK(primes.residual_product() == q(1, 2));

    const auto twin = SeriesState::init(2, 3);
    CHECK(twin.term() == q(1, 3));
    CHECK(twin.residual_product() == q(1, 3));

    const auto shifted = SeriesState::init(1, 2);
    CHECK(check_residual_identity(shifted));
    CHECK(check_term_recursion(shifted));

    CHECK_THROWS_AS(SeriesState::init(1, 1), primeseries::domain_error);
    CHECK_THROWS_AS(SeriesState::init(2, 2), primeseries::domain_error);
    CHECK_THROWS_AS(SeriesState::init(0, 5), primeseries::domain_error);
}

TEST_CASE("advance over the primes")
{
    auto s = SeriesState::init(1, 2).advance(3);
    CHECK(s.term() == q(1, 6));
    CHECK(s.partial_sum() == q(2, 3));
    CHECK(s.residual() == q(1, 3));
    CHECK(s.residual() == q(1, 2) * q(2, 3));
    CHECK(check_residual_identity(s));
    CHECK(check_term_recursion(s));
    CHECK(s.term() == (q(1) - q(2, 3)) / q(3 - 1));

    s = s.advance(5).advance(7).advance(11);
    CHECK(s.partial_sum() == q(1, 2) + q(1, 6) + q(2, 30) + q(8, 210) + q(48, 2310));
    CHECK(s.k() == 5);

    CHECK_THROWS_AS(s.advance(1), primeseries::domain_error);
    CHECK_THROWS_AS(s.advance(7, 13), primeseries::usage_error);
    CHECK_NOTHROW(s.advance(6, 13));
}

TEST_CASE("F = 2, 3, 4, ... telescopes")
{
    const auto defn = arithmetic_series(2, 1, 1);
    std::size_t seen = 0;
    run_exact_series(defn, 300, [&](const SeriesState& s) {
        ++seen;
        CHECK(s.partial_sum() == q(1) - q(1, s.k() + 1));
        CHECK(s.residual_product() == q(1, s.k() + 1));
    });
    CHECK(seen == 300);
}

TEST_CASE("twin recursion at k = 2")
{
    const auto s = SeriesState::init(2, 3).advance(5);
    CHECK(s.term() == q(1, 15));
    CHECK(s.term() == q(2) * (q(1, 2) - q(1, 3) - q(1, 15)) / q(5 - 2));
    CHECK(check_term_recursion(s));
    // Without the factor a the recursion gives 1/30, not 1/15.
    CHECK((q(1, 2) - q(1, 3) - q(1, 15)) / q(5 - 2) == q(1, 30));
}

TEST_CASE("incremental sum equals the closed form and the product")
{
    std::mt19937_64 rng(11);
    for (int instance = 0; instance < 30; ++instance) {
        const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(1, 50)(rng);
        const std::size_t length = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
        std::uniform_int_distribution<std::uint64_t> pick(a + 1, 1'000'000);
        std::set<std::uint64_t> chosen;
        while (chosen.size() < length) chosen.insert(pick(rng));
        const std::vector<std::uint64_t> F(chosen.begin(), chosen.end());

        run_exact_series(explicit_series(F, a), length, [&](const SeriesState& s) {
            const mpq_class direct = oracle::direct_partial_sum(F, s.k(), a);
            CHECK(s.partial_sum() == from_mpq(direct));
            CHECK(s.residual_product() == from_mpq(oracle::residual_product(F, s.k(), a)));
            CHECK(s.term().is_reduced());
            CHECK(s.partial_sum().is_reduced());
            CHECK(s.residual_product().is_reduced());
        });
    }
}

TEST_CASE("monotone and bounded")
{
    ExactRational previous_sum(0);
    ExactRational previous_product(1);
    run_exact_series(twin_prime_series_definition(), 200, [&](const SeriesState& s) {
        CHECK(s.term() > ExactRational(0));
        CHECK(s.partial_sum() > previous_sum);
        CHECK(s.partial_sum() < q(1, 2));
        CHECK(s.residual_product() < previous_product);
        CHECK(s.residual_product() > ExactRational(0));
        previous_sum = s.partial_sum();
        previous_product = s.residual_product();
    });
}

TEST_CASE("run_exact_series guards")
{
    CHECK_THROWS_AS(run_exact_series(prime_series_definition(), 5001, [](const SeriesState&) {}),
                    primeseries::capacity_error);
    CHECK_NOTHROW(run_exact_series(prime_series_definition(), 20, [](const SeriesState&) {}, 20));
    CHECK_THROWS_AS(run_exact_series(explicit_series({2, 3}, 1), 3, [](const SeriesState&) {}),
                    primeseries::usage_error);
    CHECK_THROWS_AS(run_exact_series(explicit_series({2, 3, 1}, 1), 3, [](const SeriesState&) {}),
                    primeseries::domain_error);
    CHECK_THROWS_AS(run_exact_series(explicit_series({5}, 5), 1, [](const SeriesState&) {}),
                    primeseries::domain_error);
}

TEST_CASE("float series tracks the exact one")
{
    const auto rows = exact_rows(prime_series_definition(), 300);
    std::size_t i = 0;
    run_float_series(prime_series_definition(), 300, [&](const FloatSeriesState& f) {
        const auto& row = rows[i++];
        CHECK(f.last_value == row.value);
        CHECK(f.partial_sum == doctest::Approx(row.partial_sum.to_double()).epsilon(1e-13));
        CHECK(f.residual_product == doctest::Approx(row.residual_product.to_double()).epsilon(1e-13));
        CHECK(f.term == doctest::Approx(row.term.to_double()).epsilon(1e-13));
        return true;
    });
    CHECK(i == 300);

    std::size_t stopped_at = 0;
    run_float_series(prime_series_definition(), 100, [&](const FloatSeriesState& f) {
        stopped_at = f.k;
        return f.k < 7;
    });
    CHECK(stopped_at == 7);
}

TEST_CASE("tampered sum is caught by the identities")
{
    const auto s = SeriesState::init(1, 2).advance(3).advance(5);
    mpz_class num = s.partial_sum().numerator();
    mpz_combit(num.get_mpz_t(), 0);
    const auto bad = s.with_partial_sum(ExactRational(num, s.partial_sum().denominator()));
    CHECK_FALSE(check_residual_identity(bad));
    CHECK_FALSE(check_term_recursion(bad));
}
