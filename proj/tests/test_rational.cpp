#include "doctest.h"

#include <random>

#include "primeseries/error.hpp"
#include "primeseries/rational.hpp"

using primeseries::ExactRational;
using primeseries::to_decimal;

TEST_CASE("fractions are stored reduced with positive denominator")
{
    const ExactRational r(mpz_class(6), mpz_class(-4));
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(r.is_reduced());
    CHECK((ExactRational::from_u64(2, 30) == ExactRational::from_u64(1, 15)));
    CHECK_THROWS_AS(ExactRational(mpz_class(1), mpz_class(0)), primeseries::domain_error);
}

TEST_CASE("arithmetic keeps lowest terms")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> pick(1, 1'000'000);
    for (int i = 0; i < 500; ++i) {
        const auto x = ExactRational::from_u64(pick(rng), pick(rng));
        const auto y = ExactRational::from_u64(pick(rng), pick(rng));
        for (const auto& z : {x + y, x - y, x * y, x / y}) CHECK(z.is_reduced());
        CHECK((x + y - y == x));
        CHECK((x * y / y == x));
    }
}

TEST_CASE("to_decimal rounds half to even")
{
    CHECK(to_decimal(ExactRational::from_u64(1, 8), 2) == "0.12");
    CHECK(to_decimal(ExactRational::from_u64(3, 8), 2) == "0.38");
    CHECK(to_decimal(ExactRational::from_u64(5, 2), 1) == "2");
    CHECK(to_decimal(ExactRational::from_u64(7, 2), 1) == "4");
    CHECK(to_decimal(ExactRational::from_u64(1, 3), 5) == "0.33333");
    CHECK(to_decimal(ExactRational::from_u64(2, 3), 5) == "0.66667");
    CHECK(to_decimal(ExactRational::from_u64(999, 1000), 2) == "1.0");
    CHECK(to_decimal(ExactRational(-1) / ExactRational(6), 3) == "-0.167");
    CHECK(to_decimal(ExactRational(0), 4) == "0");
    CHECK(to_decimal(ExactRational(1234500), 4) == "1234000");
    CHECK(to_decimal(ExactRational::from_u64(1, 10'000'000), 2) == "1.0e-7");
    CHECK_THROWS_AS(to_decimal(ExactRational(1), 0), primeseries::usage_error);
}

TEST_CASE("doubles convert exactly and render back to the same double")
{
    for (const double v : {0.1, 1.0 / 3.0, 0.12933717, 6.02214076e23, 2.2250738585072014e-308}) {
        const auto r = ExactRational::from_double(v);
        CHECK(std::stod(to_decimal(r, 17)) == v);
        CHECK(r.to_double() == v);
    }
}

TEST_CASE("parse_rational")
{
    CHECK((primeseries::parse_rational("48/2310") == ExactRational::from_u64(8, 385)));
    CHECK((primeseries::parse_rational("-7") == ExactRational(-7)));
    CHECK_THROWS_AS(primeseries::parse_rational("x/2"), primeseries::usage_error);
}
