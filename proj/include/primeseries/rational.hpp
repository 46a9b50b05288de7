#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace primeseries {

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator. Thin value wrapper over GMP's mpq_class.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(std::int64_t value);
    ExactRational(const mpz_class& numerator, const mpz_class& denominator);
    explicit ExactRational(mpq_class value);

    static ExactRational from_u64(std::uint64_t num, std::uint64_t den = 1);
    /// Exact value of a finite double.
    static ExactRational from_double(double value);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_reduced() const;
    double to_double() const;
    std::string str() const; // "num/den", or "num" when den == 1

    ExactRational& operator+=(const ExactRational& rhs);
    ExactRational& operator-=(const ExactRational& rhs);
    ExactRational& operator*=(const ExactRational& rhs);
    ExactRational& operator/=(const ExactRational& rhs);

    friend ExactRational operator+(ExactRational lhs, const ExactRational& rhs) { return lhs += rhs; }
    friend ExactRational operator-(ExactRational lhs, const ExactRational& rhs) { return lhs -= rhs; }
    friend ExactRational operator*(ExactRational lhs, const ExactRational& rhs) { return lhs *= rhs; }
    friend ExactRational operator/(ExactRational lhs, const ExactRational& rhs) { return lhs /= rhs; }
    ExactRational operator-() const { return ExactRational(mpq_class(-value_)); }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
    friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const ExactRational& a, const ExactRational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const ExactRational& a, const ExactRational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const ExactRational& a, const ExactRational& b) { return a.value_ >= b.value_; }

private:
    mpq_class value_{0};
};

/// Correctly rounded (round-half-even) decimal rendering of x with `digits`
/// significant digits. Uses scientific notation outside [1e-6, 1e21).
std::string to_decimal(const ExactRational& x, unsigned digits);

/// Parses "num/den" or "num" into a reduced rational.
ExactRational parse_rational(std::string_view text);

} // namespace primeseries
