#include "primeseries/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "primeseries/error.hpp"

namespace primeseries {

namespace {

mpz_class pow10(unsigned long exponent)
{
    mpz_class result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
    return result;
}

mpz_class from_u64_z(std::uint64_t v)
{
    return mpz_class(static_cast<unsigned long>(v));
}

// floor(log10(num/den)) for num, den > 0.
long floor_log10(const mpz_class& num, const mpz_class& den)
{
    long guess = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    // sizeinbase may overshoot by one; settle so that 10^guess <= x < 10^(guess+1).
    auto at_least = [&](long e) {
        if (e >= 0) return num >= den * pow10(static_cast<unsigned long>(e));
        return num * pow10(static_cast<unsigned long>(-e)) >= den;
    };
    while (!at_least(guess)) --guess;
    while (at_least(guess + 1)) ++guess;
    return guess;
}

} // namespace

static_assert(sizeof(long) == 8, "GMP's long overloads must carry 64-bit values");

ExactRational::ExactRational(std::int64_t value) : value_(static_cast<long>(value)) {}

ExactRational::ExactRational(const mpz_class& numerator, const mpz_class& denominator)
{
    if (denominator == 0) throw domain_error("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

ExactRational::ExactRational(mpq_class value) : value_(std::move(value))
{
    value_.canonicalize();
}

ExactRational ExactRational::from_u64(std::uint64_t num, std::uint64_t den)
{
    return ExactRational(from_u64_z(num), from_u64_z(den));
}

ExactRational ExactRational::from_double(double value)
{
    if (!std::isfinite(value)) throw domain_error("non-finite double has no exact rational value");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), value);
    return ExactRational(std::move(q));
}

bool ExactRational::is_reduced() const
{
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return g == 1 && value_.get_den() > 0;
}

double ExactRational::to_double() const
{
    // mpq_get_d truncates; go through the decimal renderer for round-to-nearest.
    return std::stod(to_decimal(*this, 17));
}

std::string ExactRational::str() const
{
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

ExactRational& ExactRational::operator+=(const ExactRational& rhs)
{
    value_ += rhs.value_;
    return *this;
}

ExactRational& ExactRational::operator-=(const ExactRational& rhs)
{
    value_ -= rhs.value_;
    return *this;
}

ExactRational& ExactRational::operator*=(const ExactRational& rhs)
{
    value_ *= rhs.value_;
    return *this;
}

ExactRational& ExactRational::operator/=(const ExactRational& rhs)
{
    if (rhs.sign() == 0) throw domain_error("division by zero rational");
    value_ /= rhs.value_;
    return *this;
}

std::string to_decimal(const ExactRational& x, unsigned digits)
{
    if (digits == 0) throw usage_error("to_decimal needs at least one digit");
    if (x.sign() == 0) return "0";

    mpz_class num = abs(x.numerator());
    const mpz_class den = x.denominator();
    long exponent = floor_log10(num, den);

    // Scale so the rounded integer carries exactly `digits` digits.
    const long shift = static_cast<long>(digits) - 1 - exponent;
    mpz_class scaled_num = num;
    mpz_class scaled_den = den;
    if (shift >= 0) scaled_num *= pow10(static_cast<unsigned long>(shift));
    else scaled_den *= pow10(static_cast<unsigned long>(-shift));

    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
    const int cmp_half = cmp(2 * r, scaled_den);
    if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
    if (q == pow10(digits)) {
        q /= 10;
        ++exponent;
    }

    std::string mantissa = q.get_str();
    std::string out = x.sign() < 0 ? "-" : "";
    if (exponent >= -6 && exponent < 21) {
        if (exponent < 0) {
            out += "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + mantissa;
        } else if (static_cast<std::size_t>(exponent) + 1 >= mantissa.size()) {
            out += mantissa + std::string(static_cast<std::size_t>(exponent) + 1 - mantissa.size(), '0');
        } else {
            const auto point = static_cast<std::size_t>(exponent) + 1;
            out += mantissa.substr(0, point) + "." + mantissa.substr(point);
        }
        return out;
    }
    out += mantissa.substr(0, 1);
    if (mantissa.size() > 1) out += "." + mantissa.substr(1);
    out += (exponent < 0 ? "e-" : "e+") + std::to_string(exponent < 0 ? -exponent : exponent);
    return out;
}

ExactRational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return ExactRational(mpz_class(std::string(text)), mpz_class(1));
        return ExactRational(mpz_class(std::string(text.substr(0, slash))),
                             mpz_class(std::string(text.substr(slash + 1))));
    } catch (const std::invalid_argument&) {
        throw usage_error("not a rational: " + std::string(text));
    }
}

} // namespace primeseries
