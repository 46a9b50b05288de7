#include "primeseries/report.hpp"

#include <limits>

namespace primeseries {

nlohmann::json big_integer_json(const mpz_class& value)
{
    if (mpz_fits_slong_p(value.get_mpz_t())) return static_cast<std::int64_t>(value.get_si());
    return value.get_str();
}

nlohmann::json fraction_json(const ExactRational& value)
{
    return {{"num", big_integer_json(value.numerator())}, {"den", big_integer_json(value.denominator())}};
}

void write_exact_csv_header(std::ostream& out)
{
    out << "n,F_n,T_num,T_den,S_num,S_den,R_num,R_den\n";
}

void write_exact_csv_row(std::ostream& out, const ReportRow& row)
{
    out << row.n << ',' << row.value << ',' << row.term.numerator() << ',' << row.term.denominator() << ','
        << row.partial_sum.numerator() << ',' << row.partial_sum.denominator() << ','
        << row.residual_product.numerator() << ',' << row.residual_product.denominator() << '\n';
}

nlohmann::json exact_row_json(const ReportRow& row)
{
    return {
        {"n", row.n},
        {"F_n", row.value},
        {"T", fraction_json(row.term)},
        {"S", fraction_json(row.partial_sum)},
        {"R", fraction_json(row.residual_product)},
    };
}

std::string decimal(double value, unsigned digits)
{
    return to_decimal(ExactRational::from_double(value), digits);
}

void write_float_csv_header(std::ostream& out)
{
    out << "n,F_n,T,S,residual\n";
}

void write_float_csv_row(std::ostream& out, const FloatSeriesState& row, unsigned digits)
{
    out << row.k << ',' << row.last_value << ',' << decimal(row.term, digits) << ','
        << decimal(row.partial_sum, digits) << ',' << decimal(row.residual, digits) << '\n';
}

nlohmann::json float_row_json(const FloatSeriesState& row, unsigned digits)
{
    // Same rounded decimal as the CSV, so both formats parse to the same doubles.
    auto rounded = [digits](double v) { return std::stod(decimal(v, digits)); };
    return {
        {"n", row.k},
        {"F_n", row.last_value},
        {"T", rounded(row.term)},
        {"S", rounded(row.partial_sum)},
        {"residual", rounded(row.residual)},
    };
}

nlohmann::json meta_json(const SeriesMeta& meta)
{
    return {
        {"kind", meta.kind}, {"a", meta.a}, {"terms", meta.terms}, {"mode", meta.mode}, {"version", version_string},
    };
}

} // namespace primeseries
