#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

#include "primeseries/series.hpp"

namespace primeseries {

inline constexpr const char* version_string = "1.0.0";

enum class OutputFormat { csv, json };

struct SeriesMeta {
    std::string kind;
    std::uint64_t a = 1;
    std::size_t terms = 0;
    std::string mode; // "exact" or "float"
};

/// Integer as a JSON number when it fits in int64, otherwise as a decimal string.
nlohmann::json big_integer_json(const mpz_class& value);
nlohmann::json fraction_json(const ExactRational& value);

// CSV columns: n,F_n,T_num,T_den,S_num,S_den,R_num,R_den
void write_exact_csv_header(std::ostream& out);
void write_exact_csv_row(std::ostream& out, const ReportRow& row);
nlohmann::json exact_row_json(const ReportRow& row);

// CSV columns: n,F_n,T,S,residual (half-even decimals with `digits` significant digits)
void write_float_csv_header(std::ostream& out);
void write_float_csv_row(std::ostream& out, const FloatSeriesState& row, unsigned digits);
nlohmann::json float_row_json(const FloatSeriesState& row, unsigned digits);

/// Half-even decimal rendering of the exact value of a double.
std::string decimal(double value, unsigned digits);

nlohmann::json meta_json(const SeriesMeta& meta);

} // namespace primeseries
