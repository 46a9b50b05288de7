#include "primeseries/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"

#include "primeseries/error.hpp"
#include "primeseries/number_series.hpp"
#include "primeseries/product_estimator.hpp"
#include "primeseries/report.hpp"
#include "primeseries/sieve.hpp"

namespace primeseries {

SeriesKind parse_kind(std::string_view text)
{
    if (text == "prime") return SeriesKind::prime;
    if (text == "square-free") return SeriesKind::square_free;
    if (text == "twin") return SeriesKind::twin;
    if (text == "custom") return SeriesKind::custom;
    throw usage_error("unknown kind '" + std::string(text) + "' (expected prime, square-free, twin or custom)");
}

std::string_view to_string(SeriesKind kind)
{
    switch (kind) {
    case SeriesKind::prime: return "prime";
    case SeriesKind::square_free: return "square-free";
    case SeriesKind::twin: return "twin";
    case SeriesKind::custom: return "custom";
    }
    return "?";
}

std::uint64_t parse_natural(std::string_view text)
{
    const std::string s(text);
    auto bad = [&](const std::string& why) { return usage_error("invalid natural number '" + s + "': " + why); };
    if (s.empty()) throw bad("empty");

    const auto e_pos = s.find_first_of("eE");
    const std::string mantissa = s.substr(0, e_pos);
    long exponent = 0;
    if (e_pos != std::string::npos) {
        const std::string exp_text = s.substr(e_pos + 1);
        if (exp_text.empty()) throw bad("missing exponent");
        std::size_t used = 0;
        try {
            exponent = std::stol(exp_text, &used);
        } catch (const std::exception&) {
            throw bad("bad exponent");
        }
        if (used != exp_text.size()) throw bad("bad exponent");
    }

    std::string digits;
    const auto dot = mantissa.find('.');
    if (dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        exponent -= static_cast<long>(mantissa.size() - dot - 1);
    } else {
        digits = mantissa;
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad("not a number");
    if (exponent > 40 || exponent < -40) throw bad("exponent out of range");

    mpz_class value(digits);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) {
        value *= scale;
    } else {
        if (value % scale != 0) throw bad("not an integer");
        value /= scale;
    }
    if (!mpz_fits_ulong_p(value.get_mpz_t())) throw capacity_error("'" + s + "' does not fit in 64 bits");
    return value.get_ui();
}

SeriesDefinition parse_custom_sequence(std::string_view spec, std::uint64_t a)
{
    const std::string s(spec);
    if (s.rfind("arith:", 0) == 0) {
        const auto colon = s.find(':', 6);
        if (colon == std::string::npos) throw usage_error("arithmetic rule must be arith:START:STEP");
        const std::uint64_t start = parse_natural(s.substr(6, colon - 6));
        const std::uint64_t step = parse_natural(s.substr(colon + 1));
        if (step == 0) throw usage_error("arithmetic rule needs a positive step");
        return arithmetic_series(start, step, a, "custom");
    }
    std::vector<std::uint64_t> values;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) values.push_back(parse_natural(item));
    if (values.empty()) throw usage_error("custom sequence is empty");
    return explicit_series(std::move(values), a, "custom");
}

SeriesDefinition definition_for(SeriesKind kind, std::uint64_t custom_a, std::string_view custom_seq)
{
    switch (kind) {
    case SeriesKind::prime: return prime_series_definition();
    case SeriesKind::square_free: return square_free_series_definition();
    case SeriesKind::twin: return twin_prime_series_definition();
    case SeriesKind::custom:
        if (custom_seq.empty()) throw usage_error("--kind custom requires --seq");
        if (custom_a == 0) throw usage_error("--a must be a positive integer");
        return parse_custom_sequence(custom_seq, custom_a);
    }
    throw usage_error("unknown kind");
}

nlohmann::json VerifyOutcome::to_json() const
{
    nlohmann::json j = {{"status", passed ? "pass" : "fail"}, {"kind", kind}, {"terms", terms}, {"checks", checks}};
    if (!passed) j["failure"] = {{"identity", failed_identity}, {"index", failed_index}, {"detail", detail}};
    return j;
}

VerifyOutcome verify_series(SeriesKind kind, const SeriesDefinition& defn, std::size_t terms,
                            std::optional<std::size_t> fault_index, std::size_t depth_guard)
{
    VerifyOutcome outcome;
    outcome.kind = std::string(to_string(kind));
    outcome.terms = terms;
    outcome.checks = {"reduced", "residual_identity", "term_recursion"};
    if (kind == SeriesKind::prime) outcome.checks.push_back("totient_primorial");
    if (kind == SeriesKind::twin) outcome.checks.push_back("brun_dominance");

    auto fail = [&](std::string identity, std::size_t index, std::string detail) {
        if (!outcome.passed) return;
        outcome.passed = false;
        outcome.failed_identity = std::move(identity);
        outcome.failed_index = index;
        outcome.detail = std::move(detail);
    };

    // Running p_n# and phi(p_{n-1}#) for the prime-series term check.
    mpz_class primorial_value = 1;
    mpz_class totient_previous = 1;

    run_exact_series(
        defn, terms,
        [&](const SeriesState& clean) {
            if (!outcome.passed) return;
            SeriesState state = clean;
            if (fault_index && *fault_index == clean.k()) {
                mpz_class num = clean.partial_sum().numerator();
                mpz_combit(num.get_mpz_t(), 0);
                state = clean.with_partial_sum(ExactRational(num, clean.partial_sum().denominator()));
            }
            const std::size_t k = state.k();
            if (!state.term().is_reduced() || !state.partial_sum().is_reduced() ||
                !state.residual_product().is_reduced()) {
                fail("reduced", k, "a stored fraction is not in lowest terms");
            }
            if (!check_residual_identity(state)) {
                fail("residual_identity", k, "1/a - S_k != (1/a) R_k; S_k = " + state.partial_sum().str());
            }
            if (!check_term_recursion(state)) {
                fail("term_recursion", k, "T_k != (1/a - S_k)/(F_k - a)");
            }
            if (kind == SeriesKind::prime) {
                primorial_value *= static_cast<unsigned long>(state.last_value());
                if (!(state.term() == ExactRational(totient_previous, primorial_value))) {
                    fail("totient_primorial", k, "T_k != phi(p_{k-1}#)/p_k#");
                }
                totient_previous *= static_cast<unsigned long>(state.last_value() - 1);
            }
        },
        depth_guard);

    if (outcome.passed && kind == SeriesKind::twin) {
        const auto dominance = brun_dominance_check(terms);
        if (!dominance.holds) {
            fail("brun_dominance", dominance.first_violation, "twin-sequence series term not below 1/p2_k");
        }
    }
    return outcome;
}

VerifyOutcome run_property_suite(std::size_t instances, std::uint64_t seed)
{
    VerifyOutcome outcome;
    outcome.kind = "random";
    outcome.terms = instances;
    outcome.checks = {"residual_identity", "term_recursion"};
    std::mt19937_64 rng(seed);
    for (std::size_t instance = 1; instance <= instances && outcome.passed; ++instance) {
        const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(1, 50)(rng);
        const std::size_t length = std::uniform_int_distribution<std::size_t>(1, 200)(rng);
        std::uniform_int_distribution<std::uint64_t> pick(a + 1, 1'000'000);
        std::set<std::uint64_t> values;
        while (values.size() < length) values.insert(pick(rng));
        const auto defn = explicit_series({values.begin(), values.end()}, a, "random");
        run_exact_series(defn, length, [&](const SeriesState& s) {
            if (!outcome.passed) return;
            const bool residual_ok = check_residual_identity(s);
            const bool recursion_ok = check_term_recursion(s);
            if (!residual_ok || !recursion_ok) {
                outcome.passed = false;
                outcome.failed_identity = residual_ok ? "term_recursion" : "residual_identity";
                outcome.failed_index = s.k();
                outcome.detail = "instance " + std::to_string(instance) + ", a = " + std::to_string(a);
            }
        });
    }
    return outcome;
}

namespace {

struct Options {
    std::string kind = "prime";
    std::string a_text = "1";
    std::string terms_text;
    std::string limit_text;
    std::string format = "csv";
    std::string output;
    std::string method = "hl-tail";
    std::string mode = "exact";
    std::string seq;
    std::string stride_text = "1";
    unsigned digits = 15;
    unsigned threads = 0;
    bool twins = false;
    bool count_only = false;
    std::size_t random_instances = 0;
    std::uint64_t seed = default_property_seed;
    std::optional<std::size_t> inject_fault;
    std::size_t depth_guard = default_depth_guard;
};

OutputFormat parse_format(const std::string& text)
{
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw usage_error("unknown format '" + text + "' (expected csv or json)");
}

std::size_t require_terms(const Options& o)
{
    if (o.terms_text.empty()) throw usage_error("--terms is required");
    const std::uint64_t terms = parse_natural(o.terms_text);
    if (terms == 0) throw usage_error("--terms must be at least 1");
    return static_cast<std::size_t>(terms);
}

std::uint64_t require_limit(const Options& o)
{
    if (o.limit_text.empty()) throw usage_error("--limit is required");
    return parse_natural(o.limit_text);
}

void cmd_primes(const Options& o, std::ostream& out)
{
    const OutputFormat format = parse_format(o.format);
    const SieveConfig config{.limit = require_limit(o), .threads = o.threads};
    std::size_t count = 0;
    nlohmann::json rows = nlohmann::json::array();
    if (format == OutputFormat::csv && !o.count_only) out << (o.twins ? "n,lesser,greater\n" : "n,p\n");

    if (o.twins) {
        stream_twin_pairs(config, [&](std::span<const TwinPair> pairs) {
            for (const auto& pair : pairs) {
                ++count;
                if (o.count_only) continue;
                if (format == OutputFormat::csv) out << count << ',' << pair.lesser << ',' << pair.greater << '\n';
                else rows.push_back({pair.lesser, pair.greater});
            }
        });
    } else {
        stream_segments(config, [&](std::span<const prime_t> primes) {
            for (const prime_t p : primes) {
                ++count;
                if (o.count_only) continue;
                if (format == OutputFormat::csv) out << count << ',' << p << '\n';
                else rows.push_back(p);
            }
        });
    }
    if (o.count_only) {
        if (format == OutputFormat::csv) out << "limit,count\n" << config.limit << ',' << count << '\n';
        else out << nlohmann::json{{"limit", config.limit}, {"count", count}, {"twins", o.twins}}.dump() << '\n';
        return;
    }
    if (format == OutputFormat::json) {
        out << nlohmann::json{{"meta", {{"limit", config.limit}, {"count", count}, {"twins", o.twins},
                                        {"version", version_string}}},
                              {o.twins ? "pairs" : "primes", rows}}
                   .dump()
            << '\n';
    }
}

void cmd_series(const Options& o, std::ostream& out)
{
    const OutputFormat format = parse_format(o.format);
    const SeriesKind kind = parse_kind(o.kind);
    const std::uint64_t a = parse_natural(o.a_text);
    if (kind != SeriesKind::custom && o.a_text != "1") {
        throw usage_error("--a applies only to --kind custom");
    }
    std::size_t terms = 0;
    SeriesDefinition defn = definition_for(kind, a, o.seq);
    if (!o.terms_text.empty()) {
        terms = require_terms(o);
    } else if (kind == SeriesKind::custom && o.seq.rfind("arith:", 0) != 0) {
        terms = static_cast<std::size_t>(std::count(o.seq.begin(), o.seq.end(), ',') + 1);
    } else {
        throw usage_error("--terms is required");
    }
    if (o.mode != "exact" && o.mode != "float") throw usage_error("--mode must be exact or float");
    if (o.digits == 0) throw usage_error("--digits must be at least 1");

    const SeriesMeta meta{.kind = std::string(to_string(kind)), .a = defn.offset_a, .terms = terms, .mode = o.mode};
    nlohmann::json rows = nlohmann::json::array();
    if (o.mode == "exact") {
        if (format == OutputFormat::csv) write_exact_csv_header(out);
        run_exact_series(
            defn, terms,
            [&](const SeriesState& s) {
                const ReportRow row = to_report_row(s);
                if (format == OutputFormat::csv) write_exact_csv_row(out, row);
                else rows.push_back(exact_row_json(row));
            },
            o.depth_guard);
    } else {
        if (format == OutputFormat::csv) write_float_csv_header(out);
        run_float_series(defn, terms, [&](const FloatSeriesState& s) {
            if (format == OutputFormat::csv) write_float_csv_row(out, s, o.digits);
            else rows.push_back(float_row_json(s, o.digits));
            return true;
        });
    }
    if (format == OutputFormat::json) out << nlohmann::json{{"meta", meta_json(meta)}, {"rows", rows}}.dump() << '\n';
}

int cmd_verify(const Options& o, std::ostream& out)
{
    VerifyOutcome outcome;
    if (o.random_instances > 0) {
        outcome = run_property_suite(o.random_instances, o.seed);
        nlohmann::json j = outcome.to_json();
        j["seed"] = o.seed;
        out << j.dump() << '\n';
        return outcome.passed ? 0 : 1;
    }
    const SeriesKind kind = parse_kind(o.kind);
    const std::uint64_t a = parse_natural(o.a_text);
    const SeriesDefinition defn = definition_for(kind, a, o.seq);
    outcome = verify_series(kind, defn, require_terms(o), o.inject_fault, o.depth_guard);
    out << outcome.to_json().dump() << '\n';
    return outcome.passed ? 0 : 1;
}

void cmd_kconst(const Options& o, std::ostream& out)
{
    const OutputFormat format = parse_format(o.format);
    const EstimateMethod method = parse_method(o.method);
    const std::uint64_t limit = require_limit(o);
    if (limit < min_extrapolation_limit) {
        throw usage_error("kconst needs --limit >= " + std::to_string(min_extrapolation_limit));
    }
    const ProductEstimate e = estimate_K(limit, method, SieveConfig{.threads = o.threads});
    const double partial = std::exp(e.partial_log_value);
    if (format == OutputFormat::csv) {
        out << "method,limit,partial,tail_correction,k_estimate,error_estimate,c2_used\n"
            << to_string(e.method) << ',' << e.limit_used << ',' << decimal(partial, o.digits) << ','
            << decimal(e.tail_correction, o.digits) << ',' << decimal(e.k_estimate, o.digits) << ','
            << decimal(e.error_estimate, o.digits) << ',' << decimal(e.c2_used, o.digits) << '\n';
        return;
    }
    nlohmann::json j = {
        {"method", to_string(e.method)},
        {"limit", e.limit_used},
        {"partial", partial},
        {"tail_correction", e.tail_correction},
        {"k_estimate", e.k_estimate},
        {"error_estimate", e.error_estimate},
        {"c2_used", e.c2_used},
        {"assumptions", "conditional on the observed twin primes up to limit and the Hardy-Littlewood pair density "
                        "2*C2/ln^2(t) beyond it; assumes infinitely many twin primes"},
    };
    if (!e.coordinate.empty()) j["aitken_coordinate"] = e.coordinate;
    out << j.dump() << '\n';
}

void cmd_brun(const Options& o, std::ostream& out)
{
    const OutputFormat format = parse_format(o.format);
    const BrunPartial b = brun_partial(require_limit(o));
    if (format == OutputFormat::csv) {
        out << "limit,pair_count,sum_num,sum_den,sum\n"
            << b.limit << ',' << b.pair_count << ',' << b.sum.numerator() << ',' << b.sum.denominator() << ','
            << to_decimal(b.sum, o.digits) << '\n';
        return;
    }
    out << nlohmann::json{{"limit", b.limit},
                          {"pair_count", b.pair_count},
                          {"sum", fraction_json(b.sum)},
                          {"decimal", to_decimal(b.sum, o.digits)}}
               .dump()
        << '\n';
}

void cmd_mertens(const Options& o, std::ostream& out)
{
    const OutputFormat format = parse_format(o.format);
    std::vector<MertensPoint> points;
    if (!o.limit_text.empty() && !o.terms_text.empty()) throw usage_error("give --terms or --limit, not both");
    if (!o.limit_text.empty()) {
        const std::uint64_t stride = parse_natural(o.stride_text);
        if (stride == 0) throw usage_error("--stride must be positive");
        points = mertens_residual_up_to(require_limit(o), static_cast<std::size_t>(stride));
    } else {
        points = mertens_residual(require_terms(o));
    }
    if (format == OutputFormat::csv) {
        out << "n,p_n,ratio\n";
        for (const auto& p : points) out << p.n << ',' << p.prime << ',' << decimal(p.ratio, o.digits) << '\n';
        return;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : points) {
        rows.push_back({{"n", p.n}, {"p_n", p.prime}, {"ratio", std::stod(decimal(p.ratio, o.digits))}});
    }
    out << nlohmann::json{{"meta", {{"gamma", euler_gamma()}, {"version", version_string}}}, {"rows", rows}}.dump()
        << '\n';
}

bool colorize()
{
    return std::getenv("NO_COLOR") == nullptr && ::isatty(STDERR_FILENO) == 1;
}

void report_error(std::ostream& err, const std::string& label, const std::string& message, bool color)
{
    if (color) err << "\033[31m" << label << "\033[0m: " << message << '\n';
    else err << label << ": " << message << '\n';
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact sieve series and twin-prime product estimates", "primeseries"};
    app.require_subcommand(1);
    Options o;
    const bool color = colorize() && &err == &std::cerr;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "csv or json");
        cmd->add_option("--output", o.output, "write to this file instead of stdout");
        cmd->add_option("--digits", o.digits, "significant digits for decimal fields");
    };

    auto* primes = app.add_subcommand("primes", "list primes or twin pairs up to a limit");
    primes->add_option("--limit", o.limit_text, "inclusive bound; scientific notation allowed")->required();
    primes->add_flag("--twins", o.twins, "twin pairs instead of primes");
    primes->add_flag("--count", o.count_only, "emit only the count");
    primes->add_option("--threads", o.threads, "sieve worker threads (0: all cores)");
    add_format(primes);

    auto* series = app.add_subcommand("series", "emit the rows of a sieve series");
    series->add_option("--kind", o.kind, "prime, square-free, twin or custom");
    series->add_option("--a", o.a_text, "offset a for custom series");
    series->add_option("--seq", o.seq, "custom sequence: 2,3,5 or arith:START:STEP");
    series->add_option("--terms", o.terms_text, "number of terms");
    series->add_option("--mode", o.mode, "exact or float");
    series->add_option("--depth-guard", o.depth_guard, "maximum exact-mode depth");
    add_format(series);

    auto* verify = app.add_subcommand("verify", "check the exact series identities");
    verify->add_option("--kind", o.kind, "prime, square-free, twin or custom");
    verify->add_option("--a", o.a_text, "offset a for custom series");
    verify->add_option("--seq", o.seq, "custom sequence");
    verify->add_option("--terms", o.terms_text, "number of terms");
    verify->add_option("--random-instances", o.random_instances, "run the randomized (F, a) property suite instead");
    verify->add_option("--seed", o.seed, "seed for --random-instances");
    verify->add_option("--inject-fault", o.inject_fault, "flip a bit of S at this index (harness self-test)");
    verify->add_option("--depth-guard", o.depth_guard, "maximum exact-mode depth");

    auto* kconst = app.add_subcommand("kconst", "estimate the twin-sequence product constant K");
    kconst->add_option("--limit", o.limit_text, "sieve bound (>= 1e4; >= 1e6 for aitken)")->required();
    kconst->add_option("--method", o.method, "hl-tail, aitken or both");
    kconst->add_option("--threads", o.threads, "sieve worker threads (0: all cores)");
    add_format(kconst);

    auto* brun = app.add_subcommand("brun", "exact partial sum of twin-prime reciprocals");
    brun->add_option("--limit", o.limit_text, "inclusive bound")->required();
    add_format(brun);

    auto* mertens = app.add_subcommand("mertens", "(1 - S_n) ln(p_n) e^gamma along the primes");
    mertens->add_option("--terms", o.terms_text, "first n primes");
    mertens->add_option("--limit", o.limit_text, "all primes up to this bound");
    mertens->add_option("--stride", o.stride_text, "with --limit, keep every k-th point");
    add_format(mertens);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    // kconst renders JSON unless csv was asked for explicitly.
    if (kconst->parsed() && kconst->count("--format") == 0) o.format = "json";

    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.output.empty()) {
        file.open(o.output);
        if (!file) {
            report_error(err, "error", "cannot open " + o.output, color);
            return 3;
        }
        sink = &file;
    }

    try {
        if (primes->parsed()) cmd_primes(o, *sink);
        else if (series->parsed()) cmd_series(o, *sink);
        else if (verify->parsed()) return cmd_verify(o, *sink);
        else if (kconst->parsed()) cmd_kconst(o, *sink);
        else if (brun->parsed()) cmd_brun(o, *sink);
        else if (mertens->parsed()) cmd_mertens(o, *sink);
    } catch (const usage_error& e) {
        report_error(err, "usage error", e.what(), color);
        return 2;
    } catch (const std::exception& e) {
        report_error(err, "error", e.what(), color);
        return 3;
    }
    return 0;
}

} // namespace primeseries
