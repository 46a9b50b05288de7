#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "primeseries/series.hpp"

namespace primeseries {

enum class SeriesKind { prime, square_free, twin, custom };

SeriesKind parse_kind(std::string_view text);
std::string_view to_string(SeriesKind kind);

/// Natural number from decimal or scientific notation ("100000000", "1e8",
/// "2.5e3"). The value must be integral and fit in 64 bits.
std::uint64_t parse_natural(std::string_view text);

/// "2,3,5,7" (explicit list) or "arith:START:STEP" (unbounded progression).
SeriesDefinition parse_custom_sequence(std::string_view spec, std::uint64_t a);

SeriesDefinition definition_for(SeriesKind kind, std::uint64_t custom_a = 1, std::string_view custom_seq = {});

struct VerifyOutcome {
    bool passed = true;
    std::string kind;
    std::size_t terms = 0;
    std::vector<std::string> checks;
    std::string failed_identity; // empty when passed
    std::size_t failed_index = 0;
    std::string detail;

    nlohmann::json to_json() const;
};

/// Runs every exact identity check that applies to `kind` over `terms`
/// terms. When fault_index is set, S at that index has its numerator's low
/// bit flipped before checking.
VerifyOutcome verify_series(SeriesKind kind, const SeriesDefinition& defn, std::size_t terms,
                            std::optional<std::size_t> fault_index = std::nullopt,
                            std::size_t depth_guard = default_depth_guard);

inline constexpr std::uint64_t default_property_seed = 20240611;

/// Random (F, a) instances: a in [1, 50], length in [1, 200], F strictly
/// increasing in [a+1, 10^6]. Residual and recursion identities are checked
/// at every state.
VerifyOutcome run_property_suite(std::size_t instances, std::uint64_t seed = default_property_seed);

/// Entry point behind the `primeseries` executable. args[0] is the program name.
/// Exit codes: 0 success, 1 failed verification, 2 usage error, 3 runtime error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace primeseries
