#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlf {

enum class errc {
    dimension_mismatch,
    prime_mismatch,
    not_prime,
    indeterminate_sum,
    invalid_net_values,
    invalid_partition,
    gauge_infinite,
    schedule_not_monotone,
    empty_product,
    nonpositive_rho,
    invalid_argument,
    parse_error,
};

inline std::string_view to_string(errc code) noexcept {
    switch (code) {
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::prime_mismatch: return "PrimeMismatch";
        case errc::not_prime: return "NotPrime";
        case errc::indeterminate_sum: return "IndeterminateSum";
        case errc::invalid_net_values: return "InvalidNetValues";
        case errc::invalid_partition: return "InvalidPartition";
        case errc::gauge_infinite: return "GaugeInfinite";
        case errc::schedule_not_monotone: return "ScheduleNotMonotone";
        case errc::empty_product: return "EmptyProduct";
        case errc::nonpositive_rho: return "NonpositiveRho";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Every recoverable failure in the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace hlf
