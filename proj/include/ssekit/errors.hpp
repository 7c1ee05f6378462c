#pragma once

#include <stdexcept>
#include <string>

namespace ssekit {

// Failure categories surfaced by the library. Tests and the CLI dispatch on
// the code, not on message text.
enum class errc {
    shape,
    invalid_interval,
    unsupported_ring,
    precondition,
    not_a_unit,
    invalid_op,
    invalid_witness,
    invalid_lag,
    needs_shrinking,
    nonnegativity_risk,
    domain,
    invalid_tolerance,
    parse,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::shape: return "shape";
        case errc::invalid_interval: return "invalid-interval";
        case errc::unsupported_ring: return "unsupported-ring";
        case errc::precondition: return "precondition";
        case errc::not_a_unit: return "not-a-unit";
        case errc::invalid_op: return "invalid-op";
        case errc::invalid_witness: return "invalid-witness";
        case errc::invalid_lag: return "invalid-lag";
        case errc::needs_shrinking: return "needs-shrinking";
        case errc::nonnegativity_risk: return "nonnegativity-risk";
        case errc::domain: return "domain";
        case errc::invalid_tolerance: return "invalid-tolerance";
        case errc::parse: return "parse";
        case errc::internal: return "internal";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace ssekit
