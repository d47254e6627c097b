#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lam {

enum class ErrorCode {
    invalid_degree,
    degenerate_triple,
    no_sibling_decomposition,
    invalid_portrait,
    ambiguous_pullback,
    not_a_lamination,
    not_invariant,
    unsupported_vertex,
    invalid_chain,
    invariance_violation,
    not_periodic,
    empty_lamination,
    inconsistent_majors,
    undetermined_critical,
    not_a_minor,
    wrong_input,
    insufficient_period,
    invalid_input,
    parse_error,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg, std::vector<std::string> witness = {})
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
          code_(code), witness_(std::move(witness)) {}

    ErrorCode code() const { return code_; }
    // printable chords/classes attached to the failure
    const std::vector<std::string>& witness() const { return witness_; }

private:
    ErrorCode code_;
    std::vector<std::string> witness_;
};

}  // namespace lam
