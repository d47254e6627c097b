#include "lamination/error.hpp"

namespace lam {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::invalid_degree: return "invalid-degree";
        case ErrorCode::degenerate_triple: return "degenerate-triple";
        case ErrorCode::no_sibling_decomposition: return "no-sibling-decomposition";
        case ErrorCode::invalid_portrait: return "invalid-portrait";
        case ErrorCode::ambiguous_pullback: return "ambiguous-pullback";
        case ErrorCode::not_a_lamination: return "not-a-lamination";
        case ErrorCode::not_invariant: return "not-invariant";
        case ErrorCode::unsupported_vertex: return "unsupported-vertex";
        case ErrorCode::invalid_chain: return "invalid-chain";
        case ErrorCode::invariance_violation: return "invariance-violation";
        case ErrorCode::not_periodic: return "not-periodic";
        case ErrorCode::empty_lamination: return "empty-lamination";
        case ErrorCode::inconsistent_majors: return "inconsistent-majors";
        case ErrorCode::undetermined_critical: return "undetermined-critical";
        case ErrorCode::not_a_minor: return "not-a-minor";
        case ErrorCode::wrong_input: return "wrong-input";
        case ErrorCode::insufficient_period: return "insufficient-period";
        case ErrorCode::invalid_input: return "invalid-input";
        case ErrorCode::parse_error: return "parse-error";
    }
    return "unknown";
}

}  // namespace lam
