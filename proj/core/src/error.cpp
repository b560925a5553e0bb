#include "adaptui/error.hpp"

namespace adaptui {

auto to_string(ErrorCode code) -> std::string_view
{
    switch (code) {
    case ErrorCode::DegeneratePosition:
        return "degenerate_position";
    case ErrorCode::OutOfBounds:
        return "out_of_bounds";
    case ErrorCode::IncompatibleCandidates:
        return "incompatible_candidates";
    case ErrorCode::EmptyInput:
        return "empty_input";
    case ErrorCode::InvalidConfiguration:
        return "invalid_configuration";
    case ErrorCode::InfeasibleSearch:
        return "infeasible_search";
    case ErrorCode::IndexOutOfRange:
        return "index_out_of_range";
    case ErrorCode::StaleSelection:
        return "stale_selection";
    case ErrorCode::NoOpenRound:
        return "no_open_round";
    case ErrorCode::Validation:
        return "validation";
    case ErrorCode::NotFound:
        return "not_found";
    case ErrorCode::Busy:
        return "busy";
    case ErrorCode::Io:
        return "io";
    }
    return "unknown";
}

} // namespace adaptui
