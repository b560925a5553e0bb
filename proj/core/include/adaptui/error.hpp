#ifndef ADAPTUI_ERROR_HPP
#define ADAPTUI_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adaptui {

enum class ErrorCode {
    DegeneratePosition,
    OutOfBounds,
    IncompatibleCandidates,
    EmptyInput,
    InvalidConfiguration,
    InfeasibleSearch,
    IndexOutOfRange,
    StaleSelection,
    NoOpenRound,
    Validation,
    NotFound,
    Busy,
    Io,
};

auto to_string(ErrorCode code) -> std::string_view;

/// Library-wide exception. `field` names the offending input where one exists
/// (configuration keys, pose members).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string const& message, std::optional<std::string> field = std::nullopt)
        : std::runtime_error(message)
        , code_(code)
        , field_(std::move(field))
    {
    }

    [[nodiscard]] auto code() const noexcept -> ErrorCode { return code_; }
    [[nodiscard]] auto field() const noexcept -> std::optional<std::string> const& { return field_; }

private:
    ErrorCode code_;
    std::optional<std::string> field_;
};

} // namespace adaptui

#endif
