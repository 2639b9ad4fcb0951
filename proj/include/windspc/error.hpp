#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace windspc {

// Every failure the library can raise. Codes group into three categories
// (input, modeling, config) which the CLI maps to process exit statuses.
enum class Errc {
    // input / data errors
    IoError,
    MissingColumn,
    EmptyInput,
    NonMonotoneTimestamps,
    InvalidInterval,
    UnknownField,
    OnsetOutOfRange,
    // modeling errors
    NegativeSpeed,
    RankDeficient,
    InsufficientData,
    MissingField,
    DegenerateFullModel,
    TooManyCandidates,
    ZeroVariance,
    LengthMismatch,
    SeriesTooShort,
    ZeroRange,
    InsufficientBaseline,
    NoValidWindow,
    // config errors
    InvalidConfig,
    InvalidParams,
};

std::string_view errc_name(Errc code);

// Exit status category: 2 input error, 3 modeling error, 4 config error.
int exit_status_for(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace windspc
