#include "windspc/error.hpp"

namespace windspc {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::IoError: return "IoError";
        case Errc::MissingColumn: return "MissingColumn";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::NonMonotoneTimestamps: return "NonMonotoneTimestamps";
        case Errc::InvalidInterval: return "InvalidInterval";
        case Errc::UnknownField: return "UnknownField";
        case Errc::OnsetOutOfRange: return "OnsetOutOfRange";
        case Errc::NegativeSpeed: return "NegativeSpeed";
        case Errc::RankDeficient: return "RankDeficient";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::MissingField: return "MissingField";
        case Errc::DegenerateFullModel: return "DegenerateFullModel";
        case Errc::TooManyCandidates: return "TooManyCandidates";
        case Errc::ZeroVariance: return "ZeroVariance";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::SeriesTooShort: return "SeriesTooShort";
        case Errc::ZeroRange: return "ZeroRange";
        case Errc::InsufficientBaseline: return "InsufficientBaseline";
        case Errc::NoValidWindow: return "NoValidWindow";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::InvalidParams: return "InvalidParams";
    }
    return "UnknownError";
}

int exit_status_for(Errc code) {
    switch (code) {
        case Errc::IoError:
        case Errc::MissingColumn:
        case Errc::EmptyInput:
        case Errc::NonMonotoneTimestamps:
        case Errc::InvalidInterval:
        case Errc::UnknownField:
        case Errc::OnsetOutOfRange:
            return 2;
        case Errc::InvalidConfig:
        case Errc::InvalidParams:
            return 4;
        default:
            return 3;
    }
}

}  // namespace windspc
