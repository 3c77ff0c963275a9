#include "pnull/error.hpp"

namespace pnull {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IndexOutOfRange: return "index-out-of-range";
        case ErrorKind::LengthMismatch: return "length-mismatch";
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::InvalidPresentation: return "invalid-presentation";
        case ErrorKind::BeyondHorizon: return "horizon";
        case ErrorKind::NotANode: return "not-a-node";
        case ErrorKind::Unsupported: return "unsupported-presentation";
        case ErrorKind::WitnessNotFound: return "witness-not-found";
        case ErrorKind::Integrity: return "integrity";
        case ErrorKind::CapExceeded: return "cap-exceeded";
        case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

}  // namespace pnull
