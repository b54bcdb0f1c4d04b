#include "ffdist/error.hpp"

namespace ffdist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::SizeTooLarge: return "SizeTooLarge";
    case ErrorKind::AccumulatorOverflow: return "AccumulatorOverflow";
    case ErrorKind::FallbackTooLarge: return "FallbackTooLarge";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace ffdist
