#include "mplumb/error.hpp"

namespace mplumb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NotSeparable: return "NotSeparable";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::NotInZEpsImage: return "NotInZEpsImage";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::MissingExtension: return "MissingExtension";
    case ErrorKind::NotOrientable: return "NotOrientable";
    case ErrorKind::NotTransverse: return "NotTransverse";
    case ErrorKind::NotTree: return "NotTree";
    case ErrorKind::NonRationalPoint: return "NonRationalPoint";
    case ErrorKind::InconsistentIncidence: return "InconsistentIncidence";
    case ErrorKind::TooManyHyperplanes: return "TooManyHyperplanes";
    case ErrorKind::NotNowhereDense: return "NotNowhereDense";
    case ErrorKind::NotNormalCrossing: return "NotNormalCrossing";
    case ErrorKind::Obstruction: return "Obstruction";
    case ErrorKind::UnknownCatalog: return "UnknownCatalog";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) {
  return kind == ErrorKind::ParseError || kind == ErrorKind::ValidationError ||
         kind == ErrorKind::IoError;
}

}  // namespace mplumb
