#include "memdyn/error.hpp"

namespace memdyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace memdyn
