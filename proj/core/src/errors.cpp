#include "ghostcs/errors.hpp"

namespace ghostcs {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Data: return "data";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Io: return "io";
    case ErrorKind::Format: return "format";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Solver: return "solver";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

}  // namespace ghostcs
