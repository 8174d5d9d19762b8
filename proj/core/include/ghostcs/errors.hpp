#pragma once

#include <stdexcept>
#include <string>

namespace ghostcs {

/// Error classes raised by the library. The command-line tool maps each
/// class onto a distinct process exit code.
enum class ErrorKind {
  Parameter,    ///< invalid argument or shape mismatch
  Data,         ///< input values violate a contract (non-finite, non-binary)
  Degenerate,   ///< statistic undefined for the input (zero variance)
  Io,           ///< file missing or unreadable/unwritable
  Format,       ///< malformed file contents
  Unsupported,  ///< well-formed file using an unsupported variant
  Solver,       ///< numerical divergence
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define GHOSTCS_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

GHOSTCS_DEFINE_ERROR(ParameterError, Parameter)
GHOSTCS_DEFINE_ERROR(DataError, Data)
GHOSTCS_DEFINE_ERROR(DegenerateInputError, Degenerate)
GHOSTCS_DEFINE_ERROR(IoError, Io)
GHOSTCS_DEFINE_ERROR(FormatError, Format)
GHOSTCS_DEFINE_ERROR(UnsupportedFormatError, Unsupported)
GHOSTCS_DEFINE_ERROR(SolverError, Solver)

#undef GHOSTCS_DEFINE_ERROR

}  // namespace ghostcs
