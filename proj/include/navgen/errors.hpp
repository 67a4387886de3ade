#pragma once

#include <stdexcept>
#include <string>

namespace navgen {

// Failure taxonomy shared across the library. CLI exit codes map ConfigError
// to 2 and DataError to 3; partial pipeline failures are reported through the
// manifest instead of exceptions.
enum class ErrorCode {
  kConfig,
  kData,
  kOutOfBounds,
  kOnObstacle,
  kUnfixable,
  kVersionMismatch,
  kDigestMismatch,
  kTruncated,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string &message)
      : Error(ErrorCode::kConfig, message) {}
};

class DataError : public Error {
public:
  explicit DataError(const std::string &message)
      : Error(ErrorCode::kData, message) {}
  DataError(ErrorCode code, const std::string &message)
      : Error(code, message) {}
};

const char *error_code_name(ErrorCode code);

}  // namespace navgen
