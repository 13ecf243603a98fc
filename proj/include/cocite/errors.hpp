#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cocite {

/// Base of every error the library raises. The CLI maps the three
/// subclasses below onto exit codes 1, 2 and 3.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration, pattern tables, or command-line input.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Input data that cannot be processed (empty snapshots, malformed files).
class DataError : public Error {
  public:
    using Error::Error;
};

/// An internal invariant did not hold.
class InvariantError : public Error {
  public:
    using Error::Error;
};

class ParseError : public ConfigError {
  public:
    ParseError(std::size_t line, const std::string& what)
        : ConfigError("line " + std::to_string(line) + ": " + what), line_(line)
    {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class PatternError : public ConfigError {
  public:
    PatternError(std::string codex_id, std::string pattern, const std::string& why)
        : ConfigError("codex '" + codex_id + "': pattern '" + pattern + "' does not compile: " + why),
          codex_id_(std::move(codex_id)),
          pattern_(std::move(pattern))
    {}
    const std::string& codex_id() const noexcept { return codex_id_; }
    const std::string& pattern() const noexcept { return pattern_; }

  private:
    std::string codex_id_;
    std::string pattern_;
};

class DuplicateIdError : public ConfigError {
  public:
    explicit DuplicateIdError(const std::string& codex_id)
        : ConfigError("duplicate codex id '" + codex_id + "'")
    {}
};

#define COCITE_DATA_ERROR(Name)                                                                   \
    class Name : public DataError {                                                               \
      public:                                                                                     \
        using DataError::DataError;                                                               \
    }

COCITE_DATA_ERROR(EmptySnapshot);
COCITE_DATA_ERROR(InvalidCase);
COCITE_DATA_ERROR(EmptyInput);
COCITE_DATA_ERROR(MisalignedInputs);
COCITE_DATA_ERROR(DegenerateSplit);
COCITE_DATA_ERROR(EmptyStore);
COCITE_DATA_ERROR(NoTextOverlap);
COCITE_DATA_ERROR(NoOccurrences);
COCITE_DATA_ERROR(EmptyBatch);
COCITE_DATA_ERROR(ZeroCentroid);
COCITE_DATA_ERROR(DimensionMismatch);
COCITE_DATA_ERROR(TooShort);
COCITE_DATA_ERROR(NoReports);

#undef COCITE_DATA_ERROR

} // namespace cocite
