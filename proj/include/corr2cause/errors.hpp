#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace c2c {

struct Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Variable index or size outside the allowed domain.
struct RangeError : public Error {
  using Error::Error;
};

// Arguments that are individually valid but inconsistent with each other.
struct ArgumentError : public Error {
  using Error::Error;
};

struct ValidationError : public Error {
  using Error::Error;
};

// The intermediate state of a PC run contradicts itself, e.g. a v-structure
// candidate whose endpoints were never separated.
struct InconsistencyError : public Error {
  using Error::Error;
};

struct ParseError : public Error {
  explicit ParseError(std::string message, std::optional<std::size_t> sentence = std::nullopt)
      : Error(sentence ? message + " (sentence " + std::to_string(*sentence + 1) + ")" : message),
        sentence_index(sentence) {}

  std::optional<std::size_t> sentence_index;
};

struct SequencingError : public Error {
  using Error::Error;
};

struct ConfigError : public Error {
  using Error::Error;
};

struct LookupError : public Error {
  using Error::Error;
};

// A backend was asked something it does not understand.
struct ContractError : public Error {
  using Error::Error;
};

struct BackendError : public Error {
  enum class Kind { transient, permanent };

  BackendError(Kind kind, std::string message, int status = 0)
      : Error(std::move(message)), kind(kind), status(status) {}

  bool transient() const { return kind == Kind::transient; }

  Kind kind;
  int status;  // HTTP status, 0 for transport-level failures
};

}  // namespace c2c
