#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mspread {

enum class Errc {
  NonPrimeCharacteristic,
  ReducibleModulus,
  InvalidModulus,
  NonPrimitiveModulus,
  FieldTooLarge,
  DivisionByZero,
  FieldMismatch,
  NonDivisorDegree,
  MixedAmbient,
  AmbientTooLarge,
  NonUniformCoverage,
  DimensionExceedsT,
  NonIntegerNu,
  NonUniformFold,
  SyntaxError,
  InconsistentHeader,
  UnsupportedQ,
  DivisibilityViolated,
  ParamMismatch,
  KindPreconditionFailed,
  NoSuchMember,
  AmbientNotTPlusS,
  ConfigurationNotFound,
  SOutOfRange,
  BlockDisjointnessFailed,
  NotCovered,
  InternalVerifyFailed,
  ZeroMu,
  WidthNotMultipleOfT,
  NotOneWeight,
  SpecInconsistent,
  OrderNotDividing,
  UnknownCatalogEntry,
  Overflow,
  InvalidArgument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by verify() when some nonzero vector is covered with the wrong weight.
class CoverageError : public Error {
 public:
  CoverageError(Errc code, std::uint64_t vector, std::int64_t got, std::int64_t expected,
                const std::string& what)
      : Error(code, what), vector_(vector), got_(got), expected_(expected) {}

  std::uint64_t vector() const noexcept { return vector_; }
  std::int64_t got() const noexcept { return got_; }
  std::int64_t expected() const noexcept { return expected_; }

 private:
  std::uint64_t vector_;
  std::int64_t got_;
  std::int64_t expected_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, const std::string& what)
      : Error(Errc::SyntaxError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace mspread
