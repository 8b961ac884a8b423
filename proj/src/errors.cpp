#include "multispread/errors.hpp"

namespace mspread {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::InvalidModulus: return "InvalidModulus";
    case Errc::NonPrimitiveModulus: return "NonPrimitiveModulus";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NonDivisorDegree: return "NonDivisorDegree";
    case Errc::MixedAmbient: return "MixedAmbient";
    case Errc::AmbientTooLarge: return "AmbientTooLarge";
    case Errc::NonUniformCoverage: return "NonUniformCoverage";
    case Errc::DimensionExceedsT: return "DimensionExceedsT";
    case Errc::NonIntegerNu: return "NonIntegerNu";
    case Errc::NonUniformFold: return "NonUniformFold";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::InconsistentHeader: return "InconsistentHeader";
    case Errc::UnsupportedQ: return "UnsupportedQ";
    case Errc::DivisibilityViolated: return "DivisibilityViolated";
    case Errc::ParamMismatch: return "ParamMismatch";
    case Errc::KindPreconditionFailed: return "KindPreconditionFailed";
    case Errc::NoSuchMember: return "NoSuchMember";
    case Errc::AmbientNotTPlusS: return "AmbientNotTPlusS";
    case Errc::ConfigurationNotFound: return "ConfigurationNotFound";
    case Errc::SOutOfRange: return "SOutOfRange";
    case Errc::BlockDisjointnessFailed: return "BlockDisjointnessFailed";
    case Errc::NotCovered: return "NotCovered";
    case Errc::InternalVerifyFailed: return "InternalVerifyFailed";
    case Errc::ZeroMu: return "ZeroMu";
    case Errc::WidthNotMultipleOfT: return "WidthNotMultipleOfT";
    case Errc::NotOneWeight: return "NotOneWeight";
    case Errc::SpecInconsistent: return "SpecInconsistent";
    case Errc::OrderNotDividing: return "OrderNotDividing";
    case Errc::UnknownCatalogEntry: return "UnknownCatalogEntry";
    case Errc::Overflow: return "Overflow";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace mspread
