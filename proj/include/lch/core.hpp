#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lch {

/// Exact rational used for chord actions and crossing heights.
using Rational = boost::rational<std::int64_t>;

enum class ErrorKind {
  Malformed,
  UnknownGenerator,
  DuplicateGenerator,
  UnknownComponent,
  GradingMismatch,
  NonpositiveAction,
  NonPlanar,
  BadValence,
  SearchBudgetExceeded,
  UnknownCrossing,
  NotContractible,
  BudgetExceeded,
  DistinctActionsRequired,
  ShapeViolation,
  Inconsistent,
  NotUnitValued,
  DegreeObstruction,
  QuotientNotClosed,
  MixedWordViolation,
  NotAnAugmentation,
  NotAComplex,
  DirectednessViolation,
  ShapeMismatch,
  OrderReversingNonzero,
  MaurerCartanViolated,
  NotAcyclic,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorKind::UnknownComponent: return "UnknownComponent";
    case ErrorKind::GradingMismatch: return "GradingMismatch";
    case ErrorKind::NonpositiveAction: return "NonpositiveAction";
    case ErrorKind::NonPlanar: return "NonPlanar";
    case ErrorKind::BadValence: return "BadValence";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::UnknownCrossing: return "UnknownCrossing";
    case ErrorKind::NotContractible: return "NotContractible";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DistinctActionsRequired: return "DistinctActionsRequired";
    case ErrorKind::ShapeViolation: return "ShapeViolation";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::NotUnitValued: return "NotUnitValued";
    case ErrorKind::DegreeObstruction: return "DegreeObstruction";
    case ErrorKind::QuotientNotClosed: return "QuotientNotClosed";
    case ErrorKind::MixedWordViolation: return "MixedWordViolation";
    case ErrorKind::NotAnAugmentation: return "NotAnAugmentation";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::DirectednessViolation: return "DirectednessViolation";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::OrderReversingNonzero: return "OrderReversingNonzero";
    case ErrorKind::MaurerCartanViolated: return "MaurerCartanViolated";
    case ErrorKind::NotAcyclic: return "NotAcyclic";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parses "num/den" or "num". Denominator must be positive.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw Error(ErrorKind::Malformed, "bad rational '" + std::string(text) + "'");
    std::size_t pos = 0;
    bool negative = false;
    if (s[0] == '-' || s[0] == '+') {
      negative = s[0] == '-';
      pos = 1;
    }
    if (pos == s.size()) throw Error(ErrorKind::Malformed, "bad rational '" + std::string(text) + "'");
    std::int64_t value = 0;
    for (; pos < s.size(); ++pos) {
      char c = s[pos];
      if (c < '0' || c > '9') throw Error(ErrorKind::Malformed, "bad rational '" + std::string(text) + "'");
      if (value > (INT64_MAX - (c - '0')) / 10)
        throw Error(ErrorKind::Malformed, "rational overflow '" + std::string(text) + "'");
      value = value * 10 + (c - '0');
    }
    return negative ? -value : value;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw Error(ErrorKind::Malformed, "nonpositive denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace lch
