#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "flatfront/complex.hpp"
#include "flatfront/error.hpp"

namespace flatfront {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNonHermitian: return "NonHermitian";
    case ErrorCode::kNotInH3: return "NotInH3";
    case ErrorCode::kNotUnimodular: return "NotUnimodular";
    case ErrorCode::kOutsideDomain: return "OutsideDomain";
    case ErrorCode::kConstantFunction: return "ConstantFunction";
    case ErrorCode::kEpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kTooManyPoints: return "TooManyPoints";
    case ErrorCode::kDuplicatePoints: return "DuplicatePoints";
    case ErrorCode::kNotAnEnd: return "NotAnEnd";
    case ErrorCode::kPoleOnPath: return "PoleOnPath";
    case ErrorCode::kStepUnderflow: return "StepUnderflow";
    case ErrorCode::kPoleAtPoint: return "PoleAtPoint";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kSingularSample: return "SingularSample";
    case ErrorCode::kNotWeaklyComplete: return "NotWeaklyComplete";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNonHermitian:
    case ErrorCode::kNotInH3:
    case ErrorCode::kNotUnimodular:
    case ErrorCode::kOutsideDomain:
    case ErrorCode::kConstantFunction:
    case ErrorCode::kEpsilonTooLarge:
    case ErrorCode::kBadParams:
    case ErrorCode::kTooManyPoints:
    case ErrorCode::kDuplicatePoints:
    case ErrorCode::kNotAnEnd:
    case ErrorCode::kNotWeaklyComplete:
    case ErrorCode::kUnsupported:
    case ErrorCode::kParseError:
      return true;
    default:
      return false;
  }
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

// Reads an optionally signed real at `pos`; a bare sign followed by 'i'
// yields magnitude 1.
double read_real(const std::string& s, std::size_t& pos, bool& had_digits) {
  std::size_t start = pos;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  std::size_t digits = pos;
  while (pos < s.size() &&
         (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
          s[pos] == 'e' || s[pos] == 'E' ||
          ((s[pos] == '+' || s[pos] == '-') && pos > digits &&
           (s[pos - 1] == 'e' || s[pos - 1] == 'E')))) {
    ++pos;
  }
  had_digits = pos > digits;
  double sign = (s[start] == '-') ? -1.0 : 1.0;
  if (!had_digits) return sign;
  try {
    return std::stod(s.substr(start, pos - start));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "bad number in '" + s + "'");
  }
}

}  // namespace

SpherePoint parse_sphere_point(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw Error(ErrorCode::kParseError, "empty complex literal");
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "oo") {
    return SpherePoint::infinity();
  }
  std::size_t pos = 0;
  bool had_digits = false;
  double first = read_real(s, pos, had_digits);
  if (pos == s.size()) {
    if (!had_digits) throw Error(ErrorCode::kParseError, "bad literal '" + s + "'");
    return SpherePoint(Complex(first, 0.0));
  }
  if (s[pos] == 'i' && pos + 1 == s.size()) return SpherePoint(Complex(0.0, first));
  if (!had_digits) throw Error(ErrorCode::kParseError, "bad literal '" + s + "'");
  double second = read_real(s, pos, had_digits);
  if (pos + 1 != s.size() || s[pos] != 'i') {
    throw Error(ErrorCode::kParseError, "bad complex literal '" + s + "'");
  }
  return SpherePoint(Complex(first, second));
}

std::string format_sphere_point(const SpherePoint& p) {
  if (p.is_infinite()) return "inf";
  char buf[64];
  const double re = p.value().real();
  const double im = p.value().imag();
  if (im == 0.0) {
    std::snprintf(buf, sizeof buf, "%.9g", re);
  } else {
    std::snprintf(buf, sizeof buf, "%.9g%+.9gi", re, im);
  }
  return buf;
}

}  // namespace flatfront
