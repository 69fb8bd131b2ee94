#pragma once

#include <map>
#include <optional>
#include <string>

#include "hdx/rational.hpp"

namespace hdx {

/// Outcome of one inequality check: both sides as exact text, the parameters
/// used, and an optional witness on failure.
struct CheckReport {
  std::string claim;
  std::string lhs;
  std::string rhs;
  std::map<std::string, std::string> params;
  bool verdict = true;
  std::optional<std::string> witness;
  std::optional<std::string> note;
};

inline CheckReport make_report(std::string claim, const Rational& lhs, const Rational& rhs, bool verdict) {
  CheckReport r;
  r.claim = std::move(claim);
  r.lhs = lhs.str();
  r.rhs = rhs.str();
  r.verdict = verdict;
  return r;
}

}  // namespace hdx
