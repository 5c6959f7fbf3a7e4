// SPDX-License-Identifier: Apache-2.0
#include "friedman/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace friedman {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::info: return "info";
  }
  return "unknown";
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void CheckReport::append(const CheckReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

void CheckReport::expect_equal(std::string_view suite, std::string identity, int r,
                               std::optional<int> n, const Rational& lhs, const Rational& rhs) {
  add({std::string(suite), std::move(identity), r, n,
       lhs == rhs ? CheckStatus::pass : CheckStatus::fail, to_string(lhs), to_string(rhs), ""});
}

void CheckReport::expect_at_most(std::string_view suite, std::string identity, int r,
                                 std::optional<int> n, const Rational& lhs, const Rational& rhs) {
  add({std::string(suite), std::move(identity), r, n,
       lhs <= rhs ? CheckStatus::pass : CheckStatus::fail, to_string(lhs), to_string(rhs), ""});
}

void CheckReport::expect_near(std::string_view suite, std::string identity, int r,
                              std::optional<int> n, double lhs, double rhs, double tol) {
  const bool ok = std::abs(lhs - rhs) <= tol;
  add({std::string(suite), std::move(identity), r, n, ok ? CheckStatus::pass : CheckStatus::fail,
       format_double(lhs), format_double(rhs), "tol " + format_double(tol)});
}

void CheckReport::expect_at_most(std::string_view suite, std::string identity, int r,
                                 std::optional<int> n, double lhs, double rhs, double slack) {
  const bool ok = lhs <= rhs + slack;
  add({std::string(suite), std::move(identity), r, n, ok ? CheckStatus::pass : CheckStatus::fail,
       format_double(lhs), format_double(rhs), slack > 0 ? "slack " + format_double(slack) : ""});
}

void CheckReport::skip(std::string_view suite, std::string identity, int r, std::optional<int> n,
                       std::string reason) {
  add({std::string(suite), std::move(identity), r, n, CheckStatus::skipped, "", "", std::move(reason)});
}

std::size_t CheckReport::count(CheckStatus status) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [status](const CheckEntry& e) { return e.status == status; }));
}

}  // namespace friedman
