// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "friedman/rational.hpp"

namespace friedman {

//! info marks a recorded comparison that is not a pass/fail claim.
enum class CheckStatus { pass, fail, skipped, info };

std::string_view to_string(CheckStatus status);

struct CheckEntry {
  std::string suite;
  std::string identity;
  int r = 0;
  std::optional<int> n;
  CheckStatus status = CheckStatus::pass;
  std::string lhs;
  std::string rhs;
  std::string note;
};

class CheckReport {
 public:
  void add(CheckEntry entry) { entries_.push_back(std::move(entry)); }
  void append(const CheckReport& other);

  //! Exact equality of rationals.
  void expect_equal(std::string_view suite, std::string identity, int r, std::optional<int> n,
                    const Rational& lhs, const Rational& rhs);
  //! lhs <= rhs, exact.
  void expect_at_most(std::string_view suite, std::string identity, int r, std::optional<int> n,
                      const Rational& lhs, const Rational& rhs);
  //! |lhs - rhs| <= tol.
  void expect_near(std::string_view suite, std::string identity, int r, std::optional<int> n,
                   double lhs, double rhs, double tol);
  //! lhs <= rhs + slack.
  void expect_at_most(std::string_view suite, std::string identity, int r, std::optional<int> n,
                      double lhs, double rhs, double slack = 0.0);
  void skip(std::string_view suite, std::string identity, int r, std::optional<int> n,
            std::string reason);

  [[nodiscard]] const std::vector<CheckEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t count(CheckStatus status) const;
  //! True when no entry failed. Skipped and info entries do not fail a report.
  [[nodiscard]] bool passed() const { return count(CheckStatus::fail) == 0; }

 private:
  std::vector<CheckEntry> entries_;
};

//! Round-trip decimal rendering used in reports.
std::string format_double(double value);

}  // namespace friedman
