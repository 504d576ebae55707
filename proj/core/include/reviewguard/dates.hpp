#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace reviewguard {

// All dates are day-resolution civil dates (time-of-day is never kept).
using Date = std::chrono::sys_days;

struct DateWindow {
  Date start;
  Date end;  // inclusive

  bool contains(Date d) const noexcept { return d >= start && d <= end; }
};

// Parses "YYYY-MM-DD". Leading datetime strings ("YYYY-MM-DD hh:mm:ss") are
// accepted and truncated to the day. Returns nullopt on malformed input or
// an invalid civil date.
std::optional<Date> parse_date(std::string_view s);

std::string format_date(Date d);

int year_of(Date d);

Date make_date(int year, unsigned month, unsigned day);

inline long days_between(Date from, Date to) { return (to - from).count(); }

}  // namespace reviewguard
