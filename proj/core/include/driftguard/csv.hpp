#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace driftguard {

/// Shortest round-trip decimal form, locale-independent.
inline std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, ptr);
}

/// Strict numeric parse of a whole field; throws on trailing garbage.
inline double parse_double(std::string_view field) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("not a number: '" + std::string(field) + "'");
    }
    return value;
}

/// Splits one CSV record. Handles double-quoted fields with "" escapes;
/// multi-line quoted fields are not supported.
std::vector<std::string> split_csv_record(std::string_view line);

/// Joins fields with commas, quoting any field containing a comma or quote.
std::string join_csv_record(const std::vector<std::string>& fields);

}  // namespace driftguard
