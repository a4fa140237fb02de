#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace afdforge::util {

inline bool is_ascii_alpha(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z');
}

inline bool is_ascii_digit(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u >= '0' && u <= '9';
}

inline bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }

inline bool is_ascii_space(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u == ' ' || u == '\t' || u == '\n' || u == '\r' || u == '\f' || u == '\v';
}

inline char to_ascii_lower(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 'A' && u <= 'Z') ? static_cast<char>(u - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

std::string_view trim(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Case-insensitive ASCII substring search.
bool contains_ci(std::string_view haystack, std::string_view lowercase_needle);

// Case-insensitive word-boundary search (boundaries are non-alphanumeric).
bool contains_word_ci(std::string_view haystack, std::string_view lowercase_needle);

// True if the name is a valid IPv4 or IPv6 address (anonymous editors).
bool is_ip_address(std::string_view name);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace afdforge::util
