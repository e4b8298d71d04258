#ifndef EVFUSE_SRC_TEXT_HPP
#define EVFUSE_SRC_TEXT_HPP

#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evfuse::detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  constexpr std::string_view ws = " \t\r\n\v\f";
  std::size_t pos = s.find_first_not_of(ws);
  while (pos != std::string_view::npos) {
    auto end = s.find_first_of(ws, pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = s.find_first_not_of(ws, end);
  }
  return out;
}

inline std::vector<std::string_view> lines(std::string_view s) { return split(s, '\n'); }

inline std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

template <typename Int>
std::optional<Int> to_integer(std::string_view s) {
  s = trim(s);
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// printf("%.*g") into a std::string.
inline std::string format_g(double v, int digits) {
  char buf[64];
  int n = std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace evfuse::detail

#endif  // EVFUSE_SRC_TEXT_HPP
