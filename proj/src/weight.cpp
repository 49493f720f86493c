#include "semmap/weight.hpp"

#include <charconv>
#include <stdexcept>

namespace semmap {

std::string to_string(const Weight& w) {
  if (w.denominator() == 1) {
    return std::to_string(w.numerator());
  }
  return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, const std::string& whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("malformed weight '" + whole + "'");
  }
  return value;
}

}  // namespace

Weight parse_weight(const std::string& text) {
  std::string_view view = text;
  auto slash = view.find('/');
  if (slash == std::string_view::npos) {
    return Weight(parse_int(view, text));
  }
  std::int64_t num = parse_int(view.substr(0, slash), text);
  std::int64_t den = parse_int(view.substr(slash + 1), text);
  if (den == 0) {
    throw std::invalid_argument("weight '" + text + "' has zero denominator");
  }
  return Weight(num, den);
}

double to_double(const Weight& w) {
  return boost::rational_cast<double>(w);
}

}  // namespace semmap
