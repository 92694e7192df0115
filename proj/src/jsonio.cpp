#include "rblab/jsonio.hpp"

#include <cmath>
#include <cstdio>

namespace rblab::jsonio {

std::string num(double v) {
  if (!std::isfinite(v)) return quote(std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

Builder& Builder::field(std::string_view key, std::string_view rendered_value) {
  if (!first_) out_ += ',';
  first_ = false;
  out_ += quote(key);
  out_ += ':';
  out_ += rendered_value;
  return *this;
}

Builder& Builder::item(std::string_view rendered_value) {
  if (!first_) out_ += ',';
  first_ = false;
  out_ += rendered_value;
  return *this;
}

}  // namespace rblab::jsonio
