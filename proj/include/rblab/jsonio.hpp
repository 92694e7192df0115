#pragma once

// Minimal JSON emission: enough to serialize reports with full double
// precision and escaped strings, nothing more.

#include <string>
#include <string_view>

namespace rblab::jsonio {

std::string num(double v);  // %.17g, round-trippable
std::string quote(std::string_view s);

// Incremental "{...}" / "[...]" builder; values are pre-rendered fragments.
class Builder {
public:
  explicit Builder(char open = '{') : close_(open == '{' ? '}' : ']') { out_ += open; }

  Builder& field(std::string_view key, std::string_view rendered_value);
  Builder& item(std::string_view rendered_value);  // array element

  std::string str() {
    out_ += close_;
    return std::move(out_);
  }

private:
  std::string out_;
  char close_;
  bool first_ = true;
};

}  // namespace rblab::jsonio
