#pragma once

#include <cmath>
#include <cstdint>
#include <charconv>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace imreg::cli {

/// RFC-4180 table writer; reals are written in shortest round-trip form.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    row(header);
  }

  static std::string real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }
  static std::string real(const std::optional<double>& v) { return v ? real(*v) : std::string(); }
  static std::string integer(std::uint64_t v) { return std::to_string(v); }
  static std::string boolean(bool v) { return v ? "true" : "false"; }

  void row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_) throw std::logic_error("csv row has the wrong arity");
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += ',';
      text_ += quote(fields[i]);
    }
    text_ += "\r\n";
  }

  const std::string& text() const { return text_; }

 private:
  static std::string quote(const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  std::size_t columns_;
  std::string text_;
};

}  // namespace imreg::cli
