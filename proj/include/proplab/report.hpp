#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace proplab {

/// Structured-text report: stable key order, two-space indentation, every
/// numeric a decimal string.  Byte-stable for identical inputs and version.
class ReportBuilder {
 public:
  static constexpr const char* kVersion = "v1";

  explicit ReportBuilder(const std::string& command);

  void field(const std::string& key, const std::string& value);
  void field(const std::string& key, std::int64_t value);
  void field(const std::string& key, std::uint64_t value);
  void open(const std::string& key);   // nested section
  void close();

  std::string str() const;

 private:
  std::ostringstream out_;
  int indent_ = 0;
  void pad();
};

}  // namespace proplab
