#include "proplab/report.hpp"

namespace proplab {

ReportBuilder::ReportBuilder(const std::string& command) {
  out_ << "proplab-report " << kVersion << "\n";
  field("command", command);
}

void ReportBuilder::pad() {
  for (int i = 0; i < indent_; ++i) out_ << "  ";
}

void ReportBuilder::field(const std::string& key, const std::string& value) {
  pad();
  out_ << key << ": " << value << "\n";
}

void ReportBuilder::field(const std::string& key, std::int64_t value) {
  field(key, std::to_string(value));
}

void ReportBuilder::field(const std::string& key, std::uint64_t value) {
  field(key, std::to_string(value));
}

void ReportBuilder::open(const std::string& key) {
  pad();
  out_ << key << ":\n";
  ++indent_;
}

void ReportBuilder::close() {
  if (indent_ > 0) --indent_;
}

std::string ReportBuilder::str() const { return out_.str(); }

}  // namespace proplab
