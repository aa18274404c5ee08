#include "proplab/util.hpp"

#include <limits>
#include <sstream>

namespace proplab {

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

static int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw SyntaxError("hex string has odd length");
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_digit(hex[i]);
    int lo = hex_digit(hex[i + 1]);
    if (hi < 0 || lo < 0) throw SyntaxError("invalid hex digit in '" + hex + "'");
    out.push_back(static_cast<char>((hi << 4) | lo));
  }
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int exact_log(std::int64_t p, std::int64_t n) {
  if (p < 2 || n < 1) throw Error("exact_log: bad arguments");
  int e = 0;
  while (n > 1) {
    if (n % p != 0) throw Error("exact_log: not an exact power");
    n /= p;
    ++e;
  }
  return e;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base) {
      throw Error("ipow: overflow");
    }
    r *= base;
  }
  return r;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::int64_t parse_int(const std::string& text) {
  if (text.empty()) throw SyntaxError("empty integer");
  std::size_t pos = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw SyntaxError("invalid integer '" + text + "'");
  }
  if (pos != text.size()) throw SyntaxError("invalid integer '" + text + "'");
  return value;
}

}  // namespace proplab
