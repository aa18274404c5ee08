#include "proplab/magnus.hpp"

#include <algorithm>
#include <vector>

#include "proplab/util.hpp"

namespace proplab {

NoncommutativePolynomial NoncommutativePolynomial::one(int p, int degree_cap) {
  NoncommutativePolynomial r(p, degree_cap);
  r.terms_[""] = 1;
  return r;
}

NoncommutativePolynomial NoncommutativePolynomial::generator(int p, int degree_cap, int sym) {
  NoncommutativePolynomial r = one(p, degree_cap);
  if (degree_cap >= 1) r.terms_[std::string(1, static_cast<char>(sym))] = 1;
  return r;
}

NoncommutativePolynomial NoncommutativePolynomial::generator_inverse(int p, int degree_cap,
                                                                     int sym) {
  NoncommutativePolynomial r(p, degree_cap);
  int sign = 1;
  for (int d = 0; d <= degree_cap; ++d) {
    int coeff = ((sign % p) + p) % p;
    if (coeff != 0) r.terms_[std::string(static_cast<std::size_t>(d), static_cast<char>(sym))] = coeff;
    sign = -sign;
  }
  return r;
}

NoncommutativePolynomial NoncommutativePolynomial::mul(
    const NoncommutativePolynomial& other) const {
  if (p_ != other.p_ || cap_ != other.cap_) throw MixedParameters("polynomial parameters differ");
  NoncommutativePolynomial r(p_, cap_);
  for (const auto& [ka, va] : terms_) {
    for (const auto& [kb, vb] : other.terms_) {
      if (ka.size() + kb.size() > static_cast<std::size_t>(cap_)) continue;
      int c = static_cast<int>((static_cast<long>(va) * vb) % p_);
      if (c == 0) continue;
      std::string key = ka + kb;
      int& slot = r.terms_[key];
      slot = (slot + c) % p_;
      if (slot == 0) r.terms_.erase(key);
    }
  }
  return r;
}

int NoncommutativePolynomial::coefficient(const std::string& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second;
}

std::optional<int> NoncommutativePolynomial::min_positive_degree() const {
  std::optional<int> best;
  for (const auto& [k, v] : terms_) {
    if (k.empty() || v == 0) continue;
    int d = static_cast<int>(k.size());
    if (!best || d < *best) best = d;
  }
  return best;
}

std::string NoncommutativePolynomial::text(int nsyms) const {
  // terms ordered by (degree, key); symbols named X0..X{n-1}
  std::vector<std::pair<std::pair<int, std::string>, int>> ordered;
  for (const auto& [k, v] : terms_) {
    ordered.push_back({{static_cast<int>(k.size()), k}, v});
  }
  std::sort(ordered.begin(), ordered.end());
  if (ordered.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto& [dk, v] = ordered[i];
    if (i) out += " + ";
    if (dk.second.empty()) {
      out += std::to_string(v);
      continue;
    }
    out += std::to_string(v) + "*";
    for (std::size_t j = 0; j < dk.second.size(); ++j) {
      if (j) out += ".";
      int s = static_cast<unsigned char>(dk.second[j]);
      if (s >= nsyms) throw Error("polynomial symbol out of range");
      out += "X" + std::to_string(s);
    }
  }
  return out;
}

NoncommutativePolynomial magnus_expand(const Word& w, int p, int degree_cap) {
  if (degree_cap < 1) throw Error("magnus_expand: degree cap must be >= 1");
  if (!is_prime(p)) throw BadPrime("p=" + std::to_string(p));
  NoncommutativePolynomial acc = NoncommutativePolynomial::one(p, degree_cap);
  for (auto [sym, exp] : w.syms) {
    NoncommutativePolynomial factor =
        exp > 0 ? NoncommutativePolynomial::generator(p, degree_cap, sym)
                : NoncommutativePolynomial::generator_inverse(p, degree_cap, sym);
    for (int i = 0; i < std::abs(exp); ++i) acc = acc.mul(factor);
  }
  return acc;
}

std::optional<int> zassenhaus_depth(const Word& w, int p, int degree_cap) {
  if (degree_cap < 2) throw Error("zassenhaus_depth: degree cap must be >= 2");
  NoncommutativePolynomial poly = magnus_expand(w, p, degree_cap);
  if (poly.constant_term() != 1) {
    throw OracleInconsistent("group word expansion lost its constant term");
  }
  return poly.min_positive_degree();
}

}  // namespace proplab
