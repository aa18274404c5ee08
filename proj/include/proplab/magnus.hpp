#pragma once

#include <map>
#include <optional>
#include <string>

#include "proplab/words.hpp"

namespace proplab {

/// Truncated noncommutative polynomial over F_p: a map from words in the
/// symbols X_0..X_{n-1} (total degree <= D) to residues mod p.  Keys are
/// byte strings of symbol indices; "" is the constant term.
class NoncommutativePolynomial {
 public:
  NoncommutativePolynomial(int p, int degree_cap) : p_(p), cap_(degree_cap) {}

  static NoncommutativePolynomial one(int p, int degree_cap);
  /// 1 + X_s
  static NoncommutativePolynomial generator(int p, int degree_cap, int sym);
  /// 1 - X_s + X_s^2 - ... (the exact inverse of 1 + X_s, truncated)
  static NoncommutativePolynomial generator_inverse(int p, int degree_cap, int sym);

  NoncommutativePolynomial mul(const NoncommutativePolynomial& other) const;

  int coefficient(const std::string& key) const;
  int constant_term() const { return coefficient(""); }
  const std::map<std::string, int>& terms() const { return terms_; }

  /// Least total degree with a nonzero coefficient among nonconstant terms.
  std::optional<int> min_positive_degree() const;

  int p() const { return p_; }
  int degree_cap() const { return cap_; }

  std::string text(int nsyms) const;  // deterministic, for reports
  bool operator==(const NoncommutativePolynomial&) const = default;

 private:
  int p_;
  int cap_;
  std::map<std::string, int> terms_;  // nonzero coefficients only
};

/// Image of a word under x_i -> 1 + X_i, truncated beyond total degree D.
NoncommutativePolynomial magnus_expand(const Word& w, int p, int degree_cap);

/// Least total degree of a nonconstant term of the expansion, or nullopt
/// when every term above degree zero vanishes (reported as "> D").
std::optional<int> zassenhaus_depth(const Word& w, int p, int degree_cap);

}  // namespace proplab
