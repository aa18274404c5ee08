#pragma once

#include <string>
#include <vector>

#include "proplab/errors.hpp"

namespace proplab {

/// Arithmetic in the finite field F_q, q = p^f.  Elements are indices in
/// [0, q): the base-p digits of the index are the coefficients of the
/// representing polynomial (little-endian).  Prime-power fields reduce
/// modulo a fixed irreducible recorded per q, so encodings are stable
/// across runs and machines.
class GF {
 public:
  /// Shared instance for a supported q (2,3,4,5,7,8,9,11,13,16,25,27).
  static const GF& get(int q);

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int inv(int a) const;  // throws on 0
  int pow(int a, long e) const;

  /// Modulus polynomial as text, e.g. "x^2+x+1" (empty for prime fields).
  const std::string& modulus_text() const { return modulus_text_; }

  /// Element as text: prime fields print the residue, prime-power fields
  /// print comma-separated polynomial coefficients ("1,2" = 1 + 2x).
  std::string elem_text(int a) const;
  int parse_elem(const std::string& text) const;

 private:
  GF(int p, int f, std::vector<int> modulus);

  int p_, f_, q_;
  std::vector<int> modulus_;  // degree-f monic irreducible, coefficients low-first
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::string modulus_text_;
};

}  // namespace proplab
