#pragma once

#include <string>
#include <vector>

#include "proplab/errors.hpp"

namespace proplab {

/// Free-group word: (generator index, nonzero exponent) pairs with adjacent
/// pairs over distinct generators.  The empty word is the identity.
struct Word {
  std::vector<std::pair<int, int>> syms;

  bool empty() const { return syms.empty(); }
  Word inverse() const;
  Word concat(const Word& other) const;
  Word pow(int e) const;
  Word conjugate_by(const Word& w) const;      // w^{-1} * this * w
  static Word commutator(const Word& a, const Word& b);  // a^{-1} b^{-1} a b

  /// Flattened letters: 2g for generator g, 2g+1 for its inverse.
  std::vector<int> letters() const;

  std::string text(const std::vector<std::string>& gen_names) const;
  bool operator==(const Word&) const = default;
};

Word normalized(std::vector<std::pair<int, int>> syms);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;        // relations w1 = w2 stored as w1 * w2^{-1}
  std::vector<std::string> relator_sources;  // original text, for reports
};

/// Parses "<x,y | y^((x,y)) = y^-2, x^3 = y^3>".  Conventions: a^b = b^{-1}ab
/// and (a,b) = a^{-1}b^{-1}ab; integer exponents allowed anywhere; '*' is
/// optional between factors.  Throws SyntaxError with a position, or
/// UndeclaredGenerator.
Presentation parse_presentation(const std::string& text);

/// File format: `gens: x,y` on the first meaningful line, then one relation
/// per line (`w1 = w2` or a bare relator); `#` starts a comment.
Presentation load_presentation_file(const std::string& path);

/// A word over the presentation's generators, same grammar as relators.
Word parse_word_in(const Presentation& p, const std::string& text);

}  // namespace proplab
