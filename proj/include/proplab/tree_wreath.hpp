#pragma once

#include <string>
#include <vector>

#include "proplab/finite_group.hpp"

namespace proplab {

/// Automorphism of the depth-d p-ary rooted tree, stored as one C_p label
/// per internal node, level by level in lexicographic order.  The label at a
/// node tells how the subtrees *arriving* there are rotated; composition
/// applies the right factor first.
struct TreePortrait {
  int p = 0;
  int d = 0;
  std::vector<int> labels;  // (p^d - 1)/(p - 1) entries, reduced mod p

  bool operator==(const TreePortrait&) const = default;
};

TreePortrait portrait_identity(int p, int d);
std::size_t portrait_label_count(int p, int d);

/// a o b: apply b first.  Throws MixedParameters when p or d differ.
TreePortrait portrait_compose(const TreePortrait& a, const TreePortrait& b);
TreePortrait portrait_invert(const TreePortrait& a);

/// Image of a leaf (digit path of length d) under the automorphism; the
/// independent action oracle used by the tests.
std::vector<int> portrait_apply(const TreePortrait& a, const std::vector<int>& leaf);

Encoding portrait_encode(const TreePortrait& a);
TreePortrait portrait_decode(int p, int d, const Encoding& e);

/// Text format: level label lists separated by '/', e.g. "1/0,1".
std::string portrait_text(const TreePortrait& a);
TreePortrait portrait_parse(int p, int d, const std::string& text);

/// Per-level label sums mod p, length d; a surjection onto C_p^d.
std::vector<int> activity_abelianization(const TreePortrait& a);

/// The full iterated wreath product at depth d as a FiniteGroup over
/// portrait encodings; order p^{(p^d-1)/(p-1)}.
GroupPtr wreath_group(int p, int d, const FiniteGroup::Options& opt = {});

/// Level stabilizer chain G = St(0) >= St(1) >= ... >= St(d) = 1.
std::vector<Subgroup> level_stabilizer_chain(const GroupPtr& g, int p, int d);

}  // namespace proplab
