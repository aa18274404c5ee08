#pragma once

#include <vector>

#include "proplab/finite_group.hpp"

namespace proplab {

/// C_{p^e1} x ... x C_{p^er}; encodings are fixed-width little-endian byte
/// tuples of the component residues.  One byte per component unless the
/// component order needs two.
GroupPtr abelian_p_group(std::int64_t p, const std::vector<int>& exponents,
                         const FiniteGroup::Options& opt = {});

inline GroupPtr cyclic_group(std::int64_t p, int e, const FiniteGroup::Options& opt = {}) {
  return abelian_p_group(p, {e}, opt);
}

/// Descending chain G >= G^p >= G^{p^2} >= ... >= 1 of p-th power subgroups
/// (image subgroups; valid for abelian groups).
std::vector<Subgroup> power_chain(GroupPtr g);

}  // namespace proplab
