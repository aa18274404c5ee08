#pragma once

#include <string>
#include <vector>

#include "proplab/hom.hpp"

namespace proplab {

/// Transfer data for a subgroup H <= Q: the map V : Q/Q' -> H/H' together
/// with the realized abelianizations.  V is computed from right-coset
/// representatives and re-computed from a second representative choice on
/// every call; a mismatch throws OracleInconsistent.
struct TransferData {
  GroupPtr abelianized_source;  // Q/Q'
  GroupPtr abelianized_target;  // H/H'
  GroupHom transfer;            // V
  std::uint64_t subgroup_index = 0;  // [Q : H]
  std::uint64_t kernel_order = 0;    // |Ker V|
};

TransferData transfer_map(const GroupPtr& q, const Subgroup& h);

struct TransferReport {
  std::string subgroup;  // short description (order + a generator)
  std::uint64_t index = 0;
  std::uint64_t kernel_order = 0;
  bool pass = false;  // |Ker V| == [Q : H]
};

/// One report per normal subgroup H with cyclic quotient Q/H.  Cyclic
/// quotient forces H >= Q', so the complete list is obtained by pulling
/// back the subgroups of Q/Q' with cyclic quotient.
std::vector<TransferReport> property_v_check(const GroupPtr& q,
                                             std::size_t cap = FiniteGroup::kDefaultTableCap);

/// All subgroups of a small abelian group, deduplicated, deterministic
/// order.  Exposed for tests.
std::vector<Subgroup> abelian_subgroups(const GroupPtr& a);

}  // namespace proplab
