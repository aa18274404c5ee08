#pragma once

#include <cstddef>
#include <vector>

#include "proplab/finite_group.hpp"
#include "proplab/words.hpp"

namespace proplab {

struct TCLimits {
  std::size_t max_cosets = 200000;   // total cosets defined, including dead ones
  std::size_t max_steps = 20000000;  // scan/definition operations
};

/// Closed coset table: rows are cosets, columns alternate generator /
/// inverse action (column 2g is the action of generator g).  Row 0 is the
/// subgroup coset.  Tables are compressed and standardized (breadth-first
/// renumbering scanning columns in order), so they are reproducible.
struct CosetTable {
  int ngens = 0;
  std::vector<std::vector<int>> rows;

  std::size_t index() const { return rows.size(); }
  bool closed() const;
  int action(int coset, int letter) const { return rows[static_cast<std::size_t>(coset)][static_cast<std::size_t>(letter)]; }

  /// Internal consistency, relator closure at every coset, and subgroup
  /// generators fixing coset 0.  Throws RelatorViolation.
  void verify(const Presentation& p, const std::vector<Word>& subgroup_words) const;
};

/// Relator-tracing enumeration with ordered definition of new cosets.
/// Throws LimitExceeded when the enumeration does not close within the
/// limits (possibly infinite index, or limits too small).
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_words,
                        const TCLimits& limits = {});

/// The group realized by a closed table over the trivial subgroup: elements
/// are cosets, composition acts through the table.  Verifies every relator
/// in the resulting group.
GroupPtr regular_group(const CosetTable& table, const Presentation& p,
                       std::size_t table_cap = FiniteGroup::kDefaultTableCap);

}  // namespace proplab
