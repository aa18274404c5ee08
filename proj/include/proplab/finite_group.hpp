#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "proplab/errors.hpp"

namespace proplab {

/// Canonical byte string uniquely identifying an element within its family.
using Encoding = std::string;

/// Total order on encodings: length first, then lexicographic.
bool encoding_less(const Encoding& a, const Encoding& b);

/// Family-supplied composition and inversion on encodings.
struct GroupOracle {
  std::function<Encoding(const Encoding&, const Encoding&)> compose;
  std::function<Encoding(const Encoding&)> invert;
};

enum class GroupMode { Table, Oracle };

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline constexpr std::size_t kDefaultTableCap = 8192;
inline constexpr std::size_t kDefaultClosureCap = 1u << 20;

struct GroupOptions {
  std::size_t cap = kDefaultClosureCap;       // hard enumeration bound
  std::size_t table_cap = kDefaultTableCap;   // table-backed mode threshold
};

/// A finite p-group realized by canonical element encodings plus a
/// composition rule.  Elements are indexed deterministically: index 0 is the
/// identity, then breadth-first closure from the generators with ties broken
/// by encoding order.  Groups of order <= table_cap carry a full
/// multiplication table; larger groups compute products through the oracle
/// and memoize them (thread-safe).  Immutable after construction.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
  struct Private {};

 public:
  static constexpr std::size_t kDefaultTableCap = proplab::kDefaultTableCap;
  static constexpr std::size_t kDefaultCap = proplab::kDefaultClosureCap;
  using Options = GroupOptions;

  /// Enumerates the group generated by `generators` under the oracle.
  /// Throws CapExceeded if the closure grows past opt.cap and
  /// OracleInconsistent if an associativity spot check fails or the order is
  /// not a power of `prime`.
  static GroupPtr closure(const Encoding& identity, std::vector<Encoding> generators,
                          GroupOracle oracle, std::int64_t prime, const Options& opt = {});

  FiniteGroup(Private, GroupOracle oracle, std::int64_t prime);

  std::size_t order() const { return elements_.size(); }
  std::int64_t prime() const { return prime_; }
  GroupMode mode() const { return mode_; }
  bool table_backed() const { return mode_ == GroupMode::Table; }
  int identity() const { return 0; }

  /// Canonical generator indices (deduplicated, sorted by encoding,
  /// identity dropped unless the group is trivial).
  const std::vector<int>& generators() const { return generators_; }

  const Encoding& encoding(int i) const { return elements_[i]; }
  int index_of(const Encoding& enc) const;  // -1 when absent

  int op(int a, int b) const;
  int inv(int a) const { return inverse_[a]; }
  int power(int a, std::int64_t e) const;
  int conj(int a, int g) const;        // g^{-1} a g
  int commutator(int a, int b) const;  // a^{-1} b^{-1} a b
  int element_order(int a) const;

  /// How element i was first produced: parent * generators()[gen_pos].
  /// The identity has parent -1.  Used to extend generator maps.
  struct Definition {
    int parent = -1;
    int gen_pos = -1;
  };
  const std::vector<Definition>& definitions() const { return defs_; }

 private:
  std::vector<Encoding> elements_;
  std::unordered_map<Encoding, int> index_;
  std::vector<Definition> defs_;
  std::vector<int> generators_;
  std::vector<int> inverse_;
  std::int64_t prime_;
  GroupMode mode_ = GroupMode::Oracle;
  std::vector<int> table_;  // order x order, row-major, when table-backed

  GroupOracle oracle_;
  mutable std::unordered_map<std::uint64_t, int> memo_;
  mutable std::mutex memo_mutex_;
};

/// A subgroup of a FiniteGroup, held as a sorted member-index set.  The
/// constructor certifies closure (identity present, product-closed), so any
/// live Subgroup really is one.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<int> members);

  static Subgroup whole(GroupPtr g);
  static Subgroup trivial(GroupPtr g);
  static Subgroup generated(GroupPtr g, const std::vector<int>& seeds);
  /// Smallest subgroup containing `seeds` that is normal in the parent.
  static Subgroup normal_closure(GroupPtr g, const std::vector<int>& seeds);
  /// Closure of `seeds` under products and conjugation by `conjugators`
  /// (used for subgroup-relative normal closures).
  static Subgroup normal_closure_within(GroupPtr g, const std::vector<int>& seeds,
                                        const std::vector<int>& conjugators);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(int i) const { return mask_[static_cast<std::size_t>(i)] != 0; }
  bool is_whole() const { return order() == parent_->order(); }
  bool is_trivial() const { return order() == 1; }

  /// Greedy irredundant generating sequence, scanned in index order.
  const std::vector<int>& generating_set() const { return gens_; }

  bool is_normal() const;  // in the parent
  bool same_members(const Subgroup& other) const { return members_ == other.members_; }

 private:
  GroupPtr parent_;
  std::vector<int> members_;
  std::vector<char> mask_;
  std::vector<int> gens_;
};

/// Prime-power cyclic factor orders p^{e1} >= p^{e2} >= ...
struct AbelianInvariants {
  std::vector<std::int64_t> entries;

  std::int64_t product() const;
  bool operator==(const AbelianInvariants&) const = default;
  std::string text() const;  // "[9,3]"
};

bool is_abelian(const FiniteGroup& g);

/// Derived subgroup: normal closure of the pairwise commutators of a
/// generating set (valid in oracle-backed mode too).
Subgroup derived_subgroup(GroupPtr g);
Subgroup derived_subgroup_of(const Subgroup& h);

/// G = D0 >= D1 >= ... down to the trivial subgroup.  Throws
/// OracleInconsistent if the series stabilizes early (impossible for
/// p-groups).
std::vector<Subgroup> derived_series(GroupPtr g);
int derived_length(GroupPtr g);

/// gamma_1 = G, gamma_{i+1} = <[gamma_i, G]>^G, down to triviality.
std::vector<Subgroup> lower_central_series(GroupPtr g);
int nilpotency_class(GroupPtr g);

/// G/N with canonical coset encodings (minimal-encoding representative)
/// plus the projection map as a per-element index vector.
struct QuotientResult {
  GroupPtr group;
  std::vector<int> projection;  // parent index -> quotient index
};
QuotientResult quotient(GroupPtr g, const Subgroup& n);  // throws NotNormal

/// Realizes a subgroup as a standalone FiniteGroup over the parent
/// encodings.
GroupPtr subgroup_as_group(const Subgroup& h);

AbelianInvariants abelian_invariants(GroupPtr g);  // throws NotAbelian
int exponent(const FiniteGroup& g);

struct SearchConstraints {
  std::optional<bool> abelian;
  std::optional<int> exponent;
};

/// All subgroups of the target order generated by <= 2 elements and meeting
/// the constraints, deduplicated by member set.  Requires a table-backed
/// group of order <= search_cap.
std::vector<Subgroup> subgroup_search(GroupPtr g, std::size_t target_order,
                                      const SearchConstraints& c = {},
                                      std::size_t search_cap = FiniteGroup::kDefaultTableCap);

Subgroup frattini_subgroup(GroupPtr g);
int frattini_rank(GroupPtr g);

/// Preimages of a basis of G/Frattini(G); size d(G) by the basis theorem
/// for p-groups.  Deterministic.
std::vector<int> minimal_generating_set(GroupPtr g);

}  // namespace proplab
