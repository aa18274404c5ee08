#pragma once

#include <vector>

#include "proplab/finite_group.hpp"

namespace proplab {

/// A homomorphism between finite groups, stored as a per-element index map.
/// Construction always validates: image(a*g) = image(a)*image(g) for every
/// element a and generator g, which pins the homomorphism property on all
/// pairs by induction along the closure order.
class GroupHom {
 public:
  /// Unique extension of generator images (aligned with
  /// source->generators()).  Throws NotAHomomorphism on conflict.
  static GroupHom from_images(GroupPtr source, GroupPtr target,
                              const std::vector<int>& gen_images);

  static GroupHom from_full_map(GroupPtr source, GroupPtr target, std::vector<int> images);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  const std::vector<int>& images() const { return images_; }
  int apply(int i) const { return images_[static_cast<std::size_t>(i)]; }

  bool is_bijective() const;
  bool is_identity() const;
  GroupHom inverse() const;  // throws NotIso when not bijective
  Subgroup kernel() const;

 private:
  GroupHom(GroupPtr s, GroupPtr t, std::vector<int> images);
  void validate() const;

  GroupPtr source_, target_;
  std::vector<int> images_;
};

/// A bijective endomorphism together with its order as a permutation of the
/// element set.
struct Automorphism {
  GroupHom hom;
  int order = 1;

  static Automorphism identity(GroupPtr g);
  static Automorphism from_images(GroupPtr g, const std::vector<int>& gen_images);
  static Automorphism from_full_map(GroupPtr g, std::vector<int> images);

  int apply(int i) const { return hom.apply(i); }
  const GroupPtr& group() const { return hom.source(); }
  bool is_identity() const { return hom.is_identity(); }
};

Subgroup fixed_subgroup(GroupPtr g, const Automorphism& sigma);

/// All automorphisms, by backtracking over images of a minimal generating
/// set with element-order pruning; each candidate tuple is validated by
/// homomorphism extension.  Requires a table-backed group of order <= cap.
std::vector<Automorphism> enumerate_automorphisms(GroupPtr g, std::size_t cap = 512);

/// True iff every supplied automorphism maps the subgroup onto itself.
bool is_characteristic(GroupPtr g, const Subgroup& n, const std::vector<Automorphism>& auts);

Automorphism inversion_automorphism(GroupPtr g);  // NotAHomomorphism unless abelian
Automorphism conjugation_automorphism(GroupPtr g, int by);

}  // namespace proplab
