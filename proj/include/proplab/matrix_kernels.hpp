#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "proplab/finite_group.hpp"
#include "proplab/hom.hpp"

namespace proplab {

/// 2x2 matrix over Z/p^k with determinant 1, entries as least nonnegative
/// residues in row-major order.
struct MatZ {
  std::array<std::int64_t, 4> a{};  // [m00, m01, m10, m11]
};

/// 2x2 matrix over F_p[T]/(T^k) with determinant 1; each entry holds k
/// coefficients, low degree first.
struct MatT {
  std::array<std::vector<int>, 4> a;
};

struct SL2ZpContext {
  std::int64_t p = 0;
  int k = 0;
  std::int64_t mod = 0;

  MatZ mul(const MatZ& x, const MatZ& y) const;
  MatZ inv(const MatZ& x) const;  // adjugate; exact since det = 1
  std::int64_t det(const MatZ& x) const;
  MatZ identity() const;
  Encoding encode(const MatZ& x) const;
  MatZ decode(const Encoding& e) const;
  int enc_width() const { return mod <= 256 ? 1 : 2; }
};

struct SL2LambdaContext {
  std::int64_t p = 0;
  int k = 0;

  MatT mul(const MatT& x, const MatT& y) const;
  MatT inv(const MatT& x) const;
  std::vector<int> det(const MatT& x) const;
  MatT identity() const;
  Encoding encode(const MatT& x) const;
  MatT decode(const Encoding& e) const;
};

/// ker(SL2(Z/p^k) -> SL2(F_p)): matrices congruent to the identity mod p;
/// order p^{3(k-1)}.  Rejects p = 2.
GroupPtr kernel_group_zp(std::int64_t p, int k,
                         std::size_t table_cap = FiniteGroup::kDefaultTableCap);

/// ker(SL2(F_p[T]/T^k) -> SL2(F_p)): matrices congruent to the identity
/// mod T; order p^{3(k-1)}.  Rejects p = 2.
GroupPtr kernel_group_lambda(std::int64_t p, int k,
                             std::size_t table_cap = FiniteGroup::kDefaultTableCap);

enum class KernelKind { Zp, Lambda };

/// Congruence chain G_1 >= G_2 >= ... >= G_k = 1, level i holding the
/// matrices congruent to the identity mod p^i (resp. mod T^i).
std::vector<Subgroup> congruence_chain(const GroupPtr& g, KernelKind kind, std::int64_t p, int k);

/// Conjugation by an ambient matrix (any invertible constant of the ring);
/// the matrix need not lie in the kernel.  Throws NotIso if conjugation
/// leaves the group.
Automorphism ambient_conjugation_zp(const GroupPtr& g, std::int64_t p, int k, const MatZ& c);
Automorphism ambient_conjugation_lambda(const GroupPtr& g, std::int64_t p, int k, const MatT& c);

/// Constant matrices commonly used as order-2 symmetries: diag(1,-1) and
/// [[0,1],[-1,0]] lifted to the ambient ring.
MatZ diag_one_minus_one_zp(std::int64_t p, int k);
MatT diag_one_minus_one_lambda(std::int64_t p, int k);
MatZ rotation_zp(std::int64_t p, int k);
MatT rotation_lambda(std::int64_t p, int k);

}  // namespace proplab
