#pragma once

#include <optional>
#include <vector>

#include "proplab/hom.hpp"

namespace proplab {

/// Descending normal chain G = G_1 >= G_2 >= ... >= G_L = 1.
struct Filtration {
  GroupPtr group;
  std::vector<Subgroup> chain;

  std::size_t length() const { return chain.size(); }
};

/// One consecutive factor chain[j]/chain[j+1], realized as a standalone
/// group with a projection defined on the members of chain[j] (-1
/// elsewhere).
struct FactorData {
  GroupPtr factor;
  std::vector<int> proj;  // parent element index -> factor index
};

FactorData make_factor(const GroupPtr& g, const Subgroup& h, const Subgroup& n);

/// A filtration together with the connecting maps between consecutive
/// factors: maps[j] sends factors[j-1] -> factors[j] (maps[0] is unused).
/// Maps may be absent for chains that only need per-level analysis.
struct SimilarityStructure {
  Filtration filtration;
  std::vector<FactorData> factors;
  std::vector<std::optional<GroupHom>> maps;
};

/// Factors only, no connecting maps.
SimilarityStructure build_similarity_factors(GroupPtr g, std::vector<Subgroup> chain);

/// Connecting maps induced by x -> x^p.  Throws NotWellDefined when a p-th
/// power leaves the expected level or the induced map is inconsistent on a
/// coset; throws NotIso when require_iso is set and a map fails to be
/// bijective.
SimilarityStructure build_power_similarity(GroupPtr g, std::vector<Subgroup> chain,
                                           bool require_iso);

/// Connecting maps for the Lambda congruence kernel: the coefficient shift
/// (I + T^{i-1} A mod T^i) -> (I + T^i A mod T^{i+1}).
SimilarityStructure build_tmap_similarity(GroupPtr g, std::vector<Subgroup> chain,
                                          std::int64_t p, int k);

/// Attach an externally supplied map (full element pairing) as maps[slot].
void attach_similarity_map(SimilarityStructure& sim, std::size_t slot,
                           const std::vector<std::pair<Encoding, Encoding>>& pairs);

/// sigma induced on a quotient G/N given the projection index map; checks
/// that sigma respects the coset partition (throws NotStable otherwise).
Automorphism induced_on_quotient(const GroupPtr& g, const GroupPtr& q,
                                 const std::vector<int>& proj, const Automorphism& sigma);

/// sigma induced on a factor H/N; requires sigma(H) = H and sigma(N) = N.
Automorphism induced_on_factor(const GroupPtr& g, const FactorData& fd, const Subgroup& h,
                               const Automorphism& sigma);

}  // namespace proplab
