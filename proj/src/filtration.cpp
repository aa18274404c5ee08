#include "proplab/filtration.hpp"

#include <algorithm>
#include <map>

#include "proplab/matrix_kernels.hpp"
#include "proplab/util.hpp"

namespace proplab {

FactorData make_factor(const GroupPtr& g, const Subgroup& h, const Subgroup& n) {
  for (int m : n.members()) {
    if (!h.contains(m)) throw Error("make_factor: lower term not inside upper term");
  }
  GroupPtr hg = subgroup_as_group(h);
  std::vector<int> n_in_h;
  for (int m : n.members()) {
    int idx = hg->index_of(g->encoding(m));
    if (idx < 0) throw OracleInconsistent("make_factor: member lookup failed");
    n_in_h.push_back(idx);
  }
  Subgroup n_sub(hg, std::move(n_in_h));
  auto q = quotient(hg, n_sub);

  FactorData fd;
  fd.factor = q.group;
  fd.proj.assign(g->order(), -1);
  for (int m : h.members()) {
    int hidx = hg->index_of(g->encoding(m));
    fd.proj[static_cast<std::size_t>(m)] = q.projection[static_cast<std::size_t>(hidx)];
  }
  return fd;
}

SimilarityStructure build_similarity_factors(GroupPtr g, std::vector<Subgroup> chain) {
  SimilarityStructure sim;
  sim.filtration = Filtration{g, std::move(chain)};
  const auto& ch = sim.filtration.chain;
  for (std::size_t j = 0; j + 1 < ch.size(); ++j) {
    sim.factors.push_back(make_factor(g, ch[j], ch[j + 1]));
  }
  sim.maps.assign(sim.factors.size(), std::nullopt);
  return sim;
}

namespace {

// Builds maps[j] from a per-parent-element image: src element x in chain[j-1]
// maps to the factor[j] coset given by target_of(x).  Verifies constancy on
// source cosets.
GroupHom connecting_map(const SimilarityStructure& sim, std::size_t j,
                        const std::function<int(int)>& target_of, const char* what) {
  const auto& src = sim.factors[j - 1];
  const auto& dst = sim.factors[j];
  const auto& upper = sim.filtration.chain[j - 1];
  std::vector<int> images(src.factor->order(), -1);
  for (int x : upper.members()) {
    int s = src.proj[static_cast<std::size_t>(x)];
    int t = target_of(x);
    if (t < 0) {
      throw NotWellDefined(std::string(what) + ": image of " +
                           to_hex(sim.filtration.group->encoding(x)) +
                           " misses the next level");
    }
    if (images[static_cast<std::size_t>(s)] < 0) {
      images[static_cast<std::size_t>(s)] = t;
    } else if (images[static_cast<std::size_t>(s)] != t) {
      throw NotWellDefined(std::string(what) + ": inconsistent on the coset of " +
                           to_hex(sim.filtration.group->encoding(x)));
    }
  }
  return GroupHom::from_full_map(src.factor, dst.factor, std::move(images));
}

}  // namespace

SimilarityStructure build_power_similarity(GroupPtr g, std::vector<Subgroup> chain,
                                           bool require_iso) {
  SimilarityStructure sim = build_similarity_factors(g, std::move(chain));
  const auto& ch = sim.filtration.chain;
  const std::int64_t p = g->prime();
  for (std::size_t j = 1; j + 1 < ch.size(); ++j) {
    const auto& lower_factor = sim.factors[j];
    const auto& level = ch[j];
    auto target_of = [&](int x) -> int {
      int y = g->power(x, p);
      if (!level.contains(y)) return -1;
      return lower_factor.proj[static_cast<std::size_t>(y)];
    };
    GroupHom phi = connecting_map(sim, j, target_of, "power map");
    if (require_iso && !phi.is_bijective()) {
      throw NotIso("power map between factors " + std::to_string(j) + " is not bijective");
    }
    sim.maps[j] = std::move(phi);
  }
  return sim;
}

SimilarityStructure build_tmap_similarity(GroupPtr g, std::vector<Subgroup> chain,
                                          std::int64_t p, int k) {
  SimilarityStructure sim = build_similarity_factors(g, std::move(chain));
  const auto& ch = sim.filtration.chain;
  SL2LambdaContext ctx{p, k};
  for (std::size_t j = 1; j + 1 < ch.size(); ++j) {
    // source cosets live in G_j/G_{j+1}: x = I + T^j A + higher; the image
    // coset is pinned by the residue I + T^{j+1} A mod T^{j+2}
    const int src_level = static_cast<int>(j);       // T-valuation of x - I
    const int dst_level = src_level + 1;
    const auto& lower_factor = sim.factors[j];
    const auto& level = ch[j];

    // residue (mod T^{dst_level+1}) -> factor coset, over the next level
    std::map<std::string, int> coset_of_residue;
    auto residue_key = [&](const MatT& m, int trunc) {
      std::string key;
      for (const auto& entry : m.a) {
        for (int t = 0; t <= trunc && t < k; ++t) {
          key.push_back(static_cast<char>(entry[static_cast<std::size_t>(t)]));
        }
      }
      return key;
    };
    for (int x : level.members()) {
      MatT m = ctx.decode(g->encoding(x));
      coset_of_residue.emplace(residue_key(m, dst_level),
                               lower_factor.proj[static_cast<std::size_t>(x)]);
    }

    auto target_of = [&](int x) -> int {
      MatT m = ctx.decode(g->encoding(x));
      MatT shifted = ctx.identity();
      for (int e = 0; e < 4; ++e) {
        shifted.a[static_cast<std::size_t>(e)][static_cast<std::size_t>(dst_level)] =
            m.a[static_cast<std::size_t>(e)][static_cast<std::size_t>(src_level)];
      }
      auto it = coset_of_residue.find(residue_key(shifted, dst_level));
      return it == coset_of_residue.end() ? -1 : it->second;
    };
    GroupHom phi = connecting_map(sim, j, target_of, "T-map");
    if (!phi.is_bijective()) {
      throw NotIso("T-map between factors " + std::to_string(j) + " is not bijective");
    }
    sim.maps[j] = std::move(phi);
  }
  return sim;
}

void attach_similarity_map(SimilarityStructure& sim, std::size_t slot,
                           const std::vector<std::pair<Encoding, Encoding>>& pairs) {
  if (slot == 0 || slot >= sim.factors.size()) throw Error("attach_similarity_map: bad slot");
  const auto& src = sim.factors[slot - 1];
  const auto& dst = sim.factors[slot];
  std::vector<int> images(src.factor->order(), -1);
  for (const auto& [from, to] : pairs) {
    int s = src.factor->index_of(from);
    int t = dst.factor->index_of(to);
    if (s < 0 || t < 0) throw NotWellDefined("map pair references unknown factor elements");
    if (images[static_cast<std::size_t>(s)] >= 0 && images[static_cast<std::size_t>(s)] != t) {
      throw NotWellDefined("conflicting images for " + to_hex(from));
    }
    images[static_cast<std::size_t>(s)] = t;
  }
  for (int v : images) {
    if (v < 0) throw NotWellDefined("map file leaves a factor element without an image");
  }
  sim.maps[slot] = GroupHom::from_full_map(src.factor, dst.factor, std::move(images));
}

Automorphism induced_on_quotient(const GroupPtr& g, const GroupPtr& q,
                                 const std::vector<int>& proj, const Automorphism& sigma) {
  std::vector<int> images(q->order(), -1);
  for (std::size_t x = 0; x < g->order(); ++x) {
    int s = proj[x];
    int t = proj[static_cast<std::size_t>(sigma.apply(static_cast<int>(x)))];
    if (images[static_cast<std::size_t>(s)] < 0) {
      images[static_cast<std::size_t>(s)] = t;
    } else if (images[static_cast<std::size_t>(s)] != t) {
      throw NotStable("automorphism does not respect the coset partition at " +
                      to_hex(g->encoding(static_cast<int>(x))));
    }
  }
  return Automorphism::from_full_map(q, std::move(images));
}

Automorphism induced_on_factor(const GroupPtr& g, const FactorData& fd, const Subgroup& h,
                               const Automorphism& sigma) {
  if (sigma.group().get() != g.get() || h.parent().get() != g.get()) {
    throw Error("induced_on_factor: mismatched group");
  }
  std::vector<int> images(fd.factor->order(), -1);
  for (int x : h.members()) {
    int sx = sigma.apply(x);
    if (!h.contains(sx)) throw NotStable("automorphism moves the upper chain term");
    int s = fd.proj[static_cast<std::size_t>(x)];
    int t = fd.proj[static_cast<std::size_t>(sx)];
    if (images[static_cast<std::size_t>(s)] < 0) {
      images[static_cast<std::size_t>(s)] = t;
    } else if (images[static_cast<std::size_t>(s)] != t) {
      throw NotStable("automorphism does not respect the factor cosets");
    }
  }
  return Automorphism::from_full_map(fd.factor, std::move(images));
}

}  // namespace proplab
