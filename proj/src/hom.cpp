#include "proplab/hom.hpp"

#include <algorithm>
#include <numeric>

#include "proplab/util.hpp"

namespace proplab {

GroupHom::GroupHom(GroupPtr s, GroupPtr t, std::vector<int> images)
    : source_(std::move(s)), target_(std::move(t)), images_(std::move(images)) {}

void GroupHom::validate() const {
  if (images_.size() != source_->order()) throw NotAHomomorphism("image map size mismatch");
  if (images_[static_cast<std::size_t>(source_->identity())] != target_->identity()) {
    throw NotAHomomorphism("identity does not map to the identity");
  }
  for (std::size_t a = 0; a < source_->order(); ++a) {
    for (int gpos = 0; gpos < static_cast<int>(source_->generators().size()); ++gpos) {
      int gen = source_->generators()[static_cast<std::size_t>(gpos)];
      int lhs = images_[static_cast<std::size_t>(source_->op(static_cast<int>(a), gen))];
      int rhs = target_->op(images_[a], images_[static_cast<std::size_t>(gen)]);
      if (lhs != rhs) {
        throw NotAHomomorphism("image(a*g) != image(a)*image(g) at a=" +
                               to_hex(source_->encoding(static_cast<int>(a))) +
                               " g=" + to_hex(source_->encoding(gen)));
      }
    }
  }
}

GroupHom GroupHom::from_images(GroupPtr source, GroupPtr target,
                               const std::vector<int>& gen_images) {
  if (gen_images.size() != source->generators().size()) {
    throw NotAHomomorphism("one image required per source generator");
  }
  std::vector<int> images(source->order(), -1);
  images[static_cast<std::size_t>(source->identity())] = target->identity();
  const auto& defs = source->definitions();
  for (std::size_t i = 0; i < source->order(); ++i) {
    const auto& d = defs[i];
    if (d.parent < 0) continue;
    images[i] = target->op(images[static_cast<std::size_t>(d.parent)],
                           gen_images[static_cast<std::size_t>(d.gen_pos)]);
  }
  GroupHom hom(std::move(source), std::move(target), std::move(images));
  hom.validate();
  return hom;
}

GroupHom GroupHom::from_full_map(GroupPtr source, GroupPtr target, std::vector<int> images) {
  GroupHom hom(std::move(source), std::move(target), std::move(images));
  hom.validate();
  return hom;
}

bool GroupHom::is_bijective() const {
  if (source_->order() != target_->order()) return false;
  std::vector<char> hit(target_->order(), 0);
  for (int im : images_) {
    if (hit[static_cast<std::size_t>(im)]) return false;
    hit[static_cast<std::size_t>(im)] = 1;
  }
  return true;
}

bool GroupHom::is_identity() const {
  if (source_.get() != target_.get()) return false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

GroupHom GroupHom::inverse() const {
  if (!is_bijective()) throw NotIso("inverse of a non-bijective map");
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  }
  return GroupHom(target_, source_, std::move(inv));
}

Subgroup GroupHom::kernel() const {
  std::vector<int> members;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] == target_->identity()) members.push_back(static_cast<int>(i));
  }
  return Subgroup(source_, std::move(members));
}

namespace {

int permutation_order(const std::vector<int>& images) {
  std::vector<char> seen(images.size(), 0);
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = static_cast<std::size_t>(images[j]);
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return static_cast<int>(ord);
}

}  // namespace

Automorphism Automorphism::identity(GroupPtr g) {
  std::vector<int> images(g->order());
  std::iota(images.begin(), images.end(), 0);
  return {GroupHom::from_full_map(g, g, std::move(images)), 1};
}

Automorphism Automorphism::from_images(GroupPtr g, const std::vector<int>& gen_images) {
  GroupHom hom = GroupHom::from_images(g, g, gen_images);
  if (!hom.is_bijective()) throw NotIso("generator images do not define a bijection");
  int ord = permutation_order(hom.images());
  return {std::move(hom), ord};
}

Automorphism Automorphism::from_full_map(GroupPtr g, std::vector<int> images) {
  GroupHom hom = GroupHom::from_full_map(g, g, std::move(images));
  if (!hom.is_bijective()) throw NotIso("image map is not a bijection");
  int ord = permutation_order(hom.images());
  return {std::move(hom), ord};
}

Subgroup fixed_subgroup(GroupPtr g, const Automorphism& sigma) {
  if (sigma.group().get() != g.get()) throw Error("fixed_subgroup: automorphism of another group");
  std::vector<int> members;
  for (std::size_t i = 0; i < g->order(); ++i) {
    if (sigma.apply(static_cast<int>(i)) == static_cast<int>(i)) {
      members.push_back(static_cast<int>(i));
    }
  }
  return Subgroup(std::move(g), std::move(members));
}

namespace {

// Closure of a generator prefix with definitions local to the sub-closure.
struct PrefixClosure {
  std::vector<int> elts;                      // parent indices, discovery order
  std::vector<int> pos_of;                    // parent index -> position or -1
  std::vector<FiniteGroup::Definition> defs;  // positions/prefix-generator slots
};

PrefixClosure close_prefix(const FiniteGroup& g, const std::vector<int>& gens) {
  PrefixClosure pc;
  pc.pos_of.assign(g.order(), -1);
  auto push = [&](int x, int parent_pos, int gen_slot) {
    if (pc.pos_of[static_cast<std::size_t>(x)] >= 0) return;
    pc.pos_of[static_cast<std::size_t>(x)] = static_cast<int>(pc.elts.size());
    pc.elts.push_back(x);
    pc.defs.push_back({parent_pos, gen_slot});
  };
  push(g.identity(), -1, -1);
  for (std::size_t i = 0; i < pc.elts.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      push(g.op(pc.elts[i], gens[s]), static_cast<int>(i), static_cast<int>(s));
    }
  }
  return pc;
}

// Extends candidate images of the prefix generators across the prefix
// closure; returns false on a homomorphism conflict.
bool extend_prefix(const FiniteGroup& g, const PrefixClosure& pc, const std::vector<int>& gens,
                   const std::vector<int>& cand, std::vector<int>& img) {
  img.assign(pc.elts.size(), -1);
  img[0] = g.identity();
  for (std::size_t pos = 1; pos < pc.elts.size(); ++pos) {
    const auto& d = pc.defs[pos];
    img[pos] = g.op(img[static_cast<std::size_t>(d.parent)],
                    cand[static_cast<std::size_t>(d.gen_pos)]);
  }
  for (std::size_t pos = 0; pos < pc.elts.size(); ++pos) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      int prod_pos = pc.pos_of[static_cast<std::size_t>(g.op(pc.elts[pos], gens[s]))];
      if (img[static_cast<std::size_t>(prod_pos)] != g.op(img[pos], cand[s])) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Automorphism> enumerate_automorphisms(GroupPtr g, std::size_t cap) {
  if (g->order() > cap) throw CapExceeded("enumerate_automorphisms: order above cap");
  if (!g->table_backed()) throw CapExceeded("enumerate_automorphisms needs a table-backed group");
  if (g->order() == 1) return {Automorphism::identity(g)};

  auto mingens = minimal_generating_set(g);
  const std::size_t d = mingens.size();

  std::vector<PrefixClosure> levels;
  for (std::size_t j = 1; j <= d; ++j) {
    levels.push_back(close_prefix(*g, {mingens.begin(), mingens.begin() + j}));
  }

  std::vector<std::vector<int>> candidates(d);
  for (std::size_t j = 0; j < d; ++j) {
    int want = g->element_order(mingens[j]);
    for (std::size_t x = 0; x < g->order(); ++x) {
      if (g->element_order(static_cast<int>(x)) == want) {
        candidates[j].push_back(static_cast<int>(x));
      }
    }
  }

  std::vector<Automorphism> result;
  std::vector<int> cand(d, -1);
  std::vector<int> img;
  std::function<void(std::size_t)> dfs = [&](std::size_t j) {
    std::vector<int> prefix_gens(mingens.begin(), mingens.begin() + j + 1);
    for (int c : candidates[j]) {
      cand[j] = c;
      std::vector<int> cand_prefix(cand.begin(), cand.begin() + j + 1);
      if (!extend_prefix(*g, levels[j], prefix_gens, cand_prefix, img)) continue;
      if (j + 1 < d) {
        dfs(j + 1);
        continue;
      }
      // full tuple: realize as a map on the whole group and keep bijections
      std::vector<int> images(g->order(), -1);
      for (std::size_t pos = 0; pos < levels[j].elts.size(); ++pos) {
        images[static_cast<std::size_t>(levels[j].elts[pos])] = img[pos];
      }
      std::vector<char> hit(g->order(), 0);
      bool bij = true;
      for (int v : images) {
        if (v < 0 || hit[static_cast<std::size_t>(v)]) {
          bij = false;
          break;
        }
        hit[static_cast<std::size_t>(v)] = 1;
      }
      if (!bij) continue;
      result.push_back(Automorphism::from_full_map(g, std::move(images)));
    }
  };
  dfs(0);
  return result;
}

bool is_characteristic(GroupPtr g, const Subgroup& n, const std::vector<Automorphism>& auts) {
  if (n.parent().get() != g.get()) throw Error("is_characteristic: subgroup of another group");
  for (const auto& sigma : auts) {
    for (int m : n.members()) {
      if (!n.contains(sigma.apply(m))) return false;
    }
  }
  return true;
}

Automorphism inversion_automorphism(GroupPtr g) {
  std::vector<int> images(g->order());
  for (std::size_t i = 0; i < g->order(); ++i) images[i] = g->inv(static_cast<int>(i));
  return Automorphism::from_full_map(std::move(g), std::move(images));
}

Automorphism conjugation_automorphism(GroupPtr g, int by) {
  std::vector<int> images(g->order());
  for (std::size_t i = 0; i < g->order(); ++i) images[i] = g->conj(static_cast<int>(i), by);
  return Automorphism::from_full_map(std::move(g), std::move(images));
}

}  // namespace proplab
