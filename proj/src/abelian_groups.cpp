#include "proplab/abelian_groups.hpp"

#include <algorithm>

#include "proplab/util.hpp"

namespace proplab {

namespace {

struct Layout {
  std::int64_t p;
  std::vector<std::int64_t> moduli;
  int width;  // bytes per component

  Encoding encode(const std::vector<std::int64_t>& v) const {
    Encoding out;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      std::int64_t x = v[i];
      for (int b = width - 1; b >= 0; --b) {
        out.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
      }
    }
    return out;
  }

  std::vector<std::int64_t> decode(const Encoding& e) const {
    std::vector<std::int64_t> v(moduli.size(), 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      std::int64_t x = 0;
      for (int b = 0; b < width; ++b) x = (x << 8) | static_cast<unsigned char>(e[k++]);
      v[i] = x;
    }
    return v;
  }
};

}  // namespace

GroupPtr abelian_p_group(std::int64_t p, const std::vector<int>& exponents,
                         const FiniteGroup::Options& opt) {
  if (exponents.empty()) throw Error("abelian_p_group: no components");
  Layout lay;
  lay.p = p;
  std::int64_t maxmod = 0;
  for (int e : exponents) {
    lay.moduli.push_back(ipow(p, e));
    maxmod = std::max(maxmod, lay.moduli.back());
  }
  lay.width = maxmod <= 256 ? 1 : 2;
  if (maxmod > 65536) throw CapExceeded("abelian_p_group: component too large");

  GroupOracle oracle;
  oracle.compose = [lay](const Encoding& a, const Encoding& b) {
    auto va = lay.decode(a);
    auto vb = lay.decode(b);
    for (std::size_t i = 0; i < va.size(); ++i) va[i] = (va[i] + vb[i]) % lay.moduli[i];
    return lay.encode(va);
  };
  oracle.invert = [lay](const Encoding& a) {
    auto v = lay.decode(a);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (lay.moduli[i] - v[i]) % lay.moduli[i];
    return lay.encode(v);
  };

  std::vector<Encoding> gens;
  for (std::size_t i = 0; i < lay.moduli.size(); ++i) {
    std::vector<std::int64_t> v(lay.moduli.size(), 0);
    v[i] = 1;
    gens.push_back(lay.encode(v));
  }
  Encoding id = lay.encode(std::vector<std::int64_t>(lay.moduli.size(), 0));
  return FiniteGroup::closure(id, std::move(gens), std::move(oracle), p, opt);
}

std::vector<Subgroup> power_chain(GroupPtr g) {
  std::vector<Subgroup> chain;
  chain.push_back(Subgroup::whole(g));
  while (!chain.back().is_trivial()) {
    std::vector<int> powered;
    for (int m : chain.back().members()) powered.push_back(g->power(m, g->prime()));
    Subgroup next = Subgroup::generated(g, powered);
    if (next.same_members(chain.back())) {
      throw OracleInconsistent("power chain stabilized above the trivial subgroup");
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

}  // namespace proplab
