#include "proplab/tree_wreath.hpp"

#include <algorithm>

#include "proplab/util.hpp"

namespace proplab {

namespace {

// node (level, pos) -> flat index; levels 0..d-1, pos in [0, p^level)
std::size_t node_index(int p, int level, std::int64_t pos) {
  std::int64_t base = 0, width = 1;
  for (int l = 0; l < level; ++l) {
    base += width;
    width *= p;
  }
  return static_cast<std::size_t>(base + pos);
}

void compose_node(const TreePortrait& a, const TreePortrait& b, TreePortrait& out, int level,
                  std::int64_t pa, std::int64_t pb, std::int64_t po) {
  const int p = a.p;
  int ra = a.labels[node_index(p, level, pa)];
  int rb = b.labels[node_index(p, level, pb)];
  out.labels[node_index(p, level, po)] = (ra + rb) % p;
  if (level + 1 >= a.d) return;
  // out_j = a_j o b_{j - ra}: the right factor's subtrees are re-indexed by
  // the left factor's rotation
  for (int j = 0; j < p; ++j) {
    int jb = ((j - ra) % p + p) % p;
    compose_node(a, b, out, level + 1, pa * p + j, pb * p + jb, po * p + j);
  }
}

void invert_node(const TreePortrait& a, TreePortrait& out, int level, std::int64_t pa,
                 std::int64_t po) {
  const int p = a.p;
  int r = a.labels[node_index(p, level, pa)];
  out.labels[node_index(p, level, po)] = (p - r) % p;
  if (level + 1 >= a.d) return;
  for (int m = 0; m < p; ++m) {
    invert_node(a, out, level + 1, pa * p + ((m + r) % p), po * p + m);
  }
}

}  // namespace

std::size_t portrait_label_count(int p, int d) {
  std::size_t n = 0, width = 1;
  for (int l = 0; l < d; ++l) {
    n += width;
    width *= static_cast<std::size_t>(p);
  }
  return n;
}

TreePortrait portrait_identity(int p, int d) {
  TreePortrait a;
  a.p = p;
  a.d = d;
  a.labels.assign(portrait_label_count(p, d), 0);
  return a;
}

TreePortrait portrait_compose(const TreePortrait& a, const TreePortrait& b) {
  if (a.p != b.p || a.d != b.d) throw MixedParameters("portraits with different p or d");
  TreePortrait out = portrait_identity(a.p, a.d);
  compose_node(a, b, out, 0, 0, 0, 0);
  return out;
}

TreePortrait portrait_invert(const TreePortrait& a) {
  TreePortrait out = portrait_identity(a.p, a.d);
  invert_node(a, out, 0, 0, 0);
  return out;
}

std::vector<int> portrait_apply(const TreePortrait& a, const std::vector<int>& leaf) {
  if (static_cast<int>(leaf.size()) != a.d) throw Error("portrait_apply: wrong path length");
  std::vector<int> out(leaf.size());
  std::int64_t pos = 0;
  for (int level = 0; level < a.d; ++level) {
    int r = a.labels[node_index(a.p, level, pos)];
    int target = (leaf[static_cast<std::size_t>(level)] + r) % a.p;
    out[static_cast<std::size_t>(level)] = target;
    pos = pos * a.p + target;  // recurse into the target child
  }
  return out;
}

Encoding portrait_encode(const TreePortrait& a) {
  Encoding e;
  e.reserve(a.labels.size());
  for (int l : a.labels) e.push_back(static_cast<char>(l));
  return e;
}

TreePortrait portrait_decode(int p, int d, const Encoding& e) {
  TreePortrait a;
  a.p = p;
  a.d = d;
  if (e.size() != portrait_label_count(p, d)) throw Error("portrait_decode: bad length");
  for (char c : e) a.labels.push_back(static_cast<unsigned char>(c));
  return a;
}

std::string portrait_text(const TreePortrait& a) {
  std::string out;
  std::size_t k = 0, width = 1;
  for (int level = 0; level < a.d; ++level) {
    if (level) out += "/";
    for (std::size_t i = 0; i < width; ++i) {
      if (i) out += ",";
      out += std::to_string(a.labels[k++]);
    }
    width *= static_cast<std::size_t>(a.p);
  }
  return out;
}

TreePortrait portrait_parse(int p, int d, const std::string& text) {
  TreePortrait a = portrait_identity(p, d);
  std::vector<int> labels;
  std::string cur;
  auto flush = [&]() {
    labels.push_back(static_cast<int>(((parse_int(cur) % p) + p) % p));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == '/') {
      flush();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  flush();
  if (labels.size() != a.labels.size()) {
    throw SyntaxError("portrait needs " + std::to_string(a.labels.size()) + " labels, got " +
                      std::to_string(labels.size()));
  }
  a.labels = std::move(labels);
  return a;
}

std::vector<int> activity_abelianization(const TreePortrait& a) {
  std::vector<int> sums(static_cast<std::size_t>(a.d), 0);
  std::size_t k = 0, width = 1;
  for (int level = 0; level < a.d; ++level) {
    for (std::size_t i = 0; i < width; ++i) {
      sums[static_cast<std::size_t>(level)] =
          (sums[static_cast<std::size_t>(level)] + a.labels[k++]) % a.p;
    }
    width *= static_cast<std::size_t>(a.p);
  }
  return sums;
}

GroupPtr wreath_group(int p, int d, const FiniteGroup::Options& opt) {
  if (!is_prime(p)) throw BadPrime("p=" + std::to_string(p));
  if (d < 1) throw Error("wreath_group: d must be >= 1");
  const std::size_t nlabels = portrait_label_count(p, d);
  std::int64_t expected = 1;
  for (std::size_t i = 0; i < nlabels; ++i) {
    expected *= p;
    if (expected > static_cast<std::int64_t>(opt.cap)) {
      throw CapExceeded("wreath group order exceeds cap");
    }
  }

  GroupOracle oracle;
  oracle.compose = [p, d](const Encoding& a, const Encoding& b) {
    return portrait_encode(portrait_compose(portrait_decode(p, d, a), portrait_decode(p, d, b)));
  };
  oracle.invert = [p, d](const Encoding& a) {
    return portrait_encode(portrait_invert(portrait_decode(p, d, a)));
  };

  // one generator per level: the rotation of the leftmost node at that level
  // generates together with deeper ones (verified by the closure order)
  std::vector<Encoding> gens;
  for (int level = 0; level < d; ++level) {
    TreePortrait g = portrait_identity(p, d);
    g.labels[node_index(p, level, 0)] = 1;
    gens.push_back(portrait_encode(g));
  }
  Encoding id = portrait_encode(portrait_identity(p, d));
  GroupPtr g = FiniteGroup::closure(id, std::move(gens), std::move(oracle), p, opt);
  if (g->order() != static_cast<std::size_t>(expected)) {
    throw OracleInconsistent("wreath group order mismatch: got " + std::to_string(g->order()) +
                             " expected " + std::to_string(expected));
  }
  return g;
}

std::vector<Subgroup> level_stabilizer_chain(const GroupPtr& g, int p, int d) {
  std::vector<Subgroup> chain;
  for (int level = 0; level <= d; ++level) {
    std::size_t cutoff = portrait_label_count(p, level);  // labels above `level`
    std::vector<int> members;
    for (std::size_t i = 0; i < g->order(); ++i) {
      const Encoding& e = g->encoding(static_cast<int>(i));
      bool stab = true;
      for (std::size_t k = 0; k < cutoff; ++k) {
        if (e[k] != 0) {
          stab = false;
          break;
        }
      }
      if (stab) members.push_back(static_cast<int>(i));
    }
    chain.emplace_back(g, std::move(members));
  }
  return chain;
}

}  // namespace proplab
