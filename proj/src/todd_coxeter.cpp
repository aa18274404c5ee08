#include "proplab/todd_coxeter.hpp"

#include <algorithm>
#include <deque>

#include "proplab/util.hpp"

namespace proplab {

namespace {

constexpr int inv_col(int letter) { return letter ^ 1; }

struct Enumerator {
  int ncols;
  TCLimits limits;
  std::vector<std::vector<int>> tab;
  std::vector<int> rep;
  std::size_t defined = 1;
  std::size_t live = 1;
  std::size_t steps = 0;

  explicit Enumerator(int ngens, const TCLimits& lim) : ncols(2 * ngens), limits(lim) {
    tab.emplace_back(ncols, -1);
    rep.push_back(0);
  }

  int find(int c) {
    while (rep[static_cast<std::size_t>(c)] != c) {
      rep[static_cast<std::size_t>(c)] = rep[static_cast<std::size_t>(rep[static_cast<std::size_t>(c)])];
      c = rep[static_cast<std::size_t>(c)];
    }
    return c;
  }

  int lookup(int c, int col) {
    int v = tab[static_cast<std::size_t>(c)][static_cast<std::size_t>(col)];
    return v < 0 ? -1 : find(v);
  }

  void bump_steps() {
    if (++steps > limits.max_steps) throw LimitExceeded("enumeration exceeded the step limit");
  }

  int new_coset() {
    if (defined + 1 > limits.max_cosets) {
      throw LimitExceeded("enumeration exceeded " + std::to_string(limits.max_cosets) +
                          " cosets");
    }
    ++defined;
    ++live;
    tab.emplace_back(ncols, -1);
    rep.push_back(static_cast<int>(tab.size()) - 1);
    return static_cast<int>(tab.size()) - 1;
  }

  void set_edge(int c, int col, int d) {
    tab[static_cast<std::size_t>(c)][static_cast<std::size_t>(col)] = d;
    tab[static_cast<std::size_t>(d)][static_cast<std::size_t>(inv_col(col))] = c;
  }

  void join(int a, int b) {
    std::deque<std::pair<int, int>> queue{{a, b}};
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      bump_steps();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      rep[static_cast<std::size_t>(y)] = x;
      --live;
      for (int col = 0; col < ncols; ++col) {
        int z = tab[static_cast<std::size_t>(y)][static_cast<std::size_t>(col)];
        if (z < 0) continue;
        z = find(z);
        int w = lookup(x, col);
        if (w < 0) {
          tab[static_cast<std::size_t>(x)][static_cast<std::size_t>(col)] = z;
          int back = lookup(z, inv_col(col));
          if (back < 0) {
            tab[static_cast<std::size_t>(z)][static_cast<std::size_t>(inv_col(col))] = x;
          } else if (back != x) {
            queue.emplace_back(back, x);
          }
        } else if (w != z) {
          queue.emplace_back(w, z);
        }
      }
    }
  }

  // Traces `word` from coset c, defining cosets to close the gap; ends with
  // the trace closing back at c (deduction or coincidence).
  void scan_and_fill(int c, const std::vector<int>& word) {
    if (word.empty()) return;
    const int r = static_cast<int>(word.size());
    while (true) {
      bump_steps();
      c = find(c);
      int f = c, i = 0;
      while (i < r) {
        int next = lookup(f, word[static_cast<std::size_t>(i)]);
        if (next < 0) break;
        f = next;
        ++i;
      }
      if (i == r) {
        if (f != c) join(f, c);
        return;
      }
      int b = c, j = r - 1;
      while (j >= i) {
        int prev = lookup(b, inv_col(word[static_cast<std::size_t>(j)]));
        if (prev < 0) break;
        b = prev;
        --j;
      }
      if (j < i) {
        if (f != b) join(f, b);
        return;
      }
      if (j == i) {
        set_edge(f, word[static_cast<std::size_t>(i)], b);
        return;
      }
      int d = new_coset();
      set_edge(f, word[static_cast<std::size_t>(i)], d);
    }
  }
};

}  // namespace

bool CosetTable::closed() const {
  for (const auto& row : rows) {
    for (int v : row) {
      if (v < 0) return false;
    }
  }
  return true;
}

void CosetTable::verify(const Presentation& p, const std::vector<Word>& subgroup_words) const {
  if (!closed()) throw RelatorViolation("table is not total");
  const int n = static_cast<int>(rows.size());
  for (int c = 0; c < n; ++c) {
    for (int col = 0; col < 2 * ngens; ++col) {
      int d = rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(col)];
      if (d < 0 || d >= n || rows[static_cast<std::size_t>(d)][static_cast<std::size_t>(inv_col(col))] != c) {
        throw RelatorViolation("table action is not a permutation pair");
      }
    }
  }
  auto trace = [&](int c, const std::vector<int>& letters) {
    for (int l : letters) c = rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(l)];
    return c;
  };
  for (const auto& rel : p.relators) {
    auto letters = rel.letters();
    for (int c = 0; c < n; ++c) {
      if (trace(c, letters) != c) throw RelatorViolation("relator does not close at a coset");
    }
  }
  for (const auto& w : subgroup_words) {
    if (trace(0, w.letters()) != 0) {
      throw RelatorViolation("subgroup generator moves the subgroup coset");
    }
  }
}

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_words,
                        const TCLimits& limits) {
  if (limits.max_cosets == 0 || limits.max_steps == 0) throw Error("todd_coxeter: zero limits");
  for (const auto& w : subgroup_words) {
    for (auto [g, e] : w.syms) {
      if (g < 0 || g >= static_cast<int>(p.generators.size())) {
        throw UndeclaredGenerator("subgroup word uses generator #" + std::to_string(g));
      }
    }
  }

  Enumerator en(static_cast<int>(p.generators.size()), limits);
  std::vector<std::vector<int>> rel_letters;
  for (const auto& r : p.relators) rel_letters.push_back(r.letters());

  for (const auto& w : subgroup_words) en.scan_and_fill(0, w.letters());

  // scan every live coset against every relator, then complete its row;
  // repeat until a full pass changes nothing
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < en.tab.size(); ++c) {
      if (en.find(static_cast<int>(c)) != static_cast<int>(c)) continue;
      std::size_t defined_before = en.defined;
      std::size_t live_before = en.live;
      for (const auto& letters : rel_letters) {
        en.scan_and_fill(static_cast<int>(c), letters);
        if (en.find(static_cast<int>(c)) != static_cast<int>(c)) break;  // died
      }
      if (en.find(static_cast<int>(c)) == static_cast<int>(c)) {
        for (int col = 0; col < en.ncols; ++col) {
          if (en.lookup(static_cast<int>(c), col) < 0) {
            int d = en.new_coset();
            en.set_edge(static_cast<int>(c), col, d);
          }
        }
      }
      if (en.defined != defined_before || en.live != live_before) changed = true;
    }
  }

  // compress live cosets, resolving stale entries through the union-find
  std::vector<int> newid(en.tab.size(), -1);
  int live_count = 0;
  for (std::size_t c = 0; c < en.tab.size(); ++c) {
    if (en.find(static_cast<int>(c)) == static_cast<int>(c)) newid[c] = live_count++;
  }
  std::vector<std::vector<int>> compact(static_cast<std::size_t>(live_count),
                                        std::vector<int>(static_cast<std::size_t>(en.ncols), -1));
  for (std::size_t c = 0; c < en.tab.size(); ++c) {
    if (newid[c] < 0) continue;
    for (int col = 0; col < en.ncols; ++col) {
      int v = en.lookup(static_cast<int>(c), col);
      compact[static_cast<std::size_t>(newid[c])][static_cast<std::size_t>(col)] =
          v < 0 ? -1 : newid[static_cast<std::size_t>(v)];
    }
  }

  // standardize: breadth-first renumbering scanning columns in order
  std::vector<int> order(static_cast<std::size_t>(live_count), -1);
  std::vector<int> bfs;
  order[0] = 0;
  bfs.push_back(0);
  for (std::size_t q = 0; q < bfs.size(); ++q) {
    for (int col = 0; col < en.ncols; ++col) {
      int d = compact[static_cast<std::size_t>(bfs[q])][static_cast<std::size_t>(col)];
      if (d >= 0 && order[static_cast<std::size_t>(d)] < 0) {
        order[static_cast<std::size_t>(d)] = static_cast<int>(bfs.size());
        bfs.push_back(d);
      }
    }
  }
  if (bfs.size() != static_cast<std::size_t>(live_count)) {
    throw RelatorViolation("coset graph is not connected");
  }

  CosetTable out;
  out.ngens = static_cast<int>(p.generators.size());
  out.rows.assign(static_cast<std::size_t>(live_count),
                  std::vector<int>(static_cast<std::size_t>(en.ncols), -1));
  for (int c = 0; c < live_count; ++c) {
    for (int col = 0; col < en.ncols; ++col) {
      int v = compact[static_cast<std::size_t>(c)][static_cast<std::size_t>(col)];
      out.rows[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])]
              [static_cast<std::size_t>(col)] = v < 0 ? -1 : order[static_cast<std::size_t>(v)];
    }
  }
  out.verify(p, subgroup_words);
  return out;
}

GroupPtr regular_group(const CosetTable& table, const Presentation& p, std::size_t table_cap) {
  table.verify(p, {});
  const int n = static_cast<int>(table.index());

  // spanning words: letters tracing coset 0 to each coset
  std::vector<std::vector<int>> word_to(static_cast<std::size_t>(n));
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> bfs{0};
    seen[0] = 1;
    for (std::size_t q = 0; q < bfs.size(); ++q) {
      int c = bfs[q];
      for (int col = 0; col < 2 * table.ngens; ++col) {
        int d = table.action(c, col);
        if (!seen[static_cast<std::size_t>(d)]) {
          seen[static_cast<std::size_t>(d)] = 1;
          word_to[static_cast<std::size_t>(d)] = word_to[static_cast<std::size_t>(c)];
          word_to[static_cast<std::size_t>(d)].push_back(col);
          bfs.push_back(d);
        }
      }
    }
  }

  auto encode = [](int c) {
    Encoding e(4, 0);
    for (int b = 0; b < 4; ++b) e[static_cast<std::size_t>(3 - b)] = static_cast<char>((c >> (8 * b)) & 0xff);
    return e;
  };
  auto decode = [](const Encoding& e) {
    int c = 0;
    for (int b = 0; b < 4; ++b) c = (c << 8) | static_cast<unsigned char>(e[static_cast<std::size_t>(b)]);
    return c;
  };

  GroupOracle oracle;
  oracle.compose = [table, word_to, encode, decode](const Encoding& a, const Encoding& b) {
    int c = decode(a);
    for (int l : word_to[static_cast<std::size_t>(decode(b))]) c = table.action(c, l);
    return encode(c);
  };
  oracle.invert = [table, word_to, encode, decode](const Encoding& a) {
    const auto& w = word_to[static_cast<std::size_t>(decode(a))];
    int c = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) c = table.action(c, inv_col(*it));
    return encode(c);
  };

  std::vector<Encoding> gens;
  for (int g = 0; g < table.ngens; ++g) gens.push_back(encode(table.action(0, 2 * g)));

  // the order must be a prime power; find the prime
  std::int64_t prime = 0;
  for (std::int64_t d = 2; d <= n; ++d) {
    if (n % d == 0) {
      prime = d;
      break;
    }
  }
  if (prime == 0) prime = 2;  // trivial group

  FiniteGroup::Options opt;
  opt.cap = static_cast<std::size_t>(n);
  opt.table_cap = table_cap;
  GroupPtr g = FiniteGroup::closure(encode(0), std::move(gens), std::move(oracle), prime, opt);
  if (g->order() != static_cast<std::size_t>(n)) {
    throw RelatorViolation("regular closure misses the enumeration index");
  }

  // generator images must satisfy every relator
  for (const auto& rel : p.relators) {
    int acc = g->identity();
    for (int l : rel.letters()) {
      int gen_elt = g->index_of(encode(table.action(0, l & ~1)));
      acc = (l & 1) ? g->op(acc, g->inv(gen_elt)) : g->op(acc, gen_elt);
    }
    if (acc != g->identity()) throw RelatorViolation("relator fails in the regular group");
  }
  return g;
}

}  // namespace proplab
