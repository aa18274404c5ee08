#include "proplab/finite_group.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "proplab/util.hpp"

namespace proplab {

bool encoding_less(const Encoding& a, const Encoding& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

FiniteGroup::FiniteGroup(Private, GroupOracle oracle, std::int64_t prime)
    : prime_(prime), oracle_(std::move(oracle)) {}

GroupPtr FiniteGroup::closure(const Encoding& identity, std::vector<Encoding> generators,
                              GroupOracle oracle, std::int64_t prime, const Options& opt) {
  if (!is_prime(prime)) throw BadPrime("p=" + std::to_string(prime) + " is not prime");
  if (opt.cap < 1) throw CapExceeded("cap must be positive");

  auto g = std::make_shared<FiniteGroup>(Private{}, std::move(oracle), prime);

  std::sort(generators.begin(), generators.end(), encoding_less);
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::erase(generators, identity);

  g->elements_.push_back(identity);
  g->index_.emplace(identity, 0);
  g->defs_.push_back({-1, -1});

  for (std::size_t pos = 0; pos < generators.size(); ++pos) {
    const Encoding& e = generators[pos];
    if (g->index_.count(e)) continue;  // duplicate generator element
    g->elements_.push_back(e);
    g->index_.emplace(e, static_cast<int>(g->elements_.size()) - 1);
    g->defs_.push_back({0, static_cast<int>(pos)});
    if (g->elements_.size() > opt.cap) throw CapExceeded("closure grew past cap");
  }

  for (std::size_t i = 0; i < g->elements_.size(); ++i) {
    for (std::size_t pos = 0; pos < generators.size(); ++pos) {
      Encoding prod = g->oracle_.compose(g->elements_[i], generators[pos]);
      if (g->index_.count(prod)) continue;
      g->elements_.push_back(prod);
      g->index_.emplace(prod, static_cast<int>(g->elements_.size()) - 1);
      g->defs_.push_back({static_cast<int>(i), static_cast<int>(pos)});
      if (g->elements_.size() > opt.cap) throw CapExceeded("closure grew past cap");
    }
  }

  const std::size_t n = g->elements_.size();

  // order must be a power of the configured prime
  {
    std::size_t m = n;
    while (m % static_cast<std::size_t>(prime) == 0) m /= static_cast<std::size_t>(prime);
    if (m != 1) {
      throw OracleInconsistent("order " + std::to_string(n) + " is not a power of " +
                               std::to_string(prime));
    }
  }

  g->generators_.reserve(generators.size());
  for (const auto& e : generators) {
    int idx = g->index_.at(e);
    if (std::find(g->generators_.begin(), g->generators_.end(), idx) == g->generators_.end()) {
      g->generators_.push_back(idx);
    }
  }

  g->inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Encoding e = g->oracle_.invert(g->elements_[i]);
    auto it = g->index_.find(e);
    if (it == g->index_.end()) throw OracleInconsistent("inverse left the closure");
    g->inverse_[i] = it->second;
  }

  if (n <= opt.table_cap) {
    g->mode_ = GroupMode::Table;
    g->table_.assign(n * n, -1);
    auto entry = [&](std::size_t a, std::size_t b) -> int& { return g->table_[a * n + b]; };
    // identity row/column, then generator columns through the oracle; every
    // remaining column follows from the defining product of its element.
    for (std::size_t a = 0; a < n; ++a) entry(a, 0) = static_cast<int>(a);
    for (std::size_t b = 0; b < n; ++b) entry(0, b) = static_cast<int>(b);
    for (int gi : g->generators_) {
      for (std::size_t a = 1; a < n; ++a) {
        Encoding prod = g->oracle_.compose(g->elements_[a], g->elements_[gi]);
        auto it = g->index_.find(prod);
        if (it == g->index_.end()) throw OracleInconsistent("product left the closure");
        entry(a, static_cast<std::size_t>(gi)) = it->second;
      }
    }
    for (std::size_t b = 1; b < n; ++b) {
      const auto& def = g->defs_[b];
      if (def.parent <= 0) continue;  // identity or generator: already filled
      int gen_elt = g->generators_[def.gen_pos];
      for (std::size_t a = 1; a < n; ++a) {
        entry(a, b) = entry(static_cast<std::size_t>(entry(a, def.parent)),
                            static_cast<std::size_t>(gen_elt));
      }
    }
  }

  // associativity spot check
  if (n > 1) {
    SplitMix64 rng(0xa55eb1a5u ^ (static_cast<std::uint64_t>(n) << 20) ^
                   static_cast<std::uint64_t>(prime));
    for (int t = 0; t < 32; ++t) {
      int a = static_cast<int>(rng.below(n));
      int b = static_cast<int>(rng.below(n));
      int c = static_cast<int>(rng.below(n));
      if (g->op(g->op(a, b), c) != g->op(a, g->op(b, c))) {
        throw OracleInconsistent("associativity spot check failed");
      }
    }
  }

  return g;
}

int FiniteGroup::index_of(const Encoding& enc) const {
  auto it = index_.find(enc);
  return it == index_.end() ? -1 : it->second;
}

int FiniteGroup::op(int a, int b) const {
  if (mode_ == GroupMode::Table) {
    return table_[static_cast<std::size_t>(a) * order() + static_cast<std::size_t>(b)];
  }
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Encoding prod = oracle_.compose(elements_[a], elements_[b]);
  auto it = index_.find(prod);
  if (it == index_.end()) throw OracleInconsistent("product left the closure");
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(key, it->second);
  }
  return it->second;
}

int FiniteGroup::power(int a, std::int64_t e) const {
  if (e < 0) return power(inv(a), -e);
  int r = identity();
  int base = a;
  while (e > 0) {
    if (e & 1) r = op(r, base);
    base = op(base, base);
    e >>= 1;
  }
  return r;
}

int FiniteGroup::conj(int a, int g) const { return op(op(inv(g), a), g); }

int FiniteGroup::commutator(int a, int b) const {
  return op(op(inv(a), inv(b)), op(a, b));
}

int FiniteGroup::element_order(int a) const {
  // p-group: the order is p^j, found by repeated p-th powers
  std::int64_t ord = 1;
  int x = a;
  while (x != identity()) {
    x = power(x, prime_);
    ord *= prime_;
    if (ord > static_cast<std::int64_t>(order())) {
      throw OracleInconsistent("element order exceeds group order");
    }
  }
  return static_cast<int>(ord);
}

// ---------------------------------------------------------------------------
// Subgroup

namespace {

std::vector<int> closure_indices(const FiniteGroup& g, std::vector<int> seeds) {
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<char> in(g.order(), 0);
  std::vector<int> out;
  auto push = [&](int x) {
    if (!in[static_cast<std::size_t>(x)]) {
      in[static_cast<std::size_t>(x)] = 1;
      out.push_back(x);
    }
  };
  push(g.identity());
  for (int s : seeds) push(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int s : seeds) push(g.op(out[i], s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Subgroup::Subgroup(GroupPtr parent, std::vector<int> members) : parent_(std::move(parent)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  members_ = std::move(members);
  mask_.assign(parent_->order(), 0);
  for (int m : members_) mask_[static_cast<std::size_t>(m)] = 1;
  if (members_.empty() || !contains(parent_->identity())) {
    throw Error("Subgroup: identity missing from member set");
  }
  // greedy generating sequence; certifies closure as a side effect
  std::vector<char> have(parent_->order(), 0);
  std::vector<int> closure_list;
  have[static_cast<std::size_t>(parent_->identity())] = 1;
  closure_list.push_back(parent_->identity());
  for (int m : members_) {
    if (have[static_cast<std::size_t>(m)]) continue;
    gens_.push_back(m);
    auto closed = closure_indices(*parent_, gens_);
    have.assign(parent_->order(), 0);
    closure_list = closed;
    for (int x : closed) have[static_cast<std::size_t>(x)] = 1;
  }
  if (closure_list.size() != members_.size()) {
    throw Error("Subgroup: member set is not closed under composition");
  }
  for (int x : closure_list) {
    if (!contains(x)) throw Error("Subgroup: member set is not closed under composition");
  }
}

Subgroup Subgroup::whole(GroupPtr g) {
  std::vector<int> all(g->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return Subgroup(std::move(g), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr g) {
  int id = g->identity();
  return Subgroup(std::move(g), {id});
}

Subgroup Subgroup::generated(GroupPtr g, const std::vector<int>& seeds) {
  auto members = closure_indices(*g, seeds);
  return Subgroup(std::move(g), std::move(members));
}

Subgroup Subgroup::normal_closure(GroupPtr g, const std::vector<int>& seeds) {
  std::vector<int> conj;
  for (int gen : g->generators()) conj.push_back(gen);
  return normal_closure_within(std::move(g), seeds, conj);
}

Subgroup Subgroup::normal_closure_within(GroupPtr g, const std::vector<int>& seeds,
                                         const std::vector<int>& conjugators) {
  std::vector<int> gens = seeds;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::erase(gens, g->identity());

  std::vector<int> members = closure_indices(*g, gens);
  std::vector<char> in(g->order(), 0);
  for (int m : members) in[static_cast<std::size_t>(m)] = 1;

  // conjugating the generators suffices: conjugation is an automorphism
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> added;
    for (int h : gens) {
      for (int c : conjugators) {
        int x = g->conj(h, c);
        if (!in[static_cast<std::size_t>(x)]) added.push_back(x);
      }
    }
    if (!added.empty()) {
      grew = true;
      for (int x : added) gens.push_back(x);
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      members = closure_indices(*g, gens);
      in.assign(g->order(), 0);
      for (int m : members) in[static_cast<std::size_t>(m)] = 1;
    }
  }
  return Subgroup(std::move(g), std::move(members));
}

bool Subgroup::is_normal() const {
  for (int h : gens_.empty() ? members_ : gens_) {
    for (int c : parent_->generators()) {
      if (!contains(parent_->conj(h, c))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Series and invariants

bool is_abelian(const FiniteGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (g.op(gens[i], gens[j]) != g.op(gens[j], gens[i])) return false;
    }
  }
  return true;
}

namespace {

Subgroup derived_from_gens(GroupPtr g, const std::vector<int>& gens) {
  std::vector<int> seeds;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      seeds.push_back(g->commutator(gens[i], gens[j]));
    }
  }
  return Subgroup::normal_closure_within(g, seeds, gens);
}

}  // namespace

Subgroup derived_subgroup(GroupPtr g) {
  auto gens = g->generators();
  return derived_from_gens(std::move(g), gens);
}

Subgroup derived_subgroup_of(const Subgroup& h) {
  return derived_from_gens(h.parent(), h.generating_set());
}

std::vector<Subgroup> derived_series(GroupPtr g) {
  std::vector<Subgroup> series;
  series.push_back(Subgroup::whole(g));
  while (!series.back().is_trivial()) {
    Subgroup next = derived_subgroup_of(series.back());
    if (next.same_members(series.back())) {
      throw OracleInconsistent("derived series stabilized above the trivial subgroup");
    }
    series.push_back(std::move(next));
  }
  return series;
}

int derived_length(GroupPtr g) {
  return static_cast<int>(derived_series(std::move(g)).size()) - 1;
}

std::vector<Subgroup> lower_central_series(GroupPtr g) {
  std::vector<Subgroup> series;
  series.push_back(Subgroup::whole(g));
  const auto& ggens = g->generators();
  while (!series.back().is_trivial()) {
    std::vector<int> seeds;
    for (int h : series.back().generating_set()) {
      for (int c : ggens) seeds.push_back(g->commutator(h, c));
    }
    Subgroup next = Subgroup::normal_closure(g, seeds);
    if (next.same_members(series.back())) {
      throw OracleInconsistent("lower central series stabilized above the trivial subgroup");
    }
    series.push_back(std::move(next));
  }
  return series;
}

int nilpotency_class(GroupPtr g) {
  return static_cast<int>(lower_central_series(std::move(g)).size()) - 1;
}

// ---------------------------------------------------------------------------
// Quotients

QuotientResult quotient(GroupPtr g, const Subgroup& n) {
  if (n.parent().get() != g.get()) throw Error("quotient: subgroup of a different group");
  for (int h : n.generating_set()) {
    for (int c : g->generators()) {
      if (!n.contains(g->conj(h, c))) {
        throw NotNormal("conjugate of " + to_hex(g->encoding(h)) + " by " +
                        to_hex(g->encoding(c)) + " leaves the subgroup");
      }
    }
  }

  const std::size_t size = g->order();
  std::vector<int> uf(size);
  for (std::size_t i = 0; i < size; ++i) uf[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) uf[std::max(a, b)] = std::min(a, b);
  };
  for (std::size_t x = 0; x < size; ++x) {
    for (int ng : n.generating_set()) unite(static_cast<int>(x), g->op(static_cast<int>(x), ng));
  }

  // minimal-encoding representative per coset
  std::vector<int> rep_of(size, -1);
  for (std::size_t x = 0; x < size; ++x) {
    int r = find(static_cast<int>(x));
    if (rep_of[r] < 0 || encoding_less(g->encoding(static_cast<int>(x)), g->encoding(rep_of[r]))) {
      rep_of[r] = static_cast<int>(x);
    }
  }
  std::vector<int> rep(size);
  for (std::size_t x = 0; x < size; ++x) rep[x] = rep_of[find(static_cast<int>(x))];

  GroupOracle oracle;
  oracle.compose = [g, rep](const Encoding& a, const Encoding& b) {
    int ia = g->index_of(a);
    int ib = g->index_of(b);
    return g->encoding(rep[static_cast<std::size_t>(g->op(ia, ib))]);
  };
  oracle.invert = [g, rep](const Encoding& a) {
    int ia = g->index_of(a);
    return g->encoding(rep[static_cast<std::size_t>(g->inv(ia))]);
  };

  std::vector<Encoding> gens;
  for (int gi : g->generators()) gens.push_back(g->encoding(rep[static_cast<std::size_t>(gi)]));
  Encoding id = g->encoding(rep[static_cast<std::size_t>(g->identity())]);

  FiniteGroup::Options opt;
  opt.cap = size;
  GroupPtr q = FiniteGroup::closure(id, std::move(gens), std::move(oracle), g->prime(), opt);
  if (q->order() * n.order() != size) {
    throw OracleInconsistent("quotient order times subgroup order misses the group order");
  }

  std::vector<int> proj(size);
  for (std::size_t x = 0; x < size; ++x) {
    proj[x] = q->index_of(g->encoding(rep[x]));
    if (proj[x] < 0) throw OracleInconsistent("coset representative missing from quotient");
  }
  return {std::move(q), std::move(proj)};
}

GroupPtr subgroup_as_group(const Subgroup& h) {
  GroupPtr g = h.parent();
  GroupOracle oracle;
  oracle.compose = [g](const Encoding& a, const Encoding& b) {
    return g->encoding(g->op(g->index_of(a), g->index_of(b)));
  };
  oracle.invert = [g](const Encoding& a) { return g->encoding(g->inv(g->index_of(a))); };
  std::vector<Encoding> gens;
  for (int x : h.generating_set()) gens.push_back(g->encoding(x));
  FiniteGroup::Options opt;
  opt.cap = h.order();
  GroupPtr hg =
      FiniteGroup::closure(g->encoding(g->identity()), std::move(gens), std::move(oracle),
                           g->prime(), opt);
  if (hg->order() != h.order()) throw OracleInconsistent("subgroup closure mismatch");
  return hg;
}

AbelianInvariants abelian_invariants(GroupPtr g) {
  if (!is_abelian(*g)) throw NotAbelian("group is not abelian");
  const std::int64_t p = g->prime();
  const std::size_t n = g->order();

  // count n_k = #{x : x^(p^k) = 1}; the k-th ratio log_p(n_k/n_{k-1}) is the
  // number of cyclic factors of order >= p^k
  std::vector<int> order_exp(n);
  int max_e = 0;
  for (std::size_t i = 0; i < n; ++i) {
    order_exp[i] = exact_log(p, g->element_order(static_cast<int>(i)));
    max_e = std::max(max_e, order_exp[i]);
  }
  std::vector<std::int64_t> count_le(max_e + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = order_exp[i]; k <= max_e; ++k) ++count_le[k];
  }
  std::vector<int> ranks(max_e + 2, 0);  // ranks[k] = #factors of order >= p^k
  for (int k = 1; k <= max_e; ++k) {
    ranks[k] = exact_log(p, count_le[k] / count_le[k - 1]);
  }
  AbelianInvariants inv;
  for (int k = max_e; k >= 1; --k) {
    int exactly = ranks[k] - ranks[k + 1];
    for (int c = 0; c < exactly; ++c) inv.entries.push_back(ipow(p, k));
  }
  if (inv.product() != static_cast<std::int64_t>(n)) {
    throw OracleInconsistent("abelian invariants do not multiply to the group order");
  }
  return inv;
}

std::int64_t AbelianInvariants::product() const {
  std::int64_t r = 1;
  for (auto e : entries) r *= e;
  return r;
}

std::string AbelianInvariants::text() const {
  std::vector<std::string> parts;
  for (auto e : entries) parts.push_back(std::to_string(e));
  return "[" + join(parts, ",") + "]";
}

int exponent(const FiniteGroup& g) {
  int m = 1;
  for (std::size_t i = 0; i < g.order(); ++i) {
    m = std::max(m, g.element_order(static_cast<int>(i)));
  }
  return m;
}

namespace {

// bounded closure: nullopt when the subgroup grows past `bound`
std::optional<std::vector<int>> closure_bounded(const FiniteGroup& g, std::vector<int> seeds,
                                                std::size_t bound) {
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<char> in(g.order(), 0);
  std::vector<int> out;
  auto push = [&](int x) -> bool {
    if (!in[static_cast<std::size_t>(x)]) {
      in[static_cast<std::size_t>(x)] = 1;
      out.push_back(x);
    }
    return out.size() <= bound;
  };
  if (!push(g.identity())) return std::nullopt;
  for (int s : seeds) {
    if (!push(s)) return std::nullopt;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int s : seeds) {
      if (!push(g.op(out[i], s))) return std::nullopt;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int members_exponent(const FiniteGroup& g, const std::vector<int>& members) {
  int m = 1;
  for (int x : members) m = std::max(m, g.element_order(x));
  return m;
}

}  // namespace

std::vector<Subgroup> subgroup_search(GroupPtr g, std::size_t target_order,
                                      const SearchConstraints& c, std::size_t search_cap) {
  if (g->order() > search_cap) throw CapExceeded("subgroup_search cap");
  if (!g->table_backed()) throw CapExceeded("subgroup_search needs a table-backed group");

  std::vector<Subgroup> found;
  std::set<std::vector<int>> seen;
  auto consider = [&](std::vector<int> members, int a, int b) {
    if (members.size() != target_order) return;
    if (c.abelian.has_value()) {
      bool ab = (b < 0) || (g->op(a, b) == g->op(b, a));
      if (ab != *c.abelian) return;
    }
    if (c.exponent.has_value() && members_exponent(*g, members) != *c.exponent) return;
    if (!seen.insert(members).second) return;
    found.emplace_back(g, std::move(members));
  };

  const int n = static_cast<int>(g->order());
  for (int a = 0; a < n; ++a) {
    if (auto m = closure_bounded(*g, {a}, target_order)) consider(std::move(*m), a, -1);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (auto m = closure_bounded(*g, {a, b}, target_order)) consider(std::move(*m), a, b);
    }
  }
  return found;
}

Subgroup frattini_subgroup(GroupPtr g) {
  std::vector<int> seeds;
  const auto& gens = g->generators();
  for (int a : gens) seeds.push_back(g->power(a, g->prime()));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      seeds.push_back(g->commutator(gens[i], gens[j]));
    }
  }
  return Subgroup::normal_closure(std::move(g), seeds);
}

int frattini_rank(GroupPtr g) {
  auto phi = frattini_subgroup(g);
  return exact_log(g->prime(), static_cast<std::int64_t>(g->order() / phi.order()));
}

std::vector<int> minimal_generating_set(GroupPtr g) {
  if (g->order() == 1) return {};
  auto phi = frattini_subgroup(g);
  auto q = quotient(g, phi);
  // greedy basis of the elementary abelian Frattini quotient, pulled back
  // along minimal-encoding coset representatives
  std::vector<int> basis_q;
  std::vector<char> have(q.group->order(), 0);
  have[static_cast<std::size_t>(q.group->identity())] = 1;
  std::size_t have_count = 1;
  for (std::size_t x = 0; x < q.group->order() && have_count < q.group->order(); ++x) {
    if (have[x]) continue;
    basis_q.push_back(static_cast<int>(x));
    auto closed = Subgroup::generated(q.group, basis_q);
    have.assign(q.group->order(), 0);
    have_count = closed.order();
    for (int m : closed.members()) have[static_cast<std::size_t>(m)] = 1;
  }
  std::vector<int> result;
  for (int qi : basis_q) {
    int idx = g->index_of(q.group->encoding(qi));
    if (idx < 0) throw OracleInconsistent("coset representative missing from parent");
    result.push_back(idx);
  }
  return result;
}

}  // namespace proplab
