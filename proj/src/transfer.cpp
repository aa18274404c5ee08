#include "proplab/transfer.hpp"

#include <algorithm>
#include <set>

#include "proplab/util.hpp"

namespace proplab {

namespace {

// right-coset labels for H in Q; representatives picked by scanning the
// element list in the given direction
struct CosetDecomposition {
  std::vector<int> reps;
  std::vector<int> coset_of;  // element -> position in reps
};

CosetDecomposition right_cosets(const FiniteGroup& q, const Subgroup& h, bool reverse_scan) {
  CosetDecomposition d;
  d.coset_of.assign(q.order(), -1);
  const int n = static_cast<int>(q.order());
  for (int step = 0; step < n; ++step) {
    int x = reverse_scan ? n - 1 - step : step;
    if (d.coset_of[static_cast<std::size_t>(x)] >= 0) continue;
    int label = static_cast<int>(d.reps.size());
    d.reps.push_back(x);
    for (int m : h.members()) {
      d.coset_of[static_cast<std::size_t>(q.op(m, x))] = label;  // coset H*x
    }
  }
  return d;
}

// V(g) as an element of H/H', for every g in Q
std::vector<int> transfer_values(const FiniteGroup& q, const Subgroup& h,
                                 const CosetDecomposition& d, const GroupPtr& h_group,
                                 const std::vector<int>& h_proj) {
  std::vector<int> values(q.order());
  for (std::size_t gidx = 0; gidx < q.order(); ++gidx) {
    int acc = q.identity();
    for (int rep : d.reps) {
      int tg = q.op(rep, static_cast<int>(gidx));
      int target_rep = d.reps[static_cast<std::size_t>(d.coset_of[static_cast<std::size_t>(tg)])];
      int factor = q.op(tg, q.inv(target_rep));  // t_i g t_{j(i)}^{-1}, lands in H
      if (!h.contains(factor)) throw OracleInconsistent("transfer factor escaped the subgroup");
      acc = q.op(acc, factor);
    }
    int acc_in_h = h_group->index_of(q.encoding(acc));
    if (acc_in_h < 0) throw OracleInconsistent("transfer product escaped the subgroup");
    values[gidx] = h_proj[static_cast<std::size_t>(acc_in_h)];
  }
  return values;
}

}  // namespace

TransferData transfer_map(const GroupPtr& q, const Subgroup& h) {
  if (h.parent().get() != q.get()) throw Error("transfer_map: subgroup of another group");

  Subgroup qprime = derived_subgroup(q);
  QuotientResult a = quotient(q, qprime);

  GroupPtr h_group = subgroup_as_group(h);
  Subgroup hprime_in_hg = derived_subgroup(h_group);
  QuotientResult b = quotient(h_group, hprime_in_hg);

  auto forward = right_cosets(*q, h, false);
  auto values = transfer_values(*q, h, forward, h_group, b.projection);
  {
    auto backward = right_cosets(*q, h, true);
    auto values2 = transfer_values(*q, h, backward, h_group, b.projection);
    if (values != values2) {
      throw OracleInconsistent("transfer depends on the coset representatives");
    }
  }

  // V kills Q', so it factors through Q/Q'; verify constancy per coset
  std::vector<int> images(a.group->order(), -1);
  for (std::size_t x = 0; x < q->order(); ++x) {
    int s = a.projection[x];
    if (images[static_cast<std::size_t>(s)] < 0) {
      images[static_cast<std::size_t>(s)] = values[x];
    } else if (images[static_cast<std::size_t>(s)] != values[x]) {
      throw OracleInconsistent("transfer is not constant on derived-subgroup cosets");
    }
  }

  GroupHom v = GroupHom::from_full_map(a.group, b.group, std::move(images));
  std::uint64_t kernel_order = v.kernel().order();
  return TransferData{a.group, b.group, std::move(v), q->order() / h.order(), kernel_order};
}

std::vector<Subgroup> abelian_subgroups(const GroupPtr& a) {
  if (!is_abelian(*a)) throw NotAbelian("subgroup lattice scan expects an abelian group");
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> out;
  std::vector<std::vector<int>> worklist;

  Subgroup triv = Subgroup::trivial(a);
  seen.insert(triv.members());
  worklist.push_back(triv.members());
  out.push_back(std::move(triv));

  for (std::size_t w = 0; w < worklist.size(); ++w) {
    std::vector<int> base = worklist[w];
    for (std::size_t x = 0; x < a->order(); ++x) {
      std::vector<int> seeds = base;
      seeds.push_back(static_cast<int>(x));
      Subgroup s = Subgroup::generated(a, seeds);
      if (seen.insert(s.members()).second) {
        worklist.push_back(s.members());
        out.push_back(std::move(s));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& l, const Subgroup& r) {
    if (l.order() != r.order()) return l.order() < r.order();
    return l.members() < r.members();
  });
  return out;
}

std::vector<TransferReport> property_v_check(const GroupPtr& q, std::size_t cap) {
  if (q->order() > cap) throw CapExceeded("property_v_check cap");
  if (!q->table_backed()) throw CapExceeded("property_v_check needs a table-backed group");

  Subgroup qprime = derived_subgroup(q);
  QuotientResult a = quotient(q, qprime);

  std::vector<TransferReport> reports;
  for (const Subgroup& s : abelian_subgroups(a.group)) {
    // cyclic quotient test: some element order matches the quotient order
    QuotientResult qs = quotient(a.group, s);
    bool cyclic = false;
    for (std::size_t x = 0; x < qs.group->order(); ++x) {
      if (qs.group->element_order(static_cast<int>(x)) ==
          static_cast<int>(qs.group->order())) {
        cyclic = true;
        break;
      }
    }
    if (!cyclic) continue;

    std::vector<int> members;
    for (std::size_t x = 0; x < q->order(); ++x) {
      if (s.contains(a.projection[x])) members.push_back(static_cast<int>(x));
    }
    Subgroup h(q, std::move(members));
    TransferData t = transfer_map(q, h);

    TransferReport rep;
    rep.subgroup = "order " + std::to_string(h.order());
    for (int m : h.generating_set()) {
      rep.subgroup += " <" + to_hex(q->encoding(m)) + ">";
      break;  // one generator is enough for identification
    }
    rep.index = t.subgroup_index;
    rep.kernel_order = t.kernel_order;
    rep.pass = (rep.kernel_order == rep.index);
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace proplab
