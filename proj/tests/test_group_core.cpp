#include "doctest.h"

#include <algorithm>
#include <map>
#include <thread>

#include "proplab/abelian_groups.hpp"
#include "proplab/hom.hpp"
#include "proplab/matrix_kernels.hpp"
#include "proplab/tree_wreath.hpp"
#include "proplab/util.hpp"

using namespace proplab;

namespace {

// Independent oracle for abelian invariants: split off a maximal-order
// cyclic factor (always a direct summand in an abelian p-group) and recurse
// on the quotient.
std::vector<std::int64_t> basis_invariants(GroupPtr g) {
  if (g->order() == 1) return {};
  int best = -1, best_ord = 0;
  for (std::size_t i = 0; i < g->order(); ++i) {
    int o = g->element_order(static_cast<int>(i));
    if (o > best_ord) {
      best_ord = o;
      best = static_cast<int>(i);
    }
  }
  Subgroup top = Subgroup::generated(g, {best});
  auto q = quotient(g, top);
  std::vector<std::int64_t> out{best_ord};
  if (q.group->order() > 1) {
    auto rest = basis_invariants(q.group);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

GroupPtr dihedral8() { return wreath_group(2, 2); }

}  // namespace

TEST_CASE("cyclic closure and basic ops") {
  GroupPtr c3 = cyclic_group(3, 1);
  CHECK(c3->order() == 3);
  CHECK(c3->table_backed());
  // {e, g, g^2}: every non-identity element has order 3
  for (int i = 1; i < 3; ++i) CHECK(c3->element_order(i) == 3);
  CHECK(c3->op(c3->inv(1), 1) == c3->identity());
}

TEST_CASE("closure cap semantics") {
  FiniteGroup::Options opt;
  opt.cap = 10000;
  CHECK_THROWS_AS(wreath_group(2, 4, opt), CapExceeded);  // order 2^15
  opt.cap = 1u << 20;
  GroupPtr big = wreath_group(2, 4, opt);
  CHECK(big->order() == 32768);
  CHECK_FALSE(big->table_backed());
}

TEST_CASE("closure of the level-2 congruence kernel from four generators") {
  // |ker(SL2(Z/9) -> SL2(Z/3))| = 3^{3(2-1)} = 27, from |SL2(Z/p^k)| =
  // p^{3k-2}(p^2-1): 648/24 = 27; a redundant fourth generator changes
  // nothing
  SL2ZpContext ctx{3, 2, 9};
  GroupOracle oracle;
  oracle.compose = [ctx](const Encoding& a, const Encoding& b) {
    return ctx.encode(ctx.mul(ctx.decode(a), ctx.decode(b)));
  };
  oracle.invert = [ctx](const Encoding& a) { return ctx.encode(ctx.inv(ctx.decode(a))); };
  MatZ u{{1, 3, 0, 1}}, l{{1, 0, 3, 1}}, d{{4, 0, 0, 7}}, extra{{4, 3, 3, 7}};
  CHECK(ctx.det(extra) == 1);
  GroupPtr g = FiniteGroup::closure(
      ctx.encode(ctx.identity()),
      {ctx.encode(u), ctx.encode(l), ctx.encode(d), ctx.encode(extra)}, oracle, 3, {});
  CHECK(g->order() == 27);
}

TEST_CASE("broken oracles are rejected") {
  SUBCASE("non-associative composition") {
    // subtraction mod 5 is closed with identity 0 but not associative
    GroupOracle bad;
    bad.compose = [](const Encoding& a, const Encoding& b) {
      int x = a[0], y = b[0];
      return Encoding(1, static_cast<char>(((x - y) % 5 + 5) % 5));
    };
    bad.invert = [](const Encoding& a) { return a; };
    CHECK_THROWS_AS(
        FiniteGroup::closure(Encoding(1, 0), {Encoding(1, 1)}, bad, 5, {}),
        OracleInconsistent);
  }
  SUBCASE("order not a power of the declared prime") {
    GroupOracle mod6;
    mod6.compose = [](const Encoding& a, const Encoding& b) {
      return Encoding(1, static_cast<char>((a[0] + b[0]) % 6));
    };
    mod6.invert = [](const Encoding& a) {
      return Encoding(1, static_cast<char>((6 - a[0]) % 6));
    };
    CHECK_THROWS_AS(
        FiniteGroup::closure(Encoding(1, 0), {Encoding(1, 1)}, mod6, 2, {}),
        OracleInconsistent);
  }
}

TEST_CASE("associativity on random triples") {
  SplitMix64 rng(0x5eed);
  for (GroupPtr g : {dihedral8(), cyclic_group(3, 3), kernel_group_zp(3, 2)}) {
    for (int t = 0; t < 1000; ++t) {
      int a = static_cast<int>(rng.below(g->order()));
      int b = static_cast<int>(rng.below(g->order()));
      int c = static_cast<int>(rng.below(g->order()));
      REQUIRE(g->op(g->op(a, b), c) == g->op(a, g->op(b, c)));
    }
  }
}

TEST_CASE("subgroup_generated") {
  GroupPtr g = dihedral8();
  SUBCASE("identity seeds give the trivial subgroup") {
    Subgroup s = Subgroup::generated(g, {g->identity()});
    CHECK(s.order() == 1);
  }
  SUBCASE("an order-4 element generates a cyclic subgroup of order 4") {
    int gen = -1;
    for (std::size_t i = 0; i < g->order(); ++i) {
      if (g->element_order(static_cast<int>(i)) == 4) {
        gen = static_cast<int>(i);
        break;
      }
    }
    REQUIRE(gen >= 0);
    Subgroup s = Subgroup::generated(g, {gen});
    CHECK(s.order() == 4);
  }
  SUBCASE("all generators give the whole group") {
    Subgroup s = Subgroup::generated(g, g->generators());
    CHECK(s.is_whole());
  }
}

TEST_CASE("normal_closure") {
  SUBCASE("abelian: equals subgroup_generated") {
    GroupPtr g = abelian_p_group(3, {1, 2});
    Subgroup a = Subgroup::generated(g, {1});
    Subgroup b = Subgroup::normal_closure(g, {1});
    CHECK(a.same_members(b));
  }
  SUBCASE("rotation inside the order-8 wreath group closes to the cyclic 4") {
    GroupPtr g = dihedral8();
    int rot = -1;
    for (std::size_t i = 0; i < g->order(); ++i) {
      if (g->element_order(static_cast<int>(i)) == 4) {
        rot = static_cast<int>(i);
        break;
      }
    }
    Subgroup n = Subgroup::normal_closure(g, {rot});
    CHECK(n.order() == 4);
    CHECK(n.same_members(Subgroup::generated(g, {rot})));
  }
  SUBCASE("empty seeds give the trivial subgroup") {
    GroupPtr g = dihedral8();
    CHECK(Subgroup::normal_closure(g, {}).order() == 1);
  }
}

TEST_CASE("derived series") {
  SUBCASE("abelian") {
    GroupPtr g = abelian_p_group(3, {2, 1});
    auto series = derived_series(g);
    CHECK(series.size() == 2);
    CHECK(derived_length(g) == 1);
  }
  SUBCASE("order-8 wreath group has derived length 2") {
    CHECK(derived_length(dihedral8()) == 2);
  }
  SUBCASE("iterated wreath of C2 has derived length d up to depth 4") {
    for (int d = 1; d <= 4; ++d) {
      FiniteGroup::Options opt;
      opt.cap = 1u << 20;
      CHECK(derived_length(wreath_group(2, d, opt)) == d);
    }
  }
}

TEST_CASE("lower central series") {
  CHECK(nilpotency_class(abelian_p_group(3, {1, 1})) == 1);
  CHECK(nilpotency_class(dihedral8()) == 2);
  // commutators in the level-1 congruence kernel land one level deeper
  CHECK(nilpotency_class(kernel_group_zp(3, 3)) == 2);
}

TEST_CASE("quotients") {
  GroupPtr g = kernel_group_zp(3, 3);
  auto chain = congruence_chain(g, KernelKind::Zp, 3, 3);
  SUBCASE("by the whole group") {
    auto q = quotient(g, chain[0]);
    CHECK(q.group->order() == 1);
  }
  SUBCASE("by the trivial subgroup: identity projection") {
    auto q = quotient(g, chain[2]);
    CHECK(q.group->order() == g->order());
    for (std::size_t i = 0; i < g->order(); ++i) {
      CHECK(q.group->encoding(q.projection[i]) == g->encoding(static_cast<int>(i)));
    }
  }
  SUBCASE("level quotient is elementary abelian of order 27") {
    auto q = quotient(g, chain[1]);
    CHECK(q.group->order() == 27);
    CHECK(abelian_invariants(q.group).entries == std::vector<std::int64_t>{3, 3, 3});
  }
  SUBCASE("order is multiplicative") {
    for (const auto& n : chain) {
      auto q = quotient(g, n);
      CHECK(q.group->order() * n.order() == g->order());
    }
  }
  SUBCASE("non-normal subgroup is rejected") {
    GroupPtr d8 = dihedral8();
    int refl = -1;
    for (std::size_t i = 1; i < d8->order(); ++i) {
      if (d8->element_order(static_cast<int>(i)) == 2) {
        Subgroup s = Subgroup::generated(d8, {static_cast<int>(i)});
        if (!s.is_normal()) {
          refl = static_cast<int>(i);
          break;
        }
      }
    }
    REQUIRE(refl >= 0);
    CHECK_THROWS_AS(quotient(d8, Subgroup::generated(d8, {refl})), NotNormal);
  }
}

TEST_CASE("abelian invariants by order counting, cross-checked by basis extraction") {
  CHECK(abelian_invariants(cyclic_group(3, 2)).entries == std::vector<std::int64_t>{9});
  CHECK(abelian_invariants(kernel_group_zp(3, 2)).entries ==
        std::vector<std::int64_t>{3, 3, 3});
  CHECK_THROWS_AS(abelian_invariants(dihedral8()), NotAbelian);

  for (GroupPtr g : {abelian_p_group(3, {2, 1}), abelian_p_group(2, {3, 1, 1}),
                     abelian_p_group(3, {3, 2}), cyclic_group(5, 3), abelian_p_group(3, {1, 1, 1}),
                     abelian_p_group(2, {2, 2, 1})}) {
    REQUIRE(g->order() <= 729);
    CHECK(abelian_invariants(g).entries == basis_invariants(g));
  }
}

TEST_CASE("exponent") {
  CHECK(exponent(*abelian_p_group(3, {1, 1})) == 3);
  CHECK(exponent(*dihedral8()) == 4);
}

TEST_CASE("hom_from_images") {
  GroupPtr g = abelian_p_group(3, {1, 1});
  SUBCASE("trivial hom") {
    std::vector<int> images(g->generators().size(), g->identity());
    GroupHom h = GroupHom::from_images(g, g, images);
    for (std::size_t i = 0; i < g->order(); ++i) CHECK(h.apply(static_cast<int>(i)) == 0);
  }
  SUBCASE("inversion is a hom on abelian groups") {
    std::vector<int> images;
    for (int gi : g->generators()) images.push_back(g->inv(gi));
    GroupHom h = GroupHom::from_images(g, g, images);
    CHECK(h.is_bijective());
  }
  SUBCASE("inversion fails on the order-8 wreath group") {
    GroupPtr d8 = dihedral8();
    CHECK_THROWS_AS(inversion_automorphism(d8), NotAHomomorphism);
  }
  SUBCASE("conflicting generator images are rejected") {
    GroupPtr d8 = dihedral8();
    int rot4 = -1;
    for (std::size_t i = 0; i < d8->order(); ++i) {
      if (d8->element_order(static_cast<int>(i)) == 4) {
        rot4 = static_cast<int>(i);
        break;
      }
    }
    // send an involution generator to an order-4 element
    std::vector<int> images = d8->generators();
    images[0] = rot4;
    CHECK_THROWS_AS(GroupHom::from_images(d8, d8, images), NotAHomomorphism);
  }
  SUBCASE("validated hom respects products on every pair") {
    GroupPtr k = kernel_group_zp(3, 2);
    std::vector<int> images;
    for (int gi : k->generators()) images.push_back(k->inv(gi));
    GroupHom h = GroupHom::from_images(k, k, images);
    REQUIRE(k->order() <= 256);
    for (std::size_t a = 0; a < k->order(); ++a) {
      for (std::size_t b = 0; b < k->order(); ++b) {
        REQUIRE(h.apply(k->op(static_cast<int>(a), static_cast<int>(b))) ==
                k->op(h.apply(static_cast<int>(a)), h.apply(static_cast<int>(b))));
      }
    }
  }
}

TEST_CASE("fixed subgroups") {
  GroupPtr g = abelian_p_group(3, {1, 1});
  SUBCASE("identity fixes everything") {
    CHECK(fixed_subgroup(g, Automorphism::identity(g)).is_whole());
  }
  SUBCASE("inversion on C3xC3 is fixed-point-free") {
    CHECK(fixed_subgroup(g, inversion_automorphism(g)).order() == 1);
  }
  SUBCASE("coordinate swap fixes the diagonal") {
    // swap generator images: g0 -> g1, g1 -> g0
    auto gens = g->generators();
    REQUIRE(gens.size() == 2);
    Automorphism swap = Automorphism::from_images(g, {gens[1], gens[0]});
    Subgroup fix = fixed_subgroup(g, swap);
    CHECK(fix.order() == 3);
  }
}

TEST_CASE("automorphism enumeration") {
  CHECK(enumerate_automorphisms(cyclic_group(3, 1)).size() == 2);
  // |GL2(F3)| = 48
  CHECK(enumerate_automorphisms(abelian_p_group(3, {1, 1})).size() == 48);
  CHECK(enumerate_automorphisms(dihedral8()).size() == 8);
  CHECK_THROWS_AS(enumerate_automorphisms(cyclic_group(3, 1), 2), CapExceeded);
}

TEST_CASE("is_characteristic") {
  GroupPtr g = abelian_p_group(3, {1, 1});
  auto auts = enumerate_automorphisms(g);
  SUBCASE("derived subgroup is characteristic") {
    GroupPtr d8 = dihedral8();
    auto d8auts = enumerate_automorphisms(d8);
    CHECK(is_characteristic(d8, derived_subgroup(d8), d8auts));
  }
  SUBCASE("a single factor of C3xC3 is not") {
    Subgroup factor = Subgroup::generated(g, {g->generators()[0]});
    CHECK_FALSE(is_characteristic(g, factor, auts));
  }
  SUBCASE("congruence subgroups are characteristic under conjugations") {
    GroupPtr k = kernel_group_zp(3, 3);
    auto chain = congruence_chain(k, KernelKind::Zp, 3, 3);
    std::vector<Automorphism> conj{
        ambient_conjugation_zp(k, 3, 3, diag_one_minus_one_zp(3, 3)),
        ambient_conjugation_zp(k, 3, 3, rotation_zp(3, 3))};
    CHECK(is_characteristic(k, chain[1], conj));
  }
}

TEST_CASE("subgroup_search") {
  SUBCASE("C9 has one subgroup of order 3") {
    auto found = subgroup_search(cyclic_group(3, 2), 3);
    CHECK(found.size() == 1);
  }
  SUBCASE("whole group found when 2-generated") {
    GroupPtr g = dihedral8();
    auto found = subgroup_search(g, g->order());
    REQUIRE(found.size() == 1);
    CHECK(found[0].is_whole());
  }
  SUBCASE("constraints filter by commutativity and exponent") {
    GroupPtr g = dihedral8();
    SearchConstraints c;
    c.abelian = true;
    c.exponent = 4;
    auto found = subgroup_search(g, 4, c);
    REQUIRE(found.size() == 1);  // the cyclic 4
    c.abelian = false;
    CHECK(subgroup_search(g, 4, c).empty());  // every group of order 4 is abelian
  }
  SUBCASE("search cap") {
    CHECK_THROWS_AS(subgroup_search(dihedral8(), 4, {}, 4), CapExceeded);
  }
}

TEST_CASE("frattini rank") {
  CHECK(frattini_rank(abelian_p_group(3, {1, 1, 1})) == 3);
  CHECK(frattini_rank(abelian_p_group(3, {2, 1})) == 2);
  CHECK(frattini_rank(cyclic_group(2, 3)) == 1);
}

TEST_CASE("minimal generating sets have Frattini rank size") {
  for (GroupPtr g : {dihedral8(), abelian_p_group(3, {2, 1}), kernel_group_zp(3, 2)}) {
    auto m = minimal_generating_set(g);
    CHECK(static_cast<int>(m.size()) == frattini_rank(g));
    CHECK(Subgroup::generated(g, m).is_whole());
  }
}

TEST_CASE("oracle-backed groups are safe to share across threads") {
  FiniteGroup::Options opt;
  opt.cap = 1u << 20;
  opt.table_cap = 64;  // force oracle mode
  GroupPtr g = wreath_group(2, 3, opt);
  REQUIRE_FALSE(g->table_backed());
  std::vector<std::vector<int>> results(4);
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t]() {
      SplitMix64 rng(0x7000 + static_cast<unsigned>(t));
      for (int i = 0; i < 2000; ++i) {
        int a = static_cast<int>(rng.below(g->order()));
        int b = static_cast<int>(rng.below(g->order()));
        results[static_cast<std::size_t>(t)].push_back(g->op(a, b));
      }
    });
  }
  for (auto& w : workers) w.join();
  // recompute serially and compare
  for (int t = 0; t < 4; ++t) {
    SplitMix64 rng(0x7000 + static_cast<unsigned>(t));
    for (int i = 0; i < 2000; ++i) {
      int a = static_cast<int>(rng.below(g->order()));
      int b = static_cast<int>(rng.below(g->order()));
      REQUIRE(results[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] == g->op(a, b));
    }
  }
}

TEST_CASE("series terms are characteristic under enumerated automorphisms") {
  GroupPtr g = dihedral8();
  auto auts = enumerate_automorphisms(g);
  for (const auto& s : derived_series(g)) CHECK(is_characteristic(g, s, auts));
  for (const auto& s : lower_central_series(g)) CHECK(is_characteristic(g, s, auts));
}
