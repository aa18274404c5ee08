#include "doctest.h"

#include "proplab/abelian_groups.hpp"
#include "proplab/checks.hpp"
#include "proplab/matrix_kernels.hpp"
#include "proplab/todd_coxeter.hpp"
#include "proplab/transfer.hpp"
#include "proplab/tree_wreath.hpp"

using namespace proplab;

namespace {

SimilarityStructure power_sim(GroupPtr g) {
  return build_power_similarity(g, power_chain(g), /*require_iso=*/true);
}

GroupPtr scholz_taussky() {
  static GroupPtr cached = [] {
    Presentation p = parse_presentation("<x,y | y^((x,y)) = y^-2, x^3 = y^3>");
    return regular_group(todd_coxeter(p, {}), p);
  }();
  return cached;
}

}  // namespace

TEST_CASE("check_filtration") {
  SUBCASE("congruence chain passes") {
    GroupPtr g = kernel_group_zp(3, 3);
    auto rep = check_filtration(g, congruence_chain(g, KernelKind::Zp, 3, 3));
    CHECK(rep.overall_pass());
  }
  SUBCASE("nonabelian one-step chain fails with a witness") {
    GroupPtr g = wreath_group(2, 2);
    std::vector<Subgroup> chain{Subgroup::whole(g), Subgroup::trivial(g)};
    auto rep = check_filtration(g, chain);
    CHECK_FALSE(rep.overall_pass());
    bool found = false;
    for (const auto& item : rep.items) {
      if (item.name == "factors_abelian") {
        CHECK(item.verdict == Verdict::Fail);
        CHECK_FALSE(item.witness.empty());
        found = true;
      }
    }
    CHECK(found);
  }
  SUBCASE("non-descending chain fails") {
    GroupPtr g = cyclic_group(3, 2);
    std::vector<Subgroup> chain{Subgroup::whole(g), Subgroup::whole(g), Subgroup::trivial(g)};
    auto rep = check_filtration(g, chain);
    CHECK_FALSE(rep.overall_pass());
  }
}

TEST_CASE("check_self_similarity") {
  SUBCASE("C9 with the cube map passes") {
    GroupPtr g = cyclic_group(3, 2);
    auto rep = check_self_similarity(power_sim(g), automorphism_context(g, {}));
    CHECK(rep.overall_pass());
  }
  SUBCASE("C3xC9 power chain fails the growth law") {
    GroupPtr g = abelian_p_group(3, {1, 2});
    auto sim = build_power_similarity(g, power_chain(g), /*require_iso=*/false);
    auto rep = check_self_similarity(sim, automorphism_context(g, {}));
    CHECK_FALSE(rep.overall_pass());
    bool growth_failed = false;
    for (const auto& item : rep.items) {
      if (item.name == "growth_law" && item.verdict == Verdict::Fail) growth_failed = true;
    }
    CHECK(growth_failed);
    CHECK_THROWS_AS(power_sim(g), NotIso);
  }
  SUBCASE("zp kernel k=2 passes against the full automorphism group") {
    GroupPtr g = kernel_group_zp(3, 2);
    auto sim = build_power_similarity(g, congruence_chain(g, KernelKind::Zp, 3, 2), true);
    AutContext ctx = automorphism_context(g, {});
    CHECK(ctx.enumerated);
    CHECK(ctx.auts.size() == 11232);  // |GL3(F3)|
    CHECK(check_self_similarity(sim, ctx).overall_pass());
  }
  SUBCASE("zp kernel k=3 passes against supplied conjugations") {
    GroupPtr g = kernel_group_zp(3, 3);
    auto sim = build_power_similarity(g, congruence_chain(g, KernelKind::Zp, 3, 3), true);
    AutContext ctx = automorphism_context(
        g, {ambient_conjugation_zp(g, 3, 3, diag_one_minus_one_zp(3, 3)),
            ambient_conjugation_zp(g, 3, 3, rotation_zp(3, 3))});
    CHECK_FALSE(ctx.enumerated);
    CHECK(check_self_similarity(sim, ctx).overall_pass());
  }
}

TEST_CASE("fixed point propagation") {
  SUBCASE("inversion on the C27 chain is fixed-point-free at every level") {
    GroupPtr g = cyclic_group(3, 3);
    auto rep = fixed_point_propagation(power_sim(g), inversion_automorphism(g));
    CHECK(rep.fixed_point_free());
    CHECK(rep.propagation_ok);
    REQUIRE(rep.levels.size() == 3);
    for (const auto& lvl : rep.levels) {
      CHECK(lvl.fixed_order == 1);
      CHECK(lvl.derived_length == 1);
    }
  }
  SUBCASE("identity on the C27 chain fixes at level 2") {
    GroupPtr g = cyclic_group(3, 3);
    auto rep = fixed_point_propagation(power_sim(g), Automorphism::identity(g));
    REQUIRE(rep.minimal_fixed_level.has_value());
    CHECK(*rep.minimal_fixed_level == 2);
    CHECK(rep.trail.empty());
    CHECK(rep.fixed_in_top.has_value());
    CHECK(rep.propagation_ok);
  }
  SUBCASE("diag(1,-1) conjugation on the zp kernel finds a fixed element of G/G_2") {
    GroupPtr g = kernel_group_zp(3, 3);
    auto sim = build_power_similarity(g, congruence_chain(g, KernelKind::Zp, 3, 3), true);
    Automorphism sigma = ambient_conjugation_zp(g, 3, 3, diag_one_minus_one_zp(3, 3));
    auto rep = fixed_point_propagation(sim, sigma);
    REQUIRE(rep.minimal_fixed_level.has_value());
    CHECK(*rep.minimal_fixed_level == 2);
    CHECK(rep.fixed_in_top.has_value());
    CHECK(rep.propagation_ok);
    for (const auto& lvl : rep.levels) CHECK(lvl.fixed_order > 1);
  }
  SUBCASE("broken equivariance is reported as a propagation failure, not a crash") {
    // chain C3xC3 >= <first factor> >= 1 with a declared map that is not
    // sigma-equivariant: sigma fixes the lower factor pointwise but acts
    // fixed-point-freely upstairs
    GroupPtr g = abelian_p_group(3, {1, 1});
    auto gens = g->generators();
    Subgroup h = Subgroup::generated(g, {gens[0]});
    SimilarityStructure sim =
        build_similarity_factors(g, {Subgroup::whole(g), h, Subgroup::trivial(g)});
    // declare the isomorphism F1 -> F2 sending (image of gens[1])^k to
    // gens[0]^k; it is a valid iso but not sigma-equivariant below
    std::vector<std::pair<Encoding, Encoding>> pairs;
    const auto& f1 = sim.factors[0];
    const auto& f2 = sim.factors[1];
    int f1_gen = f1.proj[static_cast<std::size_t>(gens[1])];
    int f2_gen = f2.proj[static_cast<std::size_t>(gens[0])];
    for (int k = 0; k < 3; ++k) {
      pairs.emplace_back(f1.factor->encoding(f1.factor->power(f1_gen, k)),
                         f2.factor->encoding(f2.factor->power(f2_gen, k)));
    }
    attach_similarity_map(sim, 1, pairs);
    // sigma: negate the second coordinate, fix the first
    std::vector<int> images;
    images = {gens[0], g->inv(gens[1])};
    Automorphism sigma = Automorphism::from_images(g, images);
    auto rep = fixed_point_propagation(sim, sigma);
    REQUIRE(rep.minimal_fixed_level.has_value());
    CHECK(*rep.minimal_fixed_level == 3);
    CHECK_FALSE(rep.propagation_ok);
    CHECK_FALSE(rep.failure.empty());
  }
  SUBCASE("sigma moving a chain term is NotStable") {
    GroupPtr g = abelian_p_group(3, {1, 1});
    auto gens = g->generators();
    Subgroup h = Subgroup::generated(g, {gens[0]});
    auto sim = build_similarity_factors(g, {Subgroup::whole(g), h, Subgroup::trivial(g)});
    Automorphism swap = Automorphism::from_images(g, {gens[1], gens[0]});
    CHECK_THROWS_AS(fixed_point_propagation(sim, swap), NotStable);
  }
}

TEST_CASE("supplied connecting maps must be total and consistent") {
  GroupPtr g = cyclic_group(3, 2);
  SimilarityStructure sim = build_similarity_factors(g, power_chain(g));
  REQUIRE(sim.factors.size() == 2);
  const auto& f1 = sim.factors[0];
  // partial map: only the identity coset given
  std::vector<std::pair<Encoding, Encoding>> partial{
      {f1.factor->encoding(f1.factor->identity()),
       sim.factors[1].factor->encoding(sim.factors[1].factor->identity())}};
  CHECK_THROWS_AS(attach_similarity_map(sim, 1, partial), NotWellDefined);
  CHECK_THROWS_AS(attach_similarity_map(sim, 0, partial), Error);
}

TEST_CASE("fpf search") {
  GroupPtr g = abelian_p_group(3, {1, 1});
  SUBCASE("inversion on C3xC3 is fixed-point-free") {
    CHECK(fpf_check(g, inversion_automorphism(g)));
    CHECK_FALSE(fpf_check(g, Automorphism::identity(g)));
    auto gens = g->generators();
    CHECK_FALSE(fpf_check(g, Automorphism::from_images(g, {gens[1], gens[0]})));
  }
  SUBCASE("order-2 search on C3xC3 contains inversion") {
    auto found = fpf_search(g, 2);
    CHECK_FALSE(found.empty());
    bool has_inversion = false;
    for (const auto& a : found) {
      if (a.hom.images() == inversion_automorphism(g).hom.images()) has_inversion = true;
    }
    CHECK(has_inversion);
  }
  SUBCASE("the order-8 wreath group admits no order-2 fpf automorphism") {
    CHECK(fpf_search(wreath_group(2, 2), 2).empty());
  }
}

TEST_CASE("derived length survey") {
  std::vector<SurveyEntry> entries;
  for (int e = 1; e <= 4; ++e) {
    GroupPtr g = cyclic_group(3, e);
    entries.push_back({"c3^" + std::to_string(e), power_sim(g), inversion_automorphism(g)});
  }
  {
    GroupPtr g = abelian_p_group(3, {1, 1});
    auto gens = g->generators();
    entries.push_back({"c3xc3 swap", power_sim(g),
                       Automorphism::from_images(g, {gens[1], gens[0]})});
  }
  auto rows = derived_length_survey(entries, 2);
  REQUIRE(rows.size() == 5);
  for (int i = 0; i < 4; ++i) {
    CHECK(rows[static_cast<std::size_t>(i)].error.empty());
    CHECK(rows[static_cast<std::size_t>(i)].any_fpf());
    CHECK(rows[static_cast<std::size_t>(i)].max_derived_length_fpf == 1);
    for (auto [lvl, fpf] : rows[static_cast<std::size_t>(i)].fpf_by_level) CHECK(fpf);
  }
  // the swap has fixed points everywhere: excluded from the bound
  CHECK_FALSE(rows[4].any_fpf());

  SUBCASE("wrong sigma order is a row error, not a crash") {
    GroupPtr g = cyclic_group(3, 1);
    std::vector<SurveyEntry> bad{{"bad", power_sim(g), Automorphism::identity(g)}};
    auto r = derived_length_survey(bad, 2);
    REQUIRE(r.size() == 1);
    CHECK_FALSE(r[0].error.empty());
  }
}

TEST_CASE("transfer maps") {
  SUBCASE("C9 to its C3: kernel of order 3") {
    GroupPtr g = cyclic_group(3, 2);
    Subgroup h = Subgroup::generated(g, {g->power(g->generators()[0], 3)});
    TransferData t = transfer_map(g, h);
    CHECK(t.subgroup_index == 3);
    CHECK(t.kernel_order == 3);
  }
  SUBCASE("H = Q gives the identity map") {
    GroupPtr g = cyclic_group(3, 2);
    TransferData t = transfer_map(g, Subgroup::whole(g));
    CHECK(t.subgroup_index == 1);
    CHECK(t.kernel_order == 1);
  }
  SUBCASE("C3xC3 to a factor: everything dies") {
    GroupPtr g = abelian_p_group(3, {1, 1});
    Subgroup h = Subgroup::generated(g, {g->generators()[0]});
    TransferData t = transfer_map(g, h);
    CHECK(t.subgroup_index == 3);
    CHECK(t.kernel_order == 9);
  }
}

TEST_CASE("property V tables") {
  SUBCASE("C9 passes for every normal subgroup with cyclic quotient") {
    auto reports = property_v_check(cyclic_group(3, 2));
    REQUIRE(reports.size() == 3);  // subgroups 1, C3, C9
    for (const auto& r : reports) CHECK(r.pass);
  }
  SUBCASE("C3xC3 has failing factor rows") {
    auto reports = property_v_check(abelian_p_group(3, {1, 1}));
    // four order-3 subgroups (all fail) plus the whole group (passes)
    REQUIRE(reports.size() == 5);
    int fails = 0;
    for (const auto& r : reports) {
      if (!r.pass) {
        ++fails;
        CHECK(r.index == 3);
        CHECK(r.kernel_order == 9);
      }
    }
    CHECK(fails == 4);
  }
  SUBCASE("the order-243 tower group: all-pass table") {
    GroupPtr g = scholz_taussky();
    // derived length 2, so G'' is trivial and Q = G/G'' is G itself
    REQUIRE(derived_length(g) == 2);
    auto reports = property_v_check(g);
    REQUIRE(reports.size() == 5);  // four maximal subgroups + the whole group
    for (const auto& r : reports) {
      CHECK(r.pass);
      CHECK(r.kernel_order == r.index);
    }
  }
}

TEST_CASE("order-2 action on the abelianization") {
  SUBCASE("inversion on C3") {
    GroupPtr g = cyclic_group(3, 1);
    CHECK(property_iv_check(g, inversion_automorphism(g)));
    CHECK_FALSE(property_iv_check(g, Automorphism::identity(g)));
  }
  SUBCASE("generator inversion on the order-243 tower group") {
    GroupPtr g = scholz_taussky();
    auto mingens = minimal_generating_set(g);
    REQUIRE(mingens.size() == 2);
    std::vector<int> images;
    for (int m : mingens) images.push_back(g->inv(m));
    bool extended = false;
    try {
      // realize x -> x^-1, y -> y^-1 on a minimal generating pair; validate
      // mechanically and, if it extends, check the abelianization action
      GroupPtr regen = subgroup_as_group(Subgroup::generated(g, mingens));
      REQUIRE(regen->order() == g->order());
      std::vector<int> regen_images;
      for (int m : mingens) regen_images.push_back(regen->inv(regen->index_of(g->encoding(m))));
      Automorphism sigma = Automorphism::from_images(regen, regen_images);
      extended = true;
      CHECK(sigma.order == 2);
      CHECK(property_iv_check(regen, sigma));
    } catch (const NotAHomomorphism&) {
      extended = false;
    }
    // either outcome is a valid mechanical verdict; record which one we saw
    INFO("generator inversion extends: ", extended);
  }
}

TEST_CASE("rank inequality") {
  CHECK(gs_check(2, 2));
  CHECK_FALSE(gs_check(4, 4));
  CHECK_FALSE(gs_check(5, 5));
  CHECK(gs_check(3, 3));
  CHECK(gs_check(0, 1));
  CHECK_FALSE(gs_check(1, 0));
}
