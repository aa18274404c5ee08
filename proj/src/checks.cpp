#include "proplab/checks.hpp"

#include <algorithm>

#include "proplab/util.hpp"

namespace proplab {

std::string verdict_text(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

bool CertificateReport::overall_pass() const {
  return std::all_of(items.begin(), items.end(),
                     [](const CheckItem& it) { return it.verdict == Verdict::Pass; });
}

void CertificateReport::add(std::string name, Verdict v, std::string witness) {
  items.push_back({std::move(name), v, std::move(witness)});
}

CertificateReport check_filtration(const GroupPtr& g, const std::vector<Subgroup>& chain) {
  CertificateReport rep;
  if (chain.empty()) {
    rep.add("chain_nonempty", Verdict::Fail, "empty chain");
    return rep;
  }
  rep.add("chain_nonempty", Verdict::Pass);
  rep.add("first_term_whole", chain.front().is_whole() ? Verdict::Pass : Verdict::Fail,
          chain.front().is_whole() ? "" : "first term has order " +
                                          std::to_string(chain.front().order()));

  {
    Verdict v = Verdict::Pass;
    std::string w;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      bool contained = std::all_of(chain[i + 1].members().begin(), chain[i + 1].members().end(),
                                   [&](int m) { return chain[i].contains(m); });
      if (!contained || chain[i + 1].order() >= chain[i].order()) {
        v = Verdict::Fail;
        w = "terms " + std::to_string(i + 1) + " >= " + std::to_string(i + 2) +
            " not strictly descending";
        break;
      }
    }
    rep.add("strictly_descending", v, w);
  }

  rep.add("terminal_trivial", chain.back().is_trivial() ? Verdict::Pass : Verdict::Fail,
          chain.back().is_trivial() ? "" : "last term has order " +
                                           std::to_string(chain.back().order()));

  {
    Verdict v = Verdict::Pass;
    std::string w;
    for (std::size_t i = 1; i < chain.size() && v == Verdict::Pass; ++i) {
      for (int h : chain[i].generating_set()) {
        bool ok = true;
        for (int c : g->generators()) {
          if (!chain[i].contains(g->conj(h, c))) {
            ok = false;
            w = "term " + std::to_string(i + 1) + ": conjugate of " + to_hex(g->encoding(h)) +
                " by " + to_hex(g->encoding(c)) + " escapes";
            break;
          }
        }
        if (!ok) {
          v = Verdict::Fail;
          break;
        }
      }
    }
    rep.add("terms_normal", v, w);
  }

  {
    // factor chain[i]/chain[i+1] abelian <=> generator commutators of the
    // upper term lie in the lower term (the lower term is normal by now)
    Verdict v = Verdict::Pass;
    std::string w;
    for (std::size_t i = 0; i + 1 < chain.size() && v == Verdict::Pass; ++i) {
      const auto& gens = chain[i].generating_set();
      for (std::size_t a = 0; a < gens.size() && v == Verdict::Pass; ++a) {
        for (std::size_t b = a + 1; b < gens.size(); ++b) {
          if (!chain[i + 1].contains(g->commutator(gens[a], gens[b]))) {
            v = Verdict::Fail;
            w = "factor " + std::to_string(i + 1) + ": commutator of " +
                to_hex(g->encoding(gens[a])) + " and " + to_hex(g->encoding(gens[b])) +
                " survives";
            break;
          }
        }
      }
    }
    rep.add("factors_abelian", v, w);
  }
  return rep;
}

AutContext automorphism_context(const GroupPtr& g, std::vector<Automorphism> supplied,
                                std::size_t enum_cap) {
  if (g->order() <= enum_cap && g->table_backed()) {
    return {enumerate_automorphisms(g, enum_cap), true};
  }
  return {std::move(supplied), false};
}

CertificateReport check_self_similarity(const SimilarityStructure& sim, const AutContext& auts) {
  const GroupPtr& g = sim.filtration.group;
  const auto& chain = sim.filtration.chain;
  CertificateReport rep = check_filtration(g, chain);
  const bool filtration_ok = rep.overall_pass();

  rep.add("automorphism_regime", Verdict::Pass,
          auts.enumerated ? "enumerated " + std::to_string(auts.auts.size())
                          : "supplied " + std::to_string(auts.auts.size()));

  {
    Verdict v = Verdict::Pass;
    std::string w;
    for (std::size_t i = 1; i < chain.size() && v == Verdict::Pass; ++i) {
      for (std::size_t s = 0; s < auts.auts.size(); ++s) {
        if (!is_characteristic(g, chain[i], {auts.auts[s]})) {
          v = Verdict::Fail;
          w = "term " + std::to_string(i + 1) + " moved by automorphism #" + std::to_string(s);
          break;
        }
      }
    }
    rep.add("terms_characteristic", v, w);
  }

  {
    Verdict v = Verdict::Pass;
    std::string w;
    for (std::size_t j = 1; j < sim.factors.size(); ++j) {
      if (!sim.maps[j].has_value()) {
        v = Verdict::Fail;
        w = "connecting map " + std::to_string(j + 1) + " absent";
        break;
      }
    }
    rep.add("maps_present", v, w);
  }

  {
    Verdict v = sim.factors.size() <= 1 ? Verdict::Pass : Verdict::Skipped;
    std::string w;
    bool all_present = true;
    for (std::size_t j = 1; j < sim.factors.size(); ++j) {
      if (!sim.maps[j].has_value()) all_present = false;
    }
    if (all_present && sim.factors.size() > 1) {
      v = Verdict::Pass;
      for (std::size_t j = 1; j < sim.factors.size(); ++j) {
        if (!sim.maps[j]->is_bijective()) {
          v = Verdict::Fail;
          w = "connecting map " + std::to_string(j + 1) + " is not bijective";
          break;
        }
      }
    }
    rep.add("maps_isomorphisms", v, w);
  }

  {
    // phi o sigma = sigma o phi on every factor, per supplied automorphism
    Verdict v = Verdict::Pass;
    std::string w;
    if (!filtration_ok) {
      v = Verdict::Skipped;
      w = "filtration checks failed";
    } else {
      for (std::size_t j = 1; j < sim.factors.size() && v == Verdict::Pass; ++j) {
        if (!sim.maps[j].has_value()) {
          v = Verdict::Skipped;
          w = "connecting map " + std::to_string(j + 1) + " absent";
          break;
        }
        const GroupHom& phi = *sim.maps[j];
        for (std::size_t s = 0; s < auts.auts.size(); ++s) {
          std::optional<Automorphism> up, down;
          try {
            up = induced_on_factor(g, sim.factors[j - 1], chain[j - 1], auts.auts[s]);
            down = induced_on_factor(g, sim.factors[j], chain[j], auts.auts[s]);
          } catch (const NotStable&) {
            v = Verdict::Skipped;
            w = "automorphism #" + std::to_string(s) + " does not stabilize the chain";
            break;
          }
          for (std::size_t x = 0; x < sim.factors[j - 1].factor->order(); ++x) {
            if (phi.apply(up->apply(static_cast<int>(x))) != down->apply(phi.apply(static_cast<int>(x)))) {
              v = Verdict::Fail;
              w = "map " + std::to_string(j + 1) + ", automorphism #" + std::to_string(s) +
                  ", factor element " +
                  to_hex(sim.factors[j - 1].factor->encoding(static_cast<int>(x)));
              break;
            }
          }
          if (v != Verdict::Pass) break;
        }
      }
    }
    rep.add("maps_equivariant", v, w);
  }

  {
    // |G/G_i| = |G/G_2|^{i-1}
    Verdict v = Verdict::Pass;
    std::string w;
    if (chain.size() < 2) {
      v = Verdict::Fail;
      w = "chain too short for the growth law";
    } else {
      const std::uint64_t base = g->order() / chain[1].order();
      std::uint64_t expect = 1;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        std::uint64_t actual = g->order() / chain[i].order();
        if (actual != expect) {
          v = Verdict::Fail;
          w = "level " + std::to_string(i + 1) + ": |G/G_" + std::to_string(i + 1) + "| = " +
              std::to_string(actual) + " but base^" + std::to_string(i) + " = " +
              std::to_string(expect);
          break;
        }
        if (expect > g->order()) break;
        expect *= base;
      }
    }
    rep.add("growth_law", v, w);
  }

  return rep;
}

PropagationReport fixed_point_propagation(const SimilarityStructure& sim,
                                          const Automorphism& sigma) {
  const GroupPtr& g = sim.filtration.group;
  const auto& chain = sim.filtration.chain;
  if (sigma.group().get() != g.get()) {
    throw Error("fixed_point_propagation: automorphism of another group");
  }
  for (std::size_t i = 1; i < chain.size(); ++i) {
    for (int m : chain[i].members()) {
      if (!chain[i].contains(sigma.apply(m))) {
        throw NotStable("sigma moves chain term " + std::to_string(i + 1));
      }
    }
  }

  PropagationReport rep;
  rep.depth = static_cast<int>(chain.size());

  std::vector<QuotientResult> quotients;   // for levels 2..L
  std::vector<Automorphism> induced;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    QuotientResult q = quotient(g, chain[i]);
    Automorphism bar = induced_on_quotient(g, q.group, q.projection, sigma);
    Subgroup fix = fixed_subgroup(q.group, bar);
    PropagationLevel lvl;
    lvl.level = static_cast<int>(i) + 1;
    lvl.quotient_order = q.group->order();
    lvl.derived_length = derived_length(q.group);
    lvl.fixed_order = fix.order();
    rep.levels.push_back(lvl);
    if (!rep.minimal_fixed_level.has_value() && fix.order() > 1) {
      rep.minimal_fixed_level = lvl.level;
    }
    quotients.push_back(std::move(q));
    induced.push_back(std::move(bar));
  }

  if (!rep.minimal_fixed_level.has_value()) return rep;  // fixed-point-free throughout

  const int istar = *rep.minimal_fixed_level;
  const auto& q = quotients[static_cast<std::size_t>(istar - 2)];
  const auto& bar = induced[static_cast<std::size_t>(istar - 2)];

  // minimal-index nontrivial fixed coset of G/G_istar
  int x = -1;
  for (std::size_t e = 1; e < q.group->order(); ++e) {
    if (bar.apply(static_cast<int>(e)) == static_cast<int>(e)) {
      x = static_cast<int>(e);
      break;
    }
  }
  if (x < 0) {
    rep.propagation_ok = false;
    rep.failure = "fixed subgroup vanished on re-read";
    return rep;
  }

  if (istar == 2) {
    rep.fixed_in_top = q.group->encoding(x);
    return rep;
  }

  // minimality pins the fixed coset inside G_{istar-1}/G_istar
  int rep_in_g = g->index_of(q.group->encoding(x));
  if (rep_in_g < 0 || !chain[static_cast<std::size_t>(istar - 2)].contains(rep_in_g)) {
    rep.propagation_ok = false;
    rep.failure = "fixed coset at level " + std::to_string(istar) +
                  " does not lie in the top factor";
    return rep;
  }

  // walk down: F_{istar-1} -> F_{istar-2} -> ... -> F_1 via inverse maps,
  // re-verifying sigma-fixedness at every step
  int fslot = istar - 2;  // 0-based factor index of F_{istar-1}
  int cur = sim.factors[static_cast<std::size_t>(fslot)].proj[static_cast<std::size_t>(rep_in_g)];
  if (cur < 0) {
    rep.propagation_ok = false;
    rep.failure = "fixed coset missing from factor " + std::to_string(fslot + 1);
    return rep;
  }
  while (true) {
    const auto& fd = sim.factors[static_cast<std::size_t>(fslot)];
    if (cur == fd.factor->identity()) {
      rep.propagation_ok = false;
      rep.failure = "trail entry became trivial at factor " + std::to_string(fslot + 1);
      return rep;
    }
    std::optional<Automorphism> fbar;
    try {
      fbar = induced_on_factor(g, fd, chain[static_cast<std::size_t>(fslot)], sigma);
    } catch (const NotStable& e) {
      rep.propagation_ok = false;
      rep.failure = e.what();
      return rep;
    }
    if (fbar->apply(cur) != cur) {
      rep.propagation_ok = false;
      rep.failure = "pulled-back coset " + to_hex(fd.factor->encoding(cur)) +
                    " in factor " + std::to_string(fslot + 1) + " is not sigma-fixed";
      return rep;
    }
    rep.trail.emplace_back(fslot + 1, fd.factor->encoding(cur));
    if (fslot == 0) {
      rep.fixed_in_top = fd.factor->encoding(cur);
      return rep;
    }
    if (!sim.maps[static_cast<std::size_t>(fslot)].has_value()) {
      rep.propagation_ok = false;
      rep.failure = "connecting map " + std::to_string(fslot + 1) + " absent during pulldown";
      return rep;
    }
    const GroupHom& phi = *sim.maps[static_cast<std::size_t>(fslot)];
    if (!phi.is_bijective()) {
      rep.propagation_ok = false;
      rep.failure = "connecting map " + std::to_string(fslot + 1) + " is not invertible";
      return rep;
    }
    cur = phi.inverse().apply(cur);
    fslot -= 1;
  }
}

bool fpf_check(const GroupPtr& g, const Automorphism& sigma) {
  return fixed_subgroup(g, sigma).is_trivial();
}

std::vector<Automorphism> fpf_search(const GroupPtr& g, int n, std::size_t cap) {
  std::vector<Automorphism> out;
  for (auto& a : enumerate_automorphisms(g, cap)) {
    if (a.order == n && fpf_check(g, a)) out.push_back(std::move(a));
  }
  return out;
}

std::vector<SurveyRow> derived_length_survey(const std::vector<SurveyEntry>& entries, int n) {
  std::vector<SurveyRow> rows;
  for (const auto& entry : entries) {
    SurveyRow row;
    row.label = entry.label;
    const GroupPtr& g = entry.sim.filtration.group;
    row.order = g->order();
    try {
      if (entry.sigma.order != n) {
        throw Error("sigma has order " + std::to_string(entry.sigma.order) + ", expected " +
                    std::to_string(n));
      }
      const auto& chain = entry.sim.filtration.chain;
      for (std::size_t i = 1; i < chain.size(); ++i) {
        QuotientResult q = quotient(g, chain[i]);
        Automorphism bar = induced_on_quotient(g, q.group, q.projection, entry.sigma);
        bool fpf = fpf_check(q.group, bar);
        row.fpf_by_level.emplace_back(static_cast<int>(i) + 1, fpf);
        if (fpf) {
          int dl = derived_length(q.group);
          int cls = nilpotency_class(q.group);
          row.max_derived_length_fpf = std::max(row.max_derived_length_fpf.value_or(0), dl);
          row.max_class_fpf = std::max(row.max_class_fpf.value_or(0), cls);
        }
      }
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool property_iv_check(const GroupPtr& g, const Automorphism& sigma) {
  if (sigma.order != 2) return false;
  if (sigma.is_identity()) return false;
  Subgroup gprime = derived_subgroup(g);
  QuotientResult ab = quotient(g, gprime);
  Automorphism bar = induced_on_quotient(g, ab.group, ab.projection, sigma);
  return fpf_check(ab.group, bar);
}

bool gs_check(std::int64_t d, std::int64_t r) {
  if (d < 0 || r < 0) throw Error("gs_check: negative input");
  return 4 * r > d * d;
}

}  // namespace proplab
