#include "proplab/cli.hpp"

#include <cstdlib>
#include <ostream>

#include "CLI11.hpp"
#include "proplab/checks.hpp"
#include "proplab/family.hpp"
#include "proplab/magnus.hpp"
#include "proplab/matrix_kernels.hpp"
#include "proplab/report.hpp"
#include "proplab/transfer.hpp"
#include "proplab/util.hpp"

namespace proplab {

namespace {

struct Common {
  std::int64_t seed = 0;
  std::int64_t table_cap = static_cast<std::int64_t>(FiniteGroup::kDefaultTableCap);
};

void emit_config(ReportBuilder& rb, const Common& c, const std::string& extra = "") {
  rb.open("config");
  rb.field("seed", c.seed);
  rb.field("table_cap", c.table_cap);
  if (!extra.empty()) rb.field("note", extra);
  rb.close();
}

std::string hex_generators(const FiniteGroup& g) {
  std::vector<std::string> parts;
  for (int gi : g.generators()) parts.push_back(to_hex(g.encoding(gi)));
  return parts.empty() ? "-" : join(parts, ",");
}

BuildOptions build_options(const Common& c) {
  BuildOptions opt;
  opt.table_cap = static_cast<std::size_t>(c.table_cap);
  return opt;
}

std::string default_phi(const BuiltFamily& fam) {
  switch (fam.spec.kind) {
    case FamilyKind::Sl2Zp: return "ppower";
    case FamilyKind::Sl2Lambda:
      return fam.spec.param("k") >= 3 ? "tmap" : "none";
    default: return "none";
  }
}

std::vector<Automorphism> default_sigmas(const BuiltFamily& fam) {
  std::vector<Automorphism> out;
  if (fam.spec.kind == FamilyKind::Sl2Zp) {
    auto p = fam.spec.param("p");
    int k = static_cast<int>(fam.spec.param("k"));
    out.push_back(ambient_conjugation_zp(fam.group, p, k, diag_one_minus_one_zp(p, k)));
    out.push_back(ambient_conjugation_zp(fam.group, p, k, rotation_zp(p, k)));
  } else if (fam.spec.kind == FamilyKind::Sl2Lambda) {
    auto p = fam.spec.param("p");
    int k = static_cast<int>(fam.spec.param("k"));
    out.push_back(ambient_conjugation_lambda(fam.group, p, k, diag_one_minus_one_lambda(p, k)));
    out.push_back(ambient_conjugation_lambda(fam.group, p, k, rotation_lambda(p, k)));
  } else {
    for (int gi : fam.group->generators()) {
      out.push_back(conjugation_automorphism(fam.group, gi));
    }
  }
  return out;
}

std::string command_echo(const std::vector<std::string>& args) { return join(args, " "); }

int cmd_build(const std::vector<std::string>& args, const Common& common,
              const std::string& spec_text, bool with_table, std::ostream& out) {
  BuiltFamily fam = build_family(FamilySpec::parse(spec_text), build_options(common));
  ReportBuilder rb(command_echo(args));
  emit_config(rb, common, fam.config_note);
  rb.open("payload");
  rb.field("order", static_cast<std::uint64_t>(fam.group->order()));
  rb.field("prime", fam.group->prime());
  rb.field("mode", fam.group->table_backed() ? "table" : "oracle");
  rb.field("generators", hex_generators(*fam.group));
  if (with_table && fam.group->table_backed()) {
    rb.open("table");
    for (std::size_t a = 0; a < fam.group->order(); ++a) {
      std::vector<std::string> row;
      for (std::size_t b = 0; b < fam.group->order(); ++b) {
        row.push_back(std::to_string(fam.group->op(static_cast<int>(a), static_cast<int>(b))));
      }
      rb.field("row_" + std::to_string(a), join(row, " "));
    }
    rb.close();
  }
  rb.close();
  out << rb.str();
  return 0;
}

int cmd_report(const std::vector<std::string>& args, const Common& common,
               const std::string& spec_text, std::ostream& out) {
  BuiltFamily fam = build_family(FamilySpec::parse(spec_text), build_options(common));
  GroupPtr g = fam.group;

  auto dseries = derived_series(g);
  auto lcs = lower_central_series(g);
  Subgroup gprime = derived_subgroup(g);
  auto ab = quotient(g, gprime);

  ReportBuilder rb(command_echo(args));
  emit_config(rb, common, fam.config_note);
  rb.open("payload");
  rb.field("order", static_cast<std::uint64_t>(g->order()));
  rb.field("prime", g->prime());
  {
    std::vector<std::string> parts;
    for (const auto& s : dseries) parts.push_back(std::to_string(s.order()));
    rb.field("derived_series_orders", join(parts, ","));
  }
  rb.field("derived_length", static_cast<std::int64_t>(dseries.size() - 1));
  rb.field("lower_central_class", static_cast<std::int64_t>(lcs.size() - 1));
  rb.field("exponent", static_cast<std::int64_t>(exponent(*g)));
  rb.field("abelianization", abelian_invariants(ab.group).text());
  rb.field("frattini_rank", static_cast<std::int64_t>(frattini_rank(g)));
  rb.close();
  out << rb.str();
  return 0;
}

void emit_certificate(ReportBuilder& rb, const CertificateReport& cert) {
  rb.open("checks");
  for (const auto& item : cert.items) {
    std::string v = verdict_text(item.verdict);
    if (!item.witness.empty()) v += " (" + item.witness + ")";
    rb.field(item.name, v);
  }
  rb.close();
  rb.field("overall", cert.overall_pass() ? "pass" : "fail");
}

int cmd_selfsim(const std::vector<std::string>& args, const Common& common,
                const std::string& spec_text, const std::string& phi_spec,
                const std::vector<std::string>& sigma_specs, std::ostream& out) {
  BuiltFamily fam = build_family(FamilySpec::parse(spec_text), build_options(common));
  SimilarityStructure sim = build_similarity(fam, phi_spec.empty() ? default_phi(fam) : phi_spec);
  std::vector<Automorphism> supplied;
  for (const auto& s : sigma_specs) supplied.push_back(parse_automorphism(fam, s));
  if (supplied.empty()) supplied = default_sigmas(fam);
  AutContext auts = automorphism_context(fam.group, std::move(supplied));
  CertificateReport cert = check_self_similarity(sim, auts);

  ReportBuilder rb(command_echo(args));
  emit_config(rb, common, fam.config_note);
  rb.open("payload");
  rb.field("order", static_cast<std::uint64_t>(fam.group->order()));
  rb.field("chain_length", static_cast<std::uint64_t>(sim.filtration.chain.size()));
  emit_certificate(rb, cert);
  rb.close();
  out << rb.str();
  return cert.overall_pass() ? 0 : 1;
}

int cmd_theorem1(const std::vector<std::string>& args, const Common& common,
                 const std::string& spec_text, const std::string& phi_spec,
                 const std::string& sigma_spec, std::ostream& out) {
  BuiltFamily fam = build_family(FamilySpec::parse(spec_text), build_options(common));
  SimilarityStructure sim = build_similarity(fam, phi_spec.empty() ? default_phi(fam) : phi_spec);
  Automorphism sigma = parse_automorphism(fam, sigma_spec);
  PropagationReport rep = fixed_point_propagation(sim, sigma);

  ReportBuilder rb(command_echo(args));
  emit_config(rb, common, fam.config_note);
  rb.open("payload");
  rb.field("depth", static_cast<std::int64_t>(rep.depth));
  rb.open("levels");
  for (const auto& lvl : rep.levels) {
    rb.field("level_" + std::to_string(lvl.level),
             "order=" + std::to_string(lvl.quotient_order) +
                 " derived_length=" + std::to_string(lvl.derived_length) +
                 " fixed_order=" + std::to_string(lvl.fixed_order));
  }
  rb.close();
  rb.field("outcome", rep.fixed_point_free() ? "fixed_point_free" : "fixed_point_found");
  if (rep.minimal_fixed_level) {
    rb.field("minimal_fixed_level", static_cast<std::int64_t>(*rep.minimal_fixed_level));
  }
  if (!rep.trail.empty()) {
    rb.open("trail");
    for (const auto& [factor, enc] : rep.trail) {
      rb.field("factor_" + std::to_string(factor), to_hex(enc));
    }
    rb.close();
  }
  if (rep.fixed_in_top) rb.field("fixed_in_top", to_hex(*rep.fixed_in_top));
  rb.field("propagation", rep.propagation_ok ? "ok" : "failed");
  if (!rep.failure.empty()) rb.field("failure", rep.failure);
  rb.close();
  out << rb.str();
  return rep.propagation_ok ? 0 : 1;
}

int cmd_fpf(const std::vector<std::string>& args, const Common& common,
            const std::string& spec_text, int order, std::int64_t cap, std::ostream& out) {
  BuiltFamily fam = build_family(FamilySpec::parse(spec_text), build_options(common));
  auto found = fpf_search(fam.group, order, static_cast<std::size_t>(cap));

  ReportBuilder rb(command_echo(args));
  emit_config(rb, common, fam.config_note);
  rb.open("payload");
  rb.field("order", static_cast<std::uint64_t>(fam.group->order()));
  rb.field("automorphism_order", static_cast<std::int64_t>(order));
  rb.field("count", static_cast<std::uint64_t>(found.size()));
  rb.open("automorphisms");
  for (std::size_t i = 0; i < found.size(); ++i) {
    std::vector<std::string> images;
    for (int gi : fam.group->generators()) {
      images.push_back(to_hex(fam.group->encoding(found[i].apply(gi))));
    }
    rb.field("fpf_" + std::to_string(i), join(images, ","));
  }
  rb.close();
  rb.close();
  out << rb.str();
  return found.empty() ? 1 : 0;
}

int cmd_transfer(const std::vector<std::string>& args, const Common& common,
                 const std::string& spec_text, std::ostream& out) {
  BuiltFamily fam = build_family(FamilySpec::parse(spec_text), build_options(common));
  auto reports = property_v_check(fam.group, static_cast<std::size_t>(common.table_cap));
  bool all = true;
  for (const auto& r : reports) all = all && r.pass;

  ReportBuilder rb(command_echo(args));
  emit_config(rb, common, fam.config_note);
  rb.open("payload");
  rb.field("order", static_cast<std::uint64_t>(fam.group->order()));
  rb.field("rows", static_cast<std::uint64_t>(reports.size()));
  rb.open("table");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    rb.field("row_" + std::to_string(i),
             "subgroup=" + r.subgroup + " index=" + std::to_string(r.index) +
                 " kernel=" + std::to_string(r.kernel_order) +
                 " verdict=" + (r.pass ? "pass" : "fail"));
  }
  rb.close();
  rb.field("overall", all ? "pass" : "fail");
  rb.close();
  out << rb.str();
  return all ? 0 : 1;
}

int cmd_prop4(const std::vector<std::string>& args, const Common& common,
              const std::string& spec_text, const std::string& sigma_spec, std::ostream& out) {
  BuiltFamily fam = build_family(FamilySpec::parse(spec_text), build_options(common));
  Automorphism sigma = parse_automorphism(fam, sigma_spec);
  bool verdict = property_iv_check(fam.group, sigma);

  ReportBuilder rb(command_echo(args));
  emit_config(rb, common, fam.config_note);
  rb.open("payload");
  rb.field("order", static_cast<std::uint64_t>(fam.group->order()));
  rb.field("sigma_order", static_cast<std::int64_t>(sigma.order));
  rb.field("verdict", verdict ? "true" : "false");
  rb.close();
  out << rb.str();
  return verdict ? 0 : 1;
}

int cmd_gs(const std::vector<std::string>& args, const Common& common, std::int64_t d,
           std::int64_t r, std::ostream& out) {
  bool verdict = gs_check(d, r);
  ReportBuilder rb(command_echo(args));
  emit_config(rb, common);
  rb.open("payload");
  rb.field("d", d);
  rb.field("r", r);
  rb.field("verdict", verdict ? "true" : "false");
  if (verdict && d > 2) {
    rb.field("caveat",
             "literal inequality only; refinements for relator sets lying deep in the "
             "Zassenhaus filtration are not applied");
  }
  rb.close();
  out << rb.str();
  return verdict ? 0 : 1;
}

int cmd_tc(const std::vector<std::string>& args, const Common& common, const std::string& path,
           const std::string& subgroup_text, std::int64_t max_cosets, std::int64_t max_steps,
           std::ostream& out) {
  Presentation p = load_presentation_file(path);
  std::vector<Word> subgroup_words;
  if (!subgroup_text.empty()) {
    std::string cur;
    int depth = 0;
    for (char c : subgroup_text) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        subgroup_words.push_back(parse_word_in(p, cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) subgroup_words.push_back(parse_word_in(p, cur));
  }
  TCLimits limits;
  limits.max_cosets = static_cast<std::size_t>(max_cosets);
  limits.max_steps = static_cast<std::size_t>(max_steps);

  ReportBuilder rb(command_echo(args));
  emit_config(rb, common,
              "max_cosets=" + std::to_string(max_cosets) + " max_steps=" +
                  std::to_string(max_steps));
  rb.open("payload");
  rb.field("generators", static_cast<std::uint64_t>(p.generators.size()));
  rb.field("relators", static_cast<std::uint64_t>(p.relators.size()));
  try {
    CosetTable table = todd_coxeter(p, subgroup_words, limits);
    rb.field("closed", "true");
    rb.field("index", static_cast<std::uint64_t>(table.index()));
    rb.close();
    out << rb.str();
    return 0;
  } catch (const LimitExceeded& e) {
    rb.field("closed", "false");
    rb.field("reason", e.what());
    rb.close();
    out << rb.str();
    return 1;
  }
}

int cmd_zdepth(const std::vector<std::string>& args, const Common& common,
               const std::string& path, std::int64_t p, std::int64_t degree_cap,
               std::ostream& out) {
  Presentation pres = load_presentation_file(path);
  ReportBuilder rb(command_echo(args));
  emit_config(rb, common, "degree_cap=" + std::to_string(degree_cap));
  rb.open("payload");
  rb.field("p", p);
  rb.open("relators");
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    auto depth = zassenhaus_depth(pres.relators[i], static_cast<int>(p),
                                  static_cast<int>(degree_cap));
    std::string val = depth ? std::to_string(*depth) : (">" + std::to_string(degree_cap));
    rb.field("relator_" + std::to_string(i),
             pres.relator_sources[i] + " depth=" + val);
  }
  rb.close();
  rb.close();
  out << rb.str();
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite p-group laboratory"};
  app.require_subcommand(1);

  Common common;
  if (const char* env = std::getenv("PROPLAB_TABLE_CAP")) {
    try {
      common.table_cap = parse_int(env);
    } catch (const Error&) {
      err << "bad PROPLAB_TABLE_CAP value\n";
      return 2;
    }
  }
  app.add_option("--seed", common.seed, "seed for randomized sampling");
  app.add_option("--table-cap", common.table_cap, "table-backed mode threshold");

  std::string spec_text, phi_spec, sigma_spec, subgroup_text, file_path;
  std::vector<std::string> sigma_specs;
  bool with_table = false;
  std::int64_t gs_d = 0, gs_r = 0, fpf_order = 2, fpf_cap = 512;
  std::int64_t max_cosets = 200000, max_steps = 20000000, magnus_p = 3, degree_cap = 6;

  auto* build = app.add_subcommand("build", "construct a family group and dump it");
  build->add_option("spec", spec_text)->required();
  build->add_flag("--with-table", with_table, "include the multiplication table");

  auto* report = app.add_subcommand("report", "order, series, exponent, invariants");
  report->add_option("spec", spec_text)->required();

  auto* selfsim = app.add_subcommand("selfsim", "self-similarity certificate");
  selfsim->add_option("spec", spec_text)->required();
  selfsim->add_option("--phi", phi_spec, "ppower | tmap | none | file:<path>");
  selfsim->add_option("--sigma", sigma_specs, "automorphism specs to check against");

  auto* theorem1 = app.add_subcommand("theorem1", "fixed-point propagation run");
  theorem1->add_option("spec", spec_text)->required();
  theorem1->add_option("--sigma", sigma_spec)->required();
  theorem1->add_option("--phi", phi_spec, "ppower | tmap | none | file:<path>");

  auto* fpf = app.add_subcommand("fpf", "search fixed-point-free automorphisms");
  fpf->add_option("spec", spec_text)->required();
  fpf->add_option("--order", fpf_order)->required();
  fpf->add_option("--cap", fpf_cap);

  auto* transfer = app.add_subcommand("transfer", "transfer-kernel table");
  transfer->add_option("spec", spec_text)->required();

  auto* prop4 = app.add_subcommand("prop4", "order-2 fixed-point-free-on-abelianization check");
  prop4->add_option("spec", spec_text)->required();
  prop4->add_option("--sigma", sigma_spec)->required();

  auto* gs = app.add_subcommand("gs", "generator/relation rank inequality");
  gs->add_option("--d", gs_d)->required();
  gs->add_option("--r", gs_r)->required();

  auto* tc = app.add_subcommand("tc", "coset enumeration over a presentation file");
  tc->add_option("file", file_path)->required();
  tc->add_option("--subgroup", subgroup_text, "comma-separated subgroup words");
  tc->add_option("--max-cosets", max_cosets);
  tc->add_option("--max-steps", max_steps);

  auto* zdepth = app.add_subcommand("zdepth", "relator depths in the power-series filtration");
  zdepth->add_option("file", file_path)->required();
  zdepth->add_option("--p", magnus_p)->required();
  zdepth->add_option("--degree-cap", degree_cap);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(args, common, spec_text, with_table, out);
    if (report->parsed()) return cmd_report(args, common, spec_text, out);
    if (selfsim->parsed()) return cmd_selfsim(args, common, spec_text, phi_spec, sigma_specs, out);
    if (theorem1->parsed()) return cmd_theorem1(args, common, spec_text, phi_spec, sigma_spec, out);
    if (fpf->parsed()) return cmd_fpf(args, common, spec_text, static_cast<int>(fpf_order), fpf_cap, out);
    if (transfer->parsed()) return cmd_transfer(args, common, spec_text, out);
    if (prop4->parsed()) return cmd_prop4(args, common, spec_text, sigma_spec, out);
    if (gs->parsed()) return cmd_gs(args, common, gs_d, gs_r, out);
    if (tc->parsed()) return cmd_tc(args, common, file_path, subgroup_text, max_cosets, max_steps, out);
    if (zdepth->parsed()) return cmd_zdepth(args, common, file_path, magnus_p, degree_cap, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace proplab
