#include "proplab/family.hpp"

#include <fstream>
#include <sstream>

#include "proplab/matrix_kernels.hpp"
#include "proplab/nottingham.hpp"
#include "proplab/tree_wreath.hpp"
#include "proplab/util.hpp"

namespace proplab {

FamilySpec FamilySpec::parse(const std::string& text) {
  FamilySpec spec;
  auto colon = text.find(':');
  std::string kind = colon == std::string::npos ? text : text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (kind == "nottingham") {
    spec.kind = FamilyKind::Nottingham;
  } else if (kind == "tree") {
    spec.kind = FamilyKind::Tree;
  } else if (kind == "sl2zp") {
    spec.kind = FamilyKind::Sl2Zp;
  } else if (kind == "sl2lambda") {
    spec.kind = FamilyKind::Sl2Lambda;
  } else if (kind == "presentation") {
    spec.kind = FamilyKind::PresentationFile;
    spec.path = rest;
    if (spec.path.empty()) throw UsageError("presentation spec needs a file path");
    return spec;
  } else {
    throw UsageError("unknown family kind '" + kind + "'");
  }

  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    auto eq = cur.find('=');
    if (eq == std::string::npos) throw UsageError("bad family parameter '" + cur + "'");
    spec.params[cur.substr(0, eq)] = parse_int(cur.substr(eq + 1));
    cur.clear();
  };
  for (char c : rest) {
    if (c == ',') {
      flush();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  flush();
  return spec;
}

std::int64_t FamilySpec::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw UsageError("family spec misses parameter '" + key + "'");
  return it->second;
}

std::string FamilySpec::canonical() const {
  std::string kind;
  switch (this->kind) {
    case FamilyKind::Nottingham: kind = "nottingham"; break;
    case FamilyKind::Tree: kind = "tree"; break;
    case FamilyKind::Sl2Zp: kind = "sl2zp"; break;
    case FamilyKind::Sl2Lambda: kind = "sl2lambda"; break;
    case FamilyKind::PresentationFile: return "presentation:" + path;
  }
  std::string out = kind;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep + k + "=" + std::to_string(v);
    sep = ',';
  }
  return out;
}

BuiltFamily build_family(const FamilySpec& spec, const BuildOptions& opt) {
  BuiltFamily fam;
  fam.spec = spec;
  switch (spec.kind) {
    case FamilyKind::Nottingham: {
      int q = static_cast<int>(spec.param("q"));
      int m = static_cast<int>(spec.param("m"));
      fam.group = nottingham_quotient(q, m, opt.table_cap);
      fam.chain = nottingham_depth_chain(fam.group, q, m);
      const GF& k = GF::get(q);
      if (k.f() > 1) fam.config_note = "field_modulus q=" + std::to_string(q) + ": " + k.modulus_text();
      break;
    }
    case FamilyKind::Tree: {
      int p = static_cast<int>(spec.param("p"));
      int d = static_cast<int>(spec.param("d"));
      FiniteGroup::Options gopt;
      gopt.cap = opt.cap;
      gopt.table_cap = opt.table_cap;
      fam.group = wreath_group(p, d, gopt);
      fam.chain = level_stabilizer_chain(fam.group, p, d);
      break;
    }
    case FamilyKind::Sl2Zp: {
      auto p = spec.param("p");
      int k = static_cast<int>(spec.param("k"));
      fam.group = kernel_group_zp(p, k, opt.table_cap);
      fam.chain = congruence_chain(fam.group, KernelKind::Zp, p, k);
      break;
    }
    case FamilyKind::Sl2Lambda: {
      auto p = spec.param("p");
      int k = static_cast<int>(spec.param("k"));
      fam.group = kernel_group_lambda(p, k, opt.table_cap);
      fam.chain = congruence_chain(fam.group, KernelKind::Lambda, p, k);
      break;
    }
    case FamilyKind::PresentationFile: {
      Presentation p = load_presentation_file(spec.path);
      CosetTable table = todd_coxeter(p, {}, opt.tc);
      fam.group = regular_group(table, p, opt.table_cap);
      fam.presentation = std::move(p);
      // canonical chain: the derived series (normal, abelian factors)
      for (auto& s : derived_series(fam.group)) fam.chain.push_back(std::move(s));
      break;
    }
  }
  if (fam.chain.size() == 1) {
    // ensure every chain reaches the trivial subgroup even for trivial groups
    if (!fam.chain.back().is_trivial()) fam.chain.push_back(Subgroup::trivial(fam.group));
  }
  return fam;
}

Automorphism parse_automorphism(const BuiltFamily& fam, const std::string& spec) {
  if (spec == "inv") return inversion_automorphism(fam.group);

  if (spec.rfind("conj:", 0) == 0) {
    Encoding enc = from_hex(spec.substr(5));
    int idx = fam.group->index_of(enc);
    if (idx >= 0) return conjugation_automorphism(fam.group, idx);
    // ambient conjugation for the matrix families
    if (fam.spec.kind == FamilyKind::Sl2Zp) {
      auto p = fam.spec.param("p");
      int k = static_cast<int>(fam.spec.param("k"));
      SL2ZpContext ctx{p, k, ipow(p, k)};
      return ambient_conjugation_zp(fam.group, p, k, ctx.decode(enc));
    }
    if (fam.spec.kind == FamilyKind::Sl2Lambda) {
      auto p = fam.spec.param("p");
      int k = static_cast<int>(fam.spec.param("k"));
      SL2LambdaContext ctx{p, k};
      return ambient_conjugation_lambda(fam.group, p, k, ctx.decode(enc));
    }
    throw UsageError("conj element is not a group member");
  }

  if (spec.rfind("images:", 0) == 0) {
    std::string path = spec.substr(7);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open images file '" + path + "'");
    std::vector<int> images;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::string trimmed;
      for (char c : line) {
        if (!isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
      }
      if (trimmed.empty()) continue;
      int idx = fam.group->index_of(from_hex(trimmed));
      if (idx < 0) throw UsageError("image encoding '" + trimmed + "' is not a group element");
      images.push_back(idx);
    }
    return Automorphism::from_images(fam.group, images);
  }

  throw UsageError("bad automorphism spec '" + spec + "' (want inv | conj:<hex> | images:<file>)");
}

SimilarityStructure build_similarity(const BuiltFamily& fam, const std::string& phi_spec) {
  if (phi_spec == "ppower") {
    return build_power_similarity(fam.group, fam.chain, /*require_iso=*/true);
  }
  if (phi_spec == "tmap") {
    if (fam.spec.kind != FamilyKind::Sl2Lambda) {
      throw UsageError("tmap connecting maps require the sl2lambda family");
    }
    auto p = fam.spec.param("p");
    int k = static_cast<int>(fam.spec.param("k"));
    if (k < 3) throw UsageError("tmap connecting maps need k >= 3");
    return build_tmap_similarity(fam.group, fam.chain, p, k);
  }
  if (phi_spec == "none") {
    return build_similarity_factors(fam.group, fam.chain);
  }
  if (phi_spec.rfind("file:", 0) == 0) {
    std::string path = phi_spec.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open map file '" + path + "'");
    SimilarityStructure sim = build_similarity_factors(fam.group, fam.chain);
    std::size_t slot = 0;
    std::vector<std::pair<Encoding, Encoding>> pairs;
    auto flush = [&]() {
      if (slot > 0) attach_similarity_map(sim, slot, pairs);
      pairs.clear();
    };
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ls(line);
      std::string first, second;
      if (!(ls >> first)) continue;
      if (first == "map") {
        if (!(ls >> second)) throw UsageError("map header needs an index");
        flush();
        std::int64_t paper_index = parse_int(second);
        if (paper_index < 2) throw UsageError("map index must be >= 2");
        slot = static_cast<std::size_t>(paper_index - 1);
      } else {
        if (!(ls >> second)) throw UsageError("map line needs two encodings");
        pairs.emplace_back(from_hex(first), from_hex(second));
      }
    }
    flush();
    return sim;
  }
  throw UsageError("bad map spec '" + phi_spec + "' (want ppower | tmap | none | file:<path>)");
}

}  // namespace proplab
