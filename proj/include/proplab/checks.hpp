#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proplab/filtration.hpp"

namespace proplab {

enum class Verdict { Pass, Fail, Skipped };

std::string verdict_text(Verdict v);

struct CheckItem {
  std::string name;
  Verdict verdict = Verdict::Skipped;
  std::string witness;  // populated on failure (and for regime notes)
};

/// Per-check verdicts with failure witnesses; overall pass iff every
/// sub-check passes.
struct CertificateReport {
  std::vector<CheckItem> items;

  bool overall_pass() const;
  void add(std::string name, Verdict v, std::string witness = "");
};

/// Verifies: first term is the whole group, strictly descending, terminal
/// term trivial, every term normal, every consecutive factor abelian.
CertificateReport check_filtration(const GroupPtr& g, const std::vector<Subgroup>& chain);

/// Which automorphisms a certificate is checked against: the full
/// enumerated automorphism group when the order is within the enumeration
/// cap, else a caller-supplied list.
struct AutContext {
  std::vector<Automorphism> auts;
  bool enumerated = false;
};

AutContext automorphism_context(const GroupPtr& g, std::vector<Automorphism> supplied,
                                std::size_t enum_cap = 512);

/// Filtration checks plus: every term characteristic under the given
/// automorphisms, every connecting map present and an isomorphism, every
/// connecting map equivariant under the induced automorphisms, and the
/// growth law |G/G_i| = |G/G_2|^{i-1}.
CertificateReport check_self_similarity(const SimilarityStructure& sim, const AutContext& auts);

struct PropagationLevel {
  int level = 0;  // i, for the quotient G/G_i
  std::uint64_t quotient_order = 0;
  int derived_length = 0;
  std::uint64_t fixed_order = 0;
};

/// Outcome of the fixed-point propagation run: either sigma acts without
/// nontrivial fixed points on every quotient G/G_i (and the derived-length
/// table is the evidence), or a nontrivial sigma-fixed element of G/G_2 is
/// produced by pulling a minimal-level fixed point down through the
/// connecting maps, each step re-verified.
struct PropagationReport {
  int depth = 0;  // chain length L
  std::vector<PropagationLevel> levels;
  std::optional<int> minimal_fixed_level;
  std::vector<std::pair<int, Encoding>> trail;  // (paper factor index, coset rep)
  std::optional<Encoding> fixed_in_top;         // nontrivial fixed coset of G/G_2
  bool propagation_ok = true;
  std::string failure;

  bool fixed_point_free() const { return !minimal_fixed_level.has_value(); }
};

/// Throws NotStable if sigma moves a chain term.  Propagation failures are
/// reported in the result, not thrown.
PropagationReport fixed_point_propagation(const SimilarityStructure& sim,
                                          const Automorphism& sigma);

bool fpf_check(const GroupPtr& g, const Automorphism& sigma);

/// All automorphisms of exact order n without nontrivial fixed points.
std::vector<Automorphism> fpf_search(const GroupPtr& g, int n, std::size_t cap = 512);

struct SurveyEntry {
  std::string label;
  SimilarityStructure sim;
  Automorphism sigma;
};

struct SurveyRow {
  std::string label;
  std::uint64_t order = 0;
  std::vector<std::pair<int, bool>> fpf_by_level;  // (level i, fixed-point-free?)
  std::optional<int> max_derived_length_fpf;       // over fixed-point-free levels
  std::optional<int> max_class_fpf;
  std::string error;  // row-level failure; survey continues

  bool any_fpf() const { return max_derived_length_fpf.has_value(); }
};

/// Per-entry evidence table: fixed-point-freeness of sigma on each quotient
/// level, and the derived length / nilpotency class over the
/// fixed-point-free levels.  Row errors are recorded, not thrown.
std::vector<SurveyRow> derived_length_survey(const std::vector<SurveyEntry>& entries, int n);

/// sigma has order 2, is not the identity, and the map induced on G/G' has
/// no nontrivial fixed point.
bool property_iv_check(const GroupPtr& g, const Automorphism& sigma);

/// 4r > d^2, exact integers.
bool gs_check(std::int64_t d, std::int64_t r);

}  // namespace proplab
