#pragma once

#include <map>
#include <optional>
#include <string>

#include "proplab/filtration.hpp"
#include "proplab/todd_coxeter.hpp"
#include "proplab/words.hpp"

namespace proplab {

enum class FamilyKind { Nottingham, Tree, Sl2Zp, Sl2Lambda, PresentationFile };

/// Parsed family spec string: `nottingham:q=2,m=4`, `tree:p=2,d=2`,
/// `sl2zp:p=3,k=2`, `sl2lambda:p=3,k=3`, `presentation:<path>`.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Nottingham;
  std::map<std::string, std::int64_t> params;
  std::string path;

  static FamilySpec parse(const std::string& text);
  std::string canonical() const;
  std::int64_t param(const std::string& key) const;  // throws UsageError when absent
};

struct BuildOptions {
  std::size_t table_cap = FiniteGroup::kDefaultTableCap;
  std::size_t cap = FiniteGroup::kDefaultCap;
  TCLimits tc;
};

/// A constructed family group with its canonical chain and enough context
/// to decode elements and automorphism specs.
struct BuiltFamily {
  FamilySpec spec;
  GroupPtr group;
  std::vector<Subgroup> chain;           // canonical filtration
  std::optional<Presentation> presentation;  // for presentation families
  std::string config_note;               // extra config echo (field modulus etc.)
};

BuiltFamily build_family(const FamilySpec& spec, const BuildOptions& opt = {});

/// Automorphism spec grammar: `inv` (inversion, abelian only),
/// `conj:<hex element encoding>` (ambient matrices allowed for the matrix
/// families), `images:<file>` (one hex encoding per line, the image of each
/// canonical generator in order).
Automorphism parse_automorphism(const BuiltFamily& fam, const std::string& spec);

/// Connecting-map spec: `ppower`, `tmap`, or `file:<path>`.  The file lists
/// blocks "map <i>" followed by `<hex-src> <hex-dst>` element pairs between
/// consecutive factors.
SimilarityStructure build_similarity(const BuiltFamily& fam, const std::string& phi_spec);

}  // namespace proplab
