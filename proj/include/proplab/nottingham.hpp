#pragma once

#include <limits>
#include <string>
#include <vector>

#include "proplab/finite_group.hpp"
#include "proplab/gf.hpp"

namespace proplab {

/// Sentinel depth for the identity series, distinct from every finite depth.
constexpr int kDepthInfinity = std::numeric_limits<int>::max();

/// T + a_2 T^2 + ... + a_N T^N over F_q, taken mod T^{N+1}.  The linear
/// coefficient is always 1; coeffs[i] holds a_{i+2} as a field index.
struct TruncatedSeries {
  int q = 0;
  int N = 0;
  std::vector<int> coeffs;  // size N-1

  bool operator==(const TruncatedSeries&) const = default;
};

TruncatedSeries series_identity(int q, int N);

/// Substitution f(g(T)) mod T^{N+1}; the group law.  Throws MixedParameters
/// when q or N differ.
TruncatedSeries series_compose(const TruncatedSeries& f, const TruncatedSeries& g);

/// Compositional inverse, solved degree by degree.
TruncatedSeries series_reverse(const TruncatedSeries& f);

/// Largest m with f = T mod T^{m+1}; kDepthInfinity for the identity.
int series_depth(const TruncatedSeries& f);

Encoding series_encode(const TruncatedSeries& f);
TruncatedSeries series_decode(int q, int N, const Encoding& e);

/// Text format "T + a2*T^2 + ..."; prime fields print residues, prime-power
/// fields comma-separated polynomial coefficients.  Round-trips exactly.
std::string series_text(const TruncatedSeries& f);
TruncatedSeries series_parse(int q, int N, const std::string& text);

/// True iff every nonzero coefficient sits at an exponent 1 + i*q_param.
bool fesenko_member(const TruncatedSeries& f, int q_param);

/// The quotient of the full series group by its depth >= m congruence
/// subgroup, realized with truncation N = m; order q^{m-1}.
GroupPtr nottingham_quotient(int q, int m,
                             std::size_t table_cap = FiniteGroup::kDefaultTableCap);

/// Congruence chain G = D_1 >= D_2 >= ... >= D_m = 1 by depth.
std::vector<Subgroup> nottingham_depth_chain(const GroupPtr& g, int q, int m);

}  // namespace proplab
