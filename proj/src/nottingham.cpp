#include "proplab/nottingham.hpp"

#include <algorithm>

#include "proplab/util.hpp"

namespace proplab {

namespace {

// dense coefficient vector c[1..N] (index 0 unused) for arithmetic
using Poly = std::vector<int>;

Poly to_poly(const TruncatedSeries& f) {
  Poly c(static_cast<std::size_t>(f.N) + 1, 0);
  c[1] = 1;
  for (int i = 2; i <= f.N; ++i) c[static_cast<std::size_t>(i)] = f.coeffs[static_cast<std::size_t>(i - 2)];
  return c;
}

// product truncated beyond degree N; inputs have zero constant term
Poly poly_mul(const GF& k, const Poly& a, const Poly& b, int N) {
  Poly out(static_cast<std::size_t>(N) + 1, 0);
  for (int i = 1; i <= N; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 1; i + j <= N; ++j) {
      if (b[static_cast<std::size_t>(j)] == 0) continue;
      auto& slot = out[static_cast<std::size_t>(i + j)];
      slot = k.add(slot, k.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

TruncatedSeries from_poly(int q, int N, const Poly& c) {
  TruncatedSeries f;
  f.q = q;
  f.N = N;
  f.coeffs.assign(static_cast<std::size_t>(N) - 1, 0);
  for (int i = 2; i <= N; ++i) f.coeffs[static_cast<std::size_t>(i - 2)] = c[static_cast<std::size_t>(i)];
  return f;
}

}  // namespace

TruncatedSeries series_identity(int q, int N) {
  TruncatedSeries f;
  f.q = q;
  f.N = N;
  f.coeffs.assign(static_cast<std::size_t>(N) - 1, 0);
  return f;
}

TruncatedSeries series_compose(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.q != g.q || f.N != g.N) throw MixedParameters("series with different q or N");
  const GF& k = GF::get(f.q);
  const int N = f.N;
  Poly gp = to_poly(g);
  Poly acc = gp;        // g^1 contributes with coefficient a_1 = 1
  Poly gpow = gp;       // g^m
  Poly fc = to_poly(f);
  for (int m = 2; m <= N; ++m) {
    gpow = poly_mul(k, gpow, gp, N);
    int a = fc[static_cast<std::size_t>(m)];
    if (a == 0) continue;
    for (int i = 1; i <= N; ++i) {
      acc[static_cast<std::size_t>(i)] =
          k.add(acc[static_cast<std::size_t>(i)], k.mul(a, gpow[static_cast<std::size_t>(i)]));
    }
  }
  return from_poly(f.q, N, acc);
}

TruncatedSeries series_reverse(const TruncatedSeries& f) {
  const GF& k = GF::get(f.q);
  TruncatedSeries g = series_identity(f.q, f.N);
  // fix the T^m coefficient of f(g) one degree at a time; changing g_m moves
  // that coefficient by exactly g_m
  for (int m = 2; m <= f.N; ++m) {
    TruncatedSeries h = series_compose(f, g);
    int cm = h.coeffs[static_cast<std::size_t>(m - 2)];
    auto& gm = g.coeffs[static_cast<std::size_t>(m - 2)];
    gm = k.sub(gm, cm);
  }
  return g;
}

int series_depth(const TruncatedSeries& f) {
  for (int i = 2; i <= f.N; ++i) {
    if (f.coeffs[static_cast<std::size_t>(i - 2)] != 0) return i - 1;
  }
  return kDepthInfinity;
}

Encoding series_encode(const TruncatedSeries& f) {
  Encoding e;
  e.reserve(f.coeffs.size());
  for (int c : f.coeffs) e.push_back(static_cast<char>(c));
  return e;
}

TruncatedSeries series_decode(int q, int N, const Encoding& e) {
  TruncatedSeries f;
  f.q = q;
  f.N = N;
  if (e.size() != static_cast<std::size_t>(N) - 1) throw Error("series_decode: bad length");
  for (char c : e) f.coeffs.push_back(static_cast<unsigned char>(c));
  return f;
}

std::string series_text(const TruncatedSeries& f) {
  const GF& k = GF::get(f.q);
  std::string out = "T";
  for (int i = 2; i <= f.N; ++i) {
    int c = f.coeffs[static_cast<std::size_t>(i - 2)];
    if (c == 0) continue;
    out += " + " + k.elem_text(c) + "*T^" + std::to_string(i);
  }
  return out;
}

TruncatedSeries series_parse(int q, int N, const std::string& text) {
  const GF& k = GF::get(q);
  TruncatedSeries f = series_identity(q, N);
  // terms are separated by '+'; the first must be the bare T
  std::vector<std::string> terms;
  std::string cur;
  for (char c : text) {
    if (c == '+') {
      terms.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  terms.push_back(cur);
  if (terms.empty() || terms[0] != "T") throw SyntaxError("series must start with T");
  for (std::size_t t = 1; t < terms.size(); ++t) {
    const std::string& term = terms[t];
    auto star = term.find("*T^");
    if (star == std::string::npos) throw SyntaxError("bad series term '" + term + "'");
    int coeff = k.parse_elem(term.substr(0, star));
    std::int64_t expo = parse_int(term.substr(star + 3));
    if (expo < 2 || expo > N) {
      throw SyntaxError("series exponent " + std::to_string(expo) + " out of range");
    }
    f.coeffs[static_cast<std::size_t>(expo - 2)] = coeff;
  }
  return f;
}

bool fesenko_member(const TruncatedSeries& f, int q_param) {
  if (q_param < 2) throw Error("fesenko_member: q parameter must be >= 2");
  for (int i = 2; i <= f.N; ++i) {
    if (f.coeffs[static_cast<std::size_t>(i - 2)] != 0 && (i - 1) % q_param != 0) return false;
  }
  return true;
}

GroupPtr nottingham_quotient(int q, int m, std::size_t table_cap) {
  if (m < 2) throw Error("nottingham_quotient: m must be >= 2");
  GF::get(q);  // validates q up front
  std::int64_t expected = ipow(q, m - 1);
  if (expected > static_cast<std::int64_t>(table_cap)) {
    throw CapExceeded("nottingham quotient order " + std::to_string(expected) +
                      " above table cap");
  }

  const int N = m;
  GroupOracle oracle;
  oracle.compose = [q, N](const Encoding& a, const Encoding& b) {
    return series_encode(series_compose(series_decode(q, N, a), series_decode(q, N, b)));
  };
  oracle.invert = [q, N](const Encoding& a) {
    return series_encode(series_reverse(series_decode(q, N, a)));
  };

  // enumerate the carrier in encoding order and pick a greedy irredundant
  // generating sequence
  std::vector<Encoding> carrier;
  Encoding cur(static_cast<std::size_t>(N) - 1, 0);
  while (true) {
    carrier.push_back(cur);
    int pos = static_cast<int>(cur.size()) - 1;
    while (pos >= 0) {
      int v = static_cast<unsigned char>(cur[static_cast<std::size_t>(pos)]) + 1;
      if (v < q) {
        cur[static_cast<std::size_t>(pos)] = static_cast<char>(v);
        break;
      }
      cur[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(carrier.begin(), carrier.end(), encoding_less);

  Encoding id = series_encode(series_identity(q, N));
  std::vector<Encoding> gens;
  {
    std::vector<Encoding> have{id};
    auto contains = [&](const Encoding& e) {
      return std::binary_search(have.begin(), have.end(), e);
    };
    for (const auto& e : carrier) {
      if (have.size() == carrier.size()) break;
      if (contains(e)) continue;
      gens.push_back(e);
      // closure of the current generating set
      std::vector<Encoding> closed{id};
      std::unordered_map<Encoding, char> in{{id, 1}};
      for (const auto& s : gens) {
        if (!in.count(s)) {
          in.emplace(s, 1);
          closed.push_back(s);
        }
      }
      for (std::size_t i = 0; i < closed.size(); ++i) {
        for (const auto& s : gens) {
          Encoding pr = oracle.compose(closed[i], s);
          if (!in.count(pr)) {
            in.emplace(pr, 1);
            closed.push_back(pr);
          }
        }
      }
      std::sort(closed.begin(), closed.end());
      have = std::move(closed);
    }
  }

  FiniteGroup::Options opt;
  opt.cap = static_cast<std::size_t>(expected);
  opt.table_cap = table_cap;
  GroupPtr g = FiniteGroup::closure(id, std::move(gens), std::move(oracle),
                                    GF::get(q).p(), opt);
  if (g->order() != static_cast<std::size_t>(expected)) {
    throw OracleInconsistent("nottingham quotient order mismatch");
  }
  return g;
}

std::vector<Subgroup> nottingham_depth_chain(const GroupPtr& g, int q, int m) {
  std::vector<Subgroup> chain;
  for (int level = 1; level <= m; ++level) {
    std::vector<int> members;
    for (std::size_t i = 0; i < g->order(); ++i) {
      TruncatedSeries f = series_decode(q, m, g->encoding(static_cast<int>(i)));
      if (series_depth(f) >= level) members.push_back(static_cast<int>(i));
    }
    chain.emplace_back(g, std::move(members));
  }
  return chain;
}

}  // namespace proplab
