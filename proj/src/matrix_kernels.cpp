#include "proplab/matrix_kernels.hpp"

#include <algorithm>

#include "proplab/util.hpp"

namespace proplab {

// ---------------------------------------------------------------------------
// Z/p^k

MatZ SL2ZpContext::mul(const MatZ& x, const MatZ& y) const {
  MatZ r;
  r.a[0] = (x.a[0] * y.a[0] + x.a[1] * y.a[2]) % mod;
  r.a[1] = (x.a[0] * y.a[1] + x.a[1] * y.a[3]) % mod;
  r.a[2] = (x.a[2] * y.a[0] + x.a[3] * y.a[2]) % mod;
  r.a[3] = (x.a[2] * y.a[1] + x.a[3] * y.a[3]) % mod;
  return r;
}

MatZ SL2ZpContext::inv(const MatZ& x) const {
  MatZ r;
  r.a[0] = x.a[3] % mod;
  r.a[1] = (mod - x.a[1] % mod) % mod;
  r.a[2] = (mod - x.a[2] % mod) % mod;
  r.a[3] = x.a[0] % mod;
  return r;
}

std::int64_t SL2ZpContext::det(const MatZ& x) const {
  return ((x.a[0] * x.a[3] - x.a[1] * x.a[2]) % mod + mod) % mod;
}

MatZ SL2ZpContext::identity() const { return MatZ{{1, 0, 0, 1}}; }

Encoding SL2ZpContext::encode(const MatZ& x) const {
  const int w = enc_width();
  Encoding e;
  e.reserve(4 * static_cast<std::size_t>(w));
  for (std::int64_t v : x.a) {
    for (int b = w - 1; b >= 0; --b) e.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
  }
  return e;
}

MatZ SL2ZpContext::decode(const Encoding& e) const {
  const int w = enc_width();
  if (e.size() != 4 * static_cast<std::size_t>(w)) throw Error("MatZ decode: bad length");
  MatZ x;
  std::size_t k2 = 0;
  for (int i = 0; i < 4; ++i) {
    std::int64_t v = 0;
    for (int b = 0; b < w; ++b) v = (v << 8) | static_cast<unsigned char>(e[k2++]);
    x.a[static_cast<std::size_t>(i)] = v;
  }
  return x;
}

// ---------------------------------------------------------------------------
// F_p[T]/(T^k)

namespace {

std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                              std::int64_t p, int k) {
  std::vector<int> out(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j < k; ++j) {
      out[static_cast<std::size_t>(i + j)] =
          static_cast<int>((out[static_cast<std::size_t>(i + j)] +
                            static_cast<std::int64_t>(a[static_cast<std::size_t>(i)]) *
                                b[static_cast<std::size_t>(j)]) %
                           p);
    }
  }
  return out;
}

std::vector<int> poly_add(const std::vector<int>& a, const std::vector<int>& b, std::int64_t p) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<int>((a[i] + b[i]) % p);
  return out;
}

std::vector<int> poly_neg(const std::vector<int>& a, std::int64_t p) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<int>((p - a[i]) % p);
  return out;
}

}  // namespace

MatT SL2LambdaContext::mul(const MatT& x, const MatT& y) const {
  MatT r;
  r.a[0] = poly_add(poly_mul_mod(x.a[0], y.a[0], p, k), poly_mul_mod(x.a[1], y.a[2], p, k), p);
  r.a[1] = poly_add(poly_mul_mod(x.a[0], y.a[1], p, k), poly_mul_mod(x.a[1], y.a[3], p, k), p);
  r.a[2] = poly_add(poly_mul_mod(x.a[2], y.a[0], p, k), poly_mul_mod(x.a[3], y.a[2], p, k), p);
  r.a[3] = poly_add(poly_mul_mod(x.a[2], y.a[1], p, k), poly_mul_mod(x.a[3], y.a[3], p, k), p);
  return r;
}

MatT SL2LambdaContext::inv(const MatT& x) const {
  MatT r;
  r.a[0] = x.a[3];
  r.a[1] = poly_neg(x.a[1], p);
  r.a[2] = poly_neg(x.a[2], p);
  r.a[3] = x.a[0];
  return r;
}

std::vector<int> SL2LambdaContext::det(const MatT& x) const {
  auto ad = poly_mul_mod(x.a[0], x.a[3], p, k);
  auto bc = poly_mul_mod(x.a[1], x.a[2], p, k);
  return poly_add(ad, poly_neg(bc, p), p);
}

MatT SL2LambdaContext::identity() const {
  MatT r;
  for (auto& e : r.a) e.assign(static_cast<std::size_t>(k), 0);
  r.a[0][0] = 1;
  r.a[3][0] = 1;
  return r;
}

Encoding SL2LambdaContext::encode(const MatT& x) const {
  Encoding e;
  e.reserve(4 * static_cast<std::size_t>(k));
  for (const auto& entry : x.a) {
    for (int c : entry) e.push_back(static_cast<char>(c));
  }
  return e;
}

MatT SL2LambdaContext::decode(const Encoding& e) const {
  if (e.size() != 4 * static_cast<std::size_t>(k)) throw Error("MatT decode: bad length");
  MatT x;
  std::size_t idx = 0;
  for (auto& entry : x.a) {
    entry.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) entry[static_cast<std::size_t>(j)] = static_cast<unsigned char>(e[idx++]);
  }
  return x;
}

// ---------------------------------------------------------------------------
// kernel groups

namespace {

void check_kernel_params(std::int64_t p, int k) {
  if (p == 2) throw BadPrime("the congruence kernels require p > 2");
  if (!is_prime(p)) throw BadPrime("p=" + std::to_string(p) + " is not prime");
  if (k < 1) throw Error("k must be >= 1");
}

std::int64_t kernel_order(std::int64_t p, int k) { return ipow(p, 3 * (k - 1)); }

}  // namespace

GroupPtr kernel_group_zp(std::int64_t p, int k, std::size_t table_cap) {
  check_kernel_params(p, k);
  const std::int64_t expected = kernel_order(p, k);
  if (expected > static_cast<std::int64_t>(table_cap)) {
    throw CapExceeded("kernel order " + std::to_string(expected) + " above table cap");
  }
  SL2ZpContext ctx{p, k, ipow(p, k)};

  GroupOracle oracle;
  oracle.compose = [ctx](const Encoding& a, const Encoding& b) {
    return ctx.encode(ctx.mul(ctx.decode(a), ctx.decode(b)));
  };
  oracle.invert = [ctx](const Encoding& a) { return ctx.encode(ctx.inv(ctx.decode(a))); };

  std::vector<Encoding> gens;
  if (k >= 2) {
    MatZ u{{1, p, 0, 1}};
    MatZ l{{1, 0, p, 1}};
    std::int64_t t = 1 + p;
    std::int64_t tinv = 1;
    for (std::int64_t c = 0; c < ctx.mod; ++c) {
      if ((t * c) % ctx.mod == 1) {
        tinv = c;
        break;
      }
    }
    MatZ dd{{t, 0, 0, tinv}};
    gens = {ctx.encode(u), ctx.encode(l), ctx.encode(dd)};
  }
  FiniteGroup::Options opt;
  opt.cap = static_cast<std::size_t>(expected);
  opt.table_cap = table_cap;
  GroupPtr g = FiniteGroup::closure(ctx.encode(ctx.identity()), std::move(gens),
                                    std::move(oracle), p, opt);
  if (g->order() != static_cast<std::size_t>(expected)) {
    throw OracleInconsistent("zp kernel order mismatch");
  }
  return g;
}

GroupPtr kernel_group_lambda(std::int64_t p, int k, std::size_t table_cap) {
  check_kernel_params(p, k);
  const std::int64_t expected = kernel_order(p, k);
  if (expected > static_cast<std::int64_t>(table_cap)) {
    throw CapExceeded("kernel order " + std::to_string(expected) + " above table cap");
  }
  SL2LambdaContext ctx{p, k};

  GroupOracle oracle;
  oracle.compose = [ctx](const Encoding& a, const Encoding& b) {
    return ctx.encode(ctx.mul(ctx.decode(a), ctx.decode(b)));
  };
  oracle.invert = [ctx](const Encoding& a) { return ctx.encode(ctx.inv(ctx.decode(a))); };

  std::vector<Encoding> gens;
  if (k >= 2) {
    MatT u = ctx.identity();
    u.a[1][1] = 1;  // I + T*E12
    MatT l = ctx.identity();
    l.a[2][1] = 1;  // I + T*E21
    MatT dd = ctx.identity();
    dd.a[0][1] = 1;  // 1 + T
    // (1+T)^{-1} = 1 - T + T^2 - ... mod T^k
    for (int j = 1; j < k; ++j) {
      dd.a[3][static_cast<std::size_t>(j)] =
          static_cast<int>(j % 2 == 1 ? p - 1 : 1);
    }
    gens = {ctx.encode(u), ctx.encode(l), ctx.encode(dd)};
  }
  FiniteGroup::Options opt;
  opt.cap = static_cast<std::size_t>(expected);
  opt.table_cap = table_cap;
  GroupPtr g = FiniteGroup::closure(ctx.encode(ctx.identity()), std::move(gens),
                                    std::move(oracle), p, opt);
  if (g->order() != static_cast<std::size_t>(expected)) {
    throw OracleInconsistent("lambda kernel order mismatch");
  }
  return g;
}

std::vector<Subgroup> congruence_chain(const GroupPtr& g, KernelKind kind, std::int64_t p, int k) {
  std::vector<Subgroup> chain;
  for (int level = 1; level <= k; ++level) {
    std::vector<int> members;
    if (kind == KernelKind::Zp) {
      SL2ZpContext ctx{p, k, ipow(p, k)};
      const std::int64_t pl = ipow(p, level);
      for (std::size_t i = 0; i < g->order(); ++i) {
        MatZ m = ctx.decode(g->encoding(static_cast<int>(i)));
        bool in = (m.a[0] % pl == 1) && (m.a[3] % pl == 1) && (m.a[1] % pl == 0) &&
                  (m.a[2] % pl == 0);
        if (in) members.push_back(static_cast<int>(i));
      }
    } else {
      SL2LambdaContext ctx{p, k};
      for (std::size_t i = 0; i < g->order(); ++i) {
        MatT m = ctx.decode(g->encoding(static_cast<int>(i)));
        bool in = true;
        for (int j = 0; j < level && in; ++j) {
          int want0 = (j == 0) ? 1 : 0;
          if (m.a[0][static_cast<std::size_t>(j)] != want0 ||
              m.a[3][static_cast<std::size_t>(j)] != want0 ||
              m.a[1][static_cast<std::size_t>(j)] != 0 ||
              m.a[2][static_cast<std::size_t>(j)] != 0) {
            in = false;
          }
        }
        if (in) members.push_back(static_cast<int>(i));
      }
    }
    chain.emplace_back(g, std::move(members));
  }
  return chain;
}

Automorphism ambient_conjugation_zp(const GroupPtr& g, std::int64_t p, int k, const MatZ& c) {
  SL2ZpContext ctx{p, k, ipow(p, k)};
  // conjugation by c must be undone by an integer-matrix inverse; scale the
  // adjugate by det^{-1} mod p^k
  std::int64_t d = ((c.a[0] * c.a[3] - c.a[1] * c.a[2]) % ctx.mod + ctx.mod) % ctx.mod;
  std::int64_t dinv = -1;
  for (std::int64_t x = 0; x < ctx.mod; ++x) {
    if ((d * x) % ctx.mod == 1) {
      dinv = x;
      break;
    }
  }
  if (dinv < 0) throw NotIso("conjugating matrix is not invertible mod p^k");
  MatZ cinv{{(c.a[3] * dinv) % ctx.mod, ((ctx.mod - c.a[1] % ctx.mod) * dinv) % ctx.mod,
             ((ctx.mod - c.a[2] % ctx.mod) * dinv) % ctx.mod, (c.a[0] * dinv) % ctx.mod}};
  std::vector<int> images(g->order());
  for (std::size_t i = 0; i < g->order(); ++i) {
    MatZ m = ctx.decode(g->encoding(static_cast<int>(i)));
    MatZ im = ctx.mul(ctx.mul(cinv, m), c);
    int idx = g->index_of(ctx.encode(im));
    if (idx < 0) throw NotIso("conjugation leaves the group");
    images[i] = idx;
  }
  return Automorphism::from_full_map(g, std::move(images));
}

Automorphism ambient_conjugation_lambda(const GroupPtr& g, std::int64_t p, int k, const MatT& c) {
  SL2LambdaContext ctx{p, k};
  auto d = ctx.det(c);
  // invert det as a unit of F_p[T]/(T^k): d = d0 (1 + n), invert d0 and use
  // the geometric series for (1 + n)^{-1}
  if (d[0] == 0) throw NotIso("conjugating matrix is not invertible mod T^k");
  std::int64_t d0inv = 1;
  for (std::int64_t x = 1; x < p; ++x) {
    if ((d[0] * x) % p == 1) {
      d0inv = x;
      break;
    }
  }
  std::vector<int> dinv(static_cast<std::size_t>(k), 0);
  dinv[0] = 1;
  std::vector<int> n = d;
  for (auto& v : n) v = static_cast<int>((v * d0inv) % p);
  n[0] = 0;  // now d*d0inv = 1 + n with n nilpotent
  std::vector<int> npow(static_cast<std::size_t>(k), 0);
  npow[0] = 1;
  for (int j = 1; j < k; ++j) {
    npow = poly_mul_mod(npow, n, p, k);
    int sign = (j % 2 == 1) ? -1 : 1;
    for (int t = 0; t < k; ++t) {
      dinv[static_cast<std::size_t>(t)] = static_cast<int>(
          ((dinv[static_cast<std::size_t>(t)] + sign * npow[static_cast<std::size_t>(t)]) % p + p) % p);
    }
  }
  for (auto& v : dinv) v = static_cast<int>((v * d0inv) % p);

  MatT cinv;
  cinv.a[0] = poly_mul_mod(c.a[3], dinv, p, k);
  cinv.a[1] = poly_mul_mod(poly_neg(c.a[1], p), dinv, p, k);
  cinv.a[2] = poly_mul_mod(poly_neg(c.a[2], p), dinv, p, k);
  cinv.a[3] = poly_mul_mod(c.a[0], dinv, p, k);

  std::vector<int> images(g->order());
  for (std::size_t i = 0; i < g->order(); ++i) {
    MatT m = ctx.decode(g->encoding(static_cast<int>(i)));
    MatT im = ctx.mul(ctx.mul(cinv, m), c);
    int idx = g->index_of(ctx.encode(im));
    if (idx < 0) throw NotIso("conjugation leaves the group");
    images[i] = idx;
  }
  return Automorphism::from_full_map(g, std::move(images));
}

MatZ diag_one_minus_one_zp(std::int64_t p, int k) {
  std::int64_t mod = ipow(p, k);
  return MatZ{{1, 0, 0, mod - 1}};
}

MatT diag_one_minus_one_lambda(std::int64_t p, int k) {
  SL2LambdaContext ctx{p, k};
  MatT m = ctx.identity();
  m.a[3][0] = static_cast<int>(p - 1);
  return m;
}

MatZ rotation_zp(std::int64_t p, int k) {
  std::int64_t mod = ipow(p, k);
  return MatZ{{0, 1, mod - 1, 0}};
}

MatT rotation_lambda(std::int64_t p, int k) {
  MatT m;
  for (auto& e : m.a) e.assign(static_cast<std::size_t>(k), 0);
  m.a[1][0] = 1;
  m.a[2][0] = static_cast<int>(p - 1);
  return m;
}

}  // namespace proplab
