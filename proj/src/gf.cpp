#include "proplab/gf.hpp"

#include <map>
#include <mutex>

#include "proplab/util.hpp"

namespace proplab {

namespace {

std::vector<int> digits_of(int value, int p, int f) {
  std::vector<int> d(f, 0);
  for (int i = 0; i < f; ++i) {
    d[i] = value % p;
    value /= p;
  }
  return d;
}

int value_of(const std::vector<int>& d, int p) {
  int v = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p + d[i];
  return v;
}

}  // namespace

GF::GF(int p, int f, std::vector<int> modulus)
    : p_(p), f_(f), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < f; ++i) q_ *= p;

  if (f_ > 1) {
    std::vector<std::string> terms;
    for (int i = f_; i >= 0; --i) {
      int c = (i == f_) ? 1 : modulus_[i];
      if (c == 0) continue;
      std::string t;
      if (i == 0) {
        t = std::to_string(c);
      } else {
        if (c != 1) t = std::to_string(c) + "*";
        t += (i == 1) ? "x" : "x^" + std::to_string(i);
      }
      terms.push_back(t);
    }
    modulus_text_ = join(terms, "+");
  }

  mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
  for (int a = 0; a < q_; ++a) {
    auto da = digits_of(a, p_, f_);
    for (int b = 0; b < q_; ++b) {
      auto db = digits_of(b, p_, f_);
      // schoolbook product, then reduce by the monic modulus
      std::vector<int> prod(2 * f_ - 1, 0);
      for (int i = 0; i < f_; ++i)
        for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      for (int d = 2 * f_ - 2; d >= f_; --d) {
        int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < f_; ++i) {
          prod[d - f_ + i] = ((prod[d - f_ + i] - c * modulus_[i]) % p_ + p_) % p_;
        }
      }
      prod.resize(f_);
      mul_[static_cast<std::size_t>(a) * q_ + b] = value_of(prod, p_);
    }
  }

  inv_.assign(q_, -1);
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b) {
      if (mul(a, b) == 1) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] < 0) throw Error("GF: modulus is not irreducible for q=" + std::to_string(q_));
  }
}

int GF::add(int a, int b) const {
  auto da = digits_of(a, p_, f_);
  auto db = digits_of(b, p_, f_);
  for (int i = 0; i < f_; ++i) da[i] = (da[i] + db[i]) % p_;
  return value_of(da, p_);
}

int GF::sub(int a, int b) const { return add(a, neg(b)); }

int GF::neg(int a) const {
  auto d = digits_of(a, p_, f_);
  for (int i = 0; i < f_; ++i) d[i] = (p_ - d[i]) % p_;
  return value_of(d, p_);
}

int GF::inv(int a) const {
  if (a == 0) throw Error("GF: inverse of zero");
  return inv_[a];
}

int GF::pow(int a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  int r = 1, base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::string GF::elem_text(int a) const {
  if (f_ == 1) return std::to_string(a);
  auto d = digits_of(a, p_, f_);
  std::vector<std::string> parts;
  for (int c : d) parts.push_back(std::to_string(c));
  return join(parts, ",");
}

int GF::parse_elem(const std::string& text) const {
  std::vector<int> d;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      d.push_back(static_cast<int>(parse_int(cur)));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  d.push_back(static_cast<int>(parse_int(cur)));
  if (f_ == 1) {
    if (d.size() != 1) throw SyntaxError("prime field element '" + text + "'");
    int v = ((d[0] % p_) + p_) % p_;
    return v;
  }
  if (static_cast<int>(d.size()) != f_) {
    throw SyntaxError("field element '" + text + "' needs " + std::to_string(f_) +
                      " coefficients");
  }
  for (int& c : d) c = ((c % p_) + p_) % p_;
  return value_of(d, p_);
}

const GF& GF::get(int q) {
  static std::mutex mu;
  static std::map<int, GF*> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return *it->second;

  GF* field = nullptr;
  if (is_prime(q)) {
    field = new GF(q, 1, {0});
  } else {
    // fixed irreducibles, recorded in reports via modulus_text()
    switch (q) {
      case 4:  field = new GF(2, 2, {1, 1}); break;           // x^2+x+1
      case 8:  field = new GF(2, 3, {1, 1, 0}); break;        // x^3+x+1
      case 9:  field = new GF(3, 2, {2, 2}); break;           // x^2+2x+2
      case 16: field = new GF(2, 4, {1, 1, 0, 0}); break;     // x^4+x+1
      case 25: field = new GF(5, 2, {2, 4}); break;           // x^2+4x+2
      case 27: field = new GF(3, 3, {1, 2, 0}); break;        // x^3+2x+1
      default:
        throw BadPrime("unsupported field size q=" + std::to_string(q));
    }
  }
  cache[q] = field;
  return *field;
}

}  // namespace proplab
