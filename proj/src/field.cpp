#include "field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lwcs {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// dense polynomials over Z/p, low degree first, no trailing zeros
using Poly = std::vector<uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  uint64_t r = 1, b = a % p;
  for (uint32_t e = p - 2; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return uint32_t(r);
}

Poly pmod(Poly a, const Poly& m, uint32_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  const uint32_t li = inv_mod(m.back(), p);
  while (a.size() > dm) {
    uint64_t c = uint64_t(a.back()) * li % p;
    size_t sh = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i)
      a[sh + i] = uint32_t((a[sh + i] + (p - c) * m[i]) % p);
    trim(a);
  }
  return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& m, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = uint32_t((r[i + j] + uint64_t(a[i]) * b[j]) % p);
  return pmod(std::move(r), m, p);
}

Poly ppowmod(Poly b, uint64_t e, const Poly& m, uint32_t p) {
  Poly r{1};
  r = pmod(r, m, p);
  b = pmod(b, m, p);
  for (; e; e >>= 1) {
    if (e & 1) r = pmulmod(r, b, m, p);
    b = pmulmod(b, b, m, p);
  }
  return r;
}

Poly pgcd(Poly a, Poly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly psub(Poly a, const Poly& b, uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

uint64_t ipow(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

bool poly_irreducible(const std::vector<uint32_t>& m, uint32_t p) {
  const uint32_t n = uint32_t(m.size()) - 1;
  if (n == 1) return true;
  if (m[0] == 0) return false;
  const Poly x{0, 1};
  // Rabin: x^{p^n} = x mod m, and gcd(x^{p^{n/r}} - x, m) = 1 for primes r | n
  auto frob_iter = [&](uint32_t k) {
    Poly y = pmod(x, m, p);
    for (uint32_t i = 0; i < k; ++i) y = ppowmod(y, p, m, p);
    return y;
  };
  if (psub(frob_iter(n), x, p).size() != 0) return false;
  for (uint64_t r : prime_factors(n)) {
    Poly g = pgcd(m, psub(frob_iter(uint32_t(n / r)), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<uint32_t> canonical_modulus(uint32_t p, uint32_t f) {
  if (f == 1) return {0, 1};
  const uint64_t count = ipow(p, f);
  for (uint64_t j = 0; j < count; ++j) {
    // reversed digits so that c_0 is the most significant key
    Poly m(f + 1, 0);
    uint64_t t = j;
    for (uint32_t i = 0; i < f; ++i) {
      m[f - 1 - i] = uint32_t(t % p);
      t /= p;
    }
    m[f] = 1;
    if (poly_irreducible(m, p)) return m;
  }
  fail(Err::InvariantViolation, "no irreducible polynomial found");
}

std::shared_ptr<const Field> make_field(uint32_t p, uint32_t f) {
  if (!is_prime(p)) fail(Err::NotPrime, std::to_string(p) + " is not prime");
  if (f < 1) fail(Err::InvalidArgument, "degree must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > kFieldCap) fail(Err::CapExceeded, "field size above 2^20");
  }
  auto F = std::make_shared<Field>();
  F->p = p;
  F->f = f;
  F->q = uint32_t(q);
  F->modulus = canonical_modulus(p, f);
  F->pw_.resize(f + 1);
  F->pw_[0] = 1;
  for (uint32_t i = 1; i <= f; ++i) F->pw_[i] = F->pw_[i - 1] * p;

  const Poly& m = F->modulus;
  auto to_poly = [&](Elem a) {
    Poly c(f);
    for (uint32_t i = 0; i < f; ++i, a /= p) c[i] = a % p;
    trim(c);
    return c;
  };
  auto from_poly = [&](const Poly& c) {
    Elem a = 0;
    for (size_t i = c.size(); i-- > 0;) a = a * p + c[i];
    return a;
  };

  // generator: first element of multiplicative order q-1, elements visited in
  // coefficient-tuple order with c_0 most significant
  const auto fac = prime_factors(q - 1);
  Elem gen = 0;
  for (uint64_t j = 1; j < q && !gen; ++j) {
    Poly c(f, 0);
    uint64_t t = j;
    for (uint32_t i = 0; i < f; ++i) {
      c[f - 1 - i] = uint32_t(t % p);
      t /= p;
    }
    trim(c);
    bool ok = true;
    for (uint64_t r : fac) {
      Poly y = ppowmod(c, (q - 1) / r, m, p);
      if (y.size() == 1 && y[0] == 1) {
        ok = false;
        break;
      }
    }
    if (q == 2) ok = (c.size() == 1 && c[0] == 1);
    if (ok) gen = from_poly(c);
  }
  F->gen = gen;

  F->exp_.resize(q - 1);
  F->log_.assign(q, 0);
  {
    // fixed-size multiply-by-gen, the generic helpers allocate too much here
    Poly g = to_poly(gen);
    g.resize(f, 0);
    std::vector<uint64_t> cur(f, 0), tmp(2 * f, 0);
    cur[0] = 1;
    for (uint64_t k = 0; k + 1 < q; ++k) {
      Elem e = 0;
      for (uint32_t i = f; i-- > 0;) e = e * p + Elem(cur[i]);
      F->exp_[k] = e;
      F->log_[e] = uint32_t(k);
      std::fill(tmp.begin(), tmp.end(), 0);
      for (uint32_t i = 0; i < f; ++i)
        if (cur[i])
          for (uint32_t j = 0; j < f; ++j) tmp[i + j] += cur[i] * g[j];
      for (uint32_t i = 2 * f - 1; i-- > f;) {
        uint64_t c = tmp[i] % p;
        if (!c) continue;
        for (uint32_t j = 0; j < f; ++j) tmp[i - f + j] += (p - m[j]) * c;
      }
      for (uint32_t i = 0; i < f; ++i) cur[i] = tmp[i] % p;
    }
  }

  // absolute trace of the basis x^i, then linearity
  std::vector<uint32_t> tb(f);
  for (uint32_t i = 0; i < f; ++i) {
    Poly xi(i + 1, 0);
    xi[i] = 1;
    Poly y = pmod(xi, m, p), acc = y;
    for (uint32_t k = 1; k < f; ++k) {
      y = ppowmod(y, p, m, p);
      if (acc.size() < y.size()) acc.resize(y.size(), 0);
      for (size_t t = 0; t < y.size(); ++t) acc[t] = (acc[t] + y[t]) % p;
    }
    trim(acc);
    tb[i] = acc.empty() ? 0 : acc[0];
  }
  F->tr_.resize(q);
  for (uint64_t a = 0; a < q; ++a) {
    uint64_t s = 0, t = a;
    for (uint32_t i = 0; i < f; ++i, t /= p) s += (t % p) * tb[i];
    F->tr_[a] = uint32_t(s % p);
  }

  const double tau = 2.0 * std::numbers::pi;
  F->mroot_.resize(q - 1);
  for (uint64_t j = 0; j + 1 < q; ++j) F->mroot_[j] = std::polar(1.0, tau * double(j) / double(q - 1));
  F->aroot_.resize(p);
  for (uint32_t j = 0; j < p; ++j) F->aroot_[j] = std::polar(1.0, tau * double(j) / double(p));
  return F;
}

Elem Field::add(Elem a, Elem b) const {
  if (f == 1) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  Elem r = 0;
  for (uint32_t i = 0; i < f; ++i, a /= p, b /= p) {
    uint32_t d = a % p + b % p;
    if (d >= p) d -= p;
    r += d * pw_[i];
  }
  return r;
}

Elem Field::neg(Elem a) const {
  if (f == 1) return a ? p - a : 0;
  Elem r = 0;
  for (uint32_t i = 0; i < f; ++i, a /= p) {
    uint32_t d = a % p;
    r += (d ? p - d : 0) * pw_[i];
  }
  return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::inv(Elem a) const {
  if (a == 0) fail(Err::ZeroInverse, "inverse of zero");
  return exp_[log_[a] ? q - 1 - log_[a] : 0];
}

Elem Field::pow(Elem a, int64_t e) const {
  if (a == 0) {
    if (e < 0) fail(Err::ZeroInverse, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  const int64_t n = q - 1;
  int64_t k = (int64_t(log_[a]) * (e % n)) % n;
  if (k < 0) k += n;
  return exp_[k];
}

Elem Field::from_int(int64_t n) const {
  int64_t r = n % int64_t(p);
  if (r < 0) r += p;
  return Elem(r);
}

uint32_t Field::dlog(Elem a) const {
  if (a == 0) fail(Err::ZeroArgument, "dlog of zero");
  return log_[a];
}

std::optional<Elem> Field::sqrt(Elem a) const {
  if (p == 2) fail(Err::EvenCharacteristic, "sqrt in characteristic 2");
  if (a == 0) return Elem(0);
  uint32_t l = log_[a];
  if (l & 1u) return std::nullopt;
  return exp_[l / 2];  // the other root has dlog l/2 + (q-1)/2
}

std::vector<uint32_t> Field::coeffs(Elem a) const {
  std::vector<uint32_t> c(f);
  for (uint32_t i = 0; i < f; ++i, a /= p) c[i] = a % p;
  return c;
}

Elem Field::from_coeffs(const std::vector<uint32_t>& c) const {
  if (c.size() > f) fail(Err::InvalidArgument, "too many coefficients");
  Elem a = 0;
  for (size_t i = c.size(); i-- > 0;) a = a * p + c[i] % p;
  return a;
}

QuadExtPtr make_quad_ext(FieldPtr base) {
  if (base->p == 2) fail(Err::EvenCharacteristic, "quadratic extension needs odd q");
  auto Q = std::make_shared<QuadExt>();
  Q->base = base;
  Q->ext = make_field(base->p, 2 * base->f);
  const Field& B = *base;
  const Field& E = *Q->ext;
  const uint32_t q = B.q;

  // root of the base modulus inside the subfield, smallest index first
  Elem beta = 0;
  bool found = false;
  for (Elem x = 0; x < E.q && !found; ++x) {
    if (x && E.dlog_unchecked(x) % (q + 1) != 0) continue;
    Elem v = 0;
    for (size_t i = B.modulus.size(); i-- > 0;) v = E.add(E.mul(v, x), E.from_int(B.modulus[i]));
    if (v == 0) {
      beta = x;
      found = true;
    }
  }
  if (!found) fail(Err::InvariantViolation, "embedding root not found");

  Q->emb_.resize(q);
  Q->proj_.assign(E.q, -1);
  for (Elem a = 0; a < q; ++a) {
    auto c = B.coeffs(a);
    Elem v = 0;
    for (size_t i = c.size(); i-- > 0;) v = E.add(E.mul(v, beta), E.from_int(c[i]));
    Q->emb_[a] = v;
    Q->proj_[v] = int32_t(a);
  }
  Q->eps = B.eps();
  const uint32_t L = E.dlog(Q->emb_[Q->eps]);
  Q->omega = E.exp(L / 2);
  return Q;
}

QuadExtPtr make_quad_ext(uint32_t p, uint32_t f) { return make_quad_ext(make_field(p, f)); }

Elem QuadExt::project(Elem x) const {
  if (proj_[x] < 0) fail(Err::CtxMismatch, "element not in the base field");
  return Elem(proj_[x]);
}

Elem QuadExt::frob(Elem x) const {
  if (x == 0) return 0;
  return ext->exp(uint64_t(ext->dlog_unchecked(x)) * base->q);
}

TraceNorm QuadExt::trace_norm(Elem x) const {
  Elem xq = frob(x);
  return {project(ext->add(x, xq)), project(ext->mul(x, xq)), ext->abs_trace(x)};
}

std::pair<Elem, Elem> QuadExt::solve_quadratic(Elem b, Elem c) const {
  const Field& B = *base;
  const Field& E = *ext;
  Elem disc = B.sub(B.mul(b, b), B.mul(B.from_int(4), c));
  Elem d = *E.sqrt(embed(disc));
  Elem inv2 = E.inv(E.from_int(2));
  Elem mb = E.neg(embed(b));
  return {E.mul(E.add(mb, d), inv2), E.mul(E.sub(mb, d), inv2)};
}

}  // namespace lwcs
