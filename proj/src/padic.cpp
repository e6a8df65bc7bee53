#include "padic.hpp"

#include <algorithm>
#include <climits>
#include <string>

namespace lwcs {

namespace {

using u128 = unsigned __int128;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) { return uint64_t(u128(a) * b % m); }

// inverse of a unit mod p^k by Newton lifting from the inverse mod p
uint64_t inv_unit(uint64_t u, uint32_t p, int k) {
  uint64_t x = 1;
  for (uint64_t t = u % p, e = p - 2; e; e >>= 1, t = t * t % p)
    if (e & 1) x = x * t % p;
  uint64_t m = p;
  for (int have = 1; have < k;) {
    have = std::min(2 * have, k);
    m = ipow(p, have);
    // x <- x (2 - u x)
    uint64_t ux = mulmod(u % m, x, m);
    x = mulmod(x, (2 + m - ux) % m, m);
  }
  return x % ipow(p, k);
}

}  // namespace

uint64_t ipow(uint64_t b, unsigned e) {
  uint64_t r = 1;
  while (e--) {
    if (r > UINT64_MAX / b) fail(Err::CapExceeded, "p^k overflows 64 bits");
    r *= b;
  }
  return r;
}

TruncatedPadic TruncatedPadic::make(uint32_t p, int v, uint64_t u, int prec) {
  if (prec < 1) fail(Err::PrecisionLoss, "precision below one digit");
  uint64_t m = ipow(p, prec);
  u %= m;
  if (u % p == 0) fail(Err::InvalidArgument, "unit part divisible by p");
  return TruncatedPadic(p, State::Value, v, u, prec);
}

int TruncatedPadic::val() const {
  if (st_ == State::Zero) fail(Err::ZeroArgument, "valuation of zero");
  if (st_ == State::BoundedZero)
    fail(Err::PrecisionLoss, "valuation unknown beyond " + std::to_string(v_) + " digits");
  return v_;
}

bool TruncatedPadic::val_at_least(int k) const {
  switch (st_) {
    case State::Zero:
      return true;
    case State::Value:
      return v_ >= k;
    case State::BoundedZero:
      if (v_ >= k) return true;
      fail(Err::InsufficientPrecision, "cannot decide valuation >= " + std::to_string(k));
  }
  return false;
}

uint64_t TruncatedPadic::unit_part() const {
  if (st_ != State::Value) fail(Err::PrecisionLoss, "no unit part");
  return u_;
}

int TruncatedPadic::precision() const {
  if (st_ != State::Value) fail(Err::PrecisionLoss, "no relative precision");
  return prec_;
}

int TruncatedPadic::abs_precision() const {
  switch (st_) {
    case State::Zero:
      return INT_MAX;
    case State::Value:
      return v_ + prec_;
    case State::BoundedZero:
      return v_;
  }
  return 0;
}

TruncatedPadic TruncatedPadic::operator-() const {
  if (st_ != State::Value) return *this;
  uint64_t m = ipow(p_, prec_);
  return TruncatedPadic(p_, st_, v_, (m - u_) % m, prec_);
}

TruncatedPadic TruncatedPadic::operator+(const TruncatedPadic& o) const {
  if (st_ == State::Zero) return o;
  if (o.st_ == State::Zero) return *this;
  if (p_ != o.p_) fail(Err::CtxMismatch, "different primes");
  const int A = std::min(abs_precision(), o.abs_precision());
  int w = INT_MAX;
  if (st_ == State::Value) w = v_;
  if (o.st_ == State::Value) w = std::min(w, o.v_);
  if (w >= A) return bounded_zero(p_, A);
  const int m = A - w;
  const uint64_t M = ipow(p_, m);
  uint64_t s = 0;
  for (const TruncatedPadic* x : {this, &o}) {
    if (x->st_ != State::Value || x->v_ - w >= m) continue;
    s = (s + mulmod(x->u_ % M, ipow(p_, x->v_ - w), M)) % M;
  }
  if (s == 0) return bounded_zero(p_, A);
  int e = 0;
  while (s % p_ == 0) {
    s /= p_;
    ++e;
  }
  return TruncatedPadic(p_, State::Value, w + e, s, m - e);
}

TruncatedPadic TruncatedPadic::operator*(const TruncatedPadic& o) const {
  if (st_ == State::Zero || o.st_ == State::Zero) return zero(p_ ? p_ : o.p_);
  if (p_ != o.p_) fail(Err::CtxMismatch, "different primes");
  if (st_ == State::BoundedZero || o.st_ == State::BoundedZero) {
    // a bounded zero times p^v u is known to vanish mod p^(k+v)
    int k = 0;
    for (const TruncatedPadic* x : {this, &o}) k += x->v_;
    return bounded_zero(p_, k);
  }
  const int prec = std::min(prec_, o.prec_);
  const uint64_t M = ipow(p_, prec);
  return TruncatedPadic(p_, State::Value, v_ + o.v_, mulmod(u_ % M, o.u_ % M, M), prec);
}

TruncatedPadic TruncatedPadic::inv() const {
  if (st_ == State::Zero) fail(Err::ZeroArgument, "inverse of zero");
  if (st_ == State::BoundedZero) fail(Err::PrecisionLoss, "inverse of a bounded zero");
  return TruncatedPadic(p_, State::Value, -v_, inv_unit(u_, p_, prec_), prec_);
}

}  // namespace lwcs
