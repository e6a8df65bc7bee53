#pragma once
#include <cstdint>

#include "error.hpp"

namespace lwcs {

uint64_t ipow(uint64_t b, unsigned e);

// x = p^v u with u a unit known mod p^prec.  Exact zero is its own state;
// a sum whose known digits all cancel becomes BoundedZero(k), meaning only
// x = 0 mod p^k is known.  Querying such a value throws.
class TruncatedPadic {
 public:
  enum class State { Zero, Value, BoundedZero };

  TruncatedPadic() = default;
  static TruncatedPadic zero(uint32_t p) { return TruncatedPadic(p, State::Zero, 0, 0, 0); }
  static TruncatedPadic make(uint32_t p, int v, uint64_t u, int prec);
  static TruncatedPadic bounded_zero(uint32_t p, int k) { return TruncatedPadic(p, State::BoundedZero, k, 0, 0); }
  static TruncatedPadic uniformizer_pow(uint32_t p, int v, int prec) { return make(p, v, 1, prec); }

  State state() const { return st_; }
  bool is_zero() const { return st_ == State::Zero; }
  uint32_t prime() const { return p_; }

  int val() const;
  bool val_at_least(int k) const;
  uint64_t unit_part() const;  // mod p^precision()
  uint64_t residue() const { return unit_part() % p_; }
  int precision() const;       // relative digits
  int abs_precision() const;   // v + prec, or k for BoundedZero

  TruncatedPadic operator+(const TruncatedPadic& o) const;
  TruncatedPadic operator-(const TruncatedPadic& o) const { return *this + (-o); }
  TruncatedPadic operator-() const;
  TruncatedPadic operator*(const TruncatedPadic& o) const;
  TruncatedPadic inv() const;

 private:
  TruncatedPadic(uint32_t p, State st, int v, uint64_t u, int prec) : p_(p), st_(st), v_(v), u_(u), prec_(prec) {}
  uint32_t p_ = 0;
  State st_ = State::Zero;
  int v_ = 0;  // valuation, or k for BoundedZero
  uint64_t u_ = 0;
  int prec_ = 0;
};

}  // namespace lwcs
