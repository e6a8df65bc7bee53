#pragma once
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"

namespace lwcs {

using cplx = std::complex<double>;

// Element of F_{p^f} encoded as the integer sum c_i p^i, c_i the coefficient
// of x^i in the polynomial basis.  0 is zero, 1 is one.
using Elem = uint32_t;

constexpr uint64_t kFieldCap = 1u << 20;

bool is_prime(uint64_t n);
std::vector<uint64_t> prime_factors(uint64_t n);

class Field {
 public:
  uint32_t p = 0, f = 0, q = 0;
  std::vector<uint32_t> modulus;  // f+1 coefficients, low degree first, monic
  Elem gen = 0;

  uint32_t order() const { return q - 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    if (s >= q - 1) s -= q - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, int64_t e) const;
  Elem from_int(int64_t n) const;  // image of Z in the prime field
  Elem exp(uint64_t k) const { return exp_[k % (q - 1)]; }
  uint32_t dlog(Elem a) const;
  uint32_t dlog_unchecked(Elem a) const { return log_[a]; }

  uint32_t abs_trace(Elem a) const { return tr_[a]; }
  bool is_square(Elem a) const { return a == 0 || p == 2 || (log_[a] & 1u) == 0; }
  std::optional<Elem> sqrt(Elem a) const;
  Elem eps() const { return gen; }  // canonical non-square for odd q

  std::vector<uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(const std::vector<uint32_t>& c) const;

  // unit roots: mroot(j) = e(j/(q-1)), aroot(j) = e(j/p)
  const cplx& mroot(uint64_t j) const { return mroot_[j % (q - 1)]; }
  const cplx& aroot(uint32_t j) const { return aroot_[j]; }

  friend std::shared_ptr<const Field> make_field(uint32_t p, uint32_t f);

 private:
  std::vector<uint32_t> exp_, log_, tr_, pw_;
  std::vector<cplx> mroot_, aroot_;
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(uint32_t p, uint32_t f);

// Lexicographically smallest monic irreducible of degree f over Z/p,
// coefficient tuples compared from the constant term up.
std::vector<uint32_t> canonical_modulus(uint32_t p, uint32_t f);
bool poly_irreducible(const std::vector<uint32_t>& m, uint32_t p);

struct TraceNorm {
  Elem tr;        // in base
  Elem norm;      // in base
  uint32_t abs;   // in Z/p
};

// F_{q^2} over F_q with the explicit embedding and the element omega,
// omega^2 = embed(eps).
class QuadExt {
 public:
  FieldPtr base, ext;
  Elem eps = 0;    // base element
  Elem omega = 0;  // ext element

  Elem embed(Elem a) const { return emb_[a]; }
  bool in_base(Elem x) const { return proj_[x] >= 0; }
  Elem project(Elem x) const;  // throws if x is not in the image
  Elem frob(Elem x) const;     // x^q
  TraceNorm trace_norm(Elem x) const;
  std::pair<Elem, Elem> solve_quadratic(Elem b, Elem c) const;  // roots in ext
  std::optional<Elem> sqrt_ext(Elem x) const { return ext->sqrt(x); }

  friend std::shared_ptr<const QuadExt> make_quad_ext(FieldPtr base);

 private:
  std::vector<Elem> emb_;
  std::vector<int32_t> proj_;
};

using QuadExtPtr = std::shared_ptr<const QuadExt>;

QuadExtPtr make_quad_ext(FieldPtr base);
QuadExtPtr make_quad_ext(uint32_t p, uint32_t f);

}  // namespace lwcs
