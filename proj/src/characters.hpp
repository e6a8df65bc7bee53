#pragma once
#include <vector>

#include "field.hpp"

namespace lwcs {

// chi_k(x) = e(k dlog(x) / (q-1)), chi(0) = 0
struct MultChar {
  const Field* F = nullptr;
  uint32_t k = 0;

  cplx operator()(Elem x) const {
    if (x == 0) return 0.0;
    return F->mroot(uint64_t(k) * F->dlog_unchecked(x));
  }
  bool trivial() const { return k == 0; }
};

// psi_a(x) = e(AbsTr(a x) / p)
struct AddChar {
  const Field* F = nullptr;
  Elem a = 1;

  cplx operator()(Elem x) const { return F->aroot(F->abs_trace(F->mul(a, x))); }
  bool trivial() const { return a == 0; }
};

inline MultChar mult_char(const Field& F, int64_t k) {
  int64_t n = F.q - 1;
  int64_t r = k % n;
  return {&F, uint32_t(r < 0 ? r + n : r)};
}
inline AddChar add_char(const Field& F, Elem a = 1) { return {&F, a}; }
inline MultChar quadratic_char(const Field& F) { return mult_char(F, (F.q - 1) / 2); }

cplx eval(const MultChar& chi, const Field& F, Elem x);  // ctx-checked
cplx eval(const AddChar& psi, const Field& F, Elem x);

MultChar product(const MultChar& a, const MultChar& b);
MultChar inverse(const MultChar& a);
uint32_t order(const MultChar& a);

cplx gauss_sum(const MultChar& chi, const AddChar& psi);
cplx gauss_sum(const MultChar& chi);  // canonical psi
cplx jacobi_sum(const MultChar& a, const MultChar& b);

enum CharFilter : unsigned {
  kAll = 0,
  kNontrivial = 1u << 0,
  kQuadratic = 1u << 1,
  kTrivialOnBase = 1u << 2,
  kRegular = 1u << 3,
};

// base filters need the extension context
std::vector<MultChar> enumerate_chars(const Field& F, unsigned filter);
std::vector<MultChar> enumerate_chars(const QuadExt& Q, unsigned filter);

}  // namespace lwcs
