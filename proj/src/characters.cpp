#include "characters.hpp"

#include <numeric>

namespace lwcs {

cplx eval(const MultChar& chi, const Field& F, Elem x) {
  if (chi.F != &F) fail(Err::CtxMismatch, "character from another field");
  return chi(x);
}

cplx eval(const AddChar& psi, const Field& F, Elem x) {
  if (psi.F != &F) fail(Err::CtxMismatch, "character from another field");
  return psi(x);
}

MultChar product(const MultChar& a, const MultChar& b) {
  if (a.F != b.F) fail(Err::CtxMismatch, "characters from different fields");
  return mult_char(*a.F, int64_t(a.k) + b.k);
}

MultChar inverse(const MultChar& a) { return mult_char(*a.F, -int64_t(a.k)); }

uint32_t order(const MultChar& a) {
  uint32_t n = a.F->q - 1;
  return n / std::gcd(n, a.k);
}

cplx gauss_sum(const MultChar& chi, const AddChar& psi) {
  if (chi.F != psi.F) fail(Err::CtxMismatch, "characters from different fields");
  const Field& F = *chi.F;
  cplx s = 0;
  for (Elem x = 1; x < F.q; ++x) s += chi(x) * psi(x);
  return s;
}

cplx gauss_sum(const MultChar& chi) { return gauss_sum(chi, add_char(*chi.F)); }

cplx jacobi_sum(const MultChar& a, const MultChar& b) {
  if (a.F != b.F) fail(Err::CtxMismatch, "characters from different fields");
  const Field& F = *a.F;
  cplx s = 0;
  for (Elem x = 0; x < F.q; ++x) s += a(x) * b(F.sub(1, x));
  return s;
}

namespace {

std::vector<MultChar> enumerate(const Field& F, unsigned filter, uint32_t sub_q) {
  const uint32_t n = F.q - 1;
  std::vector<MultChar> out;
  for (uint32_t k = 0; k < n; ++k) {
    if ((filter & kNontrivial) && k == 0) continue;
    if ((filter & kQuadratic) && (n % 2 != 0 || k != n / 2)) continue;
    if ((filter & kTrivialOnBase) && k % (sub_q - 1) != 0) continue;
    if ((filter & kRegular) && (uint64_t(k) * (sub_q - 1)) % n == 0) continue;
    out.push_back({&F, k});
  }
  return out;
}

}  // namespace

std::vector<MultChar> enumerate_chars(const Field& F, unsigned filter) {
  if (filter & (kTrivialOnBase | kRegular))
    fail(Err::FilterRequiresQuadExt, "base-field filters need a quadratic extension");
  return enumerate(F, filter, 0);
}

std::vector<MultChar> enumerate_chars(const QuadExt& Q, unsigned filter) {
  return enumerate(*Q.ext, filter, Q.base->q);
}

}  // namespace lwcs
