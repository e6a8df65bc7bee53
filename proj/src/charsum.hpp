#pragma once
#include <string>
#include <vector>

#include "hypergeom.hpp"

namespace lwcs {

// S(chi, eta; rho) = sum_{alpha, t} rho(alpha + omega) chi(t) eta(alpha^2 - eps t) conj(eta)(1 - t)
struct CharSumInstance {
  const QuadExt* Q = nullptr;
  uint32_t chi = 0, eta = 0;  // characters of F_q^x
  uint32_t rho = 0;           // character of F_{q^2}^x
};

enum class SMethod { Direct, ViaAB, ViaT };

void validate(const CharSumInstance& in);

cplx A_sum(const CharSumInstance& in, Elem y);
cplx B_sum(const CharSumInstance& in, Elem y);
cplx T_sum(const CharSumInstance& in);
cplx S_eval(const CharSumInstance& in, SMethod m);

// conj(theta)(alpha + omega) weighted sum with eta = phi; theta trivial on F_q^x and regular
cplx S_theta(const QuadExt& Q, uint32_t theta, uint32_t chi);

// Reuses B and H tables across rho for a fixed (chi, eta).
class PairTables {
 public:
  PairTables(const QuadExt& Q, uint32_t chi, uint32_t eta);
  cplx S(uint32_t rho) const;  // via A/B, O(q)
  cplx T(uint32_t rho) const;  // O(q)
  cplx s_over_t() const { return s_over_t_; }

 private:
  const QuadExt& Q_;
  std::vector<cplx> B_;   // B(1 - alpha^2/eps) by alpha
  std::vector<cplx> H_;   // H(1 - alpha^2/eps) by alpha
  std::vector<uint32_t> lw_;  // dlog_ext(alpha + omega) by alpha
  cplx eta_eps_, s_over_t_;
};

struct ScanRow {
  uint32_t q = 0;
  uint64_t triples = 0;
  double max_s_over_q = 0, max_t_over_sqrtq = 0;
  uint32_t chi_k = 0, eta_k = 0, rho_k = 0;  // argmax of |S|/q
  cplx s_at_max{0, 0};
  bool review = false;       // max |S|/q > 16
  bool small_char = false;   // n = 2 >= p, monodromy hypothesis not met
};

struct ScanOptions {
  uint32_t qmin = 3, qmax = 31;
  bool rho_restricted = false;  // trivial on base and regular only
};

std::vector<uint32_t> odd_prime_powers(uint32_t lo, uint32_t hi);
ScanRow scan_q(uint32_t q, bool rho_restricted);
std::vector<ScanRow> scan(const ScanOptions& opt);

}  // namespace lwcs
