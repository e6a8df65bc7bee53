#pragma once
#include <array>
#include <map>
#include <vector>

#include "local.hpp"

namespace lwcs {

struct OracleResult {
  cplx value;          // window depth N
  cplx refined;        // window depth N + 1
  double tail_bound;   // |value - refined| plus a rounding allowance
  int N = 0, L = 0;
};

// Direct evaluation of
//   int C(x) chi(x1 x4 / (x2 x3)) |x1 x4|^(1/2+s) |x2 x3|^(1/2-s) prod d^x x_i
// over valuation cells and unit classes mod p^L.  The top cell of each
// unbounded coordinate stands for its whole geometric tail.  Prime residue
// fields only.
class OracleM4 {
 public:
  // chi_cond: largest conductor the instance will be asked about
  OracleM4(const LocalModel& M, const TestCase& c, int N, uint32_t chi_cond = 1, bool memo = true);
  OracleResult eval(const LocalChar& chi, cplx s) const;
  int level() const { return L_; }

 private:
  using Cell = std::array<int, 4>;
  const std::vector<cplx>& hist(const Cell& v) const;
  std::vector<cplx> compute_hist(const Cell& v) const;
  Cell key(const Cell& v) const;
  cplx test_fn(const Cell& v, const std::array<uint64_t, 4>& u) const;
  cplx chi_unit(const LocalChar& chi, uint64_t r) const;

  LocalModel M_;
  TestCase c_;
  int N_, L_;
  bool memo_;
  uint64_t pL_;
  Cell vmin_{};
  std::array<bool, 4> bounded_{};
  std::vector<uint64_t> units_;
  std::vector<uint32_t> dlog2_;  // dlog mod p^2 when L = 2
  double inv_vol_ = 1;
  std::vector<cplx> cls_;        // Case2SC: conj char by residue matrix
  std::vector<uint64_t> inv_;    // inverses mod p^L
  mutable std::map<Cell, std::vector<cplx>> cache_;
};

OracleResult oracle_m4(const LocalModel& M, const TestCase& c, const LocalChar& chi, cplx s, int N);

}  // namespace lwcs
