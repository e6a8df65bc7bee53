#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "local.hpp"
#include "series.hpp"

namespace lwcs {

struct ArchPlace {
  double T = 0, Delta = 1;
  int eps = 0;
};

struct FinitePlace {
  uint32_t q = 3, p = 3, f = 1;
  TestCase tc;
};

struct GlobalSpec {
  int r = 1;
  std::vector<ArchPlace> arch;
  std::vector<FinitePlace> finite;
};

// {"r":1,"arch":[{"T":..,"Delta":..,"eps":..}],"finite":[{"q":7,"case":"case3",..}]}
// Unknown keys are rejected.  Missing arch entries default to T = 0, Delta = 1,
// eps = 0.  Case2SC without "theta" takes the first regular character.
GlobalSpec parse_spec(const std::string& json);
std::string spec_to_json(const GlobalSpec& s);  // canonical echo

struct Conductors {
  std::map<int, double> C;  // exponent j -> C_j
  double total = 1;
  // log-scale terms of the bound shape C_1^(1/6) C_3^(1/18) C^(1/6)
  double log_c1_part = 0, log_c3_part = 0, log_c_part = 0;
  double log_bound() const { return log_c1_part + log_c3_part + log_c_part; }
};
Conductors conductors(const GlobalSpec& s);

struct D3Status {
  bool vanishes = false;
  std::string reason;
  std::optional<int> order;  // at s = 1/2 when the order formula applies
};
D3Status d3_status(const GlobalSpec& s);

// residue of M3(Psi|1, s) at s = 1/2 for F = Q (r = 1); nullopt otherwise
std::optional<cplx> d3_value(const GlobalSpec& s, const ZetaFn& zeta = zeta_eval);

// archimedean cubic weight at i tau; log form returns -inf for zero
double arch_m3_log(double tau, const ArchPlace& v, int eps);
double arch_m3(double tau, const ArchPlace& v, int eps);
// the same weight continued to complex s (tau = -i s), used for D3
cplx arch_m3_s(cplx s, const ArchPlace& v);

// Local factor of the fourth moment with the L(1/2 +- s, 1)^2 factors
// removed, times the renormalization that puts M3 at pi_p on scale 1.
// Centered variable.  Case2SC uses the corrected subset sum.
LocalWeightExpr wt4_local(const LocalModel& M, const TestCase& c);
double wt4_renorm(const LocalModel& M, const TestCase& c);
// (1 - q^-(1/2+s))^2 (1 - q^-(1/2-s))^2
LocalWeightExpr l_factor_inv(double q);

struct ArchStub {
  LaurentSeries at1, at0;  // around shifted s = 1 and s = 0, in s - center
};

struct PlaceLedger {
  std::string label;
  uint32_t q = 0;
  double C = 1;
  std::map<int, cplx> w1, w0;  // n -> w_{n,v}(1), w_{n,v}(0)
};

struct D4Result {
  std::vector<PlaceLedger> places;
  std::optional<cplx> res1, res0;  // r = 1 only
};

// Laurent orders -2 .. nmax are reported
D4Result d4_toy(const GlobalSpec& s, const std::vector<ArchStub>& stubs, const ZetaFn& zeta = zeta_eval, int nmax = 2);
ArchStub unit_arch_stub();

// factor an odd prime power; throws UnsupportedField otherwise
std::pair<uint32_t, uint32_t> split_prime_power(uint32_t q);

}  // namespace lwcs
