#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "characters.hpp"
#include "padic.hpp"

namespace lwcs {

// Local field with residue field F_q.  Measures: vol(o) = 1 additively,
// vol(o^x) = 1 multiplicatively, so a unit class mod p^L has mass 1/phi(p^L).
struct LocalModel {
  FieldPtr F;
  QuadExtPtr Q;  // null for even q
  uint32_t p = 0, f = 0, q = 0;
};

LocalModel make_local_model(uint32_t p, uint32_t f);

// chi(varpi) = c; on units chi is the character of exponent k on
// (o/p^cond)^x, which is F_q^x for cond <= 1.  cond = 2 only on prime fields
// and only for the oracle.
struct LocalChar {
  cplx c{1, 0};
  uint32_t cond = 0;
  uint64_t k = 0;

  LocalChar inverse(const LocalModel& M) const;
};

LocalChar local_char(const LocalModel& M, cplx c, uint64_t k);  // cond 0 or 1 from k
void validate(const LocalModel& M, const LocalChar& chi);

enum class CaseKind { Case1, Case2NS, Case2SC, Case3, Case4NS };

// second display of the a = 2 non-supercuspidal test function, see README
enum class Conj { Symmetric, SecondDisplay };

struct TestCase {
  CaseKind kind = CaseKind::Case1;
  int xi_pi = 1;       // Case1, Case2NS: xi(varpi)
  int n = 1;           // Case2NS level
  Conj conj = Conj::Symmetric;
  uint32_t theta = 0;  // Case2SC: exponent on F_{q^2}^x
  Elem t = 1;          // Case3
};

const char* case_name(CaseKind k);
CaseKind parse_case(const std::string& s);
uint32_t conductor_exponent(const TestCase& c);
void validate(const LocalModel& M, const TestCase& c);

struct Rational {
  int64_t num = 0, den = 1;
  double value() const { return double(num) / double(den); }
  bool operator==(const Rational&) const = default;
};
Rational make_rational(int64_t a, int64_t b);

enum class Subgroup { K0, K1, OnePlusP, Units };
Rational volume(const LocalModel& M, Subgroup g, int n = 1);

struct M3Value {
  double value = 0;
  bool lower_bound = false;
};
M3Value m3_value(const LocalModel& M, const TestCase& c);
cplx m3_principal_unram(const LocalModel& M, cplx s);
cplx macdonald_sigma1(const LocalModel& M, cplx s);

// value of the depth-zero supercuspidal character at g = [[a1,a2],[a3,a4]]
cplx char_table(const QuadExt& Q, uint32_t theta, const std::array<Elem, 4>& g);

// Subsets indexing which entries of the residue matrix vanish.
using Subset = std::vector<int>;  // entries in 1..4
const std::vector<Subset>& admissible_subsets();
std::string subset_name(const Subset& I);

// Residue-field sums behind the depth-zero decomposition, fixed theta.
class DepthZero {
 public:
  DepthZero(const LocalModel& M, uint32_t theta);
  cplx term(const Subset& I, const LocalChar& chi, cplx s) const;
  cplx total(const LocalChar& chi, cplx s) const;
  // the empty term split by discriminant class: {Delta = 0, Delta in eps squares}
  std::pair<cplx, cplx> empty_split(const LocalChar& chi) const;
  cplx theta_omega() const { return th_omega_; }
  uint32_t theta() const { return theta_; }

 private:
  LocalModel M_;
  uint32_t theta_;
  cplx th_omega_;
  std::vector<cplx> h_empty_;      // by dlog of a1 a4 / (a2 a3)
  std::array<cplx, 7> s_{};        // plain sums per admissible subset
};

// sigma+ = 1/2 + s, sigma- = 1/2 - s; geometric factor c q^-sigma / (1 - c q^-sigma)
cplx geom(const LocalModel& M, cplx c, cplx sigma);

// closed forms in the centered variable s; nullopt means the weight vanishes
std::optional<cplx> m4_closed(const LocalModel& M, const TestCase& c, const LocalChar& chi, cplx s);
std::optional<cplx> m4_closed(const LocalModel& M, const DepthZero& D, const LocalChar& chi, cplx s);

// the uncorrected four-term value for trivial chi
cplx m4_case2sc_fourterm(const LocalModel& M, cplx theta_omega, cplx s);
// the same with the two corrections: 2 conj(th) G+ and (1 - conj(th))/(q-1)
cplx m4_case2sc_trivial(const LocalModel& M, cplx theta_omega, cplx s);

// point count behind the empty-term split
uint64_t pointcount_direct(const LocalModel& M, Elem alpha, Elem t);
int64_t pointcount_claimed(const LocalModel& M, Elem alpha, Elem t);
int64_t pointcount_exact(const LocalModel& M, Elem alpha, Elem t);

// int_o psi(varpi^-1 a x) chi(x) |x|^(1/2 + s) d^x x
cplx gauss_integral(const LocalModel& M, Elem a, const LocalChar& chi, cplx s = 0);

bool whittaker_case3(const TruncatedPadic& y);
bool whittaker_case2sc(const TruncatedPadic& y, Elem u);

}  // namespace lwcs
