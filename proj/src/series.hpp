#pragma once
#include <functional>
#include <vector>

#include "field.hpp"

namespace lwcs {

using Poly = std::vector<cplx>;  // low degree first

// Which s an expression is written in.  Centered: local weights at 1/2 + s,
// poles of the global zeta factors at s = +-1/2.  Shifted: the variable of
// M4(.|1, s), poles at s = 0 and s = 1.  Shifted s = centered s + 1/2.
enum class SVar { Centered, Shifted };

// c u^k prod num_i(u) / prod den_j(u) with u = q^-s.  Factors are kept
// unexpanded, each with constant term 1, so products keep their pole
// structure exactly; common factors are cancelled on construction.
struct LocalWeightExpr {
  double q = 2;
  cplx c = 1;
  int k = 0;
  std::vector<Poly> num, den;
  SVar var = SVar::Centered;

  cplx eval(cplx s) const;
  bool is_zero() const { return c == 0.0; }
  // single reduced fraction u^k N / D with D(0) = 1, for display and comparison
  struct Expanded {
    Poly num, den;
    int k;
  };
  Expanded expanded() const;
};

LocalWeightExpr make_expr(double q, Poly num, Poly den, int k = 0, SVar var = SVar::Centered);
LocalWeightExpr expr_const(double q, cplx c, SVar var = SVar::Centered);
LocalWeightExpr expr_u(double q, SVar var = SVar::Centered);  // u itself

LocalWeightExpr operator+(const LocalWeightExpr& a, const LocalWeightExpr& b);
LocalWeightExpr operator-(const LocalWeightExpr& a, const LocalWeightExpr& b);
LocalWeightExpr operator*(const LocalWeightExpr& a, const LocalWeightExpr& b);
LocalWeightExpr operator/(const LocalWeightExpr& a, const LocalWeightExpr& b);
LocalWeightExpr operator*(cplx c, const LocalWeightExpr& a);
LocalWeightExpr pow(const LocalWeightExpr& a, int n);
LocalWeightExpr compose_neg(const LocalWeightExpr& a);  // s -> -s
LocalWeightExpr recenter(const LocalWeightExpr& a, SVar to);

// coefficient c[i] belongs to (s - center)^(min_order + i)
struct LaurentSeries {
  cplx center;
  int min_order = 0;
  std::vector<cplx> c;

  int max_order() const { return min_order + int(c.size()) - 1; }
  cplx coeff(int n) const;
  cplx eval(cplx s) const;
};

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries pow(const LaurentSeries& a, int n);
LaurentSeries truncate(const LaurentSeries& a, int max_order);
LaurentSeries inverse(const LaurentSeries& a);
// g(h) = f(a h): c_n -> a^n c_n, center moved to `center`
LaurentSeries rescale(const LaurentSeries& f, cplx a, cplx center);
LaurentSeries constant_series(cplx center, cplx v, int order);

constexpr int kDefaultOrder = 6;

LaurentSeries expand_at(const LocalWeightExpr& e, cplx s0, int order = kDefaultOrder);

struct OrderResidue {
  int order;
  cplx residue;
};
OrderResidue residue_and_order(const LaurentSeries& f);
OrderResidue residue_and_order(const LocalWeightExpr& e, cplx s0);

using ZetaFn = std::function<cplx(cplx)>;

// Riemann zeta by Euler-Maclaurin, Re s > -1
cplx zeta_eval(cplx s);

// Laurent data of an analytic-or-polar function by the trapezoid rule on a
// circle |s - s0| = r, orders -2 .. order, leading zeros trimmed
LaurentSeries laurent_by_contour(const ZetaFn& f, cplx s0, int order = kDefaultOrder, double r = 0.5, int points = 128);

}  // namespace lwcs
