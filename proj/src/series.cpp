#include "series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lwcs {

namespace {

double norm1(const Poly& p) {
  double s = 0;
  for (const cplx& x : p) s += std::abs(x);
  return s;
}

void trim(Poly& p, double tol) {
  while (!p.empty() && std::abs(p.back()) <= tol) p.pop_back();
}

Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly shift(const Poly& a, int k) {
  Poly r(size_t(k), 0.0);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

// a = quo * b + rem
void pdivmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem) {
  rem = a;
  quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0.0);
  const double tol = 1e-13 * std::max(norm1(a), 1e-300);
  for (int i = int(a.size()) - int(b.size()); i >= 0; --i) {
    cplx f = rem[i + b.size() - 1] / b.back();
    quo[i] = f;
    for (size_t j = 0; j < b.size(); ++j) rem[i + j] -= f * b[j];
  }
  rem.resize(b.size() > 1 ? b.size() - 1 : 0);
  trim(rem, tol);
}

// monic gcd with a relative zero test on remainders
Poly pgcd(Poly a, Poly b) {
  const double scale = std::max(norm1(a), norm1(b));
  while (!b.empty()) {
    Poly q, r;
    pdivmod(a, b, q, r);
    if (norm1(r) <= 1e-10 * scale) r.clear();
    a = b;
    b = r;
  }
  cplx lead = a.back();
  for (auto& x : a) x /= lead;
  return a;
}

Poly exact_div(const Poly& a, const Poly& b) {
  Poly q, r;
  pdivmod(a, b, q, r);
  return q;
}

void check_compat(const LocalWeightExpr& a, const LocalWeightExpr& b) {
  if (a.q != b.q) fail(Err::CtxMismatch, "expressions in different q");
  if (a.var != b.var) fail(Err::CtxMismatch, "expressions in different s variables");
}

}  // namespace

namespace {

// strip u powers into k and scale to constant term 1; false for the zero poly
bool normalize_factor(Poly& p, cplx& c, int& k, int sign) {
  trim(p, 1e-15 * norm1(p));
  if (p.empty()) return false;
  const double tol = 1e-15 * norm1(p);
  while (p.size() > 1 && std::abs(p.front()) <= tol) {
    p.erase(p.begin());
    k += sign;
  }
  cplx p0 = p.front();
  for (auto& x : p) x /= p0;
  c = sign > 0 ? c * p0 : c / p0;
  return true;
}

void add_factors(std::vector<Poly>& into, const std::vector<Poly>& from) { into.insert(into.end(), from.begin(), from.end()); }

Poly expand(const std::vector<Poly>& fs) {
  Poly r{1.0};
  for (const auto& f : fs) r = pmul(r, f);
  return r;
}

}  // namespace

namespace {

LocalWeightExpr build(double q, cplx c, int k, std::vector<Poly> num, std::vector<Poly> den, SVar var) {
  if (q <= 1) fail(Err::InvalidArgument, "q must exceed 1");
  LocalWeightExpr e;
  e.q = q;
  e.var = var;
  for (auto& d : den) {
    if (!normalize_factor(d, c, k, -1)) fail(Err::DivisionByZeroExpr, "zero denominator");
    if (d.size() > 1) e.den.push_back(std::move(d));
  }
  for (auto& n : num) {
    if (!normalize_factor(n, c, k, 1)) c = 0;
    if (c == 0.0) break;
    if (n.size() > 1) e.num.push_back(std::move(n));
  }
  if (std::abs(c) == 0) {
    e.c = 0;
    e.num.clear();
    e.den.clear();
    return e;
  }
  // cancel common factors pairwise
  for (auto& n : e.num)
    for (auto& d : e.den) {
      if (n.size() < 2 || d.size() < 2) continue;
      Poly g = pgcd(n, d);
      if (g.size() < 2) continue;
      n = exact_div(n, g);
      d = exact_div(d, g);
      int z = 0;
      normalize_factor(n, c, z, 1);
      normalize_factor(d, c, z, -1);
    }
  auto drop = [](std::vector<Poly>& v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](const Poly& p) { return p.size() < 2; }), v.end());
  };
  drop(e.num);
  drop(e.den);
  e.c = c;
  e.k = k;
  return e;
}

}  // namespace

LocalWeightExpr make_expr(double q, Poly num, Poly den, int k, SVar var) {
  return build(q, 1.0, k, {std::move(num)}, {std::move(den)}, var);
}

LocalWeightExpr expr_const(double q, cplx c, SVar var) { return build(q, c, 0, {}, {}, var); }
LocalWeightExpr expr_u(double q, SVar var) { return build(q, 1.0, 1, {}, {}, var); }

LocalWeightExpr::Expanded LocalWeightExpr::expanded() const {
  if (is_zero()) return {{}, {1.0}, 0};
  Poly n = expand(num);
  for (auto& x : n) x *= c;
  return {n, expand(den), k};
}

cplx LocalWeightExpr::eval(cplx s) const {
  const cplx u = std::exp(-s * std::log(q));
  auto horner = [&](const Poly& p) {
    cplx r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * u + *it;
    return r;
  };
  cplx r = c * std::pow(u, k);
  for (const auto& f : num) r *= horner(f);
  for (const auto& f : den) {
    cplx d = horner(f);
    if (std::abs(d) < 1e-300) fail(Err::PoleHit, "expression evaluated at a pole");
    r /= d;
  }
  return r;
}

LocalWeightExpr operator+(const LocalWeightExpr& a, const LocalWeightExpr& b) {
  check_compat(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // common denominator: shared factors once, the rest cross-multiplied
  std::vector<Poly> only_a = a.den, only_b, shared;
  for (const auto& d : b.den) {
    auto it = std::find_if(only_a.begin(), only_a.end(), [&](const Poly& x) {
      if (x.size() != d.size()) return false;
      for (size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i] - d[i]) > 1e-14 * (1 + std::abs(d[i]))) return false;
      return true;
    });
    if (it != only_a.end()) {
      shared.push_back(d);
      only_a.erase(it);
    } else {
      only_b.push_back(d);
    }
  }
  const int k = std::min(a.k, b.k);
  Poly na = expand(a.num), nb = expand(b.num);
  for (auto& x : na) x *= a.c;
  for (auto& x : nb) x *= b.c;
  Poly n = padd(shift(pmul(na, expand(only_b)), a.k - k), shift(pmul(nb, expand(only_a)), b.k - k));
  std::vector<Poly> den = shared;
  add_factors(den, only_a);
  add_factors(den, only_b);
  return build(a.q, 1.0, k, {n}, den, a.var);
}

LocalWeightExpr operator*(cplx c, const LocalWeightExpr& a) { return build(a.q, c * a.c, a.k, a.num, a.den, a.var); }

LocalWeightExpr operator-(const LocalWeightExpr& a, const LocalWeightExpr& b) { return a + cplx(-1) * b; }

LocalWeightExpr operator*(const LocalWeightExpr& a, const LocalWeightExpr& b) {
  check_compat(a, b);
  auto num = a.num, den = a.den;
  add_factors(num, b.num);
  add_factors(den, b.den);
  return build(a.q, a.c * b.c, a.k + b.k, num, den, a.var);
}

LocalWeightExpr operator/(const LocalWeightExpr& a, const LocalWeightExpr& b) {
  check_compat(a, b);
  if (b.is_zero()) fail(Err::DivisionByZeroExpr, "division by the zero expression");
  auto num = a.num, den = a.den;
  add_factors(num, b.den);
  add_factors(den, b.num);
  return build(a.q, a.c / b.c, a.k - b.k, num, den, a.var);
}

LocalWeightExpr pow(const LocalWeightExpr& a, int n) {
  if (n < 0) return expr_const(a.q, 1.0, a.var) / pow(a, -n);
  LocalWeightExpr r = expr_const(a.q, 1.0, a.var);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

LocalWeightExpr compose_neg(const LocalWeightExpr& a) {
  if (a.is_zero()) return a;
  // P(1/u) = u^-deg rev(P)(u)
  int k = -a.k;
  std::vector<Poly> num, den;
  for (const auto& f : a.num) {
    num.emplace_back(f.rbegin(), f.rend());
    k -= int(f.size()) - 1;
  }
  for (const auto& f : a.den) {
    den.emplace_back(f.rbegin(), f.rend());
    k += int(f.size()) - 1;
  }
  return build(a.q, a.c, k, num, den, a.var);
}

LocalWeightExpr recenter(const LocalWeightExpr& a, SVar to) {
  if (a.var == to) return a;
  // u_centered = sqrt(q) u_shifted
  const double f = to == SVar::Shifted ? std::sqrt(a.q) : 1 / std::sqrt(a.q);
  auto scale = [&](std::vector<Poly> fs) {
    for (auto& p : fs)
      for (size_t j = 0; j < p.size(); ++j) p[j] *= std::pow(f, double(j));
    return fs;
  };
  return build(a.q, a.c * std::pow(f, a.k), a.k, scale(a.num), scale(a.den), to);
}

cplx LaurentSeries::coeff(int n) const {
  if (n < min_order) return 0.0;
  if (n > max_order()) fail(Err::InsufficientOrder, "coefficient beyond the truncation order");
  return c[n - min_order];
}

cplx LaurentSeries::eval(cplx s) const {
  const cplx h = s - center;
  cplx r = 0;
  for (int i = int(c.size()) - 1; i >= 0; --i) r = r * h + c[i];
  return r * std::pow(h, min_order);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.center != b.center) fail(Err::CtxMismatch, "series at different centers");
  LaurentSeries r;
  r.center = a.center;
  r.min_order = a.min_order + b.min_order;
  const size_t n = std::min(a.c.size(), b.c.size());
  r.c.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; i + j < n; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.center != b.center) fail(Err::CtxMismatch, "series at different centers");
  LaurentSeries r;
  r.center = a.center;
  r.min_order = std::min(a.min_order, b.min_order);
  const int hi = std::min(a.max_order(), b.max_order());
  for (int n = r.min_order; n <= hi; ++n) r.c.push_back(a.coeff(n) + b.coeff(n));
  return r;
}

LaurentSeries pow(const LaurentSeries& a, int n) {
  if (n < 1) fail(Err::InvalidArgument, "series power must be positive");
  LaurentSeries r = a;
  for (int i = 1; i < n; ++i) r = r * a;
  return r;
}

LaurentSeries truncate(const LaurentSeries& a, int max_order) {
  LaurentSeries r = a;
  if (max_order < r.max_order()) r.c.resize(size_t(std::max(0, max_order - r.min_order + 1)));
  return r;
}

LaurentSeries inverse(const LaurentSeries& a) {
  size_t lead = 0;
  while (lead < a.c.size() && a.c[lead] == 0.0) ++lead;
  if (lead == a.c.size()) fail(Err::DivisionByZeroExpr, "inverse of a series that is zero to its order");
  std::vector<cplx> c(a.c.begin() + lead, a.c.end());
  LaurentSeries r;
  r.center = a.center;
  r.min_order = -(a.min_order + int(lead));
  r.c.assign(c.size(), 0.0);
  for (size_t i = 0; i < c.size(); ++i) {
    cplx s = i == 0 ? 1.0 : 0.0;
    for (size_t j = 1; j <= i; ++j) s -= c[j] * r.c[i - j];
    r.c[i] = s / c[0];
  }
  return r;
}

LaurentSeries rescale(const LaurentSeries& f, cplx a, cplx center) {
  LaurentSeries r = f;
  r.center = center;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] *= std::pow(a, f.min_order + int(i));
  return r;
}

LaurentSeries constant_series(cplx center, cplx v, int order) {
  LaurentSeries r;
  r.center = center;
  r.min_order = 0;
  r.c.assign(size_t(std::max(order, 0) + 1), 0.0);
  r.c[0] = v;
  return r;
}

namespace {

// Taylor coefficients in h of u^k P(u), u = a e^{-L h}; the order of the
// leading zero is found with a tolerance relative to the term sizes
struct Taylor {
  int v = -1;  // -1: identically zero
  std::vector<cplx> c;
};

Taylor taylor(const Poly& p, int k, cplx a, double L, int extra) {
  const int deg = int(p.size()) - 1;
  std::vector<cplx> w(p.size());
  std::vector<double> e(p.size());
  for (int j = 0; j <= deg; ++j) {
    w[j] = p[j] * std::pow(a, j + k);
    e[j] = -(j + k) * L;
  }
  auto coef = [&](int n, double& mag) {
    cplx s = 0;
    mag = 0;
    double fact = std::tgamma(n + 1.0);
    for (int j = 0; j <= deg; ++j) {
      cplx t = w[j] * std::pow(e[j], n) / fact;
      s += t;
      mag += std::abs(t);
    }
    return s;
  };
  Taylor t;
  for (int n = 0; n <= deg + 1; ++n) {
    double mag;
    cplx s = coef(n, mag);
    if (std::abs(s) > 1e-11 * mag && mag > 0) {
      t.v = n;
      break;
    }
  }
  if (t.v < 0) return t;
  for (int n = t.v; n <= t.v + extra; ++n) {
    double mag;
    cplx s = coef(n, mag);
    if (std::abs(s) <= 1e-14 * mag) s = 0;
    t.c.push_back(s);
  }
  return t;
}

}  // namespace

namespace {

// product of Taylor series with leading orders, truncated to len terms
Taylor tmul(const Taylor& x, const Taylor& y, int len) {
  Taylor r;
  r.v = x.v + y.v;
  r.c.assign(size_t(len), 0.0);
  for (int i = 0; i < len; ++i)
    for (int j = 0; i + j < len; ++j) r.c[i + j] += x.c[i] * y.c[j];
  return r;
}

}  // namespace

LaurentSeries expand_at(const LocalWeightExpr& e, cplx s0, int order) {
  const double L = std::log(e.q);
  const cplx a = std::exp(-s0 * L);
  LaurentSeries r;
  r.center = s0;
  if (e.is_zero()) {
    r.min_order = order + 1;
    return r;
  }
  auto orders = [&](const std::vector<Poly>& fs, const char* what) {
    int v = 0;
    for (const auto& f : fs) {
      Taylor t = taylor(f, 0, a, L, 0);
      if (t.v < 0) fail(what[0] == 'd' ? Err::DivisionByZeroExpr : Err::EssentialSingularity, what);
      v += t.v;
    }
    return v;
  };
  const int vd = orders(e.den, "denominator vanishes identically");
  const int vn = orders(e.num, "numerator vanishes to unbounded order");
  r.min_order = vn - vd;
  const int len = order - r.min_order + 1;
  if (len <= 0) {
    r.min_order = order + 1;
    return r;
  }
  auto product = [&](const std::vector<Poly>& fs, int k, cplx c) {
    Taylor acc = taylor({c}, k, a, L, len - 1);
    for (const auto& f : fs) acc = tmul(acc, taylor(f, 0, a, L, len - 1), len);
    return acc;
  };
  Taylor n = product(e.num, e.k, e.c), d = product(e.den, 0, 1.0);
  r.c.assign(size_t(len), 0.0);
  for (int i = 0; i < len; ++i) {
    cplx s = n.c[i];
    for (int j = 1; j <= i; ++j) s -= d.c[j] * r.c[i - j];
    r.c[i] = s / d.c[0];
  }
  return r;
}

OrderResidue residue_and_order(const LaurentSeries& f) {
  if (f.max_order() < -1) fail(Err::InsufficientOrder, "series too short to read a residue");
  int ord = f.max_order() + 1;
  for (size_t i = 0; i < f.c.size(); ++i)
    if (f.c[i] != 0.0) {
      ord = f.min_order + int(i);
      break;
    }
  return {ord, f.coeff(-1)};
}

OrderResidue residue_and_order(const LocalWeightExpr& e, cplx s0) { return residue_and_order(expand_at(e, s0)); }

cplx zeta_eval(cplx s) {
  if (std::abs(s - 1.0) < 1e-12) fail(Err::PoleAtOne, "zeta has a pole at s = 1");
  if (s.real() <= -1) fail(Err::InvalidArgument, "zeta evaluator covers Re s > -1 only");
  // B_2k / (2k)!
  static const double b[] = {1.0 / 6,           -1.0 / 30,          1.0 / 42,
                             -1.0 / 30,         5.0 / 66,           -691.0 / 2730,
                             7.0 / 6,           -3617.0 / 510,      43867.0 / 798,
                             -174611.0 / 330,   854513.0 / 138,     -236364091.0 / 2730};
  const int N = 30 + int(std::abs(s.imag()));
  cplx sum = 0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(double(n)));
  const double lN = std::log(double(N));
  const cplx Ns = std::exp(-s * lN);
  sum += Ns * double(N) / (s - 1.0) + 0.5 * Ns;
  // rising product s (s+1) ... (s+2k-2), N^(-s-2k+1)
  cplx rise = s, pw = Ns / double(N);
  double fact = 2;
  for (int k = 1; k <= 12; ++k) {
    sum += b[k - 1] / fact * rise * pw;
    rise *= (s + double(2 * k - 1)) * (s + double(2 * k));
    pw /= double(N) * double(N);
    fact *= double(2 * k + 1) * double(2 * k + 2);
  }
  return sum;
}

LaurentSeries laurent_by_contour(const ZetaFn& f, cplx s0, int order, double r, int points) {
  const int lo = -2;
  std::vector<cplx> vals(points);
  for (int j = 0; j < points; ++j) vals[j] = f(s0 + std::polar(r, 2 * std::numbers::pi * j / points));
  LaurentSeries out;
  out.center = s0;
  out.min_order = lo;
  double scale = 0;
  for (auto& v : vals) scale = std::max(scale, std::abs(v));
  for (int n = lo; n <= order; ++n) {
    cplx acc = 0;
    for (int j = 0; j < points; ++j) acc += vals[j] * std::polar(std::pow(r, -n), -2 * std::numbers::pi * j * n / points);
    acc /= double(points);
    if (std::abs(acc) < 1e-11 * scale * std::pow(r, -n)) acc = 0;
    out.c.push_back(acc);
  }
  while (!out.c.empty() && out.c.front() == 0.0 && out.min_order < order) {
    out.c.erase(out.c.begin());
    ++out.min_order;
  }
  return out;
}

}  // namespace lwcs
