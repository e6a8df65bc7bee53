#include "local.hpp"

#include <cmath>
#include <numeric>

namespace lwcs {

namespace {

cplx qpow(const LocalModel& M, cplx e) { return std::exp(-e * std::log(double(M.q))); }  // q^-e

uint64_t mod_exp(const LocalModel& M, const LocalChar& chi) {
  return chi.cond <= 1 ? uint64_t(M.q - 1) : uint64_t(M.p) * (M.p - 1);
}

cplx one_minus_inv_sq(cplx x, const char* what) {
  cplx d = 1.0 - x;
  if (std::abs(d) < 1e-12) fail(Err::PoleHit, what);
  return x / (d * d);
}

// chi on residue-field units
cplx chi_res(const Field& F, const LocalChar& chi, Elem u) {
  if (u == 0) return 0.0;
  return F.mroot(chi.k * F.dlog_unchecked(u));
}

int subset_index(unsigned mask) {
  switch (mask) {
    case 0: return 0;
    case 1: return 1;
    case 2: return 2;
    case 4: return 3;
    case 8: return 4;
    case 9: return 5;
    case 6: return 6;
  }
  return -1;
}

unsigned subset_mask(const Subset& I) {
  unsigned m = 0;
  for (int i : I) {
    if (i < 1 || i > 4) fail(Err::BadSubset, "subset entries are 1..4");
    if (m & (1u << (i - 1))) fail(Err::BadSubset, "repeated subset entry");
    m |= 1u << (i - 1);
  }
  if (subset_index(m) < 0) fail(Err::BadSubset, "subset " + subset_name(I) + " forces det = 0");
  return m;
}

}  // namespace

LocalModel make_local_model(uint32_t p, uint32_t f) {
  LocalModel M;
  M.F = make_field(p, f);
  M.p = p;
  M.f = f;
  M.q = M.F->q;
  if (p != 2) M.Q = make_quad_ext(M.F);
  return M;
}

LocalChar LocalChar::inverse(const LocalModel& M) const {
  uint64_t n = mod_exp(M, *this);
  return {std::conj(c), cond, (n - k % n) % n};
}

LocalChar local_char(const LocalModel& M, cplx c, uint64_t k) {
  k %= M.q - 1;
  return {c, k == 0 ? 0u : 1u, k};
}

void validate(const LocalModel& M, const LocalChar& chi) {
  if (std::abs(std::abs(chi.c) - 1.0) > 1e-9) fail(Err::InvalidArgument, "chi(varpi) must lie on the unit circle");
  if (chi.cond == 0 && chi.k % (M.q - 1) != 0) fail(Err::InvalidArgument, "conductor 0 needs trivial ramified part");
  if (chi.cond == 1 && chi.k % (M.q - 1) == 0) fail(Err::InvalidArgument, "conductor 1 needs nontrivial ramified part");
  if (chi.cond == 2) {
    if (M.f != 1) fail(Err::UnsupportedField, "conductor 2 characters only over prime fields");
    if (chi.k % M.p == 0) fail(Err::InvalidArgument, "conductor 2 needs chi nontrivial on 1 + p");
  }
  if (chi.cond > 2) fail(Err::UnsupportedConductor, "conductor above 2");
}

const char* case_name(CaseKind k) {
  switch (k) {
    case CaseKind::Case1: return "case1";
    case CaseKind::Case2NS: return "case2ns";
    case CaseKind::Case2SC: return "case2sc";
    case CaseKind::Case3: return "case3";
    case CaseKind::Case4NS: return "case4ns";
  }
  return "?";
}

CaseKind parse_case(const std::string& s) {
  for (CaseKind k : {CaseKind::Case1, CaseKind::Case2NS, CaseKind::Case2SC, CaseKind::Case3, CaseKind::Case4NS})
    if (s == case_name(k)) return k;
  fail(Err::UnsupportedCase, "unknown case '" + s + "'");
}

uint32_t conductor_exponent(const TestCase& c) {
  switch (c.kind) {
    case CaseKind::Case1: return 1;
    case CaseKind::Case2NS:
    case CaseKind::Case2SC: return 2;
    case CaseKind::Case3: return 3;
    case CaseKind::Case4NS: return 4;
  }
  return 0;
}

void validate(const LocalModel& M, const TestCase& c) {
  if (c.xi_pi != 1 && c.xi_pi != -1) fail(Err::InvalidArgument, "xi(varpi) must be +1 or -1");
  switch (c.kind) {
    case CaseKind::Case2NS:
      if (c.n != 1 && c.n != 2) fail(Err::InvalidArgument, "level n must be 1 or 2");
      if (M.p == 2) fail(Err::EvenCharacteristic, "quadratic xi needs odd q");
      break;
    case CaseKind::Case2SC: {
      if (!M.Q) fail(Err::EvenCharacteristic, "depth-zero case needs odd q");
      const uint64_t n2 = uint64_t(M.q) * M.q - 1;
      const uint64_t th = c.theta % n2;
      if (th % (M.q - 1) != 0) fail(Err::NotTrivialOnBase, "theta not trivial on F_q^x");
      if (th * (M.q - 1) % n2 == 0) fail(Err::NotRegular, "theta fixed by Frobenius");
      break;
    }
    case CaseKind::Case3:
      if (c.t == 0 || c.t >= M.q) fail(Err::InvalidArgument, "t must be a residue unit");
      break;
    default:
      break;
  }
}

Rational make_rational(int64_t a, int64_t b) {
  if (b == 0) fail(Err::InvalidArgument, "zero denominator");
  int64_t g = std::gcd(a, b);
  if (b < 0) g = -g;
  return {a / g, b / g};
}

Rational volume(const LocalModel& M, Subgroup g, int n) {
  const int64_t q = M.q;
  // probability measure on GL2(o): count images in GL2(o / p^n)
  const int64_t gl1 = (q * q - 1) * (q * q - q);
  switch (g) {
    case Subgroup::K0: {
      if (n < 1 || n > 3) fail(Err::InvalidArgument, "K0 level must be 1..3");
      int64_t lift = int64_t(ipow(q, 4 * (n - 1)));
      int64_t units = int64_t(ipow(q, n - 1)) * (q - 1);
      return make_rational(units * units * int64_t(ipow(q, n)), lift * gl1);
    }
    case Subgroup::K1:
      // diagonal residues 1, upper entry free, lower entry 0
      return make_rational(q, gl1);
    case Subgroup::OnePlusP:
      return make_rational(1, q - 1);
    case Subgroup::Units:
      return make_rational(1, 1);
  }
  return {};
}

M3Value m3_value(const LocalModel& M, const TestCase& c) {
  validate(M, c);
  const double q = M.q;
  switch (c.kind) {
    case CaseKind::Case1:
      return {(1 + c.xi_pi / q) / (1 - c.xi_pi / q), false};
    case CaseKind::Case2NS:
      return {std::pow(q, -c.n) * (1 + 1 / q), true};
    case CaseKind::Case2SC:
      return {1.0, false};
    case CaseKind::Case3:
      return {1 / (q - 1), false};
    case CaseKind::Case4NS:
      break;
  }
  fail(Err::UnsupportedCase, "no cubic weight for this case");
}

cplx m3_principal_unram(const LocalModel& M, cplx s) {
  cplx a = 1.0 - qpow(M, 0.5 - s), b = 1.0 - qpow(M, 0.5 + s);
  if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12) fail(Err::PoleHit, "s on the pole set");
  return 2.0 / (a * b);
}

cplx macdonald_sigma1(const LocalModel& M, cplx s) {
  const double q = M.q;
  return std::pow(q, -0.5) / (1 + 1 / q) * (qpow(M, -s) + qpow(M, s));
}

cplx char_table(const QuadExt& Q, uint32_t theta, const std::array<Elem, 4>& g) {
  const Field& F = *Q.base;
  const Field& E = *Q.ext;
  const Elem det = F.sub(F.mul(g[0], g[3]), F.mul(g[1], g[2]));
  if (det == 0) fail(Err::SingularMatrix, "matrix not invertible");
  if (g[1] == 0 && g[2] == 0 && g[0] == g[3]) return double(F.q - 1);
  const Elem tr = F.add(g[0], g[3]);
  const Elem disc = F.sub(F.mul(tr, tr), F.mul(F.from_int(4), det));
  if (disc == 0) return -1.0;
  if (F.is_square(disc)) return 0.0;
  auto [y, yq] = Q.solve_quadratic(F.neg(tr), det);
  MultChar th{&E, theta % (E.q - 1)};
  return -th(y) - th(yq);
}

const std::vector<Subset>& admissible_subsets() {
  static const std::vector<Subset> v = {{}, {1}, {2}, {3}, {4}, {1, 4}, {2, 3}};
  return v;
}

std::string subset_name(const Subset& I) {
  std::string s = "{";
  for (size_t i = 0; i < I.size(); ++i) s += (i ? "," : "") + std::to_string(I[i]);
  return s + "}";
}

cplx geom(const LocalModel& M, cplx c, cplx sigma) {
  cplx x = c * qpow(M, sigma);
  cplx d = 1.0 - x;
  if (std::abs(d) < 1e-12) fail(Err::PoleHit, "geometric factor at a pole");
  return x / d;
}

DepthZero::DepthZero(const LocalModel& M, uint32_t theta) : M_(M), theta_(theta) {
  validate(M, TestCase{CaseKind::Case2SC, 1, 1, Conj::Symmetric, theta, 1});
  const Field& F = *M.F;
  const Field& E = *M.Q->ext;
  const uint32_t q = F.q;
  th_omega_ = MultChar{&E, theta % (E.q - 1)}(M.Q->omega);
  // conj character on non-scalar classes, by (trace, det)
  std::vector<cplx> cls(size_t(q) * q);
  for (Elem tr = 0; tr < q; ++tr)
    for (Elem d = 1; d < q; ++d) cls[size_t(tr) * q + d] = std::conj(char_table(*M.Q, theta, {0, F.neg(d), 1, tr}));
  h_empty_.assign(q - 1, 0.0);
  for (Elem a1 = 0; a1 < q; ++a1)
    for (Elem a4 = 0; a4 < q; ++a4) {
      const Elem d14 = F.mul(a1, a4), tr = F.add(a1, a4);
      for (Elem a2 = 0; a2 < q; ++a2)
        for (Elem a3 = 0; a3 < q; ++a3) {
          const Elem d23 = F.mul(a2, a3);
          const Elem det = F.sub(d14, d23);
          if (det == 0) continue;
          cplx v = (a2 == 0 && a3 == 0 && a1 == a4) ? cplx(q - 1) : cls[size_t(tr) * q + det];
          unsigned mask = (a1 == 0) | (a2 == 0) << 1 | (a3 == 0) << 2 | (a4 == 0) << 3;
          if (mask == 0) {
            uint32_t r = F.dlog_unchecked(d14) + (q - 1) - F.dlog_unchecked(d23);
            h_empty_[r % (q - 1)] += v;
          } else {
            s_[subset_index(mask)] += v;
          }
        }
    }
}

cplx DepthZero::term(const Subset& I, const LocalChar& chi, cplx s) const {
  const unsigned mask = subset_mask(I);
  validate(M_, chi);
  if (chi.cond >= 2) return 0.0;
  const double q1 = M_.q - 1;
  if (mask == 0) {
    cplx acc = 0;
    for (size_t r = 0; r < h_empty_.size(); ++r) acc += h_empty_[r] * M_.F->mroot(chi.k * r);
    return acc / (q1 * q1 * q1);
  }
  if (chi.cond == 1) return 0.0;
  cplx v = s_[subset_index(mask)] * std::pow(q1, double(I.size()) - 3);
  for (int i : I) v *= (i == 1 || i == 4) ? geom(M_, chi.c, 0.5 + s) : geom(M_, std::conj(chi.c), 0.5 - s);
  return v;
}

cplx DepthZero::total(const LocalChar& chi, cplx s) const {
  cplx acc = 0;
  for (const auto& I : admissible_subsets()) acc += term(I, chi, s);
  return acc;
}

std::pair<cplx, cplx> DepthZero::empty_split(const LocalChar& chi) const {
  validate(M_, chi);
  if (chi.cond >= 2) fail(Err::UnsupportedConductor, "split needs conductor <= 1");
  const Field& F = *M_.F;
  const QuadExt& Q = *M_.Q;
  const Field& E = *Q.ext;
  const uint32_t q = F.q;
  const Elem four = F.from_int(4), half = F.inv(F.from_int(2));
  MultChar th{&E, theta_ % (E.q - 1)};
  cplx s0 = 0, s1 = 0;
  for (Elem a1 = 1; a1 < q; ++a1)
    for (Elem a2 = 1; a2 < q; ++a2)
      for (Elem a3 = 1; a3 < q; ++a3)
        for (Elem a4 = 1; a4 < q; ++a4) {
          if (F.mul(a1, a4) == F.mul(a2, a3)) continue;
          const cplx w = chi_res(F, chi, F.div(F.mul(a1, a4), F.mul(a2, a3)));
          const Elem d = F.sub(a1, a4);
          const Elem delta = F.add(F.mul(d, d), F.mul(four, F.mul(a2, a3)));
          if (delta == 0) {
            s0 -= w;
            continue;
          }
          const Elem m = F.mul(F.add(a1, a4), half);
          for (Elem b = 1; b < q; ++b)
            if (F.mul(four, F.mul(F.mul(b, b), Q.eps)) == delta)
              s1 -= std::conj(th(E.add(Q.embed(m), E.mul(Q.embed(b), Q.omega)))) * w;
        }
  const double n = std::pow(double(q - 1), 3);
  return {s0 / n, s1 / n};
}

std::optional<cplx> m4_closed(const LocalModel& M, const DepthZero& D, const LocalChar& chi, cplx s) {
  validate(M, chi);
  if (chi.cond >= 2) return std::nullopt;
  return D.total(chi, s);
}

cplx m4_case2sc_fourterm(const LocalModel& M, cplx theta_omega, cplx s) {
  const double q1 = M.q - 1;
  cplx gm = geom(M, 1.0, 0.5 - s), gp = geom(M, 1.0, 0.5 + s);
  return -2.0 * gm + q1 * gm * gm - std::conj(theta_omega) * q1 * gp * gp + 2.0 / q1;
}

cplx m4_case2sc_trivial(const LocalModel& M, cplx theta_omega, cplx s) {
  const double q1 = M.q - 1;
  cplx tb = std::conj(theta_omega);
  cplx gm = geom(M, 1.0, 0.5 - s), gp = geom(M, 1.0, 0.5 + s);
  return -2.0 * gm + q1 * gm * gm - tb * q1 * gp * gp + 2.0 * tb * gp + (1.0 - tb) / q1;
}

std::optional<cplx> m4_closed(const LocalModel& M, const TestCase& c, const LocalChar& chi, cplx s) {
  validate(M, c);
  validate(M, chi);
  const double q = M.q;
  switch (c.kind) {
    case CaseKind::Case1: {
      if (chi.cond != 0) return std::nullopt;
      return (q + 1) * one_minus_inv_sq(std::conj(chi.c) * qpow(M, 0.5 - s), "case1 pole");
    }
    case CaseKind::Case3: {
      if (chi.cond >= 2) return std::nullopt;
      const LocalChar ci = chi.inverse(M);
      const Field& F = *M.F;
      return (q + 1) * gauss_integral(M, F.neg(1), ci, -s) * std::conj(chi.c) * qpow(M, 0.5 - s) *
             gauss_integral(M, F.neg(c.t), ci, -s);
    }
    case CaseKind::Case2SC: {
      if (chi.cond >= 2) return std::nullopt;
      DepthZero D(M, c.theta);
      return D.total(chi, s);
    }
    case CaseKind::Case2NS: {
      if (c.n != 1) fail(Err::UnsupportedCase, "closed form only for level 1");
      if (chi.cond != 0) fail(Err::UnsupportedChar, "closed form only for unramified chi");
      // unramified chi shifts s: q^-s -> chi(varpi) q^-s
      const double z1 = 1 / (1 - 1 / q);
      const double xi_m1 = (M.q % 4 == 1) ? 1.0 : -1.0;
      cplx tot = 0;
      for (int sg : {1, -1}) {
        cplx x = (sg > 0 ? chi.c : std::conj(chi.c)) * qpow(M, 0.5 + double(sg) * s);
        cplx d = 1.0 - x;
        if (std::abs(d) < 1e-12) fail(Err::PoleHit, "case2ns pole");
        tot += q * q * x * x / (d * d) + 2 * z1 * q * x * x / d + (sg > 0 ? 1.0 : xi_m1);
      }
      return z1 * (q + 1) / (q * q * q) * tot;
    }
    case CaseKind::Case4NS: {
      if (chi.cond != 0 || std::abs(chi.c - 1.0) > 1e-12) fail(Err::UnsupportedChar, "only trivial chi");
      const double z1 = 1 / (1 - 1 / q);
      cplx tot = 0;
      for (int sg : {1, -1}) {
        cplx x = qpow(M, 0.5 + double(sg) * s);
        cplx d = 1.0 - x;
        if (std::abs(d) < 1e-12) fail(Err::PoleHit, "case4ns pole");
        cplx x4 = x * x * x * x;
        tot += q * q * x4 / (d * d) + 2 * z1 * q * x4 / d + x * x;
      }
      return z1 * tot;
    }
  }
  fail(Err::UnsupportedCase, "no closed form");
}

uint64_t pointcount_direct(const LocalModel& M, Elem alpha, Elem t) {
  const Field& F = *M.F;
  const Elem e = F.eps();
  const Elem a2 = F.mul(alpha, alpha);
  const Elem lhs_c = F.mul(F.mul(F.from_int(4), a2), F.sub(1, t));
  const Elem rhs_c = F.sub(a2, e);
  uint64_t n = 0;
  for (Elem a1 = 0; a1 < F.q; ++a1)
    for (Elem a4 = 0; a4 < F.q; ++a4) {
      Elem s = F.add(a1, a4);
      if (F.mul(lhs_c, F.mul(a1, a4)) == F.mul(F.mul(s, s), rhs_c)) ++n;
    }
  return n;
}

namespace {
int legendre(const Field& F, Elem x) { return x == 0 ? 0 : (F.is_square(x) ? 1 : -1); }
}  // namespace

int64_t pointcount_claimed(const LocalModel& M, Elem alpha, Elem t) {
  const Field& F = *M.F;
  int sg = legendre(F, F.sub(F.mul(F.mul(alpha, alpha), t), F.eps())) * legendre(F, F.sub(t, 1));
  return int64_t(M.q) * (1 + sg);
}

// The form has discriminant 16 alpha^2 (t-1)(alpha^2 t - eps).  Rank 2: 2q-1 zeros
// when that is a square, 1 otherwise.  Rank 1 (alpha = 0 or a zero factor): q.
int64_t pointcount_exact(const LocalModel& M, Elem alpha, Elem t) {
  const Field& F = *M.F;
  if (alpha == 0) return M.q;
  int sg = legendre(F, F.sub(F.mul(F.mul(alpha, alpha), t), F.eps())) * legendre(F, F.sub(t, 1));
  return int64_t(M.q) + int64_t(M.q - 1) * sg;
}

cplx gauss_integral(const LocalModel& M, Elem a, const LocalChar& chi, cplx s) {
  validate(M, chi);
  if (chi.cond >= 2) fail(Err::UnsupportedConductor, "needs conductor <= 1");
  if (a == 0 || a >= M.q) fail(Err::InvalidArgument, "scaling must be a residue unit");
  const Field& F = *M.F;
  AddChar psi = add_char(F, a);
  cplx v0 = 0;
  for (Elem u = 1; u < F.q; ++u) v0 += psi(u) * chi_res(F, chi, u);
  v0 /= double(F.q - 1);
  if (chi.cond == 0) v0 += geom(M, chi.c, 0.5 + s);
  return v0;
}

bool whittaker_case3(const TruncatedPadic& y) { return whittaker_case2sc(y, 1); }

bool whittaker_case2sc(const TruncatedPadic& y, Elem u) {
  if (y.is_zero()) return false;
  if (!y.val_at_least(-1)) return false;
  if (y.state() == TruncatedPadic::State::BoundedZero) {
    // known to be 0 mod p^k with k >= -1: decided only when k >= 0
    if (y.val_at_least(0)) return false;
  }
  if (y.val() != -1) return false;
  return y.residue() == u % y.prime();
}

}  // namespace lwcs
