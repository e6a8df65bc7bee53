#include "assembly.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <json.hpp>

namespace lwcs {

using nlohmann::json;

std::pair<uint32_t, uint32_t> split_prime_power(uint32_t q) {
  if (q < 2) fail(Err::UnsupportedField, "q must be a prime power");
  uint32_t p = 2;
  while (q % p) ++p;
  uint32_t f = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++f;
  }
  if (r != 1) fail(Err::UnsupportedField, std::to_string(q) + " is not a prime power");
  if (p == 2) fail(Err::EvenCharacteristic, "q must be odd");
  return {p, f};
}

namespace {

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) fail(Err::InvalidArgument, where + ": expected an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail(Err::InvalidArgument, where + ": unknown key '" + it.key() + "'");
}

template <class T>
T get(const json& j, const char* key, T dflt) {
  if (!j.contains(key)) return dflt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(Err::InvalidArgument, std::string("bad value for '") + key + "'");
  }
}

uint32_t first_regular(const LocalModel& M) {
  auto cs = enumerate_chars(*M.Q, kTrivialOnBase | kRegular);
  if (cs.empty()) fail(Err::NotRegular, "no regular character");
  return uint32_t(cs.front().k);
}

}  // namespace

GlobalSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Err::InvalidArgument, std::string("spec is not valid JSON: ") + e.what());
  }
  only_keys(j, {"r", "arch", "finite"}, "spec");
  GlobalSpec s;
  s.r = get<int>(j, "r", 1);
  if (s.r < 1) fail(Err::InvalidArgument, "r must be at least 1");
  if (j.contains("arch")) {
    if (!j["arch"].is_array()) fail(Err::InvalidArgument, "arch must be a list");
    for (const auto& a : j["arch"]) {
      only_keys(a, {"T", "Delta", "eps"}, "arch entry");
      ArchPlace v{get<double>(a, "T", 0.0), get<double>(a, "Delta", 1.0), get<int>(a, "eps", 0)};
      if (v.T < 0 || !(v.Delta > 0) || (v.eps != 0 && v.eps != 1))
        fail(Err::InvalidArgument, "arch entry needs T >= 0, Delta > 0, eps in {0,1}");
      s.arch.push_back(v);
    }
    if (int(s.arch.size()) != s.r) fail(Err::InvalidArgument, "r must equal the number of arch entries");
  } else {
    s.arch.assign(size_t(s.r), ArchPlace{});
  }
  if (j.contains("finite")) {
    if (!j["finite"].is_array()) fail(Err::InvalidArgument, "finite must be a list");
    for (const auto& e : j["finite"]) {
      only_keys(e, {"q", "case", "xi_pi", "n", "theta", "t", "conj"}, "finite entry");
      if (!e.contains("q") || !e.contains("case")) fail(Err::InvalidArgument, "finite entry needs q and case");
      FinitePlace fp;
      fp.q = get<uint32_t>(e, "q", 0);
      std::tie(fp.p, fp.f) = split_prime_power(fp.q);
      fp.tc.kind = parse_case(get<std::string>(e, "case", ""));
      fp.tc.xi_pi = get<int>(e, "xi_pi", 1);
      fp.tc.n = get<int>(e, "n", 1);
      fp.tc.t = get<uint32_t>(e, "t", 1);
      const std::string conj = get<std::string>(e, "conj", "symmetric");
      if (conj == "symmetric") fp.tc.conj = Conj::Symmetric;
      else if (conj == "second") fp.tc.conj = Conj::SecondDisplay;
      else fail(Err::InvalidArgument, "conj must be 'symmetric' or 'second'");
      auto M = make_local_model(fp.p, fp.f);
      fp.tc.theta = e.contains("theta") ? get<uint32_t>(e, "theta", 0)
                    : fp.tc.kind == CaseKind::Case2SC ? first_regular(M)
                                                      : 0;
      validate(M, fp.tc);
      s.finite.push_back(fp);
    }
  }
  return s;
}

std::string spec_to_json(const GlobalSpec& s) {
  json j;
  j["r"] = s.r;
  j["arch"] = json::array();
  for (const auto& a : s.arch) j["arch"].push_back({{"T", a.T}, {"Delta", a.Delta}, {"eps", a.eps}});
  j["finite"] = json::array();
  for (const auto& f : s.finite) {
    json e{{"q", f.q}, {"case", case_name(f.tc.kind)}};
    switch (f.tc.kind) {
      case CaseKind::Case1: e["xi_pi"] = f.tc.xi_pi; break;
      case CaseKind::Case2NS:
        e["n"] = f.tc.n;
        e["conj"] = f.tc.conj == Conj::Symmetric ? "symmetric" : "second";
        break;
      case CaseKind::Case2SC: e["theta"] = f.tc.theta; break;
      case CaseKind::Case3: e["t"] = f.tc.t; break;
      case CaseKind::Case4NS: break;
    }
    j["finite"].push_back(e);
  }
  return j.dump();
}

Conductors conductors(const GlobalSpec& s) {
  Conductors c;
  for (int j = 1; j <= 4; ++j) c.C[j] = 1;
  for (const auto& f : s.finite) {
    const int a = int(conductor_exponent(f.tc));
    const double Cp = std::pow(double(f.q), a);
    c.C[a] *= Cp;
    c.total *= Cp;
  }
  c.log_c1_part = std::log(c.C[1]) / 6;
  c.log_c3_part = std::log(c.C[3]) / 18;
  c.log_c_part = std::log(c.total) / 6;
  return c;
}

D3Status d3_status(const GlobalSpec& s) {
  D3Status st;
  for (const auto& f : s.finite)
    if (f.tc.kind == CaseKind::Case2SC || f.tc.kind == CaseKind::Case3) {
      st.vanishes = true;
      st.reason = "supercuspidal component at q=" + std::to_string(f.q);
      return st;
    }
  for (const auto& f : s.finite)
    if (f.tc.kind == CaseKind::Case2NS || f.tc.kind == CaseKind::Case4NS) {
      st.vanishes = true;
      st.reason = "twisted Eisenstein conductor exceeds 1 at q=" + std::to_string(f.q);
      return st;
    }
  int s1 = 0;
  for (const auto& f : s.finite) s1 += f.tc.kind == CaseKind::Case1;
  st.order = 3 * s.r - 5 + s1;
  st.vanishes = *st.order >= 0;
  st.reason = st.vanishes ? "no pole at s=1/2" : "pole of order " + std::to_string(-*st.order) + " at s=1/2";
  return st;
}

namespace {

double logcosh(double x) {
  x = std::abs(x);
  return x + std::log1p(std::exp(-2 * x)) - std::numbers::ln2;
}

double logsumexp(double a, double b) {
  double m = std::max(a, b);
  if (m == -std::numeric_limits<double>::infinity()) return m;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double arch_m3_log(double tau, const ArchPlace& v, int eps) {
  if (eps != v.eps) return -std::numeric_limits<double>::infinity();
  const double d2 = 2 * v.Delta * v.Delta, h = std::numbers::pi * tau / 2;
  const double ep = -(tau + v.T) * (tau + v.T) / d2 + h;
  const double em = -(tau - v.T) * (tau - v.T) / d2 - h;
  return 0.5 * std::log(std::numbers::pi) + logcosh(std::numbers::pi * tau) - std::log(2 * v.Delta) +
         2 * logsumexp(ep, em);
}

double arch_m3(double tau, const ArchPlace& v, int eps) { return std::exp(arch_m3_log(tau, v, eps)); }

cplx arch_m3_s(cplx s, const ArchPlace& v) {
  if (v.eps != 0) return 0.0;
  // tau = -i s
  const cplx tau = cplx(0, -1) * s;
  const double d2 = 2 * v.Delta * v.Delta;
  const cplx h = std::numbers::pi * tau / 2.0;
  cplx sum = std::exp(-(tau + v.T) * (tau + v.T) / d2 + h) + std::exp(-(tau - v.T) * (tau - v.T) / d2 - h);
  return std::sqrt(std::numbers::pi) * std::cosh(std::numbers::pi * tau) / (2 * v.Delta) * sum * sum;
}

LocalWeightExpr l_factor_inv(double q) {
  const double a = 1 / std::sqrt(q);
  auto u = expr_u(q), one = expr_const(q, 1.0);
  return pow(one - a * u, 2) * pow(one - a * (one / u), 2);
}

double wt4_renorm(const LocalModel& M, const TestCase& c) {
  return c.kind == CaseKind::Case2NS || c.kind == CaseKind::Case3 ? double(M.q) : 1.0;
}

LocalWeightExpr wt4_local(const LocalModel& M, const TestCase& c) {
  validate(M, c);
  const double q = M.q, a = 1 / std::sqrt(q), z1 = 1 / (1 - 1 / q);
  auto u = expr_u(q), one = expr_const(q, 1.0);
  auto Xp = a * u, Xm = a * (one / u);  // q^-(1/2+s), q^-(1/2-s)
  auto F = l_factor_inv(q);
  auto G = [&](const LocalWeightExpr& x) { return x / (one - x); };
  switch (c.kind) {
    case CaseKind::Case1: return cplx(q + 1) * Xm * pow(one - Xp, 2);
    case CaseKind::Case2NS: {
      if (c.n != 1) fail(Err::UnsupportedCase, "local weight only for level 1");
      const double xi_m1 = M.q % 4 == 1 ? 1.0 : -1.0;
      auto term = [&](const LocalWeightExpr& x, double xi) {
        auto x2 = x * x;
        return (q * q) * x2 / pow(one - x, 2) + (2 * z1 * q) * x2 / (one - x) + expr_const(q, xi);
      };
      return cplx(z1 * (q + 1) / (q * q)) * F * (term(Xp, 1.0) + term(Xm, xi_m1));
    }
    case CaseKind::Case2SC: {
      const Field& E = *M.Q->ext;
      const cplx tb = std::conj(E.mroot(uint64_t(c.theta) * E.dlog_unchecked(M.Q->omega)));
      auto Gm = G(Xm), Gp = G(Xp);
      auto body = cplx(-2) * Gm + cplx(q - 1) * Gm * Gm - (tb * (q - 1)) * Gp * Gp + (2.0 * tb) * Gp +
                  expr_const(q, (1.0 - tb) / (q - 1));
      return F * body;
    }
    case CaseKind::Case3: {
      auto g = expr_const(q, -1 / (q - 1)) + G(Xm);
      return cplx(q * (q + 1)) * Xm * F * g * g;
    }
    case CaseKind::Case4NS: {
      auto term = [&](const LocalWeightExpr& x) {
        auto x2 = x * x, x4 = x2 * x2;
        return (q * q) * x4 / pow(one - x, 2) + (2 * z1 * q) * x4 / (one - x) + x2;
      };
      return cplx(z1) * F * (term(Xp) + term(Xm));
    }
  }
  fail(Err::UnsupportedCase, "no local weight");
}

namespace {

// zeta(c0 + a h) around h = 0
LaurentSeries zeta_at(const ZetaFn& zeta, double c0, double a, cplx center, int order) {
  return rescale(laurent_by_contour(zeta, c0, order, c0 == 1.0 || c0 == 0.0 ? 0.5 : 0.25), a, center);
}

}  // namespace

std::optional<cplx> d3_value(const GlobalSpec& s, const ZetaFn& zeta) {
  if (s.r != 1) return std::nullopt;
  D3Status st = d3_status(s);
  if (st.vanishes) return cplx(0);
  const int ord = 8;
  const cplx c0 = 0.5;
  LaurentSeries tot = laurent_by_contour([&](cplx x) { return arch_m3_s(x, s.arch[0]); }, c0, ord, 0.25);
  if (residue_and_order(tot).order > ord) return cplx(0);
  for (const auto& f : s.finite) {
    if (f.tc.kind != CaseKind::Case1) continue;
    const double q = f.q;
    auto u = expr_u(q), one = expr_const(q, 1.0);
    // 2 zeta_p(1+2s) zeta_p(1-2s) / (zeta_p(1/2+s)^2 zeta_p(1/2-s)^2)
    auto e = cplx(2) * l_factor_inv(q) / ((one - u * u / expr_const(q, q)) * (one - one / (cplx(q) * u * u)));
    tot = tot * expand_at(e, c0, ord);
  }
  auto zp = zeta_at(zeta, 1.0, 1.0, c0, ord);    // zeta(1/2+s)
  auto zm = zeta_at(zeta, 0.0, -1.0, c0, ord);   // zeta(1/2-s)
  auto z2p = zeta_at(zeta, 2.0, 2.0, c0, ord);   // zeta(1+2s)
  auto z2m = zeta_at(zeta, 0.0, -2.0, c0, ord);  // zeta(1-2s)
  tot = tot * pow(zp, 3) * pow(zm, 3) * inverse(z2p) * inverse(z2m);
  return tot.coeff(-1);
}

ArchStub unit_arch_stub() { return {constant_series(1.0, 1.0, kDefaultOrder), constant_series(0.0, 1.0, kDefaultOrder)}; }

D4Result d4_toy(const GlobalSpec& s, const std::vector<ArchStub>& stubs, const ZetaFn& zeta, int nmax) {
  if (int(stubs.size()) < s.r) fail(Err::MissingArchStub, "one Laurent stub per real place is required");
  const int ord = std::max(kDefaultOrder, nmax);
  D4Result out;
  std::vector<LaurentSeries> at1, at0;  // per place, centered variable at +-1/2
  for (int i = 0; i < s.r; ++i) {
    PlaceLedger pl;
    pl.label = "arch" + std::to_string(i);
    auto a1 = stubs[i].at1, a0 = stubs[i].at0;
    a1.center = 0.5;
    a0.center = -0.5;
    for (int n = -2; n <= nmax; ++n) {
      pl.w1[n] = n <= a1.max_order() ? a1.coeff(n) : cplx(NAN, NAN);
      pl.w0[n] = n <= a0.max_order() ? a0.coeff(n) : cplx(NAN, NAN);
    }
    at1.push_back(a1);
    at0.push_back(a0);
    out.places.push_back(pl);
  }
  for (const auto& f : s.finite) {
    auto M = make_local_model(f.p, f.f);
    auto e = wt4_local(M, f.tc);
    PlaceLedger pl;
    pl.label = std::string(case_name(f.tc.kind)) + "@" + std::to_string(f.q);
    pl.q = f.q;
    pl.C = std::pow(double(f.q), conductor_exponent(f.tc));
    auto L1 = expand_at(e, 0.5, ord), L0 = expand_at(e, -0.5, ord);
    for (int n = -2; n <= nmax; ++n) {
      pl.w1[n] = L1.coeff(n);
      pl.w0[n] = L0.coeff(n);
    }
    at1.push_back(L1);
    at0.push_back(L0);
    out.places.push_back(pl);
  }
  if (s.r == 1) {
    auto global = [&](double c0) {
      auto zp = zeta_at(zeta, 0.5 + c0, 1.0, c0, ord + 4);
      auto zm = zeta_at(zeta, 0.5 - c0, -1.0, c0, ord + 4);
      return pow(zp, 2) * pow(zm, 2);
    };
    LaurentSeries t1 = global(0.5), t0 = global(-0.5);
    for (const auto& L : at1) t1 = t1 * L;
    for (const auto& L : at0) t0 = t0 * L;
    out.res1 = t1.coeff(-1);
    out.res0 = t0.coeff(-1);
  }
  return out;
}

}  // namespace lwcs
