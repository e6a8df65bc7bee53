// Acceptance suite.  One line per criterion:  "criterion N: PASS|FAIL  <detail>".
// Run everything, or a single one with --criterion N.  Exit status is nonzero
// when any selected criterion fails.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "assembly.hpp"
#include "charsum.hpp"
#include "oracle.hpp"

using namespace lwcs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// collects failures, keeps the first few messages
struct Tally {
  long checks = 0, fails = 0;
  std::vector<std::string> first;
  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++fails;
    if (first.size() < 3) first.push_back(what);
  }
  std::string summary() const {
    std::ostringstream os;
    os << checks - fails << "/" << checks << " checks";
    for (const auto& s : first) os << "; " << s;
    return os.str();
  }
};

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

std::vector<uint32_t> odd_q(uint32_t lo, uint32_t hi) { return odd_prime_powers(lo, hi); }

std::vector<LocalChar> chars_upto_cond1(const LocalModel& M) {
  std::vector<LocalChar> out;
  for (cplx c : {cplx(1), cplx(-1), std::polar(1.0, 0.7), std::polar(1.0, 2.3)}) out.push_back(local_char(M, c, 0));
  for (uint64_t k = 1; k + 1 < M.q; ++k) out.push_back(local_char(M, std::polar(1.0, 0.3 * double(k)), k));
  return out;
}

// 1. Gauss and Jacobi sums
Outcome c1() {
  Tally t;
  double worst = 0;
  for (uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u, 49u}) {
    auto [p, f] = split_prime_power(q);
    auto F = make_field(p, f);
    const uint32_t n = q - 1;
    for (Elem a = 1; a < q; ++a) {
      std::vector<cplx> tau(n);
      for (uint32_t k = 0; k < n; ++k) tau[k] = gauss_sum(mult_char(*F, k), add_char(*F, a));
      t.check(std::abs(tau[0] + 1.0) <= 1e-12, "tau(trivial) != -1 at q=" + std::to_string(q));
      for (uint32_t k = 1; k < n; ++k)
        t.check(std::abs(std::abs(tau[k]) / std::sqrt(double(q)) - 1) <= 1e-9, "|tau| at q=" + std::to_string(q));
      for (uint32_t k1 = 0; k1 < n; ++k1)
        for (uint32_t k2 = 0; k2 < n; ++k2) {
          if (k1 == 0 && k2 == 0) continue;
          // J does not depend on psi; computed once per pair
          static thread_local std::vector<cplx> J;
          if (a == 1 && k1 == 0 && k2 == 1) {
            J.assign(size_t(n) * n, 0);
            for (uint32_t x = 0; x < n; ++x)
              for (uint32_t y = 0; y < n; ++y) J[x * n + y] = jacobi_sum(mult_char(*F, x), mult_char(*F, y));
          }
          cplx rhs = tau[k1] * tau[k2] * std::conj(tau[(k1 + k2) % n]) / double(q);
          double d = std::abs(J[k1 * n + k2] - rhs);
          worst = std::max(worst, d / q);
          t.check(d <= 1e-9 * q, "Jacobi-Gauss at q=" + std::to_string(q));
        }
    }
    t.check(std::abs(jacobi_sum(mult_char(*F, 0), mult_char(*F, 0)) - double(q - 2)) <= 1e-9, "J(1,1) != q-2");
  }
  return {t.fails == 0, t.summary() + ", worst |J-rhs|/q " + fmt(worst)};
}

// 2. B(y) = -tau(chi) tau(eta) q^(-1/2) H(y)
Outcome c2() {
  Tally t;
  double worst = 0;
  for (uint32_t q : odd_q(3, 31)) {
    auto [p, f] = split_prime_power(q);
    auto Q = make_quad_ext(p, f);
    const Field& F = *Q->base;
    for (uint32_t chi = 1; chi + 1 < q; ++chi)
      for (uint32_t eta = 1; eta + 1 < q; ++eta) {
        Hyper22 H({&F, {0, 0}, {chi, eta}});
        const cplx g = gauss_sum(mult_char(F, chi)) * gauss_sum(mult_char(F, eta)) / std::sqrt(double(q));
        CharSumInstance in{Q.get(), chi, eta, 1};
        for (Elem y = 1; y < q; ++y) {
          double d = std::abs(B_sum(in, y) + g * H(y));
          worst = std::max(worst, d / std::sqrt(double(q)));
          t.check(d <= 1e-7 * std::sqrt(double(q)), "q=" + std::to_string(q));
        }
      }
  }
  return {t.fails == 0, t.summary() + ", worst/sqrt(q) " + fmt(worst)};
}

// 3. the three S evaluations agree
Outcome c3() {
  Tally t;
  double worst = 0;
  auto one = [&](const CharSumInstance& in, uint32_t q) {
    cplx d = S_eval(in, SMethod::Direct), a = S_eval(in, SMethod::ViaAB), b = S_eval(in, SMethod::ViaT);
    double e = std::max(std::abs(d - a), std::abs(d - b));
    worst = std::max(worst, e / q);
    t.check(e <= 1e-7 * q, "q=" + std::to_string(q) + " (" + std::to_string(in.chi) + "," + std::to_string(in.eta) +
                               "," + std::to_string(in.rho) + ")");
  };
  for (uint32_t q : odd_q(3, 13)) {
    auto [p, f] = split_prime_power(q);
    auto Q = make_quad_ext(p, f);
    for (uint32_t chi = 1; chi + 1 < q; ++chi)
      for (uint32_t eta = 1; eta + 1 < q; ++eta)
        for (uint32_t rho = 1; rho + 1 < q * q; ++rho) one({Q.get(), chi, eta, rho}, q);
  }
  std::mt19937 g(17);
  for (uint32_t q : odd_q(17, 31)) {
    auto [p, f] = split_prime_power(q);
    auto Q = make_quad_ext(p, f);
    std::uniform_int_distribution<uint32_t> ce(1, q - 2), r(1, q * q - 2);
    for (int i = 0; i < 1000; ++i) one({Q.get(), ce(g), ce(g), r(g)}, q);
  }
  return {t.fails == 0, t.summary() + ", worst/q " + fmt(worst)};
}

// 4. scan maxima
Outcome c4() {
  Tally t;
  std::ostringstream os;
  for (uint32_t q : odd_q(3, 31)) {
    auto r = scan_q(q, false);
    t.check(r.max_s_over_q <= 1000 && r.max_t_over_sqrtq <= 1000, "q=" + std::to_string(q));
    os << " " << q << ":" << fmt(r.max_s_over_q);
  }
  return {t.fails == 0, t.summary() + ", max|S|/q by q" + os.str()};
}

// 5. exceptional pairs
Outcome c5() {
  Tally t;
  for (uint32_t q : odd_q(3, 31)) {
    auto [p, f] = split_prime_power(q);
    auto F = make_field(p, f);
    for (uint32_t c = 1; c + 1 < q; ++c)
      for (uint32_t d = 1; d + 1 < q; ++d)
        t.check(!classify_exceptional({F.get(), {0, 0}, {c, d}}).any(), "q=" + std::to_string(q));
  }
  auto F5 = make_field(5, 1);
  t.check(classify_exceptional({F5.get(), {0, 2}, {1, 3}}).kummer.has_value(), "Kummer control missed");
  auto F7 = make_field(7, 1);
  t.check(classify_exceptional({F7.get(), {1, 3}, {2, 5}}).belyi.has_value(), "Belyi control missed");
  return {t.fails == 0, t.summary()};
}

// 6. |Kl| <= 2
Outcome c6() {
  Tally t;
  double worst = 0;
  for (uint32_t q = 2; q <= 49; ++q) {
    uint32_t p = 2;
    while (q % p) ++p;
    uint32_t f = 0, r = 1;
    while (r < q) r *= p, ++f;
    if (r != q) continue;
    auto F = make_field(p, f);
    for (Elem x = 1; x < q; ++x) {
      double a = std::abs(hyper_sum({F.get(), {0, 0}, {}}, x));
      worst = std::max(worst, a);
      t.check(a <= 2 + 1e-9, "q=" + std::to_string(q));
    }
  }
  return {t.fails == 0, t.summary() + ", max " + fmt(worst)};
}

// 7. closed forms against the oracle
Outcome c7() {
  Tally t, ns;
  const std::vector<cplx> ss = {0, 0.1, -0.1, cplx(0, 0.25)};
  double worst_tail = 0;
  for (uint32_t q : {3u, 5u, 7u}) {
    auto M = make_local_model(q, 1);
    std::vector<std::pair<TestCase, bool>> cases = {{{CaseKind::Case1}, false}};
    for (Elem x = 1; x < q; ++x) cases.push_back({{CaseKind::Case3, 1, 1, Conj::Symmetric, 0, x}, false});
    for (const auto& th : enumerate_chars(*M.Q, kTrivialOnBase | kRegular))
      cases.push_back({{CaseKind::Case2SC, 1, 1, Conj::Symmetric, uint32_t(th.k)}, false});
    cases.push_back({{CaseKind::Case2NS}, true});
    for (const auto& [c, trivial_only] : cases) {
      OracleM4 o(M, c, 8);
      auto chis = trivial_only ? std::vector<LocalChar>{local_char(M, 1.0, 0)} : chars_upto_cond1(M);
      for (const auto& chi : chis)
        for (cplx s : ss) {
          auto r = o.eval(chi, s);
          auto cl = m4_closed(M, c, chi, s);
          const double d = std::abs(r.value - cl.value_or(0.0));
          worst_tail = std::max(worst_tail, r.tail_bound * std::pow(double(q), 4.0));
          std::ostringstream w;
          w << case_name(c.kind) << " q=" << q << " s=" << s.real() << "+" << s.imag() << "i: |diff| " << fmt(d)
            << " > tail " << fmt(r.tail_bound);
          Tally& into = c.kind == CaseKind::Case2NS ? ns : t;
          into.check(d <= r.tail_bound, w.str());
          into.check(r.tail_bound <= 10 * std::pow(double(q), -4.0), "tail bound too large");
        }
    }
  }
  return {t.fails == 0 && ns.fails == 0, "case1/case2sc/case3 " + t.summary() + "; case2ns " + ns.summary() +
                                             "; max tail*q^4 " + fmt(worst_tail)};
}

// 8. structure of the subset decomposition
Outcome c8() {
  Tally z, eq, split, sum;
  for (uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
    auto M = make_local_model(q, 1);
    for (const auto& th : enumerate_chars(*M.Q, kTrivialOnBase | kRegular)) {
      DepthZero D(M, uint32_t(th.k));
      OracleM4 o(M, {CaseKind::Case2SC, 1, 1, Conj::Symmetric, uint32_t(th.k)}, q <= 7 ? 8 : 6);
      for (const auto& chi : chars_upto_cond1(M)) {
        const cplx s(0.05, 0.1);
        const std::string at = "q=" + std::to_string(q) + " theta=" + std::to_string(th.k);
        cplx m1 = D.term({1}, chi, s), m4 = D.term({4}, chi, s);
        z.check(std::abs(m1) <= 1e-9 && std::abs(m4) <= 1e-9, "|M4^{1}| = " + fmt(std::abs(m1)) + " at " + at);
        eq.check(std::abs(D.term({2}, chi, s) - D.term({3}, chi, s)) <= 1e-9, at);
        auto [e0, e1] = D.empty_split(chi);
        split.check(std::abs(D.term({}, chi, 0.0) - (e0 + e1)) <= 1e-9, at);
        auto r = o.eval(chi, s);
        sum.check(std::abs(D.total(chi, s) - r.value) <= r.tail_bound, at);
      }
    }
  }
  return {z.fails + eq.fails + split.fails + sum.fails == 0,
          "{1},{4} vanish: " + z.summary() + "; {2}={3}: " + eq.summary() + "; empty split: " + split.summary() +
              "; sum = oracle: " + sum.summary()};
}

// 9. dual weights at s = 0 (the centre)
Outcome c9() {
  Tally t;
  double w2 = 0, w3 = 0;
  for (uint32_t q : odd_q(3, 31)) {
    auto [p, f] = split_prime_power(q);
    auto M = make_local_model(p, f);
    const auto chis = chars_upto_cond1(M);
    for (const auto& th : enumerate_chars(*M.Q, kTrivialOnBase | kRegular)) {
      DepthZero D(M, uint32_t(th.k));
      for (const auto& chi : chis) {
        double a = std::abs(m4_closed(M, D, chi, 0.0).value_or(0.0));
        w2 = std::max(w2, a);
        t.check(a <= 50, "case2sc q=" + std::to_string(q));
      }
    }
    for (Elem x = 1; x < q; ++x)
      for (const auto& chi : chis) {
        double a = std::abs(m4_closed(M, {CaseKind::Case3, 1, 1, Conj::Symmetric, 0, x}, chi, 0.0).value_or(0.0));
        w3 = std::max(w3, a * std::sqrt(double(q)));
        t.check(a <= 50 / std::sqrt(double(q)), "case3 q=" + std::to_string(q));
      }
  }
  return {t.fails == 0, t.summary() + ", max case2sc " + fmt(w2) + ", max sqrt(q)*case3 " + fmt(w3)};
}

// 10. Gauss integral
Outcome c10() {
  Tally t;
  double worst = 0;
  for (uint32_t q : odd_q(3, 31)) {
    auto [p, f] = split_prime_power(q);
    auto M = make_local_model(p, f);
    const double r = 1 / std::sqrt(double(q));
    for (const auto& chi : chars_upto_cond1(M))
      for (Elem a = 1; a < q; ++a) {
        cplx g = gauss_integral(M, a, chi);
        worst = std::max(worst, std::abs(g) / r);
        t.check(std::abs(g) <= 20 * r, "bound at q=" + std::to_string(q));
        if (chi.cond == 0) {
          cplx want = -1.0 / double(q - 1) + chi.c * r / (1.0 - chi.c * r);
          t.check(std::abs(g - want) <= 1e-12, "exact value at q=" + std::to_string(q));
        }
      }
  }
  return {t.fails == 0, t.summary() + ", max sqrt(q)|I| " + fmt(worst)};
}

// Laurent coefficients lo..hi from samples on a circle; no series arithmetic
std::vector<cplx> sampled(const std::function<cplx(cplx)>& f, cplx s0, int lo, int hi) {
  const double r = 0.25;
  const int P = 64;
  std::vector<cplx> out;
  for (int n = lo; n <= hi; ++n) {
    cplx acc = 0;
    for (int j = 0; j < P; ++j) {
      double a = 2 * std::numbers::pi * j / P;
      acc += f(s0 + std::polar(r, a)) * std::polar(std::pow(r, -n), -n * a);
    }
    out.push_back(acc / double(P));
  }
  return out;
}

// 11. series toolkit
Outcome c11() {
  Tally t;
  for (double q : {2.0, 3.0, 5.0, 49.0}) {
    auto one = expr_const(q, 1.0);
    auto e = one / (one - expr_u(q));
    auto ro = residue_and_order(e, 0.0);
    t.check(ro.order == -1 && std::abs(ro.residue - 1 / std::log(q)) <= 1e-10, "residue at q=" + fmt(q));
  }
  std::mt19937 g(2024);
  std::uniform_int_distribution<int> r(1, 4), nf(0, 5), pick(0, 4);
  const uint32_t qs[] = {3, 5, 7, 9, 11};
  for (int it = 0; it < 200; ++it) {
    GlobalSpec s;
    s.r = r(g);
    s.arch.assign(size_t(s.r), ArchPlace{});
    int s1 = 0;
    for (int i = nf(g); i > 0; --i) {
      FinitePlace f;
      f.q = qs[pick(g)];
      std::tie(f.p, f.f) = split_prime_power(f.q);
      f.tc.xi_pi = pick(g) % 2 ? 1 : -1;
      ++s1;
      s.finite.push_back(f);
    }
    auto st = d3_status(s);
    t.check(st.order && *st.order == 3 * s.r - 5 + s1, "d3 order");
  }
  // every local weight at both poles, orders up to 3
  double worst = 0;
  for (uint32_t q : {3u, 5u, 7u, 9u, 25u}) {
    auto [p, f] = split_prime_power(q);
    auto M = make_local_model(p, f);
    for (CaseKind k : {CaseKind::Case1, CaseKind::Case2NS, CaseKind::Case2SC, CaseKind::Case3, CaseKind::Case4NS}) {
      TestCase c;
      c.kind = k;
      if (k == CaseKind::Case2SC) c.theta = uint32_t(enumerate_chars(*M.Q, kTrivialOnBase | kRegular)[0].k);
      auto e = wt4_local(M, c);
      for (cplx s0 : {cplx(0.5), cplx(-0.5), cplx(0.1, 0.2)}) {
        auto L = expand_at(e, s0, 3);
        auto ref = sampled([&](cplx s) { return e.eval(s); }, s0, L.min_order, 3);
        for (int n = L.min_order; n <= 3; ++n) {
          double d = std::abs(L.coeff(n) - ref[size_t(n - L.min_order)]) / std::max(1.0, std::abs(ref[size_t(n - L.min_order)]));
          worst = std::max(worst, d);
          t.check(d <= 1e-8, std::string(case_name(k)) + " q=" + std::to_string(q) + " n=" + std::to_string(n));
        }
      }
    }
  }
  return {t.fails == 0, t.summary() + ", worst relative Laurent error " + fmt(worst)};
}

// 12. ledger magnitudes against the exponent table, constant 10
Outcome c12() {
  Tally t;
  double worst = 0;
  for (uint32_t q : odd_q(3, 31)) {
    auto [p, f] = split_prime_power(q);
    auto M = make_local_model(p, f);
    for (CaseKind k : {CaseKind::Case1, CaseKind::Case2NS, CaseKind::Case2SC, CaseKind::Case3, CaseKind::Case4NS}) {
      const auto [e1, e0] = k == CaseKind::Case1   ? std::pair{1.0, 0.0}
                            : k == CaseKind::Case3 ? std::pair{2.0 / 3, -1.0 / 3}
                                                   : std::pair{0.5, 0.5};
      std::vector<uint32_t> thetas{0};
      if (k == CaseKind::Case2SC) {
        thetas.clear();
        for (const auto& ch : enumerate_chars(*M.Q, kTrivialOnBase | kRegular)) thetas.push_back(uint32_t(ch.k));
      }
      for (uint32_t th : thetas) {
        GlobalSpec s;
        s.r = 0;
        FinitePlace fp;
        fp.q = q;
        fp.p = p;
        fp.f = f;
        fp.tc.kind = k;
        fp.tc.theta = th;
        s.finite.push_back(fp);
        auto d = d4_toy(s, {}, zeta_eval, 2);
        const auto& pl = d.places.at(0);
        for (int n = -2; n <= 2; ++n) {
          double r1 = std::abs(pl.w1.at(n)) / (10 * std::pow(pl.C, e1));
          double r0 = std::abs(pl.w0.at(n)) / (10 * std::pow(pl.C, e0));
          worst = std::max({worst, r1, r0});
          const std::string at = std::string(case_name(k)) + " q=" + std::to_string(q) + " n=" + std::to_string(n);
          t.check(r1 <= 1, "w(1) " + at + " ratio " + fmt(r1));
          t.check(r0 <= 1, "w(0) " + at + " ratio " + fmt(r0));
        }
      }
    }
  }
  return {t.fails == 0, t.summary() + ", worst |w|/(10 C^e) " + fmt(worst)};
}

// 13. byte-identical CLI artifacts across two runs
std::string capture(const std::string& cmd, int& rc) {
  FILE* f = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!f) {
    rc = -1;
    return "";
  }
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int st = pclose(f);
  rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

Outcome c13() {
  const std::string cli = LWCS_CLI_PATH;
  const std::vector<std::string> runs = {
      "gauss --p 7 --f 2",
      "hyper --p 5 --f 2 --chi 0,0 --eta 3,7",
      "charsum-scan --qmin 3 --qmax 31 --out csv --jobs 4",
      "charsum-scan --qmin 3 --qmax 31 --out json --rho-restricted --jobs 4",
      "local --case case2sc --q 5 --s 0.1,0.05 --chi-unram 0,1 --oracle 8",
      "local --case case3 --q 7 --t 3 --chi-ram 2 --s 0,0.25 --oracle 6",
      "local --case case2ns --q 3 --oracle 6",
      R"(conductors --spec '{"r":2,"finite":[{"q":7,"case":"case3"},{"q":5,"case":"case2sc"}]}')",
      R"(degenerate --spec '{"r":1,"arch":[{"T":2,"Delta":1.5}],"finite":[{"q":3,"case":"case1"},{"q":9,"case":"case4ns"}]}' --arch-stub unit)",
  };
  Tally t;
  size_t bytes = 0;
  for (const auto& r : runs) {
    int rc1 = 0, rc2 = 0;
    std::string a = capture(cli + " " + r, rc1), b = capture(cli + " " + r, rc2);
    bytes += a.size();
    t.check(!a.empty() && a == b && rc1 == rc2, "differs: " + r.substr(0, r.find(' ')));
  }
  return {t.fails == 0, t.summary() + ", " + std::to_string(bytes) + " bytes per run"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria 1-13"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 13));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> all = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13};
  int failed = 0;
  for (int i = 1; i <= 13; ++i) {
    if (only && i != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[size_t(i - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  [" << fmt(sec)
              << " s]" << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
