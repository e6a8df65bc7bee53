// Command-line front end.  Talks to the library only through lwcs.h.
#include <lwcs/lwcs.h>

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

using nlohmann::json;
using cplx = std::complex<double>;

namespace {

// exit codes
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLibrary = 3;

struct LibError : std::runtime_error {
  int status;
  LibError(int s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(int st) {
  if (st != LWCS_OK) throw LibError(st, std::string(lwcs_status_name(st)) + ": " + lwcs_last_error());
}

cplx C(lwcs_complex z) { return {z.re, z.im}; }
lwcs_complex L(cplx z) { return {z.real(), z.imag()}; }

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json jc(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw CLI::ValidationError("empty list entry in '" + s + "'");
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw CLI::ValidationError("bad number '" + tok + "'");
    out.push_back(T(v));
  }
  return out;
}

cplx parse_cplx(const std::string& s) {
  auto v = parse_list<double>(s);
  if (v.size() == 1) return v[0];
  if (v.size() != 2) throw CLI::ValidationError("expected re,im but got '" + s + "'");
  return {v[0], v[1]};
}

struct Handle {
  lwcs_field* F = nullptr;
  ~Handle() { lwcs_field_free(F); }
};

struct Report {
  json spec;
  json results = json::array();
  json violations = json::array();

  void emit_json(std::ostream& os) const {
    json j{{"spec", spec}, {"results", results}, {"violations", violations}, {"version", lwcs_version()}};
    os << j.dump(2) << "\n";
  }
  // CSV carries the same echo as a leading comment line
  void csv_header(std::ostream& os) const {
    os << "# lwcs " << lwcs_version() << " " << spec.dump() << "\n";
  }
  int code() const { return violations.empty() ? 0 : kExitViolation; }
};

void print_violations_csv(const Report& r) {
  for (const auto& v : r.violations) std::cerr << "violation: " << v.dump() << "\n";
}

// ---- gauss ----

int run_gauss(uint32_t p, uint32_t f) {
  Handle h;
  check(lwcs_field_new(p, f, &h.F));
  uint32_t q = 0;
  check(lwcs_field_q(h.F, &q));
  Report r;
  r.spec = {{"cmd", "gauss"}, {"p", p}, {"f", f}};
  r.csv_header(std::cout);
  std::cout << "k,re_tau,im_tau,abs_tau\n";
  for (uint32_t k = 0; k + 1 < q; ++k) {
    lwcs_complex t;
    check(lwcs_gauss_sum(h.F, k, 1, &t));
    cplx z = C(t);
    std::cout << k << "," << g17(z.real()) << "," << g17(z.imag()) << "," << g17(std::abs(z)) << "\n";
    if (k == 0 ? std::abs(z + 1.0) > 1e-12 : std::abs(std::abs(z) / std::sqrt(double(q)) - 1) > 1e-9)
      r.violations.push_back({{"k", k}, {"abs_tau", std::abs(z)}});
  }
  print_violations_csv(r);
  return r.code();
}

// ---- hyper ----

int run_hyper(uint32_t p, uint32_t f, const std::string& chi_s, const std::string& eta_s, const std::string& t_s) {
  Handle h;
  check(lwcs_field_new(p, f, &h.F));
  uint32_t q = 0;
  check(lwcs_field_q(h.F, &q));
  auto chi = chi_s.empty() ? std::vector<uint32_t>{} : parse_list<uint32_t>(chi_s);
  auto eta = eta_s.empty() ? std::vector<uint32_t>{} : parse_list<uint32_t>(eta_s);
  std::vector<uint32_t> ts;
  if (t_s == "all") {
    for (uint32_t t = 1; t < q; ++t) ts.push_back(t);
  } else {
    ts = parse_list<uint32_t>(t_s);
  }
  Report r;
  r.spec = {{"cmd", "hyper"}, {"p", p}, {"f", f}, {"chi", chi}, {"eta", eta}, {"t", t_s}};
  r.csv_header(std::cout);
  std::cout << "t,re_H,im_H,abs_H\n";
  const double rank = double(std::max(chi.size(), eta.size()));
  int kummer = 0, belyi = 0, ibelyi = 0;
  check(lwcs_hyper_exceptional(h.F, chi.data(), chi.size(), eta.data(), eta.size(), &kummer, &belyi, &ibelyi));
  // the purity bound is only asserted for disjoint, non-exceptional tuples away from t = 1
  bool disjoint = true;
  for (uint32_t a : chi)
    for (uint32_t b : eta) disjoint = disjoint && (a % (q - 1)) != (b % (q - 1));
  for (uint32_t t : ts) {
    lwcs_complex z;
    check(lwcs_hyper_sum(h.F, chi.data(), chi.size(), eta.data(), eta.size(), t, &z));
    cplx H = C(z);
    std::cout << t << "," << g17(H.real()) << "," << g17(H.imag()) << "," << g17(std::abs(H)) << "\n";
    bool lisse = !(chi.size() == eta.size() && t == 1);
    if (disjoint && !kummer && !belyi && !ibelyi && lisse && std::abs(H) > rank * (1 + 1e-9))
      r.violations.push_back({{"t", t}, {"abs_H", std::abs(H)}});
  }
  print_violations_csv(r);
  return r.code();
}

// ---- charsum-scan ----

std::vector<uint32_t> odd_prime_powers(uint32_t lo, uint32_t hi) {
  std::vector<uint32_t> out;
  for (uint32_t q = std::max(lo, 3u); q <= hi; ++q) {
    if (q % 2 == 0) continue;
    uint32_t p = 3;
    while (q % p) p += 2;
    uint32_t r = q;
    while (r % p == 0) r /= p;
    if (r == 1) out.push_back(q);
  }
  return out;
}

int run_scan(uint32_t qmin, uint32_t qmax, bool restricted, const std::string& fmt, unsigned jobs) {
  auto qs = odd_prime_powers(qmin, qmax);
  std::vector<lwcs_scan_row> rows(qs.size());
  std::vector<int> status(qs.size(), LWCS_OK);
  std::vector<std::string> msg(qs.size());
  // largest q first so the long jobs start early; results land by index
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < qs.size();) {
      size_t j = qs.size() - 1 - i;
      status[j] = lwcs_charsum_scan_q(qs[j], restricted, &rows[j]);
      if (status[j] != LWCS_OK) msg[j] = lwcs_last_error();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (size_t j = 0; j < qs.size(); ++j)
    if (status[j] != LWCS_OK) throw LibError(status[j], std::string(lwcs_status_name(status[j])) + ": " + msg[j]);

  Report r;
  r.spec = {{"cmd", "charsum-scan"}, {"qmin", qmin}, {"qmax", qmax}, {"rho_restricted", restricted}};
  for (const auto& w : rows) {
    r.results.push_back({{"q", w.q},
                         {"chi_k", w.chi_k},
                         {"eta_k", w.eta_k},
                         {"rho_k", w.rho_k},
                         {"re_S", w.s_at_max.re},
                         {"im_S", w.s_at_max.im},
                         {"abs_S_over_q", w.max_s_over_q},
                         {"max_T_over_sqrtq", w.max_t_over_sqrtq},
                         {"triples", w.triples},
                         {"review", bool(w.review)},
                         {"small_char", bool(w.small_char)}});
    if (w.max_s_over_q > 1000 || w.max_t_over_sqrtq > 1000)
      r.violations.push_back({{"q", w.q}, {"abs_S_over_q", w.max_s_over_q}, {"max_T_over_sqrtq", w.max_t_over_sqrtq}});
  }
  if (fmt == "json") {
    r.emit_json(std::cout);
  } else {
    r.csv_header(std::cout);
    std::cout << "q,chi_k,eta_k,rho_k,re_S,im_S,abs_S_over_q,max_T_over_sqrtq,triples,review,small_char\n";
    for (const auto& w : rows)
      std::cout << w.q << "," << w.chi_k << "," << w.eta_k << "," << w.rho_k << "," << g17(w.s_at_max.re) << ","
                << g17(w.s_at_max.im) << "," << g17(w.max_s_over_q) << "," << g17(w.max_t_over_sqrtq) << ","
                << w.triples << "," << w.review << "," << w.small_char << "\n";
    print_violations_csv(r);
  }
  return r.code();
}

// ---- local ----

struct LocalArgs {
  std::string kind;
  uint32_t q = 0, theta = 0, t = 0, chi_ram = 0;
  int xi_pi = 0, n = 0;
  std::string conj = "symmetric";
  std::string chi_unram = "1,0", s = "0,0";
  int oracle = 0;
};

int run_local(const LocalArgs& a) {
  lwcs_case_params prm{a.xi_pi, a.n, a.conj == "second", a.theta, a.t};
  lwcs_local* Lh = nullptr;
  check(lwcs_local_new(a.q, a.kind.c_str(), &prm, &Lh));
  std::unique_ptr<lwcs_local, void (*)(lwcs_local*)> guard(Lh, lwcs_local_free);
  const cplx pi = parse_cplx(a.chi_unram), s = parse_cplx(a.s);

  Report r;
  r.spec = {{"cmd", "local"}, {"case", a.kind}, {"q", a.q},       {"chi_unram", jc(pi)},
            {"chi_ram", a.chi_ram}, {"s", jc(s)}, {"oracle_N", a.oracle}};
  if (a.kind == "case2sc") {
    uint32_t th = 0;
    check(lwcs_local_theta(Lh, &th));
    r.spec["theta"] = th;
  }
  if (a.kind == "case3") r.spec["t"] = a.t ? a.t : 1;
  if (a.kind == "case1" || a.kind == "case2ns") r.spec["xi_pi"] = a.xi_pi ? a.xi_pi : 1;
  if (a.kind == "case2ns") {
    r.spec["n"] = a.n ? a.n : 1;
    r.spec["conj"] = a.conj;
  }

  json res;
  lwcs_complex v;
  int vanishes = 0;
  int st = lwcs_local_closed(Lh, L(pi), a.chi_ram, L(s), &v, &vanishes);
  if (st == LWCS_OK) {
    res["closed"] = jc(C(v));
    res["vanishes"] = bool(vanishes);
  } else {
    // the oracle may still apply, so record the reason and go on
    res["closed"] = nullptr;
    res["closed_error"] = std::string(lwcs_status_name(st)) + ": " + lwcs_last_error();
  }
  if (a.oracle > 0) {
    lwcs_complex o;
    double tail = 0;
    check(lwcs_local_oracle(Lh, a.oracle, L(pi), a.chi_ram, L(s), &o, &tail));
    res["oracle"] = jc(C(o));
    res["tail_bound"] = tail;
    if (st == LWCS_OK) {
      double diff = std::abs(C(o) - C(v));
      res["abs_diff"] = diff;
      if (diff > tail) r.violations.push_back({{"check", "oracle_vs_closed"}, {"abs_diff", diff}, {"tail_bound", tail}});
    }
  } else {
    res["oracle"] = nullptr;
    res["tail_bound"] = nullptr;
  }
  json comp = json::object();
  if (a.kind == "case2sc") {
    std::vector<lwcs_complex> out(lwcs_subset_count());
    check(lwcs_local_components(Lh, L(pi), a.chi_ram, L(s), out.data()));
    for (size_t i = 0; i < out.size(); ++i) comp[lwcs_subset_name(i)] = jc(C(out[i]));
  }
  res["components"] = comp;
  r.results.push_back(res);
  r.emit_json(std::cout);
  return r.code();
}

// ---- spec-driven commands ----

struct Spec {
  lwcs_spec* S = nullptr;
  ~Spec() { lwcs_spec_free(S); }
};

std::string read_spec_arg(const std::string& s) {
  if (s.empty() || s[0] != '@') return s;
  std::ifstream in(s.substr(1));
  if (!in) throw CLI::ValidationError("cannot read spec file " + s.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json spec_echo(const Spec& sp) {
  char* t = nullptr;
  check(lwcs_spec_json(sp.S, &t));
  json j = json::parse(t);
  lwcs_string_free(t);
  return j;
}

int run_conductors(const std::string& text) {
  Spec sp;
  check(lwcs_spec_parse(read_spec_arg(text).c_str(), &sp.S));
  double c[5], lb = 0;
  check(lwcs_conductors(sp.S, c, &lb));
  Report r;
  r.spec = spec_echo(sp);
  r.results.push_back(
      {{"C", c[0]}, {"C_1", c[1]}, {"C_2", c[2]}, {"C_3", c[3]}, {"C_4", c[4]}, {"log_bound", lb}});
  r.emit_json(std::cout);
  return r.code();
}

int run_degenerate(const std::string& text, const std::string& stub, int nmax) {
  Spec sp;
  check(lwcs_spec_parse(read_spec_arg(text).c_str(), &sp.S));
  Report r;
  r.spec = spec_echo(sp);
  r.spec["arch_stub"] = stub.empty() ? json(nullptr) : json(stub);

  int vanishes = 0, has_order = 0, order = 0;
  char* reason = nullptr;
  check(lwcs_d3_status(sp.S, &vanishes, &has_order, &order, &reason));
  json d3{{"vanishes", bool(vanishes)}, {"reason", reason}};
  lwcs_string_free(reason);
  d3["order"] = has_order ? json(order) : json(nullptr);
  int avail = 0;
  lwcs_complex v;
  check(lwcs_d3_value(sp.S, &avail, &v));
  if (avail) {
    d3["value"] = jc(C(v));
    // only finiteness is asserted for the value
    if (!std::isfinite(v.re) || !std::isfinite(v.im)) r.violations.push_back({{"check", "d3_value_finite"}});
  } else {
    d3["value"] = nullptr;
  }

  char* ledger = nullptr;
  check(lwcs_d4_ledger_json(sp.S, stub == "unit", nmax, &ledger));
  json d4 = json::parse(ledger);
  lwcs_string_free(ledger);
  r.results.push_back({{"d3", d3}, {"d4", d4}});
  r.emit_json(std::cout);
  return r.code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lwcs: character sums, local weights and degenerate-term bookkeeping"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lwcs_version()));

  uint32_t p = 0, f = 1;
  auto* gauss = app.add_subcommand("gauss", "Gauss sums tau(chi_k, psi) for every k");
  gauss->add_option("--p", p, "characteristic")->required();
  gauss->add_option("--f", f, "degree");

  std::string chi_s, eta_s, t_s = "all";
  auto* hyper = app.add_subcommand("hyper", "normalized hypergeometric sums");
  hyper->add_option("--p", p)->required();
  hyper->add_option("--f", f);
  hyper->add_option("--chi", chi_s, "comma-separated exponents");
  hyper->add_option("--eta", eta_s, "comma-separated exponents");
  hyper->add_option("--t", t_s, "'all' or comma-separated field elements");

  uint32_t qmin = 3, qmax = 31;
  bool restricted = false;
  std::string fmt = "csv";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* scan = app.add_subcommand("charsum-scan", "maximum of |S|/q over all triples, per q");
  scan->add_option("--qmin", qmin);
  scan->add_option("--qmax", qmax);
  scan->add_flag("--rho-restricted", restricted, "only rho trivial on F_q^x and regular");
  scan->add_option("--out", fmt)->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--jobs", jobs, "worker threads");

  LocalArgs la;
  auto* local = app.add_subcommand("local", "local weight, closed form and optional oracle");
  local->add_option("--case", la.kind)
      ->required()
      ->check(CLI::IsMember({"case1", "case2ns", "case2sc", "case3", "case4ns"}));
  local->add_option("--q", la.q)->required();
  local->add_option("--theta", la.theta, "case2sc character exponent");
  local->add_option("--t", la.t, "case3 parameter");
  local->add_option("--xi-pi", la.xi_pi, "+1 or -1");
  local->add_option("--n", la.n, "case2ns level");
  local->add_option("--conj", la.conj)->check(CLI::IsMember({"symmetric", "second"}));
  local->add_option("--chi-unram", la.chi_unram, "chi(varpi) as re,im");
  local->add_option("--chi-ram", la.chi_ram, "exponent of chi on units");
  local->add_option("--s", la.s, "centered s as re,im");
  local->add_option("--oracle", la.oracle, "oracle depth N");

  std::string spec_text, stub;
  int nmax = 2;
  auto* degen = app.add_subcommand("degenerate", "D3 status and value, D4 ledger");
  degen->add_option("--spec", spec_text, "JSON text or @file")->required();
  degen->add_option("--arch-stub", stub)->check(CLI::IsMember({"unit"}));
  degen->add_option("--nmax", nmax, "largest Laurent order in the ledger");

  auto* cond = app.add_subcommand("conductors", "conductor aggregation");
  cond->add_option("--spec", spec_text, "JSON text or @file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gauss) return run_gauss(p, f);
    if (*hyper) return run_hyper(p, f, chi_s, eta_s, t_s);
    if (*scan) return run_scan(qmin, qmax, restricted, fmt, jobs);
    if (*local) return run_local(la);
    if (*degen) return run_degenerate(spec_text, stub, nmax);
    if (*cond) return run_conductors(spec_text);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LibError& e) {
    std::cerr << e.what() << "\n";
    return e.status == LWCS_USAGE_ERROR || e.status == LWCS_INVALID_ARGUMENT ? kExitUsage : kExitLibrary;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
