#include <lwcs/lwcs.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "assembly.hpp"
#include "charsum.hpp"
#include "oracle.hpp"

#ifndef LWCS_VERSION
#define LWCS_VERSION "unknown"
#endif

using namespace lwcs;
using nlohmann::json;

struct lwcs_field {
  FieldPtr F;
};

struct lwcs_local {
  LocalModel M;
  TestCase tc;
};

struct lwcs_spec {
  GlobalSpec s;
};

namespace {

thread_local std::string g_last;

template <class Fn>
int guard(Fn&& fn) {
  try {
    fn();
    g_last.clear();
    return LWCS_OK;
  } catch (const Error& e) {
    g_last = e.what();
    return int(e.code());
  } catch (const std::exception& e) {
    g_last = e.what();
    return LWCS_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(Err::InvalidArgument, std::string("null ") + what);
}

lwcs_complex to_c(cplx z) { return {z.real(), z.imag()}; }
cplx from_c(lwcs_complex z) { return {z.re, z.im}; }

char* dup(const std::string& s) {
  char* r = static_cast<char*>(std::malloc(s.size() + 1));
  if (!r) fail(Err::InvalidArgument, "out of memory");
  std::memcpy(r, s.c_str(), s.size() + 1);
  return r;
}

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

HyperSpec hspec(const lwcs_field* F, const uint32_t* chi, size_t m, const uint32_t* eta, size_t n) {
  need(F, "field");
  if ((m && !chi) || (n && !eta)) fail(Err::InvalidArgument, "null character list");
  return {F->F.get(), std::vector<uint32_t>(chi, chi + m), std::vector<uint32_t>(eta, eta + n)};
}

LocalChar lchar(const lwcs_local* L, lwcs_complex pi, uint32_t k) { return local_char(L->M, from_c(pi), k); }

}  // namespace

extern "C" {

const char* lwcs_version(void) { return LWCS_VERSION; }

const char* lwcs_status_name(int status) {
  if (status == LWCS_INTERNAL) return "Internal";
  return err_name(Err(status));
}

const char* lwcs_last_error(void) { return g_last.c_str(); }

void lwcs_string_free(char* s) { std::free(s); }

int lwcs_field_new(uint32_t p, uint32_t f, lwcs_field** out) {
  return guard([&] {
    need(out, "out");
    *out = new lwcs_field{make_field(p, f)};
  });
}

void lwcs_field_free(lwcs_field* F) { delete F; }

int lwcs_field_q(const lwcs_field* F, uint32_t* q) {
  return guard([&] {
    need(F, "field");
    need(q, "out");
    *q = F->F->q;
  });
}

int lwcs_gauss_sum(const lwcs_field* F, uint32_t k, uint32_t a, lwcs_complex* out) {
  return guard([&] {
    need(F, "field");
    need(out, "out");
    if (a >= F->F->q) fail(Err::InvalidArgument, "psi parameter is not a field element");
    *out = to_c(gauss_sum(mult_char(*F->F, k), add_char(*F->F, a)));
  });
}

int lwcs_jacobi_sum(const lwcs_field* F, uint32_t a, uint32_t b, lwcs_complex* out) {
  return guard([&] {
    need(F, "field");
    need(out, "out");
    *out = to_c(jacobi_sum(mult_char(*F->F, a), mult_char(*F->F, b)));
  });
}

int lwcs_hyper_sum(const lwcs_field* F, const uint32_t* chi, size_t m, const uint32_t* eta, size_t n, uint32_t t,
                   lwcs_complex* out) {
  return guard([&] {
    need(out, "out");
    HyperSpec h = hspec(F, chi, m, eta, n);
    if (t >= F->F->q) fail(Err::InvalidArgument, "t is not a field element");
    *out = to_c(m == 2 && n == 2 ? hyper_sum_fast_22(h, t) : hyper_sum(h, t));
  });
}

int lwcs_hyper_exceptional(const lwcs_field* F, const uint32_t* chi, size_t m, const uint32_t* eta, size_t n,
                           int* kummer, int* belyi, int* inverse_belyi) {
  return guard([&] {
    auto e = classify_exceptional(hspec(F, chi, m, eta, n));
    if (kummer) *kummer = e.kummer.has_value();
    if (belyi) *belyi = e.belyi.has_value();
    if (inverse_belyi) *inverse_belyi = e.inverse_belyi.has_value();
  });
}

int lwcs_charsum_scan_q(uint32_t q, int rho_restricted, lwcs_scan_row* out) {
  return guard([&] {
    need(out, "out");
    split_prime_power(q);
    ScanRow r = scan_q(q, rho_restricted != 0);
    *out = {r.q, r.triples, r.max_s_over_q, r.max_t_over_sqrtq, r.chi_k, r.eta_k, r.rho_k, to_c(r.s_at_max),
            r.review, r.small_char};
  });
}

int lwcs_charsum_S(uint32_t p, uint32_t f, uint32_t chi, uint32_t eta, uint32_t rho, int method, lwcs_complex* out) {
  return guard([&] {
    need(out, "out");
    if (method < 0 || method > 2) fail(Err::InvalidArgument, "method must be 0, 1 or 2");
    auto Q = make_quad_ext(p, f);
    *out = to_c(S_eval({Q.get(), chi, eta, rho}, SMethod(method)));
  });
}

int lwcs_local_new(uint32_t q, const char* kind, const lwcs_case_params* params, lwcs_local** out) {
  return guard([&] {
    need(out, "out");
    need(kind, "case");
    auto [p, f] = split_prime_power(q);
    auto L = std::make_unique<lwcs_local>();
    L->M = make_local_model(p, f);
    L->tc.kind = parse_case(kind);
    lwcs_case_params d{};
    if (params) d = *params;
    L->tc.xi_pi = d.xi_pi ? d.xi_pi : 1;
    L->tc.n = d.n ? d.n : 1;
    L->tc.conj = d.conj ? Conj::SecondDisplay : Conj::Symmetric;
    L->tc.t = d.t ? d.t : 1;
    L->tc.theta = d.theta;
    if (L->tc.kind == CaseKind::Case2SC && d.theta == 0)
      L->tc.theta = uint32_t(enumerate_chars(*L->M.Q, kTrivialOnBase | kRegular).at(0).k);
    validate(L->M, L->tc);
    *out = L.release();
  });
}

void lwcs_local_free(lwcs_local* L) { delete L; }

int lwcs_local_theta(const lwcs_local* L, uint32_t* theta) {
  return guard([&] {
    need(L, "local");
    need(theta, "out");
    *theta = L->tc.theta;
  });
}

int lwcs_local_closed(const lwcs_local* L, lwcs_complex chi_pi, uint32_t k, lwcs_complex s, lwcs_complex* out,
                      int* vanishes) {
  return guard([&] {
    need(L, "local");
    need(out, "out");
    auto v = m4_closed(L->M, L->tc, lchar(L, chi_pi, k), from_c(s));
    *out = to_c(v.value_or(0.0));
    if (vanishes) *vanishes = !v.has_value();
  });
}

int lwcs_local_oracle(const lwcs_local* L, int N, lwcs_complex chi_pi, uint32_t k, lwcs_complex s,
                      lwcs_complex* value, double* tail_bound) {
  return guard([&] {
    need(L, "local");
    need(value, "out");
    OracleM4 O(L->M, L->tc, N);
    auto r = O.eval(lchar(L, chi_pi, k), from_c(s));
    *value = to_c(r.value);
    if (tail_bound) *tail_bound = r.tail_bound;
  });
}

size_t lwcs_subset_count(void) { return admissible_subsets().size(); }

const char* lwcs_subset_name(size_t i) {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& I : admissible_subsets()) v.push_back(subset_name(I));
    return v;
  }();
  return i < names.size() ? names[i].c_str() : nullptr;
}

int lwcs_local_components(const lwcs_local* L, lwcs_complex chi_pi, uint32_t k, lwcs_complex s, lwcs_complex* out) {
  return guard([&] {
    need(L, "local");
    need(out, "out");
    if (L->tc.kind != CaseKind::Case2SC) fail(Err::UnsupportedCase, "components exist for case2sc only");
    DepthZero D(L->M, L->tc.theta);
    const auto& subs = admissible_subsets();
    for (size_t i = 0; i < subs.size(); ++i) out[i] = to_c(D.term(subs[i], lchar(L, chi_pi, k), from_c(s)));
  });
}

int lwcs_spec_parse(const char* text, lwcs_spec** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = new lwcs_spec{parse_spec(text)};
  });
}

void lwcs_spec_free(lwcs_spec* S) { delete S; }

int lwcs_spec_json(const lwcs_spec* S, char** out) {
  return guard([&] {
    need(S, "spec");
    need(out, "out");
    *out = dup(spec_to_json(S->s));
  });
}

int lwcs_conductors(const lwcs_spec* S, double C[5], double* log_bound) {
  return guard([&] {
    need(S, "spec");
    need(C, "out");
    auto c = conductors(S->s);
    C[0] = c.total;
    for (int j = 1; j <= 4; ++j) C[j] = c.C.at(j);
    if (log_bound) *log_bound = c.log_bound();
  });
}

int lwcs_d3_status(const lwcs_spec* S, int* vanishes, int* has_order, int* order, char** reason) {
  return guard([&] {
    need(S, "spec");
    auto st = d3_status(S->s);
    if (vanishes) *vanishes = st.vanishes;
    if (has_order) *has_order = st.order.has_value();
    if (order && st.order) *order = *st.order;
    if (reason) *reason = dup(st.reason);
  });
}

int lwcs_d3_value(const lwcs_spec* S, int* available, lwcs_complex* out) {
  return guard([&] {
    need(S, "spec");
    need(out, "out");
    auto v = d3_value(S->s);
    if (available) *available = v.has_value();
    *out = to_c(v.value_or(0.0));
  });
}

int lwcs_d4_ledger_json(const lwcs_spec* S, int unit_stubs, int nmax, char** out) {
  return guard([&] {
    need(S, "spec");
    need(out, "out");
    if (nmax < -2) fail(Err::InvalidArgument, "nmax must be at least -2");
    std::vector<ArchStub> stubs;
    if (unit_stubs) stubs.assign(size_t(S->s.r), unit_arch_stub());
    auto d = d4_toy(S->s, stubs, zeta_eval, nmax);
    json places = json::array();
    for (const auto& p : d.places) {
      json w1 = json::object(), w0 = json::object();
      for (const auto& [n, v] : p.w1) w1[std::to_string(n)] = cjson(v);
      for (const auto& [n, v] : p.w0) w0[std::to_string(n)] = cjson(v);
      json e{{"label", p.label}, {"w1", w1}, {"w0", w0}};
      if (p.q) {
        e["q"] = p.q;
        e["C"] = p.C;
      }
      places.push_back(e);
    }
    json r{{"places", places}};
    r["res1"] = d.res1 ? cjson(*d.res1) : json(nullptr);
    r["res0"] = d.res0 ? cjson(*d.res0) : json(nullptr);
    *out = dup(r.dump());
  });
}

int lwcs_arch_m3(double tau, double T, double Delta, int eps_v, int eps, double* out) {
  return guard([&] {
    need(out, "out");
    if (T < 0 || !(Delta > 0)) fail(Err::InvalidArgument, "need T >= 0 and Delta > 0");
    *out = arch_m3(tau, ArchPlace{T, Delta, eps_v}, eps);
  });
}

}  // extern "C"
