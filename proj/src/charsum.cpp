#include "charsum.hpp"

#include <cmath>

namespace lwcs {

namespace {

cplx chr(const Field& F, uint64_t k, Elem x) {
  if (x == 0) return 0.0;
  return F.mroot(k * F.dlog_unchecked(x));
}

// rho(alpha + omega) with alpha in the base
cplx rho_at(const QuadExt& Q, uint32_t rho, Elem alpha) {
  const Field& E = *Q.ext;
  return chr(E, rho, E.add(Q.embed(alpha), Q.omega));
}

}  // namespace

void validate(const CharSumInstance& in) {
  if (!in.Q) fail(Err::InvalidArgument, "instance without field");
  const uint32_t q = in.Q->base->q;
  if (in.chi % (q - 1) == 0 || in.eta % (q - 1) == 0)
    fail(Err::InvalidArgument, "chi and eta must be nontrivial");
  if (in.rho % (q * q - 1) == 0) fail(Err::InvalidArgument, "rho must be nontrivial");
}

cplx A_sum(const CharSumInstance& in, Elem y) {
  const QuadExt& Q = *in.Q;
  const Field& B = *Q.base;
  if (y == 0) return rho_at(Q, in.rho, 0);
  auto r = B.sqrt(y);
  if (!r) return 0.0;
  return rho_at(Q, in.rho, *r) + rho_at(Q, in.rho, B.neg(*r));
}

cplx B_sum(const CharSumInstance& in, Elem y) {
  const Field& F = *in.Q->base;
  const uint64_t ieta = (F.q - 1) - in.eta % (F.q - 1);
  cplx s = 0;
  // eta(1 - y/(1-t)) = eta(1-t-y) conj(eta)(1-t); t in {0,1} drop out
  for (Elem t = 0; t < F.q; ++t) {
    Elem omt = F.sub(1, t);
    s += chr(F, in.chi, t) * chr(F, in.eta, F.sub(omt, y)) * chr(F, ieta, omt);
  }
  return s;
}

namespace {

HyperSpec pair_spec(const Field& F, uint32_t chi, uint32_t eta) { return {&F, {0, 0}, {chi, eta}}; }

// 1 - alpha^2 / eps, never zero
Elem t_arg(const QuadExt& Q, Elem alpha) {
  const Field& F = *Q.base;
  return F.sub(1, F.div(F.mul(alpha, alpha), Q.eps));
}

cplx pair_factor(const QuadExt& Q, uint32_t chi, uint32_t eta) {
  const Field& F = *Q.base;
  cplx g = gauss_sum(mult_char(F, chi)) * gauss_sum(mult_char(F, eta));
  return -chr(F, eta, Q.eps) * g / std::sqrt(double(F.q));
}

}  // namespace

cplx T_sum(const CharSumInstance& in) {
  validate(in);
  const QuadExt& Q = *in.Q;
  Hyper22 H(pair_spec(*Q.base, in.chi, in.eta));
  cplx s = 0;
  for (Elem a = 0; a < Q.base->q; ++a) s += rho_at(Q, in.rho, a) * H(t_arg(Q, a));
  return s;
}

cplx S_eval(const CharSumInstance& in, SMethod m) {
  validate(in);
  const QuadExt& Q = *in.Q;
  const Field& F = *Q.base;
  const uint64_t ieta = (F.q - 1) - in.eta % (F.q - 1);
  switch (m) {
    case SMethod::Direct: {
      cplx s = 0;
      for (Elem a = 0; a < F.q; ++a) {
        Elem a2 = F.mul(a, a);
        cplx inner = 0;
        for (Elem t = 0; t < F.q; ++t)
          inner += chr(F, in.chi, t) * chr(F, in.eta, F.sub(a2, F.mul(Q.eps, t))) *
                   chr(F, ieta, F.sub(1, t));
        s += rho_at(Q, in.rho, a) * inner;
      }
      return s;
    }
    case SMethod::ViaAB: {
      cplx s = 0;
      const Elem ie = F.inv(Q.eps);
      for (Elem b = 0; b < F.q; ++b) {
        cplx a = A_sum(in, b);
        if (a == 0.0) continue;
        s += a * B_sum(in, F.sub(1, F.mul(b, ie)));
      }
      return chr(F, in.eta, Q.eps) * s;
    }
    case SMethod::ViaT:
      return pair_factor(Q, in.chi, in.eta) * T_sum(in);
  }
  fail(Err::InvalidArgument, "unknown method");
}

cplx S_theta(const QuadExt& Q, uint32_t theta, uint32_t chi) {
  const Field& F = *Q.base;
  const Field& E = *Q.ext;
  const uint64_t n2 = E.q - 1;
  theta %= n2;
  if (theta % (F.q - 1) != 0) fail(Err::NotTrivialOnBase, "theta not trivial on F_q^x");
  if ((uint64_t(theta) * (F.q - 1)) % n2 == 0) fail(Err::NotRegular, "theta fixed by Frobenius");
  const uint64_t phi = (F.q - 1) / 2;
  const uint64_t itheta = (n2 - theta) % n2;
  cplx s = 0;
  for (Elem a = 0; a < F.q; ++a) {
    cplx th = chr(E, itheta, E.add(Q.embed(a), Q.omega));
    Elem a2 = F.mul(a, a);
    cplx inner = 0;
    for (Elem t = 0; t < F.q; ++t)
      inner += chr(F, chi, t) * chr(F, phi, F.sub(a2, F.mul(Q.eps, t))) * chr(F, phi, F.sub(1, t));
    s += th * inner;
  }
  return s;
}

PairTables::PairTables(const QuadExt& Q, uint32_t chi, uint32_t eta) : Q_(Q) {
  const Field& F = *Q.base;
  const Field& E = *Q.ext;
  CharSumInstance in{&Q, chi, eta, 1};
  Hyper22 H(pair_spec(F, chi, eta));
  B_.resize(F.q);
  H_.resize(F.q);
  lw_.resize(F.q);
  for (Elem a = 0; a < F.q; ++a) {
    Elem y = t_arg(Q, a);
    B_[a] = B_sum(in, y);
    H_[a] = H(y);
    lw_[a] = E.dlog_unchecked(E.add(Q.embed(a), Q.omega));
  }
  eta_eps_ = chr(F, eta, Q.eps);
  s_over_t_ = pair_factor(Q, chi, eta);
}

cplx PairTables::S(uint32_t rho) const {
  const Field& E = *Q_.ext;
  cplx s = 0;
  for (size_t a = 0; a < B_.size(); ++a) s += E.mroot(uint64_t(rho) * lw_[a]) * B_[a];
  return eta_eps_ * s;
}

cplx PairTables::T(uint32_t rho) const {
  const Field& E = *Q_.ext;
  cplx s = 0;
  for (size_t a = 0; a < H_.size(); ++a) s += E.mroot(uint64_t(rho) * lw_[a]) * H_[a];
  return s;
}

std::vector<uint32_t> odd_prime_powers(uint32_t lo, uint32_t hi) {
  std::vector<uint32_t> out;
  for (uint32_t q = std::max(lo, 3u); q <= hi; ++q) {
    if (q % 2 == 0) continue;
    uint32_t p = 0;
    for (uint32_t d = 3; d <= q; d += 2)
      if (q % d == 0) {
        p = d;
        break;
      }
    uint32_t r = q;
    while (r % p == 0) r /= p;
    if (r == 1) out.push_back(q);
  }
  return out;
}

ScanRow scan_q(uint32_t q, bool rho_restricted) {
  uint32_t p = 0, f = 0;
  for (uint32_t d = 3; d <= q; d += 2)
    if (q % d == 0) {
      p = d;
      break;
    }
  for (uint32_t r = q; r > 1; r /= p) ++f;
  auto Q = make_quad_ext(p, f);
  std::vector<uint32_t> rhos;
  if (rho_restricted) {
    for (const auto& c : enumerate_chars(*Q, kTrivialOnBase | kRegular)) rhos.push_back(c.k);
  } else {
    for (uint32_t k = 1; k < q * q - 1; ++k) rhos.push_back(k);
  }
  ScanRow row;
  row.q = q;
  row.small_char = p <= 2;
  const double sq = std::sqrt(double(q));
  for (uint32_t chi = 1; chi < q - 1; ++chi)
    for (uint32_t eta = 1; eta < q - 1; ++eta) {
      PairTables T(*Q, chi, eta);
      for (uint32_t rho : rhos) {
        cplx s = T.S(rho);
        double a = std::abs(s) / q, b = std::abs(T.T(rho)) / sq;
        ++row.triples;
        if (a > row.max_s_over_q) {
          row.max_s_over_q = a;
          row.chi_k = chi;
          row.eta_k = eta;
          row.rho_k = rho;
          row.s_at_max = s;
        }
        row.max_t_over_sqrtq = std::max(row.max_t_over_sqrtq, b);
      }
    }
  row.review = row.max_s_over_q > 16;
  return row;
}

std::vector<ScanRow> scan(const ScanOptions& opt) {
  std::vector<ScanRow> out;
  for (uint32_t q : odd_prime_powers(opt.qmin, opt.qmax)) out.push_back(scan_q(q, opt.rho_restricted));
  return out;
}

}  // namespace lwcs
