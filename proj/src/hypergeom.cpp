#include "hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace lwcs {

namespace {

double hyper_norm(size_t m, size_t n, uint32_t q) {
  int e = int(m + n) - 1;
  return ((e & 1) ? -1.0 : 1.0) * std::pow(double(q), -0.5 * e);
}

void check_spec(const HyperSpec& h) {
  if (!h.F) fail(Err::InvalidArgument, "spec without field");
  if (h.chi.empty() && h.eta.empty()) fail(Err::ShapeMismatch, "m and n both zero");
}

}  // namespace

cplx hyper_sum(const HyperSpec& h, Elem t) {
  check_spec(h);
  if (t == 0) fail(Err::ZeroArgument, "hypergeometric sum at t = 0");
  const Field& F = *h.F;
  const uint64_t n1 = F.q - 1;
  const size_t m = h.chi.size(), n = h.eta.size();
  // variables by dlog; the last x (or the last y when m = 0) is determined
  const size_t nv = m + n;
  const size_t det = m ? m - 1 : nv - 1;
  std::vector<uint32_t> lg(nv, 0);
  const uint64_t lt = F.dlog(t);
  cplx s = 0;
  while (true) {
    // x_det = t * prod y / prod(other x), or y_det = prod x / (t prod other y)
    int64_t acc = m ? int64_t(lt) : -int64_t(lt);
    for (size_t i = 0; i < nv; ++i) {
      if (i == det) continue;
      bool is_x = i < m;
      acc += (is_x == (m > 0)) ? -int64_t(lg[i]) : int64_t(lg[i]);
    }
    acc %= int64_t(n1);
    if (acc < 0) acc += n1;
    lg[det] = uint32_t(acc);

    uint64_t ph = 0;
    uint32_t tr = 0;
    for (size_t i = 0; i < nv; ++i) {
      Elem x = F.exp(lg[i]);
      if (i < m) {
        ph += uint64_t(h.chi[i]) * lg[i];
        tr += F.abs_trace(x);
      } else {
        ph += (n1 - h.eta[i - m] % n1) * lg[i];
        tr += F.p - F.abs_trace(x);
      }
    }
    s += F.mroot(ph % n1) * F.aroot(tr % F.p);

    size_t i = 0;
    for (; i < nv; ++i) {
      if (i == det) continue;
      if (++lg[i] < n1) break;
      lg[i] = 0;
    }
    if (i == nv) break;
  }
  return s * hyper_norm(m, n, F.q);
}

Hyper22::Hyper22(const HyperSpec& h) : F_(h.F) {
  check_spec(h);
  if (h.chi.size() != 2 || h.eta.size() != 2) fail(Err::ShapeMismatch, "fast path needs m = n = 2");
  const Field& F = *F_;
  const uint64_t n1 = F.q - 1;
  // conv[u] = sum_{x1 x2 = u} a(x1) b(x2) psi(x1 + x2), by dlog of u
  auto conv = [&](uint32_t ka, uint32_t kb) {
    std::vector<cplx> out(F.q, 0.0);
    std::vector<cplx> w(n1);
    for (uint64_t l = 0; l < n1; ++l) w[l] = F.aroot(F.abs_trace(F.exp(l)));
    for (uint64_t lu = 0; lu < n1; ++lu) {
      cplx acc = 0;
      for (uint64_t l1 = 0; l1 < n1; ++l1) {
        uint64_t l2 = (lu + n1 - l1) % n1;
        acc += F.mroot(ka * l1 + kb * l2) * w[l1] * w[l2];
      }
      out[F.exp(lu)] = acc;
    }
    return out;
  };
  c_ = conv(h.chi[0], h.chi[1]);
  d_ = conv(h.eta[0], h.eta[1]);
}

cplx Hyper22::operator()(Elem t) const {
  if (t == 0) fail(Err::ZeroArgument, "hypergeometric sum at t = 0");
  const Field& F = *F_;
  cplx s = 0;
  for (Elem v = 1; v < F.q; ++v) s += c_[F.mul(t, v)] * std::conj(d_[v]);
  return -s / std::pow(double(F.q), 1.5);
}

cplx hyper_sum_fast_22(const HyperSpec& h, Elem t) { return Hyper22(h)(t); }

bool disjoint(const HyperSpec& h) {
  const uint32_t n1 = h.F->q - 1;
  for (uint32_t a : h.chi)
    for (uint32_t b : h.eta)
      if (a % n1 == b % n1) return false;
  return true;
}

namespace {

using Multiset = std::vector<uint32_t>;

Multiset sorted(std::vector<uint32_t> v, uint32_t n1) {
  for (auto& x : v) x %= n1;
  std::sort(v.begin(), v.end());
  return v;
}

// multiset is a union of full cosets of the d-torsion
bool kummer_closed(const Multiset& v, uint32_t d, uint32_t n1) {
  if (v.empty()) return true;
  if (n1 % d) return false;
  std::map<uint32_t, int> cnt;
  for (auto x : v) ++cnt[x];
  const uint32_t step = n1 / d;
  for (auto [k, c] : cnt)
    for (uint32_t j = 1; j < d; ++j) {
      auto it = cnt.find((k + j * step) % n1);
      if (it == cnt.end() || it->second != c) return false;
    }
  return true;
}

Multiset roots(uint32_t a, uint32_t target, uint32_t n1) {
  Multiset r;
  for (uint32_t k = 0; k < n1; ++k)
    if ((uint64_t(a) * k) % n1 == target) r.push_back(k);
  return r;
}

std::optional<std::pair<uint32_t, uint32_t>> belyi(const Multiset& chi, const Multiset& eta, uint32_t n1) {
  const uint32_t n = uint32_t(chi.size());
  if (n != eta.size() || n < 2) return std::nullopt;
  for (uint32_t a = 1; a < n; ++a) {
    const uint32_t b = n - a;
    for (uint32_t al = 0; al < n1; ++al) {
      Multiset ra = roots(a, al, n1);
      if (ra.size() > n) continue;
      for (uint32_t be = 1; be < n1; ++be) {
        Multiset rb = roots(b, be, n1);
        if (ra.size() + rb.size() != n) continue;
        Multiset u = ra;
        u.insert(u.end(), rb.begin(), rb.end());
        std::sort(u.begin(), u.end());
        if (u != chi) continue;
        if (roots(n, (al + be) % n1, n1) == eta) return std::make_pair(a, b);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Exceptional classify_exceptional(const HyperSpec& h) {
  const uint32_t n1 = h.F->q - 1;
  const Multiset chi = sorted(h.chi, n1), eta = sorted(h.eta, n1);
  Exceptional out;
  const uint32_t g = std::gcd(uint32_t(chi.size()), uint32_t(eta.size()));
  for (uint32_t d = 2; d <= g && !out.kummer; ++d)
    if (g % d == 0 && kummer_closed(chi, d, n1) && kummer_closed(eta, d, n1)) out.kummer = d;
  out.belyi = belyi(chi, eta, n1);
  std::vector<uint32_t> ceta, cchi;
  for (auto x : eta) ceta.push_back((n1 - x) % n1);
  for (auto x : chi) cchi.push_back((n1 - x) % n1);
  out.inverse_belyi = belyi(sorted(ceta, n1), sorted(cchi, n1), n1);
  return out;
}

}  // namespace lwcs
