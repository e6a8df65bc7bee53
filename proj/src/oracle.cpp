#include "oracle.hpp"

#include <cmath>
#include <numbers>

namespace lwcs {

namespace {

using TP = TruncatedPadic;

cplx e_frac(double x) { return std::polar(1.0, 2 * std::numbers::pi * x); }

// Tate's character: trivial on o, psi(p^-1 a) = e(a / p)
cplx psi_std(const TP& y) {
  if (y.is_zero() || y.val_at_least(0)) return 1.0;
  const int v = y.val();
  if (y.precision() < -v) fail(Err::InsufficientPrecision, "psi needs more digits");
  const uint64_t m = ipow(y.prime(), -v);
  return e_frac(double(y.unit_part() % m) / double(m));
}

uint64_t res(const TP& x) { return x.val_at_least(1) ? 0 : x.residue(); }

bool unit(const TP& x) { return !x.val_at_least(1); }

// g in K0[p^n]: integral, lower-left in p^n, unit determinant
bool in_K0(const std::array<TP, 4>& g, int n) {
  for (const TP& x : g)
    if (!x.val_at_least(0)) return false;
  if (!g[2].val_at_least(n)) return false;
  return unit(g[0] * g[3] - g[1] * g[2]);
}

int legendre(uint64_t a, uint32_t p) {
  a %= p;
  if (a == 0) return 0;
  uint64_t r = 1, b = a;
  for (uint64_t e = (p - 1) / 2; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r == 1 ? 1 : -1;
}

}  // namespace

OracleM4::OracleM4(const LocalModel& M, const TestCase& c, int N, uint32_t chi_cond, bool memo)
    : M_(M), c_(c), N_(N), memo_(memo) {
  if (M.f != 1) fail(Err::UnsupportedField, "oracle needs a prime residue field");
  if (N < 4) fail(Err::InvalidArgument, "oracle depth N must be at least 4");
  if (chi_cond > 2) fail(Err::UnsupportedConductor, "conductor above 2");
  validate(M, c);
  const uint32_t p = M.p;
  int level = 1;
  if (c.kind == CaseKind::Case2NS) level = c.n;
  L_ = std::max<int>(level, chi_cond);
  pL_ = ipow(p, L_);
  for (uint64_t u = 1; u < pL_; ++u)
    if (u % p) units_.push_back(u);
  inv_.assign(pL_, 0);
  for (uint64_t u : units_) inv_[u] = TP::make(p, 0, u, L_).inv().unit_part();
  if (L_ == 2) {
    uint64_t g = M.F->gen, m = pL_, t = 1;
    for (uint32_t i = 0; i + 1 < p; ++i) t = t * g % m;
    if (t == 1) g += p;
    dlog2_.assign(m, 0);
    t = 1;
    for (uint64_t k = 0; k < units_.size(); ++k, t = t * g % m) dlog2_[t] = uint32_t(k);
  }
  const double q = M.q;
  switch (c.kind) {
    case CaseKind::Case1:
      vmin_ = {0, 0, 1, 0};
      bounded_ = {true, false, false, true};
      inv_vol_ = 1 / volume(M, Subgroup::K0).value();
      break;
    case CaseKind::Case3:
      vmin_ = {0, 0, 1, 0};
      bounded_ = {true, false, false, true};
      inv_vol_ = 1 / volume(M, Subgroup::K1).value();
      break;
    case CaseKind::Case2SC: {
      vmin_ = {0, 0, 0, 0};
      bounded_ = {false, false, false, false};
      inv_vol_ = q - 1;
      const uint32_t Q = M.q;
      cls_.assign(size_t(Q) * Q * Q * Q, 0.0);
      for (Elem a = 0; a < Q * Q * Q * Q; ++a) {
        std::array<Elem, 4> g = {a / (Q * Q * Q), a / (Q * Q) % Q, a / Q % Q, a % Q};
        const Field& F = *M.F;
        if (F.mul(g[0], g[3]) == F.mul(g[1], g[2])) continue;
        cls_[a] = std::conj(char_table(*M.Q, c.theta, g));
      }
      break;
    }
    case CaseKind::Case2NS:
      vmin_ = {0, -c.n, c.n, 0};
      bounded_ = {false, false, false, false};
      inv_vol_ = 1 / volume(M, Subgroup::K0, c.n).value();
      break;
    case CaseKind::Case4NS:
      fail(Err::UnsupportedCase, "no test function for this case");
  }
}

OracleM4::Cell OracleM4::key(const Cell& v) const {
  Cell k = v;
  int clamp[4];
  switch (c_.kind) {
    case CaseKind::Case2SC:
      for (int i = 0; i < 4; ++i) clamp[i] = 1;
      break;
    case CaseKind::Case2NS:
      for (int i = 0; i < 4; ++i) clamp[i] = vmin_[i] + 2 * c_.n + 2;
      break;
    default:
      clamp[0] = clamp[3] = 0;
      clamp[1] = 1;
      clamp[2] = 2;
  }
  for (int i = 0; i < 4; ++i) k[i] = std::min(k[i], clamp[i]);
  return k;
}

cplx OracleM4::test_fn(const Cell& v, const std::array<uint64_t, 4>& u) const {
  const uint32_t p = M_.p;
  std::array<TP, 4> x;
  for (int i = 0; i < 4; ++i) x[i] = TP::make(p, v[i], u[i], L_);
  switch (c_.kind) {
    case CaseKind::Case1:
      return in_K0(x, 1) ? inv_vol_ : 0.0;
    case CaseKind::Case3: {
      if (!in_K0(x, 1) || res(x[0]) != 1 || res(x[3]) != 1) return 0.0;
      const TP pinv = TP::uniformizer_pow(p, -1, L_);
      const TP t = TP::make(p, 0, c_.t, L_);
      return psi_std(-(pinv * (x[1] + t * pinv * x[2]))) * inv_vol_;
    }
    case CaseKind::Case2SC: {
      if (!in_K0(x, 0)) return 0.0;
      const uint64_t Q = M_.q;
      return inv_vol_ * cls_[((res(x[0]) * Q + res(x[1])) * Q + res(x[2])) * Q + res(x[3])];
    }
    case CaseKind::Case2NS: {
      const TP a = TP::uniformizer_pow(p, -c_.n, L_);
      if (c_.conj == Conj::Symmetric) {
        // n(-a) g n(a)
        const TP g1 = x[0] - a * x[2];
        const std::array<TP, 4> g = {g1, a * g1 + x[1] - a * x[3], x[2], a * x[2] + x[3]};
        if (!in_K0(g, c_.n)) return 0.0;
        return inv_vol_ * double(legendre(res(g[3]), p) * legendre(res(g[0]), p));
      }
      // n(a) g n(-a), weighted by xi(det g)
      const TP g1 = x[0] + a * x[2];
      const std::array<TP, 4> g = {g1, x[1] + a * x[3] - a * g1, x[2], x[3] - a * x[2]};
      if (!in_K0(g, c_.n)) return 0.0;
      return inv_vol_ * double(legendre(res(x[0] * x[3] - x[1] * x[2]), p));
    }
    case CaseKind::Case4NS:
      break;
  }
  return 0.0;
}

std::vector<cplx> OracleM4::compute_hist(const Cell& v) const {
  std::vector<cplx> H(pL_, 0.0);
  const size_t n = units_.size();
  try {
    for (size_t i0 = 0; i0 < n; ++i0)
      for (size_t i1 = 0; i1 < n; ++i1)
        for (size_t i2 = 0; i2 < n; ++i2) {
          const uint64_t d = inv_[units_[i1] * units_[i2] % pL_];
          for (size_t i3 = 0; i3 < n; ++i3) {
            std::array<uint64_t, 4> u = {units_[i0], units_[i1], units_[i2], units_[i3]};
            cplx val = test_fn(v, u);
            if (val == 0.0) continue;
            H[u[0] * u[3] % pL_ * d % pL_] += val;
          }
        }
  } catch (const Error& e) {
    if (e.code() == Err::InsufficientPrecision || e.code() == Err::PrecisionLoss)
      fail(Err::PrecisionLoss, std::string("oracle precision exhausted: ") + e.what());
    throw;
  }
  return H;
}

const std::vector<cplx>& OracleM4::hist(const Cell& v) const {
  const Cell k = memo_ ? key(v) : v;
  auto it = cache_.find(k);
  if (it == cache_.end()) it = cache_.emplace(k, compute_hist(k)).first;
  return it->second;
}

cplx OracleM4::chi_unit(const LocalChar& chi, uint64_t r) const {
  switch (chi.cond) {
    case 0:
      return 1.0;
    case 1:
      return M_.F->mroot(chi.k * M_.F->dlog_unchecked(Elem(r % M_.p)));
    default:
      return e_frac(double(chi.k % units_.size() * dlog2_[r] % units_.size()) / double(units_.size()));
  }
}

OracleResult OracleM4::eval(const LocalChar& chi, cplx s) const {
  validate(M_, chi);
  if (int(chi.cond) > L_) fail(Err::UnsupportedConductor, "oracle built for a smaller conductor");
  if (std::abs(s.real()) >= 0.5) fail(Err::InvalidArgument, "oracle needs |Re s| < 1/2");
  const double lq = std::log(double(M_.q));
  std::array<cplx, 4> r;
  for (int i = 0; i < 4; ++i) {
    const bool plus = (i == 0 || i == 3);
    r[i] = (plus ? chi.c : std::conj(chi.c)) * std::exp(-(plus ? 0.5 + s : 0.5 - s) * lq);
  }
  const double mass = std::pow(1.0 / double(units_.size()), 4);
  std::map<Cell, std::pair<cplx, double>> pair_cache;
  auto paired = [&](const Cell& v) {
    const Cell k = memo_ ? key(v) : v;
    auto it = pair_cache.find(k);
    if (it != pair_cache.end()) return it->second;
    const auto& H = hist(v);
    cplx acc = 0;
    double mag = 0;
    for (uint64_t u = 1; u < pL_; ++u) {
      if (H[u] == 0.0) continue;
      acc += H[u] * chi_unit(chi, u);
      mag += std::abs(H[u]);
    }
    return pair_cache[k] = {acc * mass, mag * mass};
  };
  auto depth = [&](int D, double& mag) {
    int hi[4];
    for (int i = 0; i < 4; ++i) hi[i] = bounded_[i] ? vmin_[i] : vmin_[i] + D;
    cplx total = 0;
    Cell v;
    for (v[0] = vmin_[0]; v[0] <= hi[0]; ++v[0])
      for (v[1] = vmin_[1]; v[1] <= hi[1]; ++v[1])
        for (v[2] = vmin_[2]; v[2] <= hi[2]; ++v[2])
          for (v[3] = vmin_[3]; v[3] <= hi[3]; ++v[3]) {
            auto [val, m] = paired(v);
            if (m == 0) continue;
            cplx w = 1;
            for (int i = 0; i < 4; ++i) {
              w *= std::pow(r[i], v[i]);
              if (!bounded_[i] && v[i] == hi[i]) w /= 1.0 - r[i];
            }
            total += w * val;
            mag += std::abs(w) * m;
          }
    return total;
  };
  double mag = 0;
  OracleResult out;
  out.value = depth(N_, mag);
  out.refined = depth(N_ + 1, mag);
  out.tail_bound = std::abs(out.value - out.refined) + 64 * 2.2e-16 * mag;
  out.N = N_;
  out.L = L_;
  return out;
}

OracleResult oracle_m4(const LocalModel& M, const TestCase& c, const LocalChar& chi, cplx s, int N) {
  OracleM4 o(M, c, N, chi.cond);
  return o.eval(chi, s);
}

}  // namespace lwcs
