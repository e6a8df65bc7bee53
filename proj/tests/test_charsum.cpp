#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "charsum.hpp"

using namespace lwcs;

namespace {

std::pair<uint32_t, uint32_t> split(uint32_t q) {
  uint32_t p = 2;
  while (q % p) ++p;
  uint32_t f = 0;
  for (uint32_t r = q; r > 1; r /= p) ++f;
  return {p, f};
}

// F_{p^2} as pairs a + b w, w^2 = eps, written out by hand
struct Manual {
  uint32_t p;
  uint32_t eps;
  std::vector<uint32_t> lg;  // dlog w.r.t. the library generator, indexed a + p b
  std::pair<uint32_t, uint32_t> mul(std::pair<uint32_t, uint32_t> x, std::pair<uint32_t, uint32_t> y) const {
    return {uint32_t((x.first * y.first + x.second * y.second * eps) % p),
            uint32_t((x.first * y.second + x.second * y.first) % p)};
  }
  Manual(const QuadExt& Q) : p(Q.base->p), eps(Q.eps) {
    // express the library generator in the basis {1, omega}
    const Field& E = *Q.ext;
    std::pair<uint32_t, uint32_t> g{0, 0};
    for (uint32_t a = 0; a < p; ++a)
      for (uint32_t b = 0; b < p; ++b)
        if (E.add(Q.embed(a), E.mul(Q.embed(b), Q.omega)) == E.gen) g = {a, b};
    lg.assign(p * p, 0);
    std::pair<uint32_t, uint32_t> x{1, 0};
    for (uint32_t k = 0; k + 1 < p * p; ++k) {
      lg[x.first + p * x.second] = k;
      x = mul(x, g);
    }
  }
};

cplx e(double x) { return std::polar(1.0, 2 * M_PI * x); }

// S by hand for prime q, Legendre-style characters from the base dlog
cplx manual_S(const QuadExt& Q, uint32_t chi, uint32_t eta, uint32_t rho) {
  const uint32_t p = Q.base->p;
  Manual M(Q);
  std::vector<uint32_t> lb(p, 0);
  uint32_t x = 1;
  for (uint32_t k = 0; k + 1 < p; ++k) {
    lb[x] = k;
    x = x * Q.base->gen % p;
  }
  auto ch = [&](uint32_t k, int64_t v) -> cplx {
    v = ((v % p) + p) % p;
    return v ? e(double(k) * lb[v] / (p - 1)) : 0.0;
  };
  cplx s = 0;
  for (uint32_t a = 0; a < p; ++a) {
    cplx r = e(double(rho) * M.lg[a + p * 1] / (p * p - 1));
    for (uint32_t t = 0; t < p; ++t)
      s += r * ch(chi, t) * ch(eta, int64_t(a * a) - int64_t(M.eps * t)) * std::conj(ch(eta, 1 - int64_t(t)));
  }
  return s;
}

}  // namespace

TEST(CharSum, ASumExamples) {
  auto Q = make_quad_ext(3, 1);
  CharSumInstance in{Q.get(), 1, 1, 1};
  const Field& E = *Q->ext;
  auto rho = mult_char(E, 1);
  EXPECT_EQ(A_sum(in, Q->eps), cplx(0, 0));
  EXPECT_NEAR(std::abs(A_sum(in, 0) - rho(Q->omega)), 0.0, 1e-15);
  cplx want = rho(E.add(Q->embed(1), Q->omega)) + rho(E.add(Q->embed(2), Q->omega));
  EXPECT_NEAR(std::abs(A_sum(in, 1) - want), 0.0, 1e-15);
}

TEST(CharSum, BAtZero) {
  for (uint32_t q : {5u, 7u, 9u}) {
    auto [p, f] = split(q);
    auto Q = make_quad_ext(p, f);
    for (uint32_t c = 1; c + 1 < q; ++c)
      for (uint32_t d = 1; d + 1 < q; ++d)
        EXPECT_NEAR(std::abs(B_sum({Q.get(), c, d, 1}, 0) - cplx(-1, 0)), 0.0, 1e-12);
  }
}

TEST(CharSum, BThreeTermQ5) {
  // t in {2,3,4}: chi_1(t) phi(1 - 2/(1-t)), written against the literal form
  auto Q = make_quad_ext(5, 1);
  const Field& F = *Q->base;
  auto chi = mult_char(F, 1), phi = quadratic_char(F);
  cplx want = 0;
  for (Elem t = 2; t < 5; ++t) want += chi(t) * phi(F.sub(1, F.div(2, F.sub(1, t))));
  CharSumInstance in{Q.get(), 1, 2, 1};
  EXPECT_NEAR(std::abs(B_sum(in, 2) - want), 0.0, 1e-12);
  Hyper22 H({&F, {0, 0}, {1, 2}});
  cplx via_h = -gauss_sum(chi) * gauss_sum(phi) / std::sqrt(5.0) * H(2);
  EXPECT_NEAR(std::abs(B_sum(in, 2) - via_h), 0.0, 1e-12);
}

TEST(CharSumProperty, BranchFreeBMatchesLiteralRange) {
  for (uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u}) {
    auto [p, f] = split(q);
    auto Q = make_quad_ext(p, f);
    const Field& F = *Q->base;
    for (uint32_t c = 1; c + 1 < q; ++c)
      for (uint32_t d = 1; d + 1 < q; ++d)
        for (Elem y = 0; y < q; ++y) {
          cplx lit = 0;
          for (Elem t = 2; t < q + 1; ++t) {
            Elem tt = t % q;
            if (tt == 0 || tt == 1) continue;
            lit += mult_char(F, c)(tt) * mult_char(F, d)(F.sub(1, F.div(y, F.sub(1, tt))));
          }
          ASSERT_LT(std::abs(B_sum({Q.get(), c, d, 1}, y) - lit), 1e-9);
        }
  }
}

TEST(CharSumProperty, BHypergeometricIdentity) {
  for (uint32_t q : odd_prime_powers(3, 31)) {
    auto [p, f] = split(q);
    auto Q = make_quad_ext(p, f);
    const Field& F = *Q->base;
    for (uint32_t c = 1; c + 1 < q; ++c)
      for (uint32_t d = 1; d + 1 < q; ++d) {
        Hyper22 H({&F, {0, 0}, {c, d}});
        cplx k = -gauss_sum(mult_char(F, c)) * gauss_sum(mult_char(F, d)) / std::sqrt(double(q));
        for (Elem y = 1; y < q; ++y)
          ASSERT_LT(std::abs(B_sum({Q.get(), c, d, 1}, y) - k * H(y)), 1e-7 * std::sqrt(double(q)));
      }
  }
}

TEST(CharSum, DirectMatchesHandWrittenField) {
  for (uint32_t p : {3u, 5u, 7u}) {
    auto Q = make_quad_ext(p, 1);
    for (uint32_t c = 1; c + 1 < p; ++c)
      for (uint32_t d = 1; d + 1 < p; ++d)
        for (uint32_t r = 1; r + 1 < p * p; r += (p == 7 ? 5 : 1)) {
          cplx a = S_eval({Q.get(), c, d, r}, SMethod::Direct);
          ASSERT_LT(std::abs(a - manual_S(*Q, c, d, r)), 1e-9) << p << " " << c << " " << d << " " << r;
        }
  }
}

TEST(CharSum, Q3Value) {
  auto Q = make_quad_ext(3, 1);
  // smallest regular character of F_9^x is k = 1
  auto regs = enumerate_chars(*Q, kNontrivial);
  uint32_t r = 0;
  for (auto& c : regs)
    if ((uint64_t(c.k) * 2) % 8 != 0) {
      r = c.k;
      break;
    }
  ASSERT_EQ(r, 1u);
  cplx want = manual_S(*Q, 1, 1, 1);
  for (auto m : {SMethod::Direct, SMethod::ViaAB, SMethod::ViaT})
    EXPECT_NEAR(std::abs(S_eval({Q.get(), 1, 1, 1}, m) - want), 0.0, 1e-9);
}

TEST(CharSum, TArgumentNeverZero) {
  for (uint32_t q : odd_prime_powers(3, 31)) {
    auto [p, f] = split(q);
    auto Q = make_quad_ext(p, f);
    const Field& F = *Q->base;
    for (Elem a = 0; a < q; ++a) ASSERT_NE(F.sub(1, F.div(F.mul(a, a), Q->eps)), 0u);
  }
}

TEST(CharSum, TQ5AgainstNaiveHyper) {
  auto Q = make_quad_ext(5, 1);
  const Field& F = *Q->base;
  const Field& E = *Q->ext;
  CharSumInstance in{Q.get(), 1, 3, 7};
  cplx want = 0;
  for (Elem a = 0; a < 5; ++a)
    want += mult_char(E, 7)(E.add(Q->embed(a), Q->omega)) *
            hyper_sum({&F, {0, 0}, {1, 3}}, F.sub(1, F.div(F.mul(a, a), Q->eps)));
  cplx t = T_sum(in);
  EXPECT_NEAR(std::abs(t - want), 0.0, 1e-9);
  EXPECT_LE(std::abs(t), 1000 * std::sqrt(5.0));
}

TEST(CharSumProperty, MethodAgreementSmall) {
  for (uint32_t q : {3u, 5u, 7u, 9u}) {
    auto [p, f] = split(q);
    auto Q = make_quad_ext(p, f);
    for (uint32_t c = 1; c + 1 < q; ++c)
      for (uint32_t d = 1; d + 1 < q; ++d) {
        PairTables T(*Q, c, d);
        for (uint32_t r = 1; r + 1 < q * q; ++r) {
          CharSumInstance in{Q.get(), c, d, r};
          cplx s0 = S_eval(in, SMethod::Direct);
          ASSERT_LT(std::abs(s0 - S_eval(in, SMethod::ViaAB)), 1e-7 * q);
          ASSERT_LT(std::abs(s0 - S_eval(in, SMethod::ViaT)), 1e-7 * q);
          ASSERT_LT(std::abs(s0 - T.S(r)), 1e-7 * q);
          ASSERT_LT(std::abs(s0 - T.s_over_t() * T.T(r)), 1e-7 * q);
          ASSERT_LE(std::abs(s0), 1000.0 * q);
        }
      }
  }
}

TEST(CharSumProperty, MethodAgreementRandom) {
  std::mt19937_64 rng(20261016);
  for (uint32_t q : {17u, 25u, 31u}) {
    auto [p, f] = split(q);
    auto Q = make_quad_ext(p, f);
    for (int i = 0; i < 40; ++i) {
      uint32_t c = 1 + rng() % (q - 2), d = 1 + rng() % (q - 2), r = 1 + rng() % (q * q - 2);
      CharSumInstance in{Q.get(), c, d, r};
      cplx s0 = S_eval(in, SMethod::Direct);
      ASSERT_LT(std::abs(s0 - S_eval(in, SMethod::ViaAB)), 1e-7 * q);
      ASSERT_LT(std::abs(s0 - S_eval(in, SMethod::ViaT)), 1e-7 * q);
    }
  }
}

TEST(CharSum, SThetaErrors) {
  auto Q = make_quad_ext(5, 1);
  try {
    S_theta(*Q, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Err::NotTrivialOnBase);
  }
  try {
    S_theta(*Q, 12, 1);  // 12 (q-1) = 48 = 2 (q^2-1)
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Err::NotRegular);
  }
}

TEST(CharSumProperty, SThetaIsSpecialization) {
  for (uint32_t q : odd_prime_powers(3, 19)) {
    auto [p, f] = split(q);
    auto Q = make_quad_ext(p, f);
    const uint32_t n2 = q * q - 1;
    for (const auto& th : enumerate_chars(*Q, kTrivialOnBase | kRegular))
      for (uint32_t c = 1; c + 1 < q; ++c) {
        cplx a = S_theta(*Q, th.k, c);
        cplx b = S_eval({Q.get(), c, (q - 1) / 2, (n2 - th.k) % n2}, SMethod::Direct);
        ASSERT_LT(std::abs(a - b), 1e-7 * q);
        ASSERT_LE(std::abs(a), 1000.0 * q);
      }
  }
}

TEST(CharSum, ScanQ3) {
  auto row = scan_q(3, false);
  EXPECT_EQ(row.triples, 7u);
  EXPECT_LE(row.max_s_over_q, 1000.0);
  EXPECT_LE(row.max_t_over_sqrtq, 1000.0);
  auto rr = scan_q(3, true);
  EXPECT_EQ(rr.triples, 2u);
  EXPECT_EQ(odd_prime_powers(3, 31), (std::vector<uint32_t>{3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31}));
}
