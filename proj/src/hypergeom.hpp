#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "characters.hpp"

namespace lwcs {

struct HyperSpec {
  const Field* F = nullptr;
  std::vector<uint32_t> chi, eta;  // exponents mod q-1
};

// Normalized sum over x in (F^x)^m, y in (F^x)^n with prod x = t prod y of
// chi(x) conj(eta(y)) psi(sum x - sum y), canonical psi.  O(q^{m+n-1}).
cplx hyper_sum(const HyperSpec& h, Elem t);

// m = n = 2 path: two convolution tables, then O(q) per t.
class Hyper22 {
 public:
  explicit Hyper22(const HyperSpec& h);
  cplx operator()(Elem t) const;

 private:
  const Field* F_;
  std::vector<cplx> c_, d_;  // indexed by element
};

cplx hyper_sum_fast_22(const HyperSpec& h, Elem t);

bool disjoint(const HyperSpec& h);

struct Exceptional {
  std::optional<uint32_t> kummer;
  std::optional<std::pair<uint32_t, uint32_t>> belyi, inverse_belyi;
  bool any() const { return kummer || belyi || inverse_belyi; }
};

Exceptional classify_exceptional(const HyperSpec& h);

}  // namespace lwcs
