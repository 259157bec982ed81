#pragma once

// The parameter grid the constructions are checked on.

#include <vector>

#include "sigmak/word.hpp"

namespace grid {

/// p in {3,4,5} with k <= n <= min(7, log_p 2^24); binary odd and even k up
/// to k+5; binary n = k up to 6. Odd p uses the modular base by default.
inline std::vector<sigmak::CycleSpec> full() {
  using sigmak::CycleSpec;
  using sigmak::Variant;
  std::vector<CycleSpec> out;
  for (unsigned p : {3u, 4u, 5u})
    for (unsigned n = 1; n <= 7; ++n) {
      if (sigmak::pow_or_throw(p, n) > (sigmak::Index{1} << 24)) break;
      for (unsigned k = 1; k <= n; ++k) out.push_back(CycleSpec::make(p, n, k));
    }
  for (unsigned k : {1u, 3u, 5u})
    for (unsigned n = k + 1; n <= k + 5; ++n) {
      out.push_back(CycleSpec::make(2, n, k, Variant::gamma));
      out.push_back(CycleSpec::make(2, n, k, Variant::rho));
    }
  for (unsigned k : {2u, 4u})
    for (unsigned n = k + 1; n <= k + 5; ++n) {
      out.push_back(CycleSpec::make(2, n, k, Variant::gamma_even));
      out.push_back(CycleSpec::make(2, n, k, Variant::gamma_even_odd));
    }
  for (unsigned k = 1; k <= 6; ++k) out.push_back(CycleSpec::make(2, k, k));
  return out;
}

}  // namespace grid
