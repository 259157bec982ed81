#pragma once

// Materializing constructions of the maximum-length cycles. Each induction
// runs as a loop over levels with two ping-pong buffers.

#include <optional>
#include <utility>

#include "sigmak/base_codes.hpp"

namespace sigmak {

struct BuilderOutput {
  GrayCycle cycle;
  std::optional<GrayCycle> companion;  // ρ when γ was asked for and vice versa
};

namespace detail {

inline GrayCycle table_to_cycle(const BaseTable& t, const CycleSpec& spec) {
  GrayCycle c(spec, t.n0);
  c.reserve(static_cast<std::size_t>(t.size()));
  for (Index i = 0; i < t.size(); ++i) c.push_back(t.term(i));
  return c;
}

}  // namespace detail

/// h^{n,k} for p >= 3. Term q p^{m-1} + r of level m is θ^{q+r}(0) followed by
/// term r of level m-1, starting from a p-ary Gray code of length n0: the
/// reflected one by default, the modular one when `modular_base` is set.
[[nodiscard]] inline BuilderOutput build_h(unsigned p, unsigned n, unsigned k,
                                           const Limits& limits = {}, bool modular_base = false) {
  const auto spec = CycleSpec::make(p, n, k, modular_base ? Variant::h_modular : Variant::h);
  check_materialize(spec.length(), limits);
  const unsigned n0 = spec.n0();
  const BaseTable base = modular_base ? modular_pary(p, n0, limits) : reflected_pary(p, n0, limits);

  std::vector<Letter> prev = base.flat;
  std::vector<Letter> cur;
  Index prev_terms = base.size();
  for (unsigned m = n0 + 1; m <= n; ++m) {
    const std::size_t len = m;
    cur.resize(static_cast<std::size_t>(prev_terms) * p * len);
    std::size_t row = 0;
    for (Index q = 0; q < p; ++q) {
      for (Index r = 0; r < prev_terms; ++r, ++row) {
        Letter* out = cur.data() + row * len;
        out[0] = static_cast<Letter>((q + r) % p);
        std::copy_n(prev.data() + r * (len - 1), len - 1, out + 1);
      }
    }
    prev.swap(cur);
    prev_terms *= p;
  }

  GrayCycle cycle(spec, n);
  cycle.reserve(static_cast<std::size_t>(prev_terms));
  for (Index i = 0; i < prev_terms; ++i)
    cycle.push_back(std::span<const Letter>(prev).subspan(i * n, n));
  return {std::move(cycle), std::nullopt};
}

/// The pair (γ^{n,k}, ρ^{n,k}) for p = 2 and k odd. Each level prepends two
/// letters: γ blocks use prefixes (00, 01, 11, 10) over (γ, ρ, γ, ρ), ρ blocks
/// use (10, 11, 01, 00), and the prefix is complemented at odd offsets.
[[nodiscard]] inline BuilderOutput build_gamma_rho_odd(unsigned n, unsigned k,
                                                       const Limits& limits = {}) {
  const auto spec = CycleSpec::make(2, n, k, Variant::gamma);
  check_materialize(spec.length(), limits);
  const unsigned n0 = spec.n0();

  std::vector<Letter> gamma = gamma_base(n0, limits).flat;
  std::vector<Letter> rho = rho_base(n0, limits).flat;
  std::vector<Letter> next_gamma;
  std::vector<Letter> next_rho;
  Index terms = Index{1} << n0;

  static constexpr Letter kGammaPrefix[4][2] = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  static constexpr Letter kRhoPrefix[4][2] = {{1, 0}, {1, 1}, {0, 1}, {0, 0}};

  for (unsigned m = n0 + 2; m <= n; m += 2) {
    const std::size_t len = m;
    const std::size_t inner = m - 2;
    next_gamma.resize(static_cast<std::size_t>(terms) * 4 * len);
    next_rho.resize(next_gamma.size());
    for (unsigned q = 0; q < 4; ++q) {
      // Blocks 0 and 2 continue γ, blocks 1 and 3 continue ρ.
      const std::vector<Letter>& src = (q % 2 == 0) ? gamma : rho;
      for (Index r = 0; r < terms; ++r) {
        const std::size_t row = static_cast<std::size_t>(q * terms + r);
        const Letter twist = static_cast<Letter>(r & 1);
        Letter* g = next_gamma.data() + row * len;
        Letter* h = next_rho.data() + row * len;
        g[0] = kGammaPrefix[q][0] ^ twist;
        g[1] = kGammaPrefix[q][1] ^ twist;
        h[0] = kRhoPrefix[q][0] ^ twist;
        h[1] = kRhoPrefix[q][1] ^ twist;
        std::copy_n(src.data() + r * inner, inner, g + 2);
        std::copy_n(src.data() + r * inner, inner, h + 2);
      }
    }
    gamma.swap(next_gamma);
    rho.swap(next_rho);
    terms *= 4;
  }

  GrayCycle g(spec, n);
  GrayCycle r(CycleSpec::make(2, n, k, Variant::rho), n);
  g.reserve(static_cast<std::size_t>(terms));
  r.reserve(static_cast<std::size_t>(terms));
  for (Index i = 0; i < terms; ++i) {
    g.push_back(std::span<const Letter>(gamma).subspan(i * n, n));
    r.push_back(std::span<const Letter>(rho).subspan(i * n, n));
  }
  return {std::move(g), std::move(r)};
}

enum class Parity { even, odd };

/// p = 2, k even: θ^i(0) (even weight) or θ^i(1) (odd weight) prepended to
/// term i of γ^{n-1,k-1}.
[[nodiscard]] inline BuilderOutput build_gamma_even(unsigned n, unsigned k, Parity parity,
                                                    const Limits& limits = {}) {
  const auto spec = CycleSpec::make(
      2, n, k, parity == Parity::even ? Variant::gamma_even : Variant::gamma_even_odd);
  check_materialize(spec.length(), limits);
  const auto inner = build_gamma_rho_odd(n - 1, k - 1, limits);
  const Letter lead0 = parity == Parity::even ? 0 : 1;

  GrayCycle out(spec, n);
  out.reserve(inner.cycle.size());
  Word w(n);
  for (std::size_t i = 0; i < inner.cycle.size(); ++i) {
    w[0] = static_cast<Letter>(lead0 ^ (i & 1));
    const auto t = inner.cycle.term(i);
    std::copy(t.begin(), t.end(), w.digits().begin() + 1);
    out.push_back(w);
  }
  return {std::move(out), std::nullopt};
}

/// p = 2, n = k: the complement pair (0^k, 1^k).
[[nodiscard]] inline BuilderOutput build_trivial_binary(unsigned k) {
  const auto spec = CycleSpec::make(2, k, k, Variant::trivial_binary);
  GrayCycle out(spec, k);
  out.push_back(Word(k, 0));
  out.push_back(Word(k, 1));
  return {std::move(out), std::nullopt};
}

/// Builds whatever cycle the spec denotes.
[[nodiscard]] inline BuilderOutput build(const CycleSpec& spec, const Limits& limits = {}) {
  switch (spec.variant) {
    case Variant::h: return build_h(spec.p, spec.n, spec.k, limits);
    case Variant::h_modular: return build_h(spec.p, spec.n, spec.k, limits, true);
    case Variant::gamma: return build_gamma_rho_odd(spec.n, spec.k, limits);
    case Variant::rho: {
      auto out = build_gamma_rho_odd(spec.n, spec.k, limits);
      std::swap(out.cycle, *out.companion);
      return out;
    }
    case Variant::gamma_even: return build_gamma_even(spec.n, spec.k, Parity::even, limits);
    case Variant::gamma_even_odd: return build_gamma_even(spec.n, spec.k, Parity::odd, limits);
    case Variant::trivial_binary: return build_trivial_binary(spec.k);
  }
  throw parameter_error("unknown variant");
}

}  // namespace sigmak
