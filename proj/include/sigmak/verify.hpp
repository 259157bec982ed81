#pragma once

// Independent checks: the three cycle conditions on a materialized sequence,
// a backtracking Hamiltonian-cycle search on the distance-k word graph, and
// the brute-force maximum cycle length built on it.

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "sigmak/builders.hpp"
#include "sigmak/engine.hpp"

namespace sigmak {

enum class Condition { g1, g2, g3 };
enum class DistanceMode { exact_k, at_most_k };

[[nodiscard]] inline std::string_view to_string(Condition c) noexcept {
  switch (c) {
    case Condition::g1: return "G1";
    case Condition::g2: return "G2";
    case Condition::g3: return "G3";
  }
  return "?";
}

[[nodiscard]] inline std::string_view to_string(DistanceMode m) noexcept {
  return m == DistanceMode::exact_k ? "exact_k" : "at_most_k";
}

struct Violation {
  Condition condition;
  Index index;
  std::string detail;
};

struct VerificationReport {
  bool ok = true;
  DistanceMode mode = DistanceMode::exact_k;
  Index terms = 0;
  std::vector<Violation> violations;

  void add(Condition c, Index i, std::string detail) {
    ok = false;
    violations.push_back({c, i, std::move(detail)});
  }

  [[nodiscard]] bool has(Condition c) const {
    return std::any_of(violations.begin(), violations.end(),
                       [c](const Violation& v) { return v.condition == c; });
  }

  [[nodiscard]] std::optional<Index> first(Condition c) const {
    for (const auto& v : violations)
      if (v.condition == c) return v.index;
    return std::nullopt;
  }
};

/// The word set a cycle is expected to enumerate.
struct Support {
  enum class Kind { none, full, even, odd, pair };
  Kind kind = Kind::none;
  Word anchor;  // x for the pair {x, θ(x)}

  static Support none() { return {}; }
  static Support full() { return {Kind::full, {}}; }
  static Support even() { return {Kind::even, {}}; }
  static Support odd() { return {Kind::odd, {}}; }
  static Support pair(Word x) { return {Kind::pair, std::move(x)}; }
};

[[nodiscard]] inline std::string_view to_string(Support::Kind k) noexcept {
  switch (k) {
    case Support::Kind::none: return "none";
    case Support::Kind::full: return "full";
    case Support::Kind::even: return "even";
    case Support::Kind::odd: return "odd";
    case Support::Kind::pair: return "pair";
  }
  return "?";
}

/// Support the cycle of this spec must cover: A^n, a weight-parity class, or
/// {0^k, 1^k}.
[[nodiscard]] inline Support expected_support(const CycleSpec& spec) {
  switch (spec.variant) {
    case Variant::h:
    case Variant::h_modular:
    case Variant::gamma:
    case Variant::rho: return Support::full();
    case Variant::gamma_even: return Support::even();
    case Variant::gamma_even_odd: return Support::odd();
    case Variant::trivial_binary: return Support::pair(Word(spec.n, 0));
  }
  return Support::none();
}

namespace detail {

inline std::string render(std::span<const Letter> w) {
  std::string s;
  for (Letter c : w) {
    if (c < kMaxTextAlphabet)
      s.push_back(glyph(c));
    else
      s += "<" + std::to_string(c) + ">";
  }
  return s;
}

inline std::size_t weight_mod2(std::span<const Letter> w) {
  std::size_t ones = 0;
  for (Letter c : w) ones += (c == 1);
  return ones % 2;
}

inline bool in_support(std::span<const Letter> w, unsigned p, const Support& s) {
  if (std::any_of(w.begin(), w.end(), [p](Letter c) { return c >= p; })) return false;
  switch (s.kind) {
    case Support::Kind::none:
    case Support::Kind::full: return true;
    case Support::Kind::even: return weight_mod2(w) == 0;
    case Support::Kind::odd: return weight_mod2(w) == 1;
    case Support::Kind::pair: {
      if (w.size() != s.anchor.size()) return false;
      const Word x = s.anchor;
      const Word y = theta_word(x, p);
      return std::equal(w.begin(), w.end(), x.digits().begin()) ||
             std::equal(w.begin(), w.end(), y.digits().begin());
    }
  }
  return false;
}

inline std::optional<Index> support_size(const Support& s, unsigned p, std::size_t n) {
  switch (s.kind) {
    case Support::Kind::none: return std::nullopt;
    case Support::Kind::full: return checked_pow(p, static_cast<unsigned>(n));
    case Support::Kind::even:
    case Support::Kind::odd:
      return n == 0 ? std::optional<Index>(s.kind == Support::Kind::even ? 1 : 0)
                    : checked_pow(2, static_cast<unsigned>(n - 1));
    case Support::Kind::pair: return 2;
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks a flat sequence of words of length n over {0..p-1}:
///  G1  every term lies in the expected support and the support is covered;
///  G2  consecutive terms, including last -> first, are at distance k
///      (or between 1 and k in at-most mode);
///  G3  terms are pairwise distinct.
/// Recording stops after `max_violations` entries.
[[nodiscard]] inline VerificationReport verify_gray_cycle(std::span<const Letter> flat,
                                                          std::size_t n, unsigned p, unsigned k,
                                                          DistanceMode mode,
                                                          const Support& support = {},
                                                          std::size_t max_violations = 64) {
  VerificationReport rep;
  rep.mode = mode;
  if (n == 0) throw parameter_error("cannot verify words of length 0");
  if (flat.size() % n != 0) throw parameter_error("sequence terms have mixed lengths");
  const Index L = flat.size() / n;
  rep.terms = L;
  auto term = [&](Index i) { return flat.subspan(static_cast<std::size_t>(i) * n, n); };
  auto add = [&](Condition c, Index i, std::string d) {
    if (rep.violations.size() < max_violations)
      rep.add(c, i, std::move(d));
    else
      rep.ok = false;
  };

  if (L == 0) {
    add(Condition::g1, 0, "empty sequence");
    return rep;
  }

  // G2, including the wraparound pair L-1 -> 0.
  auto related = [&](std::size_t d) {
    return mode == DistanceMode::exact_k ? d == k : (d >= 1 && d <= k);
  };
  auto check_pair = [&](Index prev, Index cur) {
    const auto d = hamming_distance(term(prev), term(cur));
    if (!related(d)) {
      std::ostringstream os;
      os << detail::render(term(prev)) << " -> " << detail::render(term(cur)) << " has distance "
         << d;
      add(Condition::g2, cur, os.str());
    }
  };
  for (Index i = 1; i < L; ++i) check_pair(i - 1, i);
  check_pair(L - 1, 0);

  // G3 by rank when p^n fits in 64 bits, by string otherwise.
  std::size_t distinct = 0;
  const auto rank_space = checked_pow(p, static_cast<unsigned>(n));
  bool letters_ok = true;
  for (Letter c : flat) letters_ok &= (c < p);
  if (rank_space && letters_ok && *rank_space <= (Index{1} << 32)) {
    std::vector<bool> seen(static_cast<std::size_t>(*rank_space), false);
    std::vector<Index> first_at;  // only filled on demand
    for (Index i = 0; i < L; ++i) {
      Index r = 0;
      for (Letter c : term(i)) r = r * p + c;
      if (seen[static_cast<std::size_t>(r)]) {
        add(Condition::g3, i, detail::render(term(i)) + " repeats an earlier term");
      } else {
        seen[static_cast<std::size_t>(r)] = true;
        ++distinct;
      }
    }
  } else {
    std::unordered_set<std::string> seen;
    for (Index i = 0; i < L; ++i) {
      auto t = term(i);
      std::string key(reinterpret_cast<const char*>(t.data()), t.size() * sizeof(Letter));
      if (!seen.insert(std::move(key)).second)
        add(Condition::g3, i, detail::render(t) + " repeats an earlier term");
      else
        ++distinct;
    }
  }

  // G1
  if (support.kind != Support::Kind::none) {
    for (Index i = 0; i < L; ++i) {
      if (!detail::in_support(term(i), p, support))
        add(Condition::g1, i,
            detail::render(term(i)) + " lies outside the " +
                std::string(to_string(support.kind)) + " support");
    }
    const auto expected = detail::support_size(support, p, n);
    if (expected && distinct != *expected) {
      std::ostringstream os;
      os << "covers " << distinct << " of " << *expected << " words";
      add(Condition::g1, L, os.str());
    }
  }
  return rep;
}

[[nodiscard]] inline VerificationReport verify_gray_cycle(const GrayCycle& cycle, unsigned k,
                                                          DistanceMode mode,
                                                          const Support& support = {}) {
  return verify_gray_cycle(cycle.flat(), cycle.word_length(), cycle.spec().p, k, mode, support);
}

// ---------------------------------------------------------------------------
// Hamiltonian-cycle oracle

inline constexpr std::size_t kOracleMaxVertices = 24;

namespace detail {

/// Backtracking Hamiltonian-cycle search on an adjacency-bitmask graph.
/// Vertex 0 is fixed as the start; a branch dies as soon as an unvisited
/// vertex keeps fewer than two usable neighbours.
class HamiltonSearch {
public:
  explicit HamiltonSearch(std::vector<std::uint32_t> adj)
      : adj_(std::move(adj)), n_(adj_.size()) {}

  bool run() {
    if (n_ == 0) return false;
    if (n_ == 1) return false;  // w is never at distance k >= 1 from itself
    if (n_ == 2) return (adj_[0] >> 1) & 1u;
    for (std::size_t v = 0; v < n_; ++v)
      if (std::popcount(adj_[v]) < 2) return false;
    if (!connected()) return false;
    return extend(0, 1u, 1);
  }

private:
  bool connected() const {
    std::uint32_t seen = 1u, frontier = 1u;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
      next &= ~seen;
      seen |= next;
      frontier = next;
    }
    return std::popcount(seen) == static_cast<int>(n_);
  }

  bool extend(std::size_t v, std::uint32_t visited, std::size_t depth) {
    if (depth == n_) return (adj_[v] & 1u) != 0;
    const std::uint32_t all = (n_ == 32) ? ~0u : ((1u << n_) - 1u);
    const std::uint32_t unvisited = all & ~visited;
    // Degree pruning: every unvisited vertex needs two neighbours among
    // {unvisited, current endpoint, start}; the start needs one unvisited
    // neighbour left.
    const std::uint32_t usable = unvisited | (1u << v) | 1u;
    for (std::uint32_t u = unvisited; u; u &= u - 1) {
      const auto w = static_cast<std::size_t>(std::countr_zero(u));
      if (std::popcount(adj_[w] & usable) < 2) return false;
    }
    if ((adj_[0] & unvisited) == 0) return false;
    for (std::uint32_t cand = adj_[v] & unvisited; cand; cand &= cand - 1) {
      const auto w = static_cast<std::size_t>(std::countr_zero(cand));
      if (extend(w, visited | (1u << w), depth + 1)) return true;
    }
    return false;
  }

  std::vector<std::uint32_t> adj_;
  std::size_t n_;
};

inline std::vector<std::uint32_t> distance_graph(std::span<const Word> words, unsigned k) {
  std::vector<std::uint32_t> adj(words.size(), 0);
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b)
      if (hamming_distance(words[a], words[b]) == k) {
        adj[a] |= 1u << b;
        adj[b] |= 1u << a;
      }
  return adj;
}

}  // namespace detail

/// Whether some cyclic ordering of `words` has every consecutive pair
/// (wraparound included) at Hamming distance exactly k. A single word never
/// qualifies; two words qualify iff they are at distance k.
[[nodiscard]] inline bool hamiltonian_oracle(std::span<const Word> words, unsigned k) {
  if (words.empty()) throw parameter_error("oracle needs at least one word");
  if (words.size() > kOracleMaxVertices)
    throw scale_error("hamiltonian oracle is limited to " + std::to_string(kOracleMaxVertices) +
                      " words");
  const auto n = words.front().size();
  for (const auto& w : words)
    if (w.size() != n) throw parameter_error("oracle words must share one length");
  return detail::HamiltonSearch(detail::distance_graph(words, k)).run();
}

// ---------------------------------------------------------------------------
// Brute-force maximum cycle length

/// Largest component size the subset enumeration will accept.
inline constexpr std::size_t kBruteforceMaxComponent = 16;
/// Largest word space the brute force will build a graph on.
inline constexpr Index kBruteforceMaxSpace = 1024;

namespace detail {

inline std::vector<Word> all_words(unsigned p, unsigned m) {
  const Index total = pow_or_throw(p, m);
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(total));
  for (Index r = 0; r < total; ++r) {
    Word w(m);
    Index x = r;
    for (std::size_t idx = m; idx-- > 0;) {
      w[idx] = static_cast<Letter>(x % p);
      x /= p;
    }
    out.push_back(std::move(w));
  }
  return out;
}

/// Connected components of the distance-k graph on `words`.
inline std::vector<std::vector<std::size_t>> components(const std::vector<Word>& words,
                                                        unsigned k) {
  std::vector<std::size_t> comp(words.size(), SIZE_MAX);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < words.size(); ++s) {
    if (comp[s] != SIZE_MAX) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = out.size() - 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (std::size_t u = 0; u < words.size(); ++u)
        if (comp[u] == SIZE_MAX && hamming_distance(words[v], words[u]) == k) {
          comp[u] = comp[s];
          stack.push_back(u);
        }
    }
  }
  return out;
}

/// Largest subset of `vertices` (adjacency over the component) admitting a
/// Hamiltonian cycle, or 0. Subsets are tried by decreasing size.
inline std::size_t best_subset(const std::vector<std::uint32_t>& adj) {
  const std::size_t m = adj.size();
  for (std::size_t size = m; size >= 2; --size) {
    // Gosper's hack over m-bit masks with `size` bits set.
    std::uint32_t mask = (size == 32) ? ~0u : ((1u << size) - 1u);
    const std::uint32_t limit = 1u << m;
    while (mask < limit) {
      std::vector<std::uint32_t> sub;
      sub.reserve(size);
      std::vector<std::size_t> ids;
      for (std::uint32_t b = mask; b; b &= b - 1) ids.push_back(std::countr_zero(b));
      for (std::size_t a = 0; a < ids.size(); ++a) {
        std::uint32_t row = 0;
        for (std::size_t b = 0; b < ids.size(); ++b)
          if ((adj[ids[a]] >> ids[b]) & 1u) row |= 1u << b;
        sub.push_back(row);
      }
      if (HamiltonSearch(std::move(sub)).run()) return size;
      const std::uint32_t c = mask & (~mask + 1);
      const std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return 0;
}

}  // namespace detail

/// Largest cardinality of a set of words of one common length m <= n that
/// admits a cyclic ordering with consecutive terms at distance exactly k.
/// A cycle never leaves a connected component of the distance-k graph, so
/// each component is searched separately; components above 16 words are
/// refused.
[[nodiscard]] inline Index lambda_bruteforce(unsigned p, unsigned n, unsigned k) {
  check_pnk(p, n, k);
  Index best = 0;
  for (unsigned m = k; m <= n; ++m) {
    const auto space = checked_pow(p, m);
    if (!space || *space > kBruteforceMaxSpace)
      throw scale_error("brute force limited to word spaces of " +
                        std::to_string(kBruteforceMaxSpace) + " words");
    const auto words = detail::all_words(p, m);
    const auto comps = detail::components(words, k);
    for (const auto& comp : comps)
      if (comp.size() > kBruteforceMaxComponent)
        throw scale_error("brute force limited to components of " +
                          std::to_string(kBruteforceMaxComponent) + " words, found " +
                          std::to_string(comp.size()));
    for (const auto& comp : comps) {
      if (comp.size() <= best) continue;
      std::vector<Word> sub;
      for (auto v : comp) sub.push_back(words[v]);
      best = std::max<Index>(best, detail::best_subset(detail::distance_graph(sub, k)));
    }
  }
  return best;
}

/// Whether lambda_bruteforce accepts these parameters.
[[nodiscard]] inline bool within_bruteforce_scale(unsigned p, unsigned n, unsigned k) {
  try {
    check_pnk(p, n, k);
    for (unsigned m = k; m <= n; ++m) {
      const auto space = checked_pow(p, m);
      if (!space || *space > kBruteforceMaxSpace) return false;
      const auto words = detail::all_words(p, m);
      for (const auto& comp : detail::components(words, k))
        if (comp.size() > kBruteforceMaxComponent) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Cross-check

/// Builds the cycle recursively, replays it with the iterative generator,
/// requires elementwise equality, then verifies the conditions against the
/// expected support.
[[nodiscard]] inline VerificationReport cross_check(const CycleSpec& spec,
                                                    EngineOptions options = {}) {
  const auto built = build(spec, options.limits);
  VerificationReport rep = verify_gray_cycle(built.cycle, spec.k, DistanceMode::exact_k,
                                             expected_support(spec));
  if (built.cycle.size() != lambda_max(spec.p, spec.n, spec.k) &&
      spec.variant != Variant::gamma_even_odd) {
    rep.add(Condition::g1, built.cycle.size(),
            "length " + std::to_string(built.cycle.size()) + " differs from the maximum " +
                std::to_string(lambda_max(spec.p, spec.n, spec.k)));
  }

  options.cyclic = false;
  auto gen = make_generator(spec, options);
  Word w(spec.n);
  std::size_t i = 0;
  std::size_t mismatches = 0;
  do {
    gen.render(w.digits());
    if (i >= built.cycle.size()) {
      rep.add(Condition::g1, i, "generator produced more terms than the builder");
      break;
    }
    const auto t = built.cycle.term(i);
    if (!std::equal(t.begin(), t.end(), w.digits().begin()) && mismatches++ < 8)
      rep.add(Condition::g1, i,
              "generator term " + w.to_string() + " differs from builder term " +
                  detail::render(t));
    ++i;
  } while (gen.next());
  if (i != built.cycle.size())
    rep.add(Condition::g1, i,
            "generator produced " + std::to_string(i) + " terms, builder " +
                std::to_string(built.cycle.size()));
  return rep;
}

}  // namespace sigmak
