#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "grid.hpp"
#include "oracles.hpp"
#include "sigmak/sigmak.hpp"

using namespace sigmak;

namespace {

std::vector<Letter> flat_of(std::initializer_list<const char*> words, unsigned p) {
  std::vector<Letter> out;
  for (const char* w : words) {
    const Word x = Word::parse(w, p);
    out.insert(out.end(), x.digits().begin(), x.digits().end());
  }
  return out;
}

std::vector<Word> words_of(std::initializer_list<const char*> words, unsigned p) {
  std::vector<Word> out;
  for (const char* w : words) out.push_back(Word::parse(w, p));
  return out;
}

std::vector<Word> all_words(unsigned p, unsigned n) {
  std::vector<Word> out;
  for (Index i = 0; i < oracle::ipow(p, n); ++i) {
    Word w(n);
    Index x = i;
    for (std::size_t t = n; t-- > 0; x /= p) w[t] = static_cast<Letter>(x % p);
    out.push_back(w);
  }
  return out;
}

}  // namespace

TEST(Verify, Examples) {
  const auto ok = verify_gray_cycle(flat_of({"00", "01", "11", "10"}, 2), 2, 2, 1,
                                    DistanceMode::exact_k, Support::full());
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(ok.terms, 4u);

  EXPECT_TRUE(verify_gray_cycle(flat_of({"00", "11"}, 2), 2, 2, 2, DistanceMode::exact_k,
                                Support::pair(Word(2, 0)))
                  .ok);

  const auto bad = verify_gray_cycle(flat_of({"00", "01", "10", "11"}, 2), 2, 2, 1,
                                     DistanceMode::exact_k, Support::full());
  EXPECT_FALSE(bad.ok);
  ASSERT_FALSE(bad.violations.empty());
  EXPECT_EQ(bad.violations[0].condition, Condition::g2);
  EXPECT_EQ(bad.violations[0].index, 2u);
}

TEST(Verify, WraparoundIsChecked) {
  // a Gray path that does not close
  const auto rep = verify_gray_cycle(flat_of({"0", "1", "2"}, 3), 1, 3, 1, DistanceMode::exact_k);
  EXPECT_TRUE(rep.ok);  // 2 -> 0 is one letter
  const auto path = verify_gray_cycle(flat_of({"00", "01", "11"}, 2), 2, 2, 1,
                                      DistanceMode::exact_k);
  EXPECT_FALSE(path.ok);
  EXPECT_EQ(path.first(Condition::g2), 0u);
}

TEST(Verify, RepeatsAndSupport) {
  const auto rep = verify_gray_cycle(flat_of({"00", "01", "00", "01"}, 2), 2, 2, 1,
                                     DistanceMode::exact_k, Support::full());
  EXPECT_TRUE(rep.has(Condition::g3));
  EXPECT_EQ(rep.first(Condition::g3), 2u);
  EXPECT_TRUE(rep.has(Condition::g1));  // covers 2 of 4

  const auto parity = verify_gray_cycle(flat_of({"00", "11"}, 2), 2, 2, 2,
                                        DistanceMode::exact_k, Support::odd());
  EXPECT_TRUE(parity.has(Condition::g1));
  EXPECT_FALSE(parity.has(Condition::g2));
}

TEST(Verify, SingleTermCannotClose) {
  const auto rep = verify_gray_cycle(flat_of({"01"}, 2), 2, 2, 1, DistanceMode::exact_k);
  EXPECT_TRUE(rep.has(Condition::g2));
}

TEST(Verify, AtMostMode) {
  const auto seq = flat_of({"00", "01", "10", "11"}, 2);
  EXPECT_FALSE(verify_gray_cycle(seq, 2, 2, 2, DistanceMode::exact_k).ok);
  EXPECT_TRUE(verify_gray_cycle(seq, 2, 2, 2, DistanceMode::at_most_k).ok);
  // at-most still forbids distance 0
  EXPECT_FALSE(verify_gray_cycle(flat_of({"00", "00"}, 2), 2, 2, 2, DistanceMode::at_most_k).ok);
}

TEST(Verify, MixedParityRejected) {
  // for even k every step preserves weight parity, so splicing the two parity
  // classes always produces a bad step
  for (unsigned k : {2u, 4u})
    for (unsigned n = k + 1; n <= k + 3; ++n) {
      const auto even = build_gamma_even(n, k, Parity::even).cycle;
      const auto odd = build_gamma_even(n, k, Parity::odd).cycle;
      std::vector<Letter> flat(even.flat().begin(), even.flat().end());
      flat.insert(flat.end(), odd.flat().begin(), odd.flat().end());
      const auto rep = verify_gray_cycle(flat, n, 2, k, DistanceMode::exact_k);
      EXPECT_TRUE(rep.has(Condition::g2)) << n << k;
    }
}

TEST(Verify, ErrorsOnMalformedInput) {
  EXPECT_THROW((void)verify_gray_cycle(std::vector<Letter>{0, 1, 1}, 2, 2, 1,
                                       DistanceMode::exact_k),
               parameter_error);
  EXPECT_THROW((void)verify_gray_cycle(std::vector<Letter>{}, 0, 2, 1, DistanceMode::exact_k),
               parameter_error);
}

TEST(Verify, LettersOutsideAlphabetViolateG1) {
  const auto rep = verify_gray_cycle(std::vector<Letter>{0, 3}, 1, 3, 1, DistanceMode::exact_k,
                                     Support::full());
  EXPECT_TRUE(rep.has(Condition::g1));
}

TEST(Oracle, Examples) {
  EXPECT_FALSE(hamiltonian_oracle(all_words(2, 2), 2));
  EXPECT_TRUE(hamiltonian_oracle(words_of({"00", "11"}, 2), 2));
  std::vector<Word> even;
  for (const auto& w : all_words(2, 4))
    if (w.count(1) % 2 == 0) even.push_back(w);
  EXPECT_TRUE(hamiltonian_oracle(even, 2));
  EXPECT_FALSE(hamiltonian_oracle(words_of({"01"}, 2), 1));
  EXPECT_FALSE(hamiltonian_oracle(words_of({"00", "01"}, 2), 2));
  EXPECT_TRUE(hamiltonian_oracle(all_words(3, 2), 1));
  EXPECT_TRUE(hamiltonian_oracle(all_words(2, 4), 1));
  EXPECT_FALSE(hamiltonian_oracle(all_words(2, 3), 3));  // four disjoint pairs
}

TEST(Oracle, Guards) {
  EXPECT_THROW((void)hamiltonian_oracle(all_words(5, 2), 1), scale_error);
  EXPECT_THROW((void)hamiltonian_oracle({}, 1), parameter_error);
  EXPECT_THROW((void)hamiltonian_oracle(words_of({"0", "01"}, 2), 1), parameter_error);
}

TEST(Oracle, OrderIndependent) {
  std::mt19937 rng(11);
  const std::vector<std::pair<std::vector<Word>, unsigned>> cases{
      {all_words(2, 3), 1}, {all_words(2, 3), 2}, {all_words(3, 2), 2},
      {all_words(2, 4), 3}, {all_words(3, 2), 1}, {all_words(2, 4), 2}};
  for (const auto& [set, k] : cases) {
    const bool want = hamiltonian_oracle(set, k);
    for (int t = 0; t < 10; ++t) {
      auto shuffled = set;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      EXPECT_EQ(hamiltonian_oracle(shuffled, k), want);
    }
  }
}

TEST(Oracle, AgreesWithConstructions) {
  // every constructed cycle small enough is confirmed by the search
  for (const auto& spec : grid::full()) {
    if (spec.length() > kOracleMaxVertices) continue;
    const auto c = build(spec).cycle;
    std::vector<Word> ws;
    for (std::size_t i = 0; i < c.size(); ++i) ws.push_back(c.word(i));
    EXPECT_TRUE(hamiltonian_oracle(ws, spec.k)) << spec.p << spec.n << spec.k;
  }
}

TEST(Bruteforce, Examples) {
  EXPECT_EQ(lambda_bruteforce(2, 3, 1), 8u);
  EXPECT_EQ(lambda_bruteforce(2, 3, 2), 4u);
  EXPECT_EQ(lambda_bruteforce(2, 2, 2), 2u);
}

TEST(Bruteforce, MatchesLambdaTable) {
  std::size_t checked = 0;
  for (unsigned p = 2; p <= 4; ++p)
    for (unsigned n = 1; n <= 5; ++n)
      for (unsigned k = 1; k <= n; ++k) {
        if (!within_bruteforce_scale(p, n, k)) continue;
        EXPECT_EQ(lambda_bruteforce(p, n, k), lambda_max(p, n, k)) << p << n << k;
        ++checked;
      }
  EXPECT_GE(checked, 8u);
}

TEST(Bruteforce, ScaleGuard) {
  EXPECT_THROW((void)lambda_bruteforce(2, 6, 1), scale_error);
  EXPECT_FALSE(within_bruteforce_scale(3, 3, 1));
  EXPECT_TRUE(within_bruteforce_scale(2, 4, 2));
}

TEST(Links, GammaRhoCrossBoundary) {
  // the last term of one sequence sits k+1 letters from the first of the other
  for (unsigned k : {1u, 3u, 5u})
    for (unsigned n = k + 1; n <= k + 5; ++n) {
      const auto out = build_gamma_rho_odd(n, k);
      const auto& g = out.cycle;
      const auto& r = *out.companion;
      const auto last = g.size() - 1;
      EXPECT_EQ(hamming_distance(g.term(0), r.term(last)), k + 1) << n << k;
      EXPECT_EQ(hamming_distance(r.term(0), g.term(last)), k + 1) << n << k;
      auto a = g.to_strings(), b = r.to_strings();
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b);
    }
}

TEST(Links, SuffixPeriodicity) {
  // h: length-j suffixes repeat every p^j terms for j in [n0, n]
  for (unsigned p : {3u, 4u})
    for (unsigned n = 1; n <= 7 && oracle::ipow(p, n) <= 2187; ++n)
      for (unsigned k = 1; k <= n; ++k)
        for (auto v : {Variant::h, Variant::h_modular}) {
          const auto c = build(CycleSpec::make(p, n, k, v)).cycle.to_strings();
          for (unsigned j = n - k + 1; j <= n; ++j) {
            const Index period = oracle::ipow(p, j);
            for (Index i = 0; i + period < c.size(); ++i)
              ASSERT_EQ(c[i].substr(n - j), c[i + period].substr(n - j)) << p << n << k << j;
          }
        }
  // γ: length-j suffixes repeat every 2^{j+1} terms for j in {n0, n0+2, ..., n}
  for (unsigned k : {1u, 3u, 5u, 7u})
    for (unsigned n = k + 1; n <= 10; ++n) {
      const auto c = build_gamma_rho_odd(n, k).cycle.to_strings();
      for (unsigned j = n - k + 1; j <= n; j += 2) {
        const Index period = Index{1} << (j + 1);
        for (Index i = 0; i + period < c.size(); ++i)
          ASSERT_EQ(c[i].substr(n - j), c[i + period].substr(n - j)) << n << k << j;
      }
    }
}

TEST(CrossCheck, Examples) {
  const auto a = cross_check(CycleSpec::make(3, 3, 2));
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(a.terms, 27u);
  const auto b = cross_check(CycleSpec::make(2, 5, 3));
  EXPECT_TRUE(b.ok);
  EXPECT_EQ(b.terms, 32u);
  const auto c = cross_check(CycleSpec::make(2, 6, 4));
  EXPECT_TRUE(c.ok);
  EXPECT_EQ(c.terms, 32u);
}

TEST(CrossCheck, FlagsTheOpenReflectedCycle) {
  const auto rep = cross_check(CycleSpec::make(3, 3, 2, Variant::h));
  EXPECT_FALSE(rep.ok);
  EXPECT_TRUE(rep.has(Condition::g2));
  EXPECT_FALSE(rep.has(Condition::g3));
}
