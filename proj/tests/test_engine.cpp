#include <gtest/gtest.h>

#include "golden.hpp"
#include "grid.hpp"
#include "oracles.hpp"
#include "sigmak/sigmak.hpp"

using namespace sigmak;

namespace {

EngineOptions with(Strategy s, bool cyclic = false) {
  EngineOptions o;
  o.strategy = s;
  o.cyclic = cyclic;
  return o;
}

std::vector<std::string> run_all(Generator g) {
  std::vector<std::string> out;
  do out.push_back(g.current().to_string());
  while (g.next());
  return out;
}

struct CostStats {
  std::size_t first = 0, max = 0, min = SIZE_MAX;
  double mean = 0;
  Index steps = 0;
};

CostStats costs(const CycleSpec& spec, Strategy s, bool cyclic = false, Index steps = 0) {
  auto g = make_generator(spec, with(s, cyclic));
  CostStats c;
  std::uint64_t total = 0;
  const Index limit = steps ? steps : spec.length() - 1;
  for (Index t = 0; t < limit; ++t) {
    if (!g.next()) break;
    const auto x = g.last_step_cost();
    if (c.steps == 0) c.first = x;
    c.max = std::max(c.max, x);
    c.min = std::min(c.min, x);
    total += x;
    ++c.steps;
  }
  c.mean = c.steps ? static_cast<double>(total) / static_cast<double>(c.steps) : 0.0;
  return c;
}

}  // namespace

TEST(PiPhi, PiIsOneEightCycle) {
  QC x = PiPhiTables::cycle[0];
  std::set<std::pair<int, int>> seen;
  for (int t = 0; t < 8; ++t) {
    seen.insert({x.q, x.c});
    x = PiPhiTables::pi(x).value();
  }
  EXPECT_EQ(seen.size(), 8u);
  EXPECT_EQ(x, PiPhiTables::cycle[0]);
  EXPECT_FALSE(PiPhiTables::pi(QC{0, 0b11}).has_value());
}

TEST(PiPhi, PhiIsPiAfterShift) {
  for (const auto& x : PiPhiTables::cycle) {
    const QC shifted{x.q, static_cast<std::uint8_t>(x.c ^ 0b11)};  // θ^{-1} on two bits
    ASSERT_TRUE(PiPhiTables::phi(shifted).has_value()) << int(x.q);
    EXPECT_EQ(*PiPhiTables::phi(shifted), *PiPhiTables::pi(x)) << int(x.q);
  }
  EXPECT_EQ(*PiPhiTables::phi(QC{7, 0b11}), (QC{0, 0b00}));
  EXPECT_EQ(*PiPhiTables::phi(QC{0, 0b11}), (QC{1, 0b01}));
  // domain is exactly eight pairs
  int domain = 0;
  for (std::uint8_t q = 0; q < 8; ++q)
    for (std::uint8_t c = 0; c < 4; ++c) domain += PiPhiTables::phi(QC{q, c}).has_value();
  EXPECT_EQ(domain, 8);
}

TEST(Engines, SpecExamples) {
  HEngine h(3, 3, 2, with(Strategy::loopless), false);
  EXPECT_EQ(h.current().to_string(), "000");
  h.next();
  EXPECT_EQ(h.current().to_string(), "101");
  for (int t = 0; t < 8; ++t) h.next();
  EXPECT_EQ(h.current().to_string(), "100");
  EXPECT_EQ(h.index(), 9u);

  GammaEngine g(5, 3, with(Strategy::loopless), false);
  EXPECT_EQ(g.current().to_string(), "00000");
  g.next();
  EXPECT_EQ(g.current().to_string(), "11100");
  for (int t = 0; t < 7; ++t) g.next();
  EXPECT_EQ(g.current().to_string(), "01100");

  EvenKEngine e(6, 4, Parity::even, with(Strategy::cat));
  EvenKEngine o(6, 4, Parity::odd, with(Strategy::cat));
  e.next();
  o.next();
  EXPECT_EQ(e.current().to_string(), "111100");
  EXPECT_EQ(o.current().to_string(), "011100");

  EXPECT_EQ(HEngine(3, 4, 2).current().to_string(), "0000");
  EXPECT_EQ(GammaEngine(7, 3).current().to_string(), "0000000");
  EXPECT_TRUE(HEngine(4, 3, 1).cells().empty());
  EXPECT_TRUE(GammaEngine(3, 1).row().empty());
}

TEST(Engines, GoldenRuns) {
  for (auto s : {Strategy::loopless, Strategy::cat}) {
    EXPECT_EQ(run_all(make_generator(CycleSpec::make(3, 3, 2, Variant::h), with(s))),
              golden::h32_p3);
    EXPECT_EQ(run_all(make_generator(CycleSpec::make(2, 5, 3, Variant::gamma), with(s))),
              golden::gamma53);
    EXPECT_EQ(run_all(make_generator(CycleSpec::make(3, 2, 2), with(s))),
              (std::vector<std::string>{"00", "11", "22", "10", "21", "02", "20", "01", "12"}));
  }
}

TEST(Engines, MatchBuildersOnGrid) {
  for (const auto& spec : grid::full()) {
    const auto built = build(spec).cycle.to_strings();
    for (auto s : {Strategy::loopless, Strategy::cat})
      ASSERT_EQ(run_all(make_generator(spec, with(s))), built)
          << to_string(spec.variant) << " " << to_string(s) << " p=" << spec.p
          << " n=" << spec.n << " k=" << spec.k;
  }
}

TEST(Engines, ReflectedVariantMatchesBuilder) {
  for (unsigned p : {3u, 5u})
    for (unsigned n = 1; n <= 5; ++n)
      for (unsigned k = 1; k <= n; ++k) {
        const auto spec = CycleSpec::make(p, n, k, Variant::h);
        if (spec.length() > 4000) continue;
        const auto built = build(spec).cycle.to_strings();
        for (auto s : {Strategy::loopless, Strategy::cat})
          ASSERT_EQ(run_all(make_generator(spec, with(s))), built) << p << n << k;
      }
}

TEST(Engines, BoundedModeStops) {
  auto g = make_generator(CycleSpec::make(3, 2, 1));
  for (int t = 0; t < 8; ++t) EXPECT_TRUE(g.next());
  const auto last = g.current();
  EXPECT_FALSE(g.next());
  EXPECT_EQ(g.current(), last);
  EXPECT_EQ(g.index(), 8u);
}

TEST(Engines, CyclicModeRepeatsTheCycle) {
  std::vector<CycleSpec> specs{CycleSpec::make(3, 4, 2),          CycleSpec::make(4, 4, 3),
                               CycleSpec::make(5, 3, 1),          CycleSpec::make(2, 5, 3),
                               CycleSpec::make(2, 5, 3, Variant::rho), CycleSpec::make(2, 7, 3),
                               CycleSpec::make(2, 4, 1),          CycleSpec::make(2, 8, 5),
                               CycleSpec::make(2, 6, 4),          CycleSpec::make(2, 5, 2, Variant::gamma_even_odd),
                               CycleSpec::make(2, 3, 3)};
  for (const auto& spec : specs) {
    const auto built = build(spec).cycle.to_strings();
    for (auto s : {Strategy::loopless, Strategy::cat}) {
      auto g = make_generator(spec, with(s, true));
      for (Index t = 0; t < 3 * built.size(); ++t) {
        ASSERT_EQ(g.current().to_string(), built[t % built.size()])
            << to_string(spec.variant) << spec.n << spec.k << " t=" << t;
        ASSERT_TRUE(g.next());
      }
    }
  }
}

TEST(Engines, LooplessCostIsConstant) {
  for (const auto& spec : grid::full()) {
    if (spec.length() < 2) continue;
    const auto c = costs(spec, Strategy::loopless);
    EXPECT_EQ(c.max, c.first) << to_string(spec.variant) << spec.p << spec.n << spec.k;
    EXPECT_EQ(c.min, c.first);
  }
  // over a second lap as well
  for (auto spec : {CycleSpec::make(2, 9, 3), CycleSpec::make(3, 6, 3), CycleSpec::make(2, 8, 4)}) {
    const auto c = costs(spec, Strategy::loopless, true, 2 * spec.length());
    EXPECT_EQ(c.max, c.min);
  }
}

TEST(Engines, LooplessCostIndependentOfN) {
  for (unsigned k = 1; k <= 4; ++k)
    for (unsigned p : {3u, 4u}) {
      const auto ref = costs(CycleSpec::make(p, k + 2, k), Strategy::loopless, false, 200).max;
      for (unsigned n = k + 3; n <= k + 6; ++n) {
        if (pow_or_throw(p, n - k + 1) > kDefaultPreprocessThreshold) break;
        EXPECT_EQ(costs(CycleSpec::make(p, n, k), Strategy::loopless, false, 200).max, ref);
      }
    }
  for (unsigned k : {1u, 3u, 5u, 2u, 4u}) {
    const auto ref = costs(CycleSpec::make(2, k + 2, k), Strategy::loopless, false, 500).max;
    for (unsigned n = k + 3; n <= k + 6; ++n)
      EXPECT_EQ(costs(CycleSpec::make(2, n, k), Strategy::loopless, false, 500).max, ref)
          << n << k;
  }
}

TEST(Engines, CatAmortizedBound) {
  for (const auto& spec : grid::full()) {
    if (spec.length() < 2) continue;
    const auto c = costs(spec, Strategy::cat);
    EXPECT_LE(c.mean, kCatCostFactor * spec.k + 1.0)
        << to_string(spec.variant) << spec.p << spec.n << spec.k;
  }
}

TEST(Engines, HColumnTracesArePeriodic) {
  for (unsigned p : {3u, 4u})
    for (unsigned n = 2; n <= 6 && oracle::ipow(p, n) <= 2187; ++n)
      for (unsigned k = 2; k <= n; ++k) {
        HEngine e(p, n, k, with(Strategy::loopless, true), p % 2 == 1);
        const Index L = e.length();
        std::vector<std::vector<Letter>> trace(e.cells().size());
        for (Index t = 0; t < 2 * L; ++t) {
          for (std::size_t c = 0; c < trace.size(); ++c) trace[c].push_back(e.cells()[c]);
          e.next();
        }
        for (std::size_t c = 0; c < trace.size(); ++c) {
          const unsigned j = n - static_cast<unsigned>(c);
          const Index period = oracle::ipow(p, j);
          for (Index t = 0; t + period < trace[c].size(); ++t)
            ASSERT_EQ(trace[c][t], trace[c][t + period]) << p << n << k << " j=" << j;
        }
      }
}

TEST(Engines, GammaColumnTracesArePeriodic) {
  for (unsigned k : {3u, 5u, 7u})
    for (unsigned n = k + 1; n <= 10; ++n) {
      GammaEngine e(n, k, with(Strategy::cat, true));
      const Index L = e.length();
      std::vector<std::vector<std::pair<int, int>>> trace(e.row().size());
      for (Index t = 0; t < 2 * L; ++t) {
        for (std::size_t c = 0; c < trace.size(); ++c)
          trace[c].push_back({e.row()[c].q, e.row()[c].c});
        e.next();
      }
      for (std::size_t c = 0; c < trace.size(); ++c) {
        const unsigned j = n - 2 * static_cast<unsigned>(c);
        const Index period = Index{1} << (j + 1);
        for (Index t = 0; t + period < trace[c].size(); ++t)
          ASSERT_EQ(trace[c][t], trace[c][t + period]) << n << k << " j=" << j;
        // Q is the quotient of i mod 2^{j+1} by 2^{j-2} (top column: mod 4)
        for (Index t = 0; t < L; ++t) {
          const Index q = (t % (Index{1} << (j + 1))) >> (j - 2);
          ASSERT_EQ(static_cast<Index>(trace[c][t].first), c == 0 ? q % 4 : q) << n << k << t;
        }
      }
    }
}

TEST(Engines, ThresholdRefusesLoopless) {
  EngineOptions o = with(Strategy::loopless);
  o.preprocess_threshold = 8;
  EXPECT_THROW(HEngine(3, 4, 2, o), threshold_error);
  EXPECT_THROW(GammaEngine(5, 1, o), threshold_error);
  o.preprocess_threshold = 16;
  EXPECT_NO_THROW(GammaEngine(5, 3, o));  // n0 = 3: γ and ρ tables of 8 each
  o.strategy = Strategy::cat;
  EXPECT_NO_THROW(HEngine(3, 4, 2, o));
}

TEST(Engines, PreprocessSize) {
  EXPECT_EQ(preprocess_size(CycleSpec::make(3, 5, 3)), 27u);
  EXPECT_EQ(preprocess_size(CycleSpec::make(2, 5, 3)), 16u);
  EXPECT_EQ(preprocess_size(CycleSpec::make(2, 5, 1)), 32u);
  EXPECT_EQ(preprocess_size(CycleSpec::make(2, 6, 2)), 32u);
  EXPECT_EQ(preprocess_size(CycleSpec::make(2, 4, 4)), 0u);
}

TEST(Engines, LargeStreamSpotCheck) {
  // far beyond materialization; compare a window against the index oracle
  const std::pair<unsigned, Strategy> cases[] = {{25, Strategy::loopless}, {5, Strategy::cat}};
  for (auto [k, s] : cases) {
    auto g = make_generator(CycleSpec::make(2, 30, k), with(s));
    for (Index i = 0; i < 5000; ++i) {
      ASSERT_EQ(g.current().to_string(), oracle::str(oracle::gamma_rho(30, k, i, false)))
          << k << " " << i;
      g.next();
    }
  }
  auto h = make_generator(CycleSpec::make(3, 20, 14), with(Strategy::loopless));
  for (Index i = 0; i < 5000; ++i) {
    ASSERT_EQ(h.current().to_string(), oracle::str(oracle::h(3, 20, 14, i, true))) << i;
    h.next();
  }
}
