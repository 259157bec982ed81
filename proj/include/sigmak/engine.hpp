#pragma once

// Iterative generators: each next() turns term i-1 into term i by updating
// one cell per column plus the base column.
//
// HEngine (p >= 3) keeps one letter per position n..n0+1; a cell moves by θ,
// or by θ² when i is a multiple of p^{j-1}. The last n0 letters walk through
// a p-ary Gray code (reflected or modular), either by table lookup
// (loopless) or by stepping (constant amortized time).
//
// GammaEngine (p = 2, k odd) keeps a pair (q, c) per column j = n, n-2, ...,
// n0+2, with c two letters and q in [0, 7]; the pair moves by complementing
// c, or through the φ table when i is a multiple of 2^{j-2}. The last n0
// letters follow γ^{n0,1} then ρ^{n0,1}, switching every 2^{n0} steps.

#include <array>
#include <cstdlib>
#include <memory>
#include <optional>
#include <variant>

#include "sigmak/base_codes.hpp"
#include "sigmak/builders.hpp"

namespace sigmak {

enum class Strategy { cat, loopless };

[[nodiscard]] inline std::string_view to_string(Strategy s) noexcept {
  return s == Strategy::cat ? "cat" : "loopless";
}

inline constexpr Index kDefaultPreprocessThreshold = Index{1} << 20;

/// Amortized bound for the CAT strategy: mean step cost <= kCatCostFactor*k + 1.
/// Measured (mean-1)/k tops out just under 1 (at p=2, k=2, long words, where
/// the reflected stepper's two-positions-per-step average dominates).
inline constexpr unsigned kCatCostFactor = 2;

/// Loopless preprocessing would need a larger table than allowed.
class threshold_error : public scale_error {
public:
  using scale_error::scale_error;
};

struct EngineOptions {
  Strategy strategy = Strategy::loopless;
  Index preprocess_threshold = kDefaultPreprocessThreshold;
  /// Keep going past the last term, wrapping to term 0.
  bool cyclic = false;
  Limits limits{};
};

// ---------------------------------------------------------------------------
// π and φ

/// One state of the eight-element cycle driving the binary columns.
struct QC {
  std::uint8_t q = 0;
  std::uint8_t c = 0;  // two letters packed as (first << 1) | second

  friend bool operator==(const QC&, const QC&) = default;
};

[[nodiscard]] constexpr std::uint8_t pack2(Letter hi, Letter lo) noexcept {
  return static_cast<std::uint8_t>((hi << 1) | lo);
}

struct PiPhiTables {
  /// π as the ordered cycle (0,00) (1,01) (2,11) (3,10) (4,10) (5,11) (6,01) (7,00).
  static constexpr std::array<QC, 8> cycle = {{{0, 0b00},
                                               {1, 0b01},
                                               {2, 0b11},
                                               {3, 0b10},
                                               {4, 0b10},
                                               {5, 0b11},
                                               {6, 0b01},
                                               {7, 0b00}}};

  /// π(q, c); nullopt off the cycle.
  [[nodiscard]] static constexpr std::optional<QC> pi(QC x) noexcept {
    for (std::size_t t = 0; t < cycle.size(); ++t)
      if (cycle[t] == x) return cycle[(t + 1) % cycle.size()];
    return std::nullopt;
  }

  /// φ(q, c) indexed by q; its domain is {(q, θ^{-1}(c_q))}.
  static constexpr std::array<QC, 8> phi_by_q = {{{1, 0b01},
                                                  {2, 0b11},
                                                  {3, 0b10},
                                                  {4, 0b10},
                                                  {5, 0b11},
                                                  {6, 0b01},
                                                  {7, 0b00},
                                                  {0, 0b00}}};
  static constexpr std::array<std::uint8_t, 8> phi_domain_c = {0b11, 0b10, 0b00, 0b01,
                                                                0b01, 0b00, 0b10, 0b11};

  /// φ(q, c); nullopt outside the domain.
  [[nodiscard]] static constexpr std::optional<QC> phi(QC x) noexcept {
    if (x.q >= 8 || phi_domain_c[x.q] != x.c) return std::nullopt;
    return phi_by_q[x.q];
  }
};

// ---------------------------------------------------------------------------
// Algorithm for p >= 3

class HEngine {
public:
  HEngine(unsigned p, unsigned n, unsigned k, EngineOptions options = {},
          bool modular_base = false)
      : spec_(CycleSpec::make(p, n, k, modular_base ? Variant::h_modular : Variant::h)),
        opts_(options) {
    const BaseKind kind = modular_base ? BaseKind::m1 : BaseKind::h1;
    n0_ = spec_.n0();
    length_ = spec_.length();
    check_stream(length_, opts_.limits);
    const unsigned columns = n - n0_;
    cells_.assign(columns, 0);
    period_.resize(columns);
    countdown_.resize(columns);
    for (unsigned c = 0; c < columns; ++c) {
      const unsigned j = n - c;
      period_[c] = pow_or_throw(p, j - 1);
      countdown_[c] = period_[c];
    }
    const Index base_terms = pow_or_throw(p, n0_);
    if (opts_.strategy == Strategy::loopless) {
      if (base_terms > opts_.preprocess_threshold)
        throw threshold_error("base table of " + std::to_string(base_terms) +
                              " entries exceeds preprocessing threshold " +
                              std::to_string(opts_.preprocess_threshold));
      Limits table_limits = opts_.limits;
      table_limits.materialize = std::max(table_limits.materialize, base_terms);
      table_ = std::make_shared<const BaseTable>(make_base_table(kind, p, n0_, table_limits));
      omega_.resize(static_cast<std::size_t>(base_terms));
      for (Index t = 0; t < base_terms; ++t) omega_[t] = (t + 1 == base_terms) ? 0 : t + 1;
    } else {
      stepper_ = BaseStepper(kind, p, n0_);
    }
  }

  [[nodiscard]] const CycleSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] Index index() const noexcept { return i_; }
  [[nodiscard]] Index length() const noexcept { return length_; }
  [[nodiscard]] unsigned word_length() const noexcept { return spec_.n; }
  [[nodiscard]] std::size_t last_step_cost() const noexcept { return last_cost_; }
  [[nodiscard]] Strategy strategy() const noexcept { return opts_.strategy; }

  /// Column cells for positions n down to n0+1.
  [[nodiscard]] std::span<const Letter> cells() const noexcept { return cells_; }

  /// The current n0-letter base word.
  [[nodiscard]] std::span<const Letter> base_word() const {
    return table_ ? table_->term(base_index_) : stepper_.current();
  }

  void render(std::span<Letter> out) const {
    std::copy(cells_.begin(), cells_.end(), out.begin());
    const auto b = base_word();
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(cells_.size()));
  }

  [[nodiscard]] Word current() const {
    Word w(spec_.n);
    render(w.digits());
    return w;
  }

  /// Advances to the next term. In bounded mode returns false (and leaves
  /// the state untouched) once the last term has been produced.
  bool next() {
    if (i_ + 1 == length_) {
      if (!opts_.cyclic) return false;
      i_ = 0;
    } else {
      ++i_;
    }
    std::size_t cost = 0;
    const unsigned p = spec_.p;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      if (--countdown_[c] == 0) {
        countdown_[c] = period_[c];
        cells_[c] = theta(cells_[c], 2, p);
      } else {
        cells_[c] = theta(cells_[c], p);
      }
      ++cost;
    }
    if (table_) {
      base_index_ = omega_[static_cast<std::size_t>(base_index_)];
      ++cost;
    } else {
      cost += stepper_.advance();
    }
    last_cost_ = cost;
    return true;
  }

private:
  CycleSpec spec_;
  EngineOptions opts_;
  unsigned n0_ = 0;
  Index length_ = 0;
  Index i_ = 0;
  std::vector<Letter> cells_;
  std::vector<Index> period_;     // p^{j-1}
  std::vector<Index> countdown_;  // steps until the next multiple of p^{j-1}
  std::shared_ptr<const BaseTable> table_;
  std::vector<Index> omega_;
  Index base_index_ = 0;
  BaseStepper stepper_;
  std::size_t last_cost_ = 0;
};

// ---------------------------------------------------------------------------
// Algorithm for p = 2, k odd

class GammaEngine {
public:
  /// Generates γ^{n,k}, or ρ^{n,k} when `rho` is set.
  GammaEngine(unsigned n, unsigned k, EngineOptions options = {}, bool rho = false)
      : spec_(CycleSpec::make(2, n, k, rho ? Variant::rho : Variant::gamma)), opts_(options) {
    n0_ = spec_.n0();
    length_ = spec_.length();
    check_stream(length_, opts_.limits);
    const unsigned columns = (k - 1) / 2;
    start_ = rho ? QC{4, 0b10} : QC{0, 0b00};
    row_.assign(columns, QC{0, 0b00});
    if (columns > 0) row_[0] = start_;
    period_.resize(columns);
    countdown_.resize(columns);
    for (unsigned c = 0; c < columns; ++c) {
      const unsigned j = n - 2 * c;
      period_[c] = Index{1} << (j - 2);
      countdown_[c] = period_[c];
    }
    half_ = Index{1} << n0_;
    // With k = 1 the base column is the whole cycle; otherwise it runs
    // through γ^{n0,1} then ρ^{n0,1}.
    single_base_ = (k == 1);
    mu0_period_ = single_base_ ? half_ : 2 * half_;
    b_rho_ = single_base_ && rho;

    if (opts_.strategy == Strategy::loopless) {
      if (mu0_period_ > opts_.preprocess_threshold)
        throw threshold_error("base table of " + std::to_string(mu0_period_) +
                              " entries exceeds preprocessing threshold " +
                              std::to_string(opts_.preprocess_threshold));
      Limits table_limits = opts_.limits;
      table_limits.materialize = std::max(table_limits.materialize, half_);
      auto combined = std::make_shared<BaseTable>();
      combined->p = 2;
      combined->n0 = n0_;
      combined->kind = b_rho_ ? BaseKind::rho1 : BaseKind::gamma1;
      if (single_base_) {
        *combined = b_rho_ ? rho_base(n0_, table_limits) : gamma_base(n0_, table_limits);
      } else {
        const auto g = gamma_base(n0_, table_limits);
        const auto r = rho_base(n0_, table_limits);
        combined->flat = g.flat;
        combined->flat.insert(combined->flat.end(), r.flat.begin(), r.flat.end());
        combined->terms = g.terms + r.terms;
      }
      table_ = std::move(combined);
    } else {
      gamma_stepper_ = BaseStepper(BaseKind::gamma1, 2, n0_);
      rho_stepper_ = BaseStepper(BaseKind::rho1, 2, n0_);
    }
  }

  [[nodiscard]] const CycleSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] Index index() const noexcept { return i_; }
  [[nodiscard]] Index length() const noexcept { return length_; }
  [[nodiscard]] unsigned word_length() const noexcept { return spec_.n; }
  [[nodiscard]] std::size_t last_step_cost() const noexcept { return last_cost_; }
  [[nodiscard]] Strategy strategy() const noexcept { return opts_.strategy; }

  /// (Q, C) pairs for columns n, n-2, ..., n0+2.
  [[nodiscard]] std::span<const QC> row() const noexcept { return row_; }
  /// True while the base column is inside ρ^{n0,1}.
  [[nodiscard]] bool base_is_rho() const noexcept { return b_rho_; }
  /// μ(i, n0): position inside the (γ, ρ) base period.
  [[nodiscard]] Index mu0() const noexcept { return mu0_; }

  [[nodiscard]] std::span<const Letter> base_word() const {
    if (table_) return table_->term(mu0_);
    return b_rho_ ? rho_stepper_.current() : gamma_stepper_.current();
  }

  void render(std::span<Letter> out) const {
    auto it = out.begin();
    for (const QC& x : row_) {
      *it++ = static_cast<Letter>(x.c >> 1);
      *it++ = static_cast<Letter>(x.c & 1);
    }
    const auto b = base_word();
    std::copy(b.begin(), b.end(), it);
  }

  [[nodiscard]] Word current() const {
    Word w(spec_.n);
    render(w.digits());
    return w;
  }

  bool next() {
    if (i_ + 1 == length_) {
      if (!opts_.cyclic) return false;
      i_ = 0;
    } else {
      ++i_;
    }
    std::size_t cost = 0;
    for (std::size_t c = 0; c < row_.size(); ++c) {
      QC& x = row_[c];
      if (--countdown_[c] == 0) {
        countdown_[c] = period_[c];
        x = PiPhiTables::phi_by_q[x.q];
        // The top column cycles through four states only.
        if (c == 0 && x.q == ((start_.q + 4) & 7)) x = start_;
      } else {
        x.c ^= 0b11;
      }
      ++cost;
    }
    cost += advance_base();
    last_cost_ = cost;
    return true;
  }

private:
  std::size_t advance_base() {
    mu0_ = (mu0_ + 1 == mu0_period_) ? 0 : mu0_ + 1;
    if (single_base_) return table_ ? 1 : (b_rho_ ? rho_stepper_ : gamma_stepper_).advance();
    if (table_) {
      b_rho_ = mu0_ >= half_;
      return 1;
    }
    if (mu0_ == 0 || mu0_ == half_) {
      // Switch between γ^{n0,1} and ρ^{n0,1}: the outgoing stepper is
      // rewound for its next turn, the incoming one sits at its term 0.
      BaseStepper& outgoing = b_rho_ ? rho_stepper_ : gamma_stepper_;
      b_rho_ = (mu0_ == half_);
      const std::size_t writes =
          hamming_distance(outgoing.current(), (b_rho_ ? rho_stepper_ : gamma_stepper_).current());
      return writes + outgoing.restart();
    }
    return (b_rho_ ? rho_stepper_ : gamma_stepper_).advance();
  }

  CycleSpec spec_;
  EngineOptions opts_;
  unsigned n0_ = 0;
  Index length_ = 0;
  Index i_ = 0;
  QC start_{};
  std::vector<QC> row_;
  std::vector<Index> period_;     // 2^{j-2}
  std::vector<Index> countdown_;
  Index half_ = 0;                // 2^{n0}
  Index mu0_period_ = 0;
  Index mu0_ = 0;
  bool single_base_ = false;
  bool b_rho_ = false;
  std::shared_ptr<const BaseTable> table_;
  BaseStepper gamma_stepper_;
  BaseStepper rho_stepper_;
  std::size_t last_cost_ = 0;
};

// ---------------------------------------------------------------------------
// p = 2, k even: alternate a leading letter in front of γ^{n-1,k-1}

class EvenKEngine {
public:
  EvenKEngine(unsigned n, unsigned k, Parity parity, EngineOptions options = {})
      : spec_(CycleSpec::make(2, n, k,
                              parity == Parity::even ? Variant::gamma_even
                                                     : Variant::gamma_even_odd)),
        inner_(n - 1, k - 1, options),
        lead_(parity == Parity::even ? 0 : 1) {}

  [[nodiscard]] const CycleSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] Index index() const noexcept { return inner_.index(); }
  [[nodiscard]] Index length() const noexcept { return inner_.length(); }
  [[nodiscard]] unsigned word_length() const noexcept { return spec_.n; }
  [[nodiscard]] std::size_t last_step_cost() const noexcept { return inner_.last_step_cost() + 1; }
  [[nodiscard]] const GammaEngine& inner() const noexcept { return inner_; }

  void render(std::span<Letter> out) const {
    out[0] = lead_;
    inner_.render(out.subspan(1));
  }

  [[nodiscard]] Word current() const {
    Word w(spec_.n);
    render(w.digits());
    return w;
  }

  bool next() {
    if (!inner_.next()) return false;
    lead_ ^= 1;
    return true;
  }

private:
  CycleSpec spec_;
  GammaEngine inner_;
  Letter lead_;
};

// ---------------------------------------------------------------------------
// p = 2, n = k

class TrivialEngine {
public:
  explicit TrivialEngine(unsigned k, EngineOptions options = {})
      : spec_(CycleSpec::make(2, k, k, Variant::trivial_binary)), opts_(options) {}

  [[nodiscard]] const CycleSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] Index index() const noexcept { return i_; }
  [[nodiscard]] Index length() const noexcept { return 2; }
  [[nodiscard]] unsigned word_length() const noexcept { return spec_.n; }
  [[nodiscard]] std::size_t last_step_cost() const noexcept { return last_cost_; }

  void render(std::span<Letter> out) const {
    std::fill_n(out.begin(), spec_.n, static_cast<Letter>(i_));
  }

  [[nodiscard]] Word current() const { return Word(spec_.n, static_cast<Letter>(i_)); }

  bool next() {
    if (i_ == 1 && !opts_.cyclic) return false;
    i_ ^= 1;
    last_cost_ = spec_.n;
    return true;
  }

private:
  CycleSpec spec_;
  EngineOptions opts_;
  Index i_ = 0;
  std::size_t last_cost_ = 0;
};

// ---------------------------------------------------------------------------
// Facade

/// Any of the iterative generators behind one interface.
class Generator {
public:
  using Engine = std::variant<HEngine, GammaEngine, EvenKEngine, TrivialEngine>;

  explicit Generator(Engine e) : engine_(std::move(e)) {}

  [[nodiscard]] const CycleSpec& spec() const {
    return std::visit([](const auto& e) -> const CycleSpec& { return e.spec(); }, engine_);
  }
  [[nodiscard]] Index index() const {
    return std::visit([](const auto& e) { return e.index(); }, engine_);
  }
  [[nodiscard]] Index length() const {
    return std::visit([](const auto& e) { return e.length(); }, engine_);
  }
  [[nodiscard]] unsigned word_length() const {
    return std::visit([](const auto& e) { return e.word_length(); }, engine_);
  }
  [[nodiscard]] std::size_t last_step_cost() const {
    return std::visit([](const auto& e) { return e.last_step_cost(); }, engine_);
  }
  void render(std::span<Letter> out) const {
    std::visit([out](const auto& e) { e.render(out); }, engine_);
  }
  [[nodiscard]] Word current() const {
    return std::visit([](const auto& e) { return e.current(); }, engine_);
  }
  bool next() {
    return std::visit([](auto& e) { return e.next(); }, engine_);
  }

  [[nodiscard]] const Engine& engine() const noexcept { return engine_; }

private:
  Engine engine_;
};

/// Size of the table loopless preprocessing needs for this spec.
[[nodiscard]] inline Index preprocess_size(const CycleSpec& spec) {
  switch (spec.variant) {
    case Variant::h:
    case Variant::h_modular: return pow_or_throw(spec.p, spec.n0());
    case Variant::gamma:
    case Variant::rho:
      return spec.k == 1 ? pow_or_throw(2, spec.n0()) : pow_or_throw(2, spec.n0() + 1);
    case Variant::gamma_even:
    case Variant::gamma_even_odd:
      // inner γ^{n-1,k-1} has the same n0
      return spec.k == 2 ? pow_or_throw(2, spec.n0()) : pow_or_throw(2, spec.n0() + 1);
    case Variant::trivial_binary: return 0;
  }
  return 0;
}

[[nodiscard]] inline Generator make_generator(const CycleSpec& spec, EngineOptions options = {}) {
  switch (spec.variant) {
    case Variant::h: return Generator(HEngine(spec.p, spec.n, spec.k, options));
    case Variant::h_modular: return Generator(HEngine(spec.p, spec.n, spec.k, options, true));
    case Variant::gamma: return Generator(GammaEngine(spec.n, spec.k, options, false));
    case Variant::rho: return Generator(GammaEngine(spec.n, spec.k, options, true));
    case Variant::gamma_even:
      return Generator(EvenKEngine(spec.n, spec.k, Parity::even, options));
    case Variant::gamma_even_odd:
      return Generator(EvenKEngine(spec.n, spec.k, Parity::odd, options));
    case Variant::trivial_binary: return Generator(TrivialEngine(spec.k, options));
  }
  throw parameter_error("unknown variant");
}

}  // namespace sigmak
