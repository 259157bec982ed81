#pragma once

// The one-letter-change base sequences: the reflected binary and p-ary Gray
// codes, and the reversed/shifted binary pair that seeds the binary
// constructions. Each comes as a materialized table and as an O(1)-state
// stepper.

#include <memory>
#include <string>
#include <vector>

#include "sigmak/word.hpp"

namespace sigmak {

enum class BaseKind {
  g,       // reflected binary
  h1,      // reflected p-ary
  gamma1,  // 0^n0 followed by the binary code read backwards
  rho1,    // the binary code rotated by one
  m1,      // modular p-ary: letter j is a_j - a_{j+1} mod p over the base-p digits of i
};

/// Materialized base sequence, words stored flat and most-significant-first.
struct BaseTable {
  unsigned p = 2;
  unsigned n0 = 0;
  BaseKind kind = BaseKind::g;
  std::vector<Letter> flat;
  Index terms = 0;

  [[nodiscard]] Index size() const noexcept { return terms; }
  [[nodiscard]] std::span<const Letter> term(Index i) const {
    return std::span<const Letter>(flat).subspan(static_cast<std::size_t>(i) * n0, n0);
  }
  [[nodiscard]] Word word(Index i) const { return Word(term(i)); }
};

namespace detail {

inline BaseTable empty_table(unsigned p, unsigned n0, BaseKind kind, const Limits& limits) {
  BaseTable t;
  t.p = p;
  t.n0 = n0;
  t.kind = kind;
  t.terms = pow_or_throw(p, n0);
  check_materialize(t.terms, limits);
  t.flat.resize(static_cast<std::size_t>(t.terms) * n0);
  return t;
}

}  // namespace detail

/// p-ary reflected Gray code over A^n, built level by level:
/// h^{m+1} = (0 h^m, 1 (h^m)^R, 2 h^m, ...), block q reversed when q is odd.
[[nodiscard]] inline BaseTable reflected_pary(unsigned p, unsigned n, const Limits& limits = {}) {
  (void)Alphabet{p};
  BaseTable t = detail::empty_table(p, n, p == 2 ? BaseKind::g : BaseKind::h1, limits);
  // Column by column: position m+1 is prepended to a code of length m.
  // Rows are filled in place from the level-m code held in `prev`.
  std::vector<Letter> prev;  // level m, words of length m
  std::vector<Letter> cur;
  Index prev_terms = 1;
  for (unsigned m = 0; m < n; ++m) {
    const std::size_t len = m + 1;
    cur.assign(static_cast<std::size_t>(prev_terms) * p * len, 0);
    std::size_t row = 0;
    for (unsigned q = 0; q < p; ++q) {
      for (Index r = 0; r < prev_terms; ++r, ++row) {
        const Index src = (q % 2 == 0) ? r : prev_terms - 1 - r;
        Letter* out = cur.data() + row * len;
        out[0] = static_cast<Letter>(q);
        std::copy_n(prev.data() + src * m, m, out + 1);
      }
    }
    prev.swap(cur);
    prev_terms *= p;
  }
  t.flat = std::move(prev);
  if (n == 0) t.flat.clear();
  return t;
}

/// Modular p-ary Gray code: term i has letter (a_j - a_{j+1}) mod p at
/// position j, a being the base-p digits of i. Unlike the reflected code it
/// closes into a cycle for odd p too (last term (p-1)0^{n-1}).
[[nodiscard]] inline BaseTable modular_pary(unsigned p, unsigned n, const Limits& limits = {}) {
  (void)Alphabet{p};
  BaseTable t = detail::empty_table(p, n, BaseKind::m1, limits);
  std::vector<Letter> a(n + 1, 0);  // a[j-1] is digit j; a[n] stays 0
  for (Index i = 0; i < t.terms; ++i) {
    Index x = i;
    for (unsigned j = 0; j < n; ++j, x /= p) a[j] = static_cast<Letter>(x % p);
    Letter* out = t.flat.data() + i * n;
    for (unsigned j = 1; j <= n; ++j)
      out[n - j] = static_cast<Letter>((a[j - 1] + p - a[j]) % p);
  }
  return t;
}

/// Reflected binary Gray code g^{n,1}.
[[nodiscard]] inline BaseTable reflected_binary(unsigned n, const Limits& limits = {}) {
  return reflected_pary(2, n, limits);
}

/// γ^{n0,1}: term 0 is 0^{n0}, term i >= 1 is g_{[2^{n0} - i]}.
[[nodiscard]] inline BaseTable gamma_base(unsigned n0, const Limits& limits = {}) {
  if (n0 < 2) throw parameter_error("gamma base requires n0 >= 2");
  const BaseTable g = reflected_binary(n0, limits);
  BaseTable t = detail::empty_table(2, n0, BaseKind::gamma1, limits);
  for (Index i = 0; i < t.terms; ++i) {
    const Index src = i == 0 ? 0 : t.terms - i;
    std::copy_n(g.term(src).data(), n0, t.flat.data() + i * n0);
  }
  return t;
}

/// ρ^{n0,1}: term 0 is g_{[2^{n0} - 1]}, term i >= 1 is g_{[i - 1]}.
[[nodiscard]] inline BaseTable rho_base(unsigned n0, const Limits& limits = {}) {
  if (n0 < 2) throw parameter_error("rho base requires n0 >= 2");
  const BaseTable g = reflected_binary(n0, limits);
  BaseTable t = detail::empty_table(2, n0, BaseKind::rho1, limits);
  for (Index i = 0; i < t.terms; ++i) {
    const Index src = i == 0 ? t.terms - 1 : i - 1;
    std::copy_n(g.term(src).data(), n0, t.flat.data() + i * n0);
  }
  return t;
}

[[nodiscard]] inline BaseTable make_base_table(BaseKind kind, unsigned p, unsigned n0,
                                               const Limits& limits = {}) {
  switch (kind) {
    case BaseKind::g: return reflected_binary(n0, limits);
    case BaseKind::h1: return reflected_pary(p, n0, limits);
    case BaseKind::gamma1: return gamma_base(n0, limits);
    case BaseKind::rho1: return rho_base(n0, limits);
    case BaseKind::m1: return modular_pary(p, n0, limits);
  }
  throw parameter_error("unknown base kind");
}

/// Stateless successor: returns term i given term i-1, changing exactly one
/// letter. The changed position is one plus the multiplicity of p in i; the
/// letter moves up when i / p^j is even and down otherwise.
[[nodiscard]] inline Word base_cat_successor(BaseKind kind, unsigned p, const Word& current,
                                             Index i) {
  const unsigned n0 = static_cast<unsigned>(current.size());
  if (kind != BaseKind::h1 && kind != BaseKind::m1) p = 2;
  const Index total = pow_or_throw(p, n0);
  if (i == 0 || i >= total) throw parameter_error("successor index out of range");
  Word next = current;
  auto flip_position = [&](unsigned j) {
    auto& c = next[n0 - j];
    c = static_cast<Letter>(1 - c);
  };
  switch (kind) {
    case BaseKind::g:
    case BaseKind::h1: {
      unsigned j = 1;
      Index pj = p;
      while (i % pj == 0) {
        ++j;
        pj *= p;
      }
      auto& c = next[n0 - j];
      c = ((i / pj) % 2 == 0) ? theta(c, 1, p) : theta(c, -1, p);
      return next;
    }
    case BaseKind::m1: {
      // always upwards
      unsigned j = 1;
      for (Index m = i; m % p == 0; m /= p) ++j;
      auto& c = next[n0 - j];
      c = theta(c, p);
      return next;
    }
    case BaseKind::gamma1:
    case BaseKind::rho1: {
      // Both are g with the top bit complemented or rotated by one; term i
      // differs from term i-1 where g_{[i-1]} differs from g_{[i-2]}.
      if (i == 1) {
        flip_position(n0);
      } else {
        unsigned j = 1;
        for (Index m = i - 1; m % 2 == 0; m /= 2) ++j;
        flip_position(j);
      }
      return next;
    }
  }
  return next;
}

/// Reflected p-ary Gray code stepping with one direction flag per position.
/// advance() moves to the next term and reports how many positions it
/// examined; the lowest movable position moves, lower stuck positions
/// reverse direction.
class ReflectedStepper {
public:
  ReflectedStepper() = default;
  ReflectedStepper(unsigned p, unsigned n) : p_(p), digits_(n, 0), up_(n, 1) {}

  /// Digit at position j (1 = rightmost).
  [[nodiscard]] Letter at(unsigned j) const { return digits_[j - 1]; }
  [[nodiscard]] unsigned length() const noexcept { return static_cast<unsigned>(digits_.size()); }

  struct Step {
    unsigned position = 0;  // 0 when the sequence is exhausted
    Letter letter = 0;
    std::size_t cost = 0;
  };

  Step advance() {
    Step s;
    for (unsigned idx = 0; idx < digits_.size(); ++idx) {
      ++s.cost;
      Letter& d = digits_[idx];
      if (up_[idx] && d + 1u < p_) {
        ++d;
      } else if (!up_[idx] && d > 0) {
        --d;
      } else {
        up_[idx] = !up_[idx];
        continue;
      }
      s.position = idx + 1;
      s.letter = d;
      return s;
    }
    return s;
  }

  /// Back to 0^n with every direction up; costs one write per position.
  std::size_t reset() {
    std::fill(digits_.begin(), digits_.end(), 0);
    std::fill(up_.begin(), up_.end(), 1);
    return digits_.size();
  }

private:
  unsigned p_ = 2;
  std::vector<Letter> digits_;       // indexed by position - 1
  std::vector<unsigned char> up_;
};

/// Cyclic stepper over one base sequence. Holds the current word; each
/// advance() changes it to the next term (wrapping from the last term back to
/// term 0) and returns the number of elementary operations spent.
class BaseStepper {
public:
  BaseStepper() = default;
  BaseStepper(BaseKind kind, unsigned p, unsigned n0)
      : kind_(kind),
        p_(kind == BaseKind::h1 || kind == BaseKind::m1 ? p : 2),
        n0_(n0),
        terms_(pow_or_throw(p_, n0)),
        inner_(p_, n0),
        word_(n0, 0) {
    if ((kind == BaseKind::gamma1 || kind == BaseKind::rho1) && n0 < 2)
      throw parameter_error("gamma/rho base requires n0 >= 2");
    if ((kind == BaseKind::h1 || kind == BaseKind::m1) && p < 3)
      throw parameter_error("p-ary base kind requires p >= 3; use the binary kind");
    if (kind == BaseKind::m1) counter_.assign(n0, 0);
    load_first();
  }

  [[nodiscard]] std::span<const Letter> current() const noexcept { return word_.digits(); }
  [[nodiscard]] const Word& word() const noexcept { return word_; }
  [[nodiscard]] Index index() const noexcept { return index_; }
  [[nodiscard]] Index size() const noexcept { return terms_; }

  std::size_t advance() {
    if (index_ + 1 == terms_) return wrap();
    ++index_;
    if ((kind_ == BaseKind::gamma1 || kind_ == BaseKind::rho1) && index_ == 1) {
      flip(n0_);
      return 1;
    }
    if (kind_ == BaseKind::m1) return count_up();
    const auto step = inner_.advance();
    set_position(step.position, step.letter);
    return step.cost;
  }

  /// Rewinds to term 0; cost is one write per position.
  std::size_t restart() {
    load_first();
    return n0_;
  }

private:
  // base-p increment of counter_; the letter at the lowest position whose
  // digit does not overflow moves up by one
  std::size_t count_up() {
    std::size_t cost = 0;
    for (unsigned idx = 0; idx < counter_.size(); ++idx) {
      ++cost;
      if (++counter_[idx] < p_) {
        auto& c = word_[n0_ - 1 - idx];
        c = theta(c, p_);
        return cost;
      }
      counter_[idx] = 0;
    }
    return cost;
  }

  void load_first() {
    index_ = 0;
    inner_.reset();
    std::fill(counter_.begin(), counter_.end(), Letter{0});
    std::fill(word_.digits().begin(), word_.digits().end(), 0);
    if (kind_ == BaseKind::rho1) word_[0] = 1;
  }

  std::size_t wrap() {
    std::size_t cost = 0;
    switch (kind_) {
      case BaseKind::g:
        flip(n0_);  // 10^{n0-1} -> 0^{n0}
        cost = 1;
        break;
      case BaseKind::gamma1:
      case BaseKind::rho1:
        flip(1);  // 0^{n0-1}1 -> 0^{n0}, 10^{n0-2}1 -> 10^{n0-1}
        cost = 1;
        break;
      case BaseKind::m1:
        word_[0] = 0;  // (p-1)0^{n0-1} -> 0^{n0}
        cost = 1;
        std::fill(counter_.begin(), counter_.end(), Letter{0});
        index_ = 0;
        return cost + counter_.size();
      case BaseKind::h1:
        for (auto& c : word_.digits()) {
          if (c != 0) ++cost;
          c = 0;
        }
        break;
    }
    index_ = 0;
    return cost + inner_.reset();
  }

  void flip(unsigned position) {
    auto& c = word_[n0_ - position];
    c = static_cast<Letter>(1 - c);
  }

  void set_position(unsigned position, Letter letter) {
    if (kind_ == BaseKind::gamma1 || kind_ == BaseKind::rho1)
      flip(position);
    else
      word_[n0_ - position] = letter;
  }

  BaseKind kind_ = BaseKind::g;
  unsigned p_ = 2;
  unsigned n0_ = 0;
  Index terms_ = 1;
  Index index_ = 0;
  ReflectedStepper inner_;
  std::vector<Letter> counter_;  // m1 only: base-p digits of the index, lowest first
  Word word_;
};

}  // namespace sigmak
