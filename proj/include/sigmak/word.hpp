#pragma once

// Letters, words, Hamming distance, the cyclic letter shift, index residues
// and the maximum cycle length table.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigmak {

using Letter = std::uint16_t;
using Index = std::uint64_t;

inline constexpr unsigned kMaxAlphabet = 65536;
inline constexpr unsigned kMaxTextAlphabet = 36;

/// Invalid (p, n, k) triple, unknown variant, malformed word, ...
class parameter_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A size guard refused the request (materialization limit, oracle scale, ...).
class scale_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Alphabet {
  unsigned p;

  explicit Alphabet(unsigned cardinality) : p(cardinality) {
    if (p < 2 || p > kMaxAlphabet)
      throw parameter_error("alphabet size must be in [2, 65536], got " + std::to_string(p));
  }

  [[nodiscard]] bool contains(Letter c) const noexcept { return c < p; }
};

/// Fixed-length word stored most-significant-first: storage index 0 holds
/// position n, storage index n-1 holds position 1.
class Word {
public:
  Word() = default;
  explicit Word(std::size_t n, Letter fill = 0) : digits_(n, fill) {}
  Word(std::initializer_list<Letter> digits) : digits_(digits) {}
  explicit Word(std::span<const Letter> digits) : digits_(digits.begin(), digits.end()) {}
  explicit Word(std::vector<Letter> digits) : digits_(std::move(digits)) {}

  [[nodiscard]] std::size_t size() const noexcept { return digits_.size(); }
  [[nodiscard]] bool empty() const noexcept { return digits_.empty(); }

  [[nodiscard]] Letter operator[](std::size_t idx) const { return digits_[idx]; }
  Letter& operator[](std::size_t idx) { return digits_[idx]; }

  /// Letter at position j, where position 1 is the rightmost letter.
  [[nodiscard]] Letter at_position(std::size_t j) const {
    if (j == 0 || j > digits_.size()) throw parameter_error("position out of range");
    return digits_[digits_.size() - j];
  }

  [[nodiscard]] std::span<const Letter> digits() const noexcept { return digits_; }
  [[nodiscard]] std::span<Letter> digits() noexcept { return digits_; }

  [[nodiscard]] std::size_t count(Letter c) const {
    return static_cast<std::size_t>(std::count(digits_.begin(), digits_.end(), c));
  }

  /// Digits rendered with 0-9 then a-z.
  [[nodiscard]] std::string to_string() const;

  /// Parses "0120"-style text; every glyph must denote a letter below p.
  static Word parse(std::string_view text, unsigned p);

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

private:
  std::vector<Letter> digits_;
};

// ---------------------------------------------------------------------------
// Glyphs

[[nodiscard]] inline char glyph(Letter c) {
  if (c < 10) return static_cast<char>('0' + c);
  if (c < kMaxTextAlphabet) return static_cast<char>('a' + (c - 10));
  throw parameter_error("letter " + std::to_string(c) + " has no single-character glyph");
}

[[nodiscard]] inline std::optional<Letter> parse_glyph(char ch) noexcept {
  if (ch >= '0' && ch <= '9') return static_cast<Letter>(ch - '0');
  if (ch >= 'a' && ch <= 'z') return static_cast<Letter>(ch - 'a' + 10);
  if (ch >= 'A' && ch <= 'Z') return static_cast<Letter>(ch - 'A' + 10);
  return std::nullopt;
}

inline void append_glyphs(std::string& out, std::span<const Letter> digits) {
  for (Letter c : digits) out.push_back(glyph(c));
}

inline std::string Word::to_string() const {
  std::string s;
  s.reserve(digits_.size());
  append_glyphs(s, digits_);
  return s;
}

inline Word Word::parse(std::string_view text, unsigned p) {
  std::vector<Letter> digits;
  digits.reserve(text.size());
  for (char ch : text) {
    auto c = parse_glyph(ch);
    if (!c || *c >= p)
      throw parameter_error("invalid letter '" + std::string(1, ch) + "' for alphabet size " +
                            std::to_string(p));
    digits.push_back(*c);
  }
  return Word(std::move(digits));
}

// ---------------------------------------------------------------------------
// Distances and the letter shift

[[nodiscard]] inline std::size_t hamming_distance(std::span<const Letter> u,
                                                  std::span<const Letter> v) {
  if (u.size() != v.size())
    throw parameter_error("hamming distance of words with lengths " + std::to_string(u.size()) +
                          " and " + std::to_string(v.size()));
  std::size_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] != v[i]);
  return d;
}

[[nodiscard]] inline std::size_t hamming_distance(const Word& u, const Word& v) {
  return hamming_distance(u.digits(), v.digits());
}

/// θ^t(c) = (c + t) mod p; t may be negative.
[[nodiscard]] constexpr Letter theta(Letter c, std::int64_t t, unsigned p) noexcept {
  const auto m = static_cast<std::int64_t>(p);
  auto r = (static_cast<std::int64_t>(c) + t % m) % m;
  if (r < 0) r += m;
  return static_cast<Letter>(r);
}

[[nodiscard]] constexpr Letter theta(Letter c, unsigned p) noexcept {
  return c + 1u == p ? Letter{0} : static_cast<Letter>(c + 1);
}

[[nodiscard]] inline Word theta_word(const Word& w, unsigned p, std::int64_t t = 1) {
  Word out = w;
  for (auto& c : out.digits()) c = theta(c, t, p);
  return out;
}

// ---------------------------------------------------------------------------
// Checked index arithmetic

/// base^exp, or nullopt when the result does not fit in 64 bits.
[[nodiscard]] constexpr std::optional<Index> checked_pow(Index base, unsigned exp) noexcept {
  Index result = 1;
  for (unsigned e = 0; e < exp; ++e) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

[[nodiscard]] inline Index pow_or_throw(Index base, unsigned exp) {
  auto v = checked_pow(base, exp);
  if (!v)
    throw scale_error(std::to_string(base) + "^" + std::to_string(exp) + " exceeds 64 bits");
  return *v;
}

/// r(i, j): the residue of i modulo p^j.
[[nodiscard]] constexpr Index residue_r(Index i, unsigned j, unsigned p) noexcept {
  auto m = checked_pow(p, j);
  return m ? i % *m : i;  // p^j > 2^64 > i
}

/// μ(i, j): the residue of i modulo 2^{j+1}.
[[nodiscard]] constexpr Index residue_mu(Index i, unsigned j) noexcept {
  return j + 1 >= 64 ? i : i % (Index{1} << (j + 1));
}

// ---------------------------------------------------------------------------
// Cycle parameters

enum class Variant {
  h,                 // p >= 3, reflected base (a path, not a cycle, when p is odd)
  h_modular,         // p >= 3, modular base, cyclic for every p
  gamma,             // p = 2, k odd
  rho,               // p = 2, k odd, companion of gamma
  gamma_even,        // p = 2, k even, words of even weight
  gamma_even_odd,    // p = 2, k even, words of odd weight
  trivial_binary,    // p = 2, n = k
};

[[nodiscard]] inline std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::h: return "h";
    case Variant::h_modular: return "h-modular";
    case Variant::gamma: return "gamma";
    case Variant::rho: return "rho";
    case Variant::gamma_even: return "gamma-even";
    case Variant::gamma_even_odd: return "gamma-even-odd";
    case Variant::trivial_binary: return "trivial";
  }
  return "?";
}

[[nodiscard]] inline std::optional<Variant> parse_variant(std::string_view s) noexcept {
  for (auto v : {Variant::h, Variant::h_modular, Variant::gamma, Variant::rho, Variant::gamma_even,
                 Variant::gamma_even_odd, Variant::trivial_binary})
    if (s == to_string(v)) return v;
  return std::nullopt;
}

inline void check_pnk(unsigned p, unsigned n, unsigned k) {
  if (p < 2) throw parameter_error("p must be at least 2");
  if (p > kMaxAlphabet) throw parameter_error("p must not exceed 65536");
  if (k < 1 || k > n)
    throw parameter_error("need 1 <= k <= n, got n=" + std::to_string(n) +
                          " k=" + std::to_string(k));
}

/// Maximum length of a cycle over words of length at most n whose
/// consecutive terms differ in exactly k positions.
[[nodiscard]] inline Index lambda_max(unsigned p, unsigned n, unsigned k) {
  check_pnk(p, n, k);
  if (p >= 3) return pow_or_throw(p, n);
  if (n == k) return 2;
  if (k % 2 == 1) return pow_or_throw(2, n);
  return pow_or_throw(2, n - 1);
}

[[nodiscard]] inline Variant default_variant(unsigned p, unsigned n, unsigned k) {
  check_pnk(p, n, k);
  // The reflected p-ary code ends on (p-1)^n when p is odd, one letter
  // change short of closing, so odd alphabets default to the modular base.
  if (p >= 3) return p % 2 == 1 ? Variant::h_modular : Variant::h;
  if (n == k) return Variant::trivial_binary;
  return k % 2 == 1 ? Variant::gamma : Variant::gamma_even;
}

struct CycleSpec {
  unsigned p = 0;
  unsigned n = 0;
  unsigned k = 0;
  Variant variant = Variant::h;

  /// Validates the triple against the variant; picks the default variant
  /// when none is given.
  static CycleSpec make(unsigned p, unsigned n, unsigned k,
                        std::optional<Variant> variant = std::nullopt) {
    check_pnk(p, n, k);
    CycleSpec s{p, n, k, variant.value_or(default_variant(p, n, k))};
    auto fail = [&](const char* why) {
      throw parameter_error(std::string("variant ") + std::string(to_string(s.variant)) + ": " +
                            why);
    };
    switch (s.variant) {
      case Variant::h:
      case Variant::h_modular:
        if (p < 3) fail("requires p >= 3");
        break;
      case Variant::gamma:
      case Variant::rho:
        if (p != 2) fail("requires p = 2");
        if (k % 2 == 0) fail("requires k odd");
        if (n < k + 1) fail("requires n >= k + 1");
        break;
      case Variant::gamma_even:
      case Variant::gamma_even_odd:
        if (p != 2) fail("requires p = 2");
        if (k % 2 == 1) fail("requires k even");
        if (n < k + 1) fail("requires n >= k + 1");
        break;
      case Variant::trivial_binary:
        if (p != 2) fail("requires p = 2");
        if (n != k) fail("requires n = k");
        break;
    }
    return s;
  }

  /// Base length n0 = n - k + 1 at which the inductions bottom out.
  [[nodiscard]] unsigned n0() const noexcept { return n - k + 1; }

  /// Number of terms of the cycle this spec denotes.
  [[nodiscard]] Index length() const {
    switch (variant) {
      case Variant::h:
      case Variant::h_modular: return pow_or_throw(p, n);
      case Variant::gamma:
      case Variant::rho: return pow_or_throw(2, n);
      case Variant::gamma_even:
      case Variant::gamma_even_odd: return pow_or_throw(2, n - 1);
      case Variant::trivial_binary: return 2;
    }
    return 0;
  }

  friend bool operator==(const CycleSpec&, const CycleSpec&) = default;
};

/// Size guards. Streaming covers iterators, materialization covers anything
/// that stores every term.
struct Limits {
  Index stream = Index{1} << 40;
  Index materialize = Index{1} << 24;
};

inline void check_materialize(Index terms, const Limits& limits) {
  if (terms > limits.materialize)
    throw scale_error("sequence of " + std::to_string(terms) +
                      " terms exceeds materialization limit " +
                      std::to_string(limits.materialize));
}

inline void check_stream(Index terms, const Limits& limits) {
  if (terms > limits.stream)
    throw scale_error("sequence of " + std::to_string(terms) + " terms exceeds streaming limit " +
                      std::to_string(limits.stream));
}

// ---------------------------------------------------------------------------
// Materialized cycles

/// A sequence of equal-length words kept in one flat buffer.
class GrayCycle {
public:
  GrayCycle() = default;
  GrayCycle(CycleSpec spec, std::size_t word_length)
      : spec_(spec), n_(word_length) {}

  [[nodiscard]] const CycleSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] std::size_t word_length() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept {
    return n_ == 0 ? count_ : flat_.size() / n_;
  }
  [[nodiscard]] bool empty() const noexcept { return size() == 0; }

  [[nodiscard]] std::span<const Letter> term(std::size_t i) const {
    return std::span<const Letter>(flat_).subspan(i * n_, n_);
  }
  [[nodiscard]] Word word(std::size_t i) const { return Word(term(i)); }
  [[nodiscard]] std::span<const Letter> flat() const noexcept { return flat_; }

  void reserve(std::size_t terms) { flat_.reserve(terms * n_); }
  void push_back(std::span<const Letter> w) {
    if (w.size() != n_) throw parameter_error("term length differs from cycle word length");
    flat_.insert(flat_.end(), w.begin(), w.end());
    ++count_;
  }
  void push_back(const Word& w) { push_back(w.digits()); }

  [[nodiscard]] std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      std::string s;
      append_glyphs(s, term(i));
      out.push_back(std::move(s));
    }
    return out;
  }

private:
  CycleSpec spec_{};
  std::size_t n_ = 0;
  std::size_t count_ = 0;  // only meaningful for the empty-word case n = 0
  std::vector<Letter> flat_;
};

}  // namespace sigmak
