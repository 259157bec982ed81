#pragma once

// Command-line front end. Parsing lives in configure(), execution in run(),
// so both can be driven in-process by the tests.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigmak/sigmak.hpp"

namespace sigmak::cli {

enum class Command { generate, verify, crosscheck, lambda, bench };
enum class Mode { recursive, cat, loopless, automatic };
enum class Format { lines, csv, raw };

enum Exit : int {
  kOk = 0,
  kIoError = 1,
  kParameterError = 2,
  kVerificationFailure = 3,
  kScaleRefusal = 4,
};

inline constexpr const char* kThresholdEnv = "SIGMAK_PREPROCESS_THRESHOLD";

struct RunConfig {
  Command command = Command::generate;
  unsigned p = 2;
  unsigned n = 0;
  unsigned k = 1;
  std::optional<Variant> variant;
  Mode mode = Mode::automatic;
  Format format = Format::lines;
  std::optional<Index> limit;
  Index preprocess_threshold = kDefaultPreprocessThreshold;
  std::string output = "-";  // "-" is stdout
  std::string input = "-";   // verify only
  bool at_most = false;
  bool bruteforce = false;
  std::string support = "auto";  // verify only
};

/// Loopless when the preprocessing table fits under the threshold, CAT otherwise.
[[nodiscard]] inline Strategy resolve_strategy(const CycleSpec& spec, Mode mode,
                                               Index threshold) {
  switch (mode) {
    case Mode::cat: return Strategy::cat;
    case Mode::loopless: return Strategy::loopless;
    case Mode::recursive:
    case Mode::automatic: break;
  }
  return preprocess_size(spec) <= threshold ? Strategy::loopless : Strategy::cat;
}

/// Threshold from the environment, if set and well-formed.
[[nodiscard]] inline std::optional<Index> threshold_from_env() {
  const char* v = std::getenv(kThresholdEnv);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const auto x = std::strtoull(v, &end, 10);
  if (*end != '\0') throw parameter_error(std::string(kThresholdEnv) + " is not an integer");
  return static_cast<Index>(x);
}

/// Registers subcommands and options on `app`, writing into `cfg`.
inline void configure(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1);
  app.description("Gray cycles whose consecutive words differ in exactly k letters");

  static const std::map<std::string, Mode> modes{{"recursive", Mode::recursive},
                                                 {"cat", Mode::cat},
                                                 {"loopless", Mode::loopless},
                                                 {"auto", Mode::automatic}};
  static const std::map<std::string, Format> formats{
      {"lines", Format::lines}, {"csv", Format::csv}, {"raw", Format::raw}};

  auto add_pnk = [&](CLI::App* sub, bool need_n) {
    sub->add_option("--p", cfg.p, "alphabet size")->required()->check(CLI::Range(2u, kMaxAlphabet));
    auto* n = sub->add_option("--n", cfg.n, "word length");
    if (need_n) n->required();
    sub->add_option("--k", cfg.k, "letters changed per step")->required();
  };
  auto add_variant = [&](CLI::App* sub) {
    sub->add_option_function<std::string>(
           "--variant",
           [&cfg](const std::string& s) {
             auto v = parse_variant(s);
             if (!v) throw CLI::ValidationError("--variant", "unknown variant " + s);
             cfg.variant = v;
           },
           "h, h-modular, gamma, rho, gamma-even, gamma-even-odd, trivial")
        ->type_name("NAME");
  };
  auto add_threshold = [&](CLI::App* sub) {
    sub->add_option("--threshold", cfg.preprocess_threshold,
                    std::string("largest table loopless mode may build (env ") + kThresholdEnv +
                        ")");
  };

  auto* gen = app.add_subcommand("generate", "write the cycle, one word per line");
  add_pnk(gen, true);
  add_variant(gen);
  gen->add_option("--mode", cfg.mode, "recursive, cat, loopless or auto")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  gen->add_option("--format", cfg.format, "lines, csv or raw")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  gen->add_option("--limit", cfg.limit, "stop after this many terms");
  gen->add_option("--output,-o", cfg.output, "output file, - for stdout");
  add_threshold(gen);
  gen->callback([&cfg] { cfg.command = Command::generate; });

  auto* ver = app.add_subcommand("verify", "check a sequence read from input");
  ver->add_option("--p", cfg.p, "alphabet size")->required()->check(CLI::Range(2u, kMaxAlphabet));
  ver->add_option("--n", cfg.n, "word length (inferred from the first line when omitted)");
  ver->add_option("--k", cfg.k, "letters changed per step")->required();
  add_variant(ver);
  ver->add_flag("--at-most", cfg.at_most, "accept any distance in [1, k]");
  ver->add_option("--support", cfg.support, "auto, none, full, even, odd or pair")
      ->check(CLI::IsMember({"auto", "none", "full", "even", "odd", "pair"}));
  ver->add_option("--format", cfg.format, "lines, csv or raw")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  ver->add_option("--input,-i", cfg.input, "input file, - for stdin");
  ver->add_option("--output,-o", cfg.output, "report file, - for stdout");
  ver->callback([&cfg] { cfg.command = Command::verify; });

  auto* cc = app.add_subcommand("crosscheck", "builder vs iterators vs checker");
  add_pnk(cc, true);
  add_variant(cc);
  add_threshold(cc);
  cc->add_option("--output,-o", cfg.output, "report file, - for stdout");
  cc->callback([&cfg] { cfg.command = Command::crosscheck; });

  auto* lam = app.add_subcommand("lambda", "maximum cycle length");
  add_pnk(lam, true);
  lam->add_flag("--bruteforce", cfg.bruteforce, "confirm by exhaustive search (tiny cases)");
  lam->callback([&cfg] { cfg.command = Command::lambda; });

  auto* bench = app.add_subcommand("bench", "per-step operation counts and delays");
  add_pnk(bench, true);
  add_variant(bench);
  bench->add_option("--mode", cfg.mode, "cat, loopless or auto")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  bench->add_option("--limit", cfg.limit, "stop after this many steps");
  add_threshold(bench);
  bench->add_option("--output,-o", cfg.output, "report file, - for stdout");
  bench->callback([&cfg] { cfg.command = Command::bench; });
}

namespace detail {

/// Buffered word writer for the three output formats.
class WordWriter {
public:
  WordWriter(std::ostream& out, Format format, unsigned p) : out_(out), format_(format) {
    if (format != Format::raw && p > kMaxTextAlphabet)
      throw parameter_error("text formats need p <= 36; use --format raw");
    if (format == Format::raw && p > 256)
      throw parameter_error("raw format packs one letter per byte and needs p <= 256");
    buf_.reserve(kFlush + 64);
  }
  ~WordWriter() { flush(); }

  void write(Index i, std::span<const Letter> w) {
    switch (format_) {
      case Format::lines:
        append_glyphs(buf_, w);
        buf_.push_back('\n');
        break;
      case Format::csv:
        buf_ += std::to_string(i);
        buf_.push_back(',');
        append_glyphs(buf_, w);
        buf_.push_back('\n');
        break;
      case Format::raw:
        for (Letter c : w) buf_.push_back(static_cast<char>(c));
        break;
    }
    if (buf_.size() >= kFlush) flush();
  }

  void flush() {
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    buf_.clear();
  }

private:
  static constexpr std::size_t kFlush = 1 << 16;
  std::ostream& out_;
  Format format_;
  std::string buf_;
};

inline Support parse_support(const std::string& s, const RunConfig& cfg, std::size_t n) {
  if (s == "none") return Support::none();
  if (s == "full") return Support::full();
  if (s == "even") return Support::even();
  if (s == "odd") return Support::odd();
  if (s == "pair") return Support::pair(Word(n, 0));
  // auto: whatever the constructions would cover for these parameters, if
  // they describe one
  try {
    return expected_support(
        CycleSpec::make(cfg.p, static_cast<unsigned>(n), cfg.k, cfg.variant));
  } catch (const parameter_error&) {
    return Support::none();
  }
}

/// Reads words written by `generate`; returns them flat with the word length.
inline std::pair<std::vector<Letter>, std::size_t> read_words(std::istream& in,
                                                              const RunConfig& cfg) {
  std::vector<Letter> flat;
  std::size_t n = cfg.n;
  if (cfg.format == Format::raw) {
    if (n == 0) throw parameter_error("raw input needs --n");
    char ch;
    while (in.get(ch)) {
      const auto c = static_cast<Letter>(static_cast<unsigned char>(ch));
      if (c >= cfg.p) throw parameter_error("raw byte " + std::to_string(c) + " is not a letter");
      flat.push_back(c);
    }
    if (flat.size() % n != 0) throw parameter_error("raw input is not a whole number of words");
    return {std::move(flat), n};
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view text = line;
    if (cfg.format == Format::csv) {
      const auto comma = text.find(',');
      if (comma == std::string_view::npos)
        throw parameter_error("line " + std::to_string(lineno) + ": expected index,word");
      text.remove_prefix(comma + 1);
    }
    const Word w = Word::parse(text, cfg.p);
    if (n == 0) n = w.size();
    if (w.size() != n)
      throw parameter_error("line " + std::to_string(lineno) + ": word length " +
                            std::to_string(w.size()) + ", expected " + std::to_string(n));
    flat.insert(flat.end(), w.digits().begin(), w.digits().end());
  }
  if (n == 0) throw parameter_error("no words on input");
  return {std::move(flat), n};
}

inline nlohmann::json report_json(const VerificationReport& rep) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : rep.violations)
    v.push_back({{"condition", to_string(x.condition)}, {"index", x.index}, {"detail", x.detail}});
  return {{"ok", rep.ok},
          {"mode", to_string(rep.mode)},
          {"terms", rep.terms},
          {"violations", std::move(v)}};
}

template <class F>
int with_output(const std::string& path, F&& body) {
  if (path == "-") return body(std::cout);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open " + path + " for writing");
  const int rc = body(f);
  f.flush();
  if (!f) throw std::ios_base::failure("write to " + path + " failed");
  return rc;
}

inline double percentile(std::vector<double>& xs, double q) {
  if (xs.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(q * static_cast<double>(xs.size() - 1) + 0.5);
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(idx), xs.end());
  return xs[idx];
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline int run_generate(const RunConfig& cfg, std::ostream& out) {
  const auto spec = CycleSpec::make(cfg.p, cfg.n, cfg.k, cfg.variant);
  const Index total = cfg.limit ? std::min(*cfg.limit, spec.length()) : spec.length();
  detail::WordWriter writer(out, cfg.format, cfg.p);

  if (cfg.mode == Mode::recursive) {
    const auto built = build(spec);
    for (Index i = 0; i < total; ++i) writer.write(i, built.cycle.term(static_cast<std::size_t>(i)));
    return kOk;
  }
  EngineOptions opts;
  opts.strategy = resolve_strategy(spec, cfg.mode, cfg.preprocess_threshold);
  opts.preprocess_threshold = cfg.preprocess_threshold;
  auto gen = make_generator(spec, opts);
  Word w(spec.n);
  for (Index i = 0; i < total; ++i) {
    if (i > 0) gen.next();
    gen.render(w.digits());
    writer.write(i, w.digits());
  }
  return kOk;
}

inline int run_verify(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  auto [flat, n] = detail::read_words(in, cfg);
  const Support support = detail::parse_support(cfg.support, cfg, n);
  const auto mode = cfg.at_most ? DistanceMode::at_most_k : DistanceMode::exact_k;
  const auto rep = verify_gray_cycle(flat, n, cfg.p, cfg.k, mode, support);
  auto j = detail::report_json(rep);
  j["p"] = cfg.p;
  j["n"] = n;
  j["k"] = cfg.k;
  j["support"] = to_string(support.kind);
  out << j.dump(2) << '\n';
  return rep.ok ? kOk : kVerificationFailure;
}

inline int run_crosscheck(const RunConfig& cfg, std::ostream& out) {
  const auto spec = CycleSpec::make(cfg.p, cfg.n, cfg.k, cfg.variant);
  nlohmann::json j{{"p", spec.p},
                   {"n", spec.n},
                   {"k", spec.k},
                   {"variant", to_string(spec.variant)},
                   {"length", spec.length()},
                   {"lambda", lambda_max(spec.p, spec.n, spec.k)}};
  bool ok = true;
  for (auto strategy : {Strategy::loopless, Strategy::cat}) {
    EngineOptions opts;
    opts.strategy = strategy;
    opts.preprocess_threshold = cfg.preprocess_threshold;
    if (strategy == Strategy::loopless && preprocess_size(spec) > cfg.preprocess_threshold) {
      j[std::string(to_string(strategy))] = {{"skipped", "table exceeds threshold"}};
      continue;
    }
    const auto rep = cross_check(spec, opts);
    ok &= rep.ok;
    j[std::string(to_string(strategy))] = detail::report_json(rep);
  }
  j["ok"] = ok;
  out << j.dump(2) << '\n';
  return ok ? kOk : kVerificationFailure;
}

inline int run_lambda(const RunConfig& cfg, std::ostream& out) {
  const Index lam = lambda_max(cfg.p, cfg.n, cfg.k);
  if (!cfg.bruteforce) {
    out << lam << '\n';
    return kOk;
  }
  if (!within_bruteforce_scale(cfg.p, cfg.n, cfg.k))
    throw scale_error("parameters exceed the brute-force scale");
  const Index found = lambda_bruteforce(cfg.p, cfg.n, cfg.k);
  if (found == lam) {
    out << lam << " (confirmed by oracle)\n";
    return kOk;
  }
  out << lam << " (oracle found " << found << ")\n";
  return kVerificationFailure;
}

inline int run_bench(const RunConfig& cfg, std::ostream& out) {
  const auto spec = CycleSpec::make(cfg.p, cfg.n, cfg.k, cfg.variant);
  EngineOptions opts;
  opts.strategy = resolve_strategy(spec, cfg.mode == Mode::recursive ? Mode::automatic : cfg.mode,
                                   cfg.preprocess_threshold);
  opts.preprocess_threshold = cfg.preprocess_threshold;
  opts.cyclic = true;
  const Index steps = cfg.limit ? *cfg.limit : spec.length();

  using clock = std::chrono::steady_clock;
  const auto t_setup = clock::now();
  auto gen = make_generator(spec, opts);
  const auto setup_ns =
      std::chrono::duration<double, std::nano>(clock::now() - t_setup).count();

  std::size_t max_ops = 0, first_ops = 0;
  std::uint64_t total_ops = 0;
  // delay samples capped so huge runs stay bounded in memory
  const Index sample_cap = std::min<Index>(steps, Index{1} << 20);
  std::vector<double> delays;
  delays.reserve(static_cast<std::size_t>(sample_cap));
  for (Index s = 0; s < steps; ++s) {
    const auto t0 = clock::now();
    gen.next();
    const auto t1 = clock::now();
    const auto ops = gen.last_step_cost();
    if (s == 0) first_ops = ops;
    max_ops = std::max(max_ops, ops);
    total_ops += ops;
    if (s < sample_cap) delays.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  const double mean = steps ? static_cast<double>(total_ops) / static_cast<double>(steps) : 0.0;
  nlohmann::json j{
      {"p", spec.p},
      {"n", spec.n},
      {"k", spec.k},
      {"variant", to_string(spec.variant)},
      {"strategy", to_string(opts.strategy)},
      {"steps", steps},
      {"ops", {{"first", first_ops}, {"max", max_ops}, {"mean", mean}, {"total", total_ops}}},
      {"setup_ns", setup_ns},
      {"delay_ns",
       {{"samples", delays.size()},
        {"p50", detail::percentile(delays, 0.50)},
        {"p90", detail::percentile(delays, 0.90)},
        {"p99", detail::percentile(delays, 0.99)},
        {"max", delays.empty() ? 0.0 : *std::max_element(delays.begin(), delays.end())}}}};
  out << j.dump(2) << '\n';
  return kOk;
}

/// Executes a parsed configuration; errors map to the documented exit codes.
inline int run(const RunConfig& cfg, std::istream& in, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::generate:
        return detail::with_output(cfg.output, [&](std::ostream& o) { return run_generate(cfg, o); });
      case Command::verify: {
        auto body = [&](std::istream& src) {
          return detail::with_output(cfg.output,
                                     [&](std::ostream& o) { return run_verify(cfg, src, o); });
        };
        if (cfg.input == "-") return body(in);
        std::ifstream f(cfg.input, std::ios::binary);
        if (!f) throw std::ios_base::failure("cannot open " + cfg.input);
        return body(f);
      }
      case Command::crosscheck:
        return detail::with_output(cfg.output, [&](std::ostream& o) { return run_crosscheck(cfg, o); });
      case Command::lambda:
        return detail::with_output(cfg.output, [&](std::ostream& o) { return run_lambda(cfg, o); });
      case Command::bench:
        return detail::with_output(cfg.output, [&](std::ostream& o) { return run_bench(cfg, o); });
    }
  } catch (const parameter_error& e) {
    err << "error: " << e.what() << '\n';
    return kParameterError;
  } catch (const scale_error& e) {
    err << "refused: " << e.what() << '\n';
    return kScaleRefusal;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kParameterError;
}

/// Parses argv and runs; what main() does.
inline int main_with(int argc, const char* const* argv, std::istream& in, std::ostream& err) {
  CLI::App app{"sigmak"};
  RunConfig cfg;
  configure(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, std::cout, err);
    return rc == 0 ? kOk : kParameterError;
  }
  // explicit --threshold wins over the environment
  bool flag_given = false;
  for (auto* sub : app.get_subcommands())
    if (auto* opt = sub->get_option_no_throw("--threshold"); opt && opt->count() > 0)
      flag_given = true;
  try {
    if (!flag_given)
      if (auto env = threshold_from_env()) cfg.preprocess_threshold = *env;
  } catch (const parameter_error& e) {
    err << "error: " << e.what() << '\n';
    return kParameterError;
  }
  return run(cfg, in, err);
}

}  // namespace sigmak::cli
