#include "shpcli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>

#include "shp/spectral.hpp"
#include "shp/words.hpp"
#include "shpcli/internal.hpp"

namespace shp::cli {

bool CommandOutput::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_string(LimitLaw law) {
  switch (law) {
    case LimitLaw::Semicircle: return "semicircle";
    case LimitLaw::Toeplitz: return "toeplitz";
    case LimitLaw::Hankel: return "hankel";
    case LimitLaw::ReverseCirculant: return "revcirc";
    case LimitLaw::Unknown: return "unknown";
  }
  return "unknown";
}

LimitLaw limit_law(const LinkFunction& x, const LinkFunction& y) {
  const LinkKind a = x.kind();
  const LinkKind b = y.kind();
  if (a == LinkKind::Composed || b == LinkKind::Composed) return LimitLaw::Unknown;
  const auto either = [&](LinkKind p, LinkKind q) { return (a == p && b == q) || (a == q && b == p); };
  if (a == LinkKind::Wigner || b == LinkKind::Wigner) return LimitLaw::Semicircle;
  for (LinkKind t : {LinkKind::Toeplitz, LinkKind::SymmetricCirculant}) {
    for (LinkKind h : {LinkKind::Hankel, LinkKind::ReverseCirculant,
                       LinkKind::DoublySymmetricHankel}) {
      if (either(t, h)) return LimitLaw::Semicircle;
    }
  }
  if (either(LinkKind::Toeplitz, LinkKind::SymmetricCirculant)) return LimitLaw::Toeplitz;
  if (either(LinkKind::Hankel, LinkKind::ReverseCirculant) ||
      either(LinkKind::Hankel, LinkKind::DoublySymmetricHankel)) {
    return LimitLaw::Hankel;
  }
  if (either(LinkKind::ReverseCirculant, LinkKind::DoublySymmetricHankel)) {
    return LimitLaw::ReverseCirculant;
  }
  return LimitLaw::Unknown;
}

MomentSequence limit_moments(LimitLaw law, int h_max, const CountOptions& options) {
  if (law == LimitLaw::Semicircle) return semicircle_moments(h_max);
  if (law == LimitLaw::Unknown) throw ArgumentError("no reference moments for an unknown limit");
  if (h_max < 1 || h_max > 6) throw ArgumentError("assembled targets are available for h <= 6");
  const LinkFunction link = law == LimitLaw::Toeplitz ? LinkFunction::toeplitz()
                            : law == LimitLaw::Hankel ? LinkFunction::hankel()
                                                      : LinkFunction::reverse_circulant();
  static std::mutex mutex;
  static std::map<std::pair<int, int>, double> cache;
  MomentSequence seq;
  seq.source = MomentSource::AssembledFromP;
  for (int h = 1; h <= h_max; ++h) {
    if (h % 2) {
      seq.values.push_back(0.0);
      seq.exact.push_back("0");
      continue;
    }
    std::lock_guard lock(mutex);
    const auto key = std::make_pair(static_cast<int>(law), h);
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::map<Word, double> limits;
      for (const auto& [w, est] : p_table(link, h, default_ladder(h), options)) {
        limits[w] = est.limit;
      }
      it = cache.emplace(key, assemble_moments(limits, h)).first;
    }
    seq.values.push_back(it->second);
    seq.exact.emplace_back();
  }
  return seq;
}

Json moment_record(const MomentEstimate& m, std::uint64_t seed, std::optional<double> target) {
  Json j;
  j["h"] = m.h;
  j["mean"] = m.mean;
  j["variance"] = m.variance;
  j["stderr"] = m.std_error;
  j["n"] = m.n;
  j["trials"] = m.trials;
  j["seed"] = seed;
  j["target"] = target ? Json(*target) : Json(nullptr);
  if (target && m.std_error > 0) {
    j["z"] = (m.mean - *target) / m.std_error;
  } else {
    j["z"] = nullptr;
  }
  return j;
}

Json pair_report_json(const WordPairReport& r, bool joint) {
  Json j;
  j["linkX"] = r.link_x;
  j["linkY"] = joint ? Json(r.link_y) : Json(nullptr);
  j["word"] = r.word.to_string();
  if (joint) j["word2"] = r.word2.to_string();
  j["n_ladder"] = r.ladder;
  j["counts"] = r.counts;
  j["normalized"] = r.estimate.values;
  j["p_estimate"] = r.estimate.limit;
  j["p_raw"] = r.estimate.raw_limit;
  j["slope"] = r.estimate.slope;
  j["residual"] = r.estimate.residual;
  j["expected"] = r.expected;
  j["pass"] = r.pass;
  return j;
}

namespace detail {

std::uint64_t read_seed(ConfigReader& cfg, const RunOptions& options) {
  std::uint64_t seed = cfg.get_u64("master_seed", kDefaultSeed);
  if (options.seed) {
    seed = *options.seed;
    cfg.set_effective("master_seed", seed);
  }
  return seed;
}

ProductSpec read_product(ConfigReader& cfg, const RunOptions& options,
                         const std::string& default_x, const std::string& default_y,
                         int default_n, int default_trials, int min_trials) {
  ProductSpec spec;
  spec.link_x = cfg.get_link("link_x", default_x);
  spec.link_y = cfg.get_link("link_y", default_y);
  const std::string dist = cfg.get_string("dist", "rademacher");
  spec.dist_x = cfg.get_distribution("dist_x", dist);
  spec.dist_y = cfg.get_distribution("dist_y", dist);
  spec.n = static_cast<int>(cfg.get_int("n", default_n, 1, 20000));
  spec.trials = static_cast<int>(cfg.get_int("trials", default_trials, min_trials, 1000000));
  spec.master_seed = read_seed(cfg, options);
  return spec;
}

CountOptions count_options(const RunOptions& options) {
  CountOptions c;
  c.threads = options.threads;
  return c;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

using detail::dump;

CommandOutput cmd_spectrum(const Json& config, const RunOptions& options) {
  ConfigReader cfg(config, "spectrum");
  const ProductSpec spec = detail::read_product(cfg, options, "toeplitz", "hankel", 1000, 1, 1);
  const int bins = static_cast<int>(cfg.get_int("bins", 60, 1, 100000));
  const double lo = cfg.get_double("lo", -3.0);
  const double hi = cfg.get_double("hi", 3.0);
  if (!(lo < hi)) cfg.fail("hi", "must exceed lo");
  const bool write_eigenvalues = cfg.get_bool("write_eigenvalues", true);
  std::optional<double> ks_tol;
  if (cfg.has("ks_tol")) ks_tol = cfg.get_double("ks_tol", 0.05);
  const LimitLaw law = limit_law(spec.link_x, spec.link_y);
  if (ks_tol && law != LimitLaw::Semicircle) {
    cfg.fail("ks_tol", "no reference CDF for " + spec.link_x.name() + " x " + spec.link_y.name());
  }
  cfg.finish();

  SimulationOptions sim;
  sim.threads = options.threads;
  sim.keep_spectra = true;
  const SimulationResult result = simulate(spec, 2, sim);

  std::vector<double> pooled;
  std::ostringstream csv;
  csv << "trial,index,eigenvalue\n";
  for (std::size_t t = 0; t < result.spectra.size(); ++t) {
    const auto& ev = result.spectra[t].eigenvalues;
    pooled.insert(pooled.end(), ev.begin(), ev.end());
    if (write_eigenvalues) {
      for (std::size_t i = 0; i < ev.size(); ++i) {
        csv << t << ',' << i << ',' << format_double(ev[i]) << '\n';
      }
    }
  }
  const Esd esd(pooled);

  CommandOutput out;
  out.command = "spectrum";
  Json hist = Json::array();
  for (const auto& b : histogram(esd, bins, lo, hi)) {
    hist.push_back(Json{{"center", b.center}, {"density", b.density}});
  }
  Json& r = out.report;
  r["link_x"] = spec.link_x.name();
  r["link_y"] = spec.link_y.name();
  r["dist_x"] = to_string(spec.dist_x);
  r["dist_y"] = to_string(spec.dist_y);
  r["n"] = spec.n;
  r["trials"] = spec.trials;
  r["seed"] = spec.master_seed;
  r["limit"] = to_string(law);
  r["min"] = esd.points().front();
  r["max"] = esd.points().back();
  r["moments"] = Json::array();
  for (const auto& m : result.moments) r["moments"].push_back(moment_record(m, spec.master_seed, {}));
  if (law == LimitLaw::Semicircle) {
    const double ks = ks_distance(esd, semicircle_cdf);
    r["ks_reference"] = "semicircle";
    r["ks"] = ks;
    if (ks_tol) {
      out.checks.push_back({"ks<=" + format_double(*ks_tol), ks <= *ks_tol, format_double(ks)});
    }
  } else {
    r["ks_reference"] = nullptr;
    r["ks"] = nullptr;
  }
  r["histogram"] = {{"bins", bins}, {"lo", lo}, {"hi", hi}};
  out.config = cfg.effective();
  out.files.emplace_back("spectrum.json", dump(r));
  out.files.emplace_back("histogram.json", dump(Json{{"lo", lo}, {"hi", hi}, {"bins", hist}}));
  if (write_eigenvalues) out.files.emplace_back("eigenvalues.csv", csv.str());
  return out;
}

CommandOutput cmd_moments(const Json& config, const RunOptions& options) {
  ConfigReader cfg(config, "moments");
  const ProductSpec spec = detail::read_product(cfg, options, "toeplitz", "hankel", 1000, 20, 2);
  const int h_max = static_cast<int>(cfg.get_int("h_max", 6, 1, 8));
  const double z_tol = cfg.get_double("z_tol", 3.0);
  const bool check = cfg.get_bool("check", true);
  cfg.finish();

  const LimitLaw law = limit_law(spec.link_x, spec.link_y);
  std::optional<MomentSequence> targets;
  if (law != LimitLaw::Unknown) {
    const int h_target = law == LimitLaw::Semicircle ? h_max : std::min(h_max, 6);
    targets = limit_moments(law, h_target, detail::count_options(options));
  }
  const auto estimates = mc_moments(spec, h_max, options.threads);

  CommandOutput out;
  out.command = "moments";
  Json records = Json::array();
  for (const auto& m : estimates) {
    std::optional<double> target;
    if (targets && m.h <= targets->max_order()) target = targets->at(m.h);
    records.push_back(moment_record(m, spec.master_seed, target));
    if (check && target) {
      const double gap = std::abs(m.mean - *target);
      out.checks.push_back({"beta_" + std::to_string(m.h) + " within " + format_double(z_tol) +
                                " stderr",
                            gap <= z_tol * m.std_error + 1e-9, format_double(gap)});
    }
  }
  out.report["link_x"] = spec.link_x.name();
  out.report["link_y"] = spec.link_y.name();
  out.report["limit"] = to_string(law);
  out.report["moments"] = records;
  out.config = cfg.effective();
  out.files.emplace_back("moments.json", dump(out.report));
  return out;
}

CommandOutput cmd_words(const Json& config, const RunOptions& options) {
  ConfigReader cfg(config, "words");
  const int h = static_cast<int>(cfg.get_int("h", 4, 1, 16));
  const std::string mode = cfg.get_string("mode", "list");
  const bool pair_matched = cfg.get_bool("pair_matched", true);
  detail::read_seed(cfg, options);
  cfg.finish();
  if (mode != "list" && mode != "count") cfg.fail("mode", "expected \"list\" or \"count\"");
  if (pair_matched && h % 2) cfg.fail("h", "pair-matched words need an even length");
  if (!pair_matched && h > 12) cfg.fail("h", "set partitions are enumerated up to length 12");

  const auto words = pair_matched ? enumerate_pair_matched(h) : enumerate_words(h);
  CommandOutput out;
  out.command = "words";
  std::size_t catalan = 0;
  Json list = Json::array();
  for (const auto& w : words) {
    Json e;
    e["word"] = w.to_string();
    e["letters"] = w.num_letters();
    if (pair_matched) {
      const bool c = is_catalan(w);
      catalan += c;
      e["catalan"] = c;
    }
    e["generating_positions"] = generating_positions(w);
    if (mode == "list") list.push_back(e);
  }
  out.report["h"] = h;
  out.report["pair_matched"] = pair_matched;
  out.report["total"] = words.size();
  out.report["catalan"] = pair_matched ? Json(catalan) : Json(nullptr);
  if (mode == "list") out.report["words"] = list;
  out.config = cfg.effective();
  out.files.emplace_back("words.json", dump(out.report));
  return out;
}

CommandOutput cmd_pw(const Json& config, const RunOptions& options) {
  ConfigReader cfg(config, "pw");
  const LinkFunction x = cfg.get_link("link_x", "toeplitz");
  const bool joint = cfg.has("link_y");
  const LinkFunction y = joint ? cfg.get_link("link_y", "") : x;
  std::vector<std::pair<Word, Word>> pairs;
  int h = 0;
  const auto parse_word = [&](const std::string& key) {
    const std::string text = cfg.get_string(key, "");
    try {
      return Word::parse(text);
    } catch (const ArgumentError& e) {
      cfg.fail(key, e.what());
    }
  };
  if (cfg.has("word")) {
    const Word w = parse_word("word");
    const Word w2 = cfg.has("word2") ? parse_word("word2") : w;
    if (w2.size() != w.size()) cfg.fail("word2", "length differs from word");
    if (!joint && cfg.has("word2")) cfg.fail("word2", "needs link_y");
    h = static_cast<int>(w.size());
    pairs.emplace_back(w, w2);
  } else {
    h = static_cast<int>(cfg.get_int("h", 4, 2, 8));
    if (h % 2) cfg.fail("h", "pair-matched words need an even length");
    const auto words = enumerate_pair_matched(h);
    for (const auto& w : words) {
      if (!joint) {
        pairs.emplace_back(w, w);
        continue;
      }
      for (const auto& w2 : words) pairs.emplace_back(w, w2);
    }
  }
  const std::vector<int> ladder = cfg.get_int_list("ladder", default_ladder(h), 2, 4096);
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i] <= ladder[i - 1]) cfg.fail("ladder", "must be strictly increasing");
  }
  if (ladder.size() < 3) cfg.fail("ladder", "needs at least three dimensions");
  std::optional<double> expected;
  if (cfg.has("expected")) expected = cfg.get_double("expected", 0.0);
  const double tol = cfg.get_double("tol", 0.02);
  detail::read_seed(cfg, options);
  cfg.finish();

  const CountOptions copts = detail::count_options(options);
  std::vector<LinkTable> tx, ty;
  for (int n : ladder) {
    tx.emplace_back(x, n);
    if (joint) ty.emplace_back(y, n);
  }
  CommandOutput out;
  out.command = "pw";
  Json reports = Json::array();
  for (const auto& [w, w2] : pairs) {
    WordPairReport r;
    r.link_x = x.name();
    r.link_y = y.name();
    r.word = w;
    r.word2 = w2;
    r.ladder = ladder;
    std::vector<CircuitClassCount> counts;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      counts.push_back(joint ? count_pi_star_joint(tx[i], ty[i], w, w2, copts)
                             : count_pi_star(tx[i], w, copts));
      r.counts.push_back(counts.back().count);
    }
    r.estimate = estimate_p(counts);
    Json j;
    if (expected) {
      r.expected = *expected;
      r.pass = std::abs(r.estimate.raw_limit - *expected) <= tol;
      j = pair_report_json(r, joint);
      out.checks.push_back({"p(" + w.to_string() + (joint ? "," + w2.to_string() : "") + ")",
                            r.pass, format_double(r.estimate.raw_limit)});
    } else {
      j = pair_report_json(r, joint);
      j["expected"] = nullptr;
      j["pass"] = nullptr;
    }
    reports.push_back(j);
  }
  out.report = reports;
  out.config = cfg.effective();
  out.files.emplace_back("pw.json", dump(reports));
  return out;
}

namespace {

Transform parse_transform(ConfigReader& cfg, const std::string& key) {
  const std::string text = cfg.get_string(key, "square");
  if (text == "square") return Transform::square();
  long long a = 0, b = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "coprimepower(%lld,%lld%c", &a, &b, &tail) == 3 && tail == ')') {
    try {
      return Transform::coprime_power(a, b);
    } catch (const ArgumentError& e) {
      cfg.fail(key, e.what());
    }
  }
  cfg.fail(key, "expected \"square\" or \"coprimepower(a,b)\"");
}

}  // namespace

CommandOutput cmd_check(const Json& config, const RunOptions& options) {
  ConfigReader cfg(config, "check");
  const std::string relation = cfg.get_string("relation", "compatible");
  const LinkFunction x = cfg.get_link("link_x", "toeplitz");
  const CountOptions copts = detail::count_options(options);
  CommandOutput out;
  out.command = "check";
  Json results = Json::array();

  if (relation == "compatible" || relation == "leadsto") {
    const LinkFunction y = cfg.get_link("link_y", "hankel");
    const int h = static_cast<int>(cfg.get_int("h", 4, 2, 8));
    if (h % 2) cfg.fail("h", "pair-matched words need an even length");
    const auto ladder = cfg.get_int_list("ladder", {8, 16, 32}, 2, 4096);
    if (ladder.size() < 3) cfg.fail("ladder", "needs at least three dimensions");
    const double tol = cfg.get_double("tol", 0.03);
    detail::read_seed(cfg, options);
    cfg.finish();
    const auto reports = relation == "compatible"
                             ? check_compatible(x, y, h, ladder, tol, copts)
                             : check_leadsto_wigner(x, y, h, ladder, tol, copts);
    for (const auto& r : reports) {
      results.push_back(pair_report_json(r, true));
      out.checks.push_back({relation + " " + x.name() + "," + y.name() + " " + r.word.to_string() +
                                "," + r.word2.to_string(),
                            r.pass, format_double(r.estimate.raw_limit)});
    }
  } else if (relation == "implies") {
    const LinkFunction y = cfg.get_link("link_y", "hankel");
    const auto ns = cfg.get_int_list("n", {10, 20, 50}, 1, 2000);
    const bool expect = cfg.get_bool("expect", true);
    detail::read_seed(cfg, options);
    cfg.finish();
    for (int n : ns) {
      const bool holds = check_implies_wigner(x, y, n);
      results.push_back(Json{{"linkX", x.name()}, {"linkY", y.name()}, {"n", n}, {"implies", holds},
                             {"expected", expect}, {"pass", holds == expect}});
      out.checks.push_back({"implies " + x.name() + "," + y.name() + " n=" + std::to_string(n),
                            holds == expect, holds ? "true" : "false"});
    }
  } else if (relation == "invariance") {
    std::optional<Transform> transform;
    std::optional<LinkFunction> target;
    if (cfg.has("link_y")) {
      target = cfg.get_link("link_y", "");
    } else {
      transform = parse_transform(cfg, "transform");
    }
    const auto hs = cfg.get_int_list("h", {2, 4}, 2, 8);
    const auto ns = cfg.get_int_list("n", {8}, 2, 64);
    detail::read_seed(cfg, options);
    cfg.finish();
    for (int h : hs) {
      if (h % 2) cfg.fail("h", "pair-matched words need an even length");
      for (int n : ns) {
        const auto reports = target ? check_invariance_containment(x, *target, h, n, copts)
                                    : check_invariance_containment(x, *transform, h, n, copts);
        for (const auto& r : reports) {
          results.push_back(containment_json(r));
          out.checks.push_back({"invariance " + r.word.to_string() + " n=" + std::to_string(n),
                                r.pass, ""});
        }
      }
    }
  } else {
    cfg.fail("relation", "expected compatible, leadsto, implies or invariance");
  }
  out.report["relation"] = relation;
  out.report["results"] = results;
  out.config = cfg.effective();
  out.files.emplace_back("check.json", dump(out.report));
  return out;
}

Json containment_json(const ContainmentReport& r) {
  return Json{{"word", r.word.to_string()},
              {"n", r.n},
              {"count_base", r.count_base},
              {"count_transformed", r.count_transformed},
              {"count_joint", r.count_joint},
              {"subset", r.subset},
              {"equal", r.equal},
              {"injective", r.injective},
              {"pass", r.pass}};
}

CommandOutput run_command(const std::string& name, const Json& config, const RunOptions& options) {
  if (name == "spectrum") return cmd_spectrum(config, options);
  if (name == "moments") return cmd_moments(config, options);
  if (name == "words") return cmd_words(config, options);
  if (name == "pw") return cmd_pw(config, options);
  if (name == "check") return cmd_check(config, options);
  if (name == "verify-table2") return cmd_verify_table2(config, options);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace shp::cli
