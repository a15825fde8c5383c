#include "app.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "acceptance.hpp"
#include "cmvspec/construction.hpp"
#include "cmvspec/csv.hpp"
#include "cmvspec/dos.hpp"
#include "cmvspec/operator.hpp"
#include "cmvspec/parallel.hpp"
#include "cmvspec/potential.hpp"
#include "cmvspec/walk.hpp"
#include "json.hpp"

#ifndef CMVSPEC_VERSION
#define CMVSPEC_VERSION "0.0.0"
#endif

namespace cmvspec::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr long long kMinGrid = 16;
constexpr std::size_t kDefaultSamples = 1024;

struct Context {
  const RunConfig& config;
  json cfg;                // parsed config, {} without --config
  fs::path base;           // directory relative paths resolve against
  std::string input_bytes;  // config text plus referenced files, hashed into the manifest
  std::vector<std::pair<std::string, std::string>> artifacts;  // name, hash
  std::ostream& log;
};

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::Config, what); }

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) config_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_artifact(Context& ctx, const std::string& name, const std::string& bytes) {
  const fs::path p = fs::path(ctx.config.out_dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) config_error("cannot write " + p.string());
  out << bytes;
  ctx.artifacts.emplace_back(name, fnv1a_hex(bytes));
}

void write_json(Context& ctx, const std::string& name, const json& j) { write_artifact(ctx, name, j.dump(2) + "\n"); }

template <class F>
void write_csv(Context& ctx, const std::string& name, std::vector<std::string> header, F&& fill) {
  std::ostringstream s;
  CsvWriter w(s, std::move(header));
  fill(w);
  write_artifact(ctx, name, s.str());
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("field '") + key + "': " + e.what());
  }
}

cplx complex_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    config_error(std::string(what) + " must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to(cplx z) { return json::array({z.real(), z.imag()}); }

// A word is given inline ({"q", "r", "pairs"}), as a preset
// ({"kind": "free" | "constant", ...}) or as a path to a word file.
VerblunskyWord resolve_word(Context& ctx, const json& spec) {
  if (spec.is_string()) {
    const fs::path p = ctx.base / spec.get<std::string>();
    const std::string text = read_text(p);
    ctx.input_bytes += text;
    return word_from_json(text);
  }
  if (!spec.is_object()) config_error("word must be an object or a file path");
  if (spec.contains("pairs")) return word_from_json(spec.dump());
  const std::string kind = get_or<std::string>(spec, "kind", "");
  const index_t q = get_or<index_t>(spec, "q", 2);
  if (kind == "free") return free_word(q);
  if (kind == "constant") {
    const cplx a = spec.contains("alpha") ? complex_from(spec["alpha"], "alpha") : cplx(0.5);
    return constant_word(a, q, get_or<double>(spec, "lambda_arg", 0.0), get_or<double>(spec, "r", kDefaultRadius));
  }
  config_error("word needs 'pairs', a 'kind' of free or constant, or a file path");
}

VerblunskyWord word_arg(Context& ctx, const char* key, const VerblunskyWord& fallback) {
  if (!ctx.cfg.contains(key)) return fallback;
  return resolve_word(ctx, ctx.cfg[key]);
}

BandOptions band_options(const Context& ctx) {
  BandOptions o;
  if (ctx.config.tol) o.edge_tol = *ctx.config.tol;
  return o;
}

std::size_t sample_count(const Context& ctx) {
  if (ctx.config.grid) return static_cast<std::size_t>(*ctx.config.grid);
  return get_or<std::size_t>(ctx.cfg, "grid", kDefaultSamples);
}

void write_bands(Context& ctx, const BandList& b, const std::string& prefix = "") {
  write_csv(ctx, prefix + "bands.csv", {"band", "left", "right", "length"}, [&](CsvWriter& w) {
    for (std::size_t i = 0; i < b.bands.size(); ++i) {
      w.row({static_cast<index_t>(i), b.bands[i].left, b.bands[i].right, b.bands[i].length()});
    }
  });
}

int cmd_spectrum(Context& ctx) {
  const VerblunskyWord word = word_arg(ctx, "word", free_word(2));
  BandOptions o = band_options(ctx);
  if (ctx.config.grid) o.grid_size = *ctx.config.grid;
  const BandList b = band_list(word, o);
  write_bands(ctx, b);
  write_csv(ctx, "gaps.csv", {"gap", "left", "right", "length", "residual_left", "residual_right"},
            [&](CsvWriter& w) {
              for (std::size_t i = 0; i < b.gaps.size(); ++i) {
                w.row({static_cast<index_t>(i), b.gaps[i].left, b.gaps[i].right, b.gaps[i].length(),
                       b.edge_residuals[2 * i], b.edge_residuals[2 * i + 1]});
              }
            });
  write_csv(ctx, "touch_points.csv", {"index", "tau"}, [&](CsvWriter& w) {
    for (std::size_t i = 0; i < b.touch_points.size(); ++i) w.row({static_cast<index_t>(i), b.touch_points[i]});
  });
  write_json(ctx, "spectrum.json",
             {{"q", word.q()},
              {"band_count", b.bands.size()},
              {"gap_count", b.gaps.size()},
              {"touch_count", b.touch_points.size()},
              {"measure", b.measure()},
              {"grid_used", b.grid_used}});
  ctx.log << word.q() << "-periodic word: " << b.bands.size() << " bands, Leb = " << format_double(b.measure())
          << "\n";
  return kOk;
}

int cmd_dos(Context& ctx) {
  const VerblunskyWord word = word_arg(ctx, "word", free_word(2));
  const BandList b = band_list(word, band_options(ctx));
  const DOSProfile p = dos_profile(word, b, uniform_tau_grid(sample_count(ctx)));
  write_csv(ctx, "dos.csv", {"tau", "density", "cdf", "lower_bound", "schur_bound"}, [&](CsvWriter& w) {
    for (std::size_t i = 0; i < p.tau_grid.size(); ++i) {
      w.row({p.tau_grid[i], p.density[i], p.cdf[i], p.lower_bound[i], p.schur_bound[i]});
    }
  });
  const std::vector<double> masses = band_masses(word, b);
  write_csv(ctx, "band_masses.csv", {"band", "left", "right", "mass", "mass_exact"}, [&](CsvWriter& w) {
    for (std::size_t i = 0; i < b.bands.size(); ++i) {
      w.row({static_cast<index_t>(i), b.bands[i].left, b.bands[i].right, masses[i],
             dos_measure(word, b, b.bands[i])});
    }
  });
  return kOk;
}

int cmd_lyapunov(Context& ctx) {
  const VerblunskyWord word = word_arg(ctx, "word", free_word(2));
  const std::vector<double> grid = uniform_tau_grid(sample_count(ctx));
  std::vector<double> delta(grid.size()), lyap(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    delta[i] = discriminant_on_circle(word, grid[i]);
    lyap[i] = lyapunov(word, SpectralParameter::on_circle(grid[i]));
  });
  write_csv(ctx, "lyapunov.csv", {"tau", "discriminant", "lyapunov"}, [&](CsvWriter& w) {
    for (std::size_t i = 0; i < grid.size(); ++i) w.row({grid[i], delta[i], lyap[i]});
  });
  if (ctx.cfg.contains("points")) {
    const BandList b = band_list(word, band_options(ctx));
    const double tol = ctx.config.tol ? *ctx.config.tol : get_or<double>(ctx.cfg, "thouless_tol", 1e-9);
    std::vector<ThoulessResult> res;
    std::vector<cplx> zs;
    for (const auto& p : ctx.cfg["points"]) zs.push_back(complex_from(p, "point"));
    for (cplx z : zs) res.push_back(thouless_check(word, b, z, tol));
    write_csv(ctx, "thouless.csv", {"re", "im", "lyapunov", "log_potential", "residual", "nodes"},
              [&](CsvWriter& w) {
                for (std::size_t i = 0; i < zs.size(); ++i) {
                  w.row({zs[i].real(), zs[i].imag(), res[i].lyapunov, res[i].log_potential, res[i].residual,
                         static_cast<index_t>(res[i].nodes)});
                }
              });
  }
  return kOk;
}

int cmd_schur(Context& ctx) {
  const VerblunskyWord word = word_arg(ctx, "word", free_word(2));
  const BandList b = band_list(word, band_options(ctx));
  const std::vector<double> grid = uniform_tau_grid(sample_count(ctx));
  std::vector<std::optional<std::pair<SchurSample, double>>> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    if (!b.contains(grid[i])) return;
    try {
      out[i] = std::make_pair(schur_values(word, grid[i]), schur_dos_bound(word, grid[i]));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearEdge && e.code() != ErrorCode::OutsideBand) throw;
    }
  });
  write_csv(ctx, "schur.csv", {"tau", "shift", "re", "im", "abs", "schur_bound"}, [&](CsvWriter& w) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!out[i]) continue;
      const auto& [s, bound] = *out[i];
      for (std::size_t l = 0; l < s.values.size(); ++l) {
        w.row({grid[i], static_cast<index_t>(2 * l), s.values[l].real(), s.values[l].imag(), std::abs(s.values[l]),
               bound});
      }
    }
  });
  return kOk;
}

json word_json(const VerblunskyWord& w) { return json::parse(word_to_json(w)); }

json certificate_json(const RefinementCertificate& c) {
  return {{"seed_period", c.seed_period},
          {"n_prime", c.n_prime},
          {"n", c.n},
          {"output_period", c.word.q()},
          {"ell", c.ell},
          {"k", c.k},
          {"gamma", c.gamma},
          {"min_gap", c.min_gap},
          {"max_band", c.max_band},
          {"gap_eps", c.gap_eps},
          {"gap_sign", c.gap_sign},
          {"eta_grid_min", c.eta_grid_min},
          {"eta", c.eta},
          {"c", c.c},
          {"leb", c.leb},
          {"band_count", c.band_count},
          {"log_bound", c.log_bound},
          {"bound", c.bound},
          {"exp_bound", c.exp_bound},
          {"certified", c.certified},
          {"below_exp_bound", c.below_exp_bound},
          {"distance", c.distance}};
}

RefineOptions refine_options(const Context& ctx) {
  RefineOptions o;
  const std::string rep = get_or<std::string>(ctx.cfg, "repetition_rule", "measured");
  const std::string cov = get_or<std::string>(ctx.cfg, "cover_rule", "measured");
  if (rep != "measured" && rep != "analytic") config_error("repetition_rule must be measured or analytic");
  if (cov != "measured" && cov != "analytic") config_error("cover_rule must be measured or analytic");
  o.repetition = rep == "analytic" ? RepetitionRule::Analytic : RepetitionRule::Measured;
  o.cover.rule = cov == "analytic" ? CoverRule::Analytic : CoverRule::Measured;
  o.qcap = get_or<index_t>(ctx.cfg, "qcap", o.qcap);
  if (o.qcap < 2) config_error("qcap must be at least 2");
  if (ctx.config.grid) {
    o.cover.grid = *ctx.config.grid;
    o.eta_grid = *ctx.config.grid;
  }
  o.cover.bands = band_options(ctx);
  o.gaps.bands = band_options(ctx);
  o.output_bands = band_options(ctx);
  return o;
}

int cmd_thin(Context& ctx) {
  const VerblunskyWord seed = word_arg(ctx, "seed", constant_word(0.5, 2));
  const double delta = get_or<double>(ctx.cfg, "delta", 0.1);
  if (!(delta > 0.0)) config_error("delta must be positive");
  std::vector<index_t> ns;
  if (ctx.cfg.contains("n") && ctx.cfg["n"].is_array()) {
    ns = get_or<std::vector<index_t>>(ctx.cfg, "n", {});
  } else {
    ns.push_back(get_or<index_t>(ctx.cfg, "n", 0));
  }
  if (ns.empty()) config_error("n must not be empty");
  for (index_t n : ns) {
    if (n < 0) config_error("n must be non-negative");
  }
  const RefineOptions opts = refine_options(ctx);
  const RefinementPlan plan = plan_refinement(seed, delta, opts);
  json certs = json::array();
  bool all = true;
  RefinementCertificate last;
  for (index_t n : ns) {
    last = finish_refinement(seed, delta, plan, n, opts);
    certs.push_back(certificate_json(last));
    all = all && last.certified;
    ctx.log << "n = " << last.n << ": Leb = " << format_double(last.leb) << ", bound = " << format_double(last.bound)
            << (last.certified ? " (certified)\n" : " (NOT certified)\n");
  }
  write_json(ctx, "certificate.json",
             {{"delta", delta},
              {"seed_period", seed.q()},
              {"cover_size", plan.family.size()},
              {"cover_gamma", plan.family.gamma},
              {"n_prime", plan.family.n_prime},
              {"eta", plan.eta},
              {"certificates", certs}});
  write_json(ctx, "refined_word.json", word_json(last.word));
  write_bands(ctx, last.bands);
  return all ? kOk : kCertificationFailure;
}

json level_json(const TowerLevel& l) {
  return {{"level", l.level},
          {"q", l.q},
          {"eps", l.eps},
          {"leb", l.leb},
          {"c", l.c},
          {"eps_sum", l.eps_sum},
          {"distance_to_seed", l.distance_to_seed},
          {"distance_to_previous", l.distance_to_previous},
          {"hausdorff_exponents", std::vector<double>(std::begin(kHausdorffExponents), std::end(kHausdorffExponents))},
          {"hausdorff_content", l.hausdorff_content},
          {"schedule_condition", l.schedule_condition},
          {"certificate", certificate_json(l.certificate)}};
}

int cmd_tower(Context& ctx) {
  TowerSchedule s;
  s.mode = tower_mode_from_string(get_or<std::string>(ctx.cfg, "mode", "zero_measure"));
  s.eps0 = get_or<double>(ctx.cfg, "eps0", s.eps0);
  s.seed = word_arg(ctx, "seed", free_word(2));
  s.refine = refine_options(ctx);
  const int depth = get_or<int>(ctx.cfg, "depth", 3);
  if (ctx.cfg.contains("h")) {
    const json& h = ctx.cfg["h"];
    if (get_or<std::string>(h, "kind", "inverse-log-power") != "inverse-log-power") {
      config_error("h.kind must be inverse-log-power");
    }
    s.h.power = get_or<double>(h, "power", s.h.power);
    if (!(s.h.power > 0.0)) config_error("h.power must be positive");
  }
  std::vector<TowerLevel> done;
  TowerCallbacks cb;
  cb.on_level = [&](const TowerLevel& l) {
    done.push_back(l);
    json j = level_json(l);
    j["word"] = word_json(l.certificate.word);
    write_json(ctx, "level_" + std::to_string(l.level) + ".json", j);
    ctx.log << "level " << l.level << ": q = " << l.q << ", Leb = " << format_double(l.leb) << "\n";
  };
  json summary = {{"mode", to_string(s.mode)}, {"eps0", s.eps0}, {"depth", depth}, {"seed_period", s.seed.q()}};
  int status = kOk;
  try {
    const TowerResult t = build_tower(s, depth, cb);
    json wit = json::array();
    for (const auto& w : t.witnesses) {
      wit.push_back({{"level", w.level},
                     {"tau_limit", w.tau_limit},
                     {"tau_witness", w.tau_witness},
                     {"mass", w.mass},
                     {"chord", w.chord},
                     {"ratio", w.ratio}});
    }
    summary["witnesses"] = wit;
    std::vector<VerblunskyWord> words{s.seed};
    words.insert(words.end(), t.words.begin(), t.words.end());
    const GordonReport g = gordon_check(words, {1.5, 2.0, 4.0});
    summary["gordon"] = {{"scales", g.scales}, {"c", g.c_list}, {"log_defects", g.log_defects}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ScheduleInfeasible) throw;
    summary["error"] = e.what();
    ctx.log << e.what() << "\n";
    status = kCertificationFailure;
  }
  json levels = json::array();
  for (const auto& l : done) levels.push_back(level_json(l));
  summary["levels"] = levels;
  write_json(ctx, "tower.json", summary);
  return status;
}

CoinSequence walk_coins(Context& ctx) {
  if (ctx.cfg.contains("coins")) {
    json c = {{"period", ctx.cfg.value("period", json())}, {"coins", ctx.cfg["coins"]}};
    return coins_from_json(c.dump());
  }
  if (ctx.cfg.contains("coin_file")) {
    const fs::path p = ctx.base / get_or<std::string>(ctx.cfg, "coin_file", "");
    const std::string text = read_text(p);
    ctx.input_bytes += text;
    return coins_from_json(text);
  }
  if (ctx.cfg.contains("word")) return cmv_from_coins_inverse(resolve_word(ctx, ctx.cfg["word"]));
  return CoinSequence({hadamard_coin()});
}

int cmd_walk(Context& ctx) {
  const CoinSequence coins = walk_coins(ctx);
  const index_t steps = get_or<index_t>(ctx.cfg, "steps", 1024);
  const index_t j_radius = get_or<index_t>(ctx.cfg, "j_radius", 3);
  if (steps < 1) config_error("steps must be positive");
  if (j_radius < 0) config_error("j_radius must be non-negative");
  index_t site = 0;
  cplx up = 1.0, down = 0.0;
  if (ctx.cfg.contains("initial")) {
    const json& in = ctx.cfg["initial"];
    site = get_or<index_t>(in, "site", 0);
    if (in.contains("plus")) up = complex_from(in["plus"], "initial.plus");
    if (in.contains("minus")) down = complex_from(in["minus"], "initial.minus");
  }
  const double n0 = std::sqrt(std::norm(up) + std::norm(down));
  if (!(n0 > 0.0)) config_error("initial state must be nonzero");
  const WalkState psi0 = WalkState::localized(site, up / n0, down / n0);
  std::vector<index_t> checkpoints = get_or<std::vector<index_t>>(ctx.cfg, "checkpoints", {});

  WalkState psi = psi0;
  double drift = 0.0;
  for (index_t n = 0; n < steps; ++n) {
    psi = step(psi, coins);
    drift = std::max(drift, std::abs(psi.norm() - 1.0));
  }
  write_csv(ctx, "walk.csv", {"site", "p_plus", "p_minus"}, [&](CsvWriter& w) {
    for (index_t n = psi.lo; n <= psi.hi(); ++n) w.row({n, std::norm(psi.at(n, +1)), std::norm(psi.at(n, -1))});
  });
  const RageReport rep = rage_diagnostics(coins, psi0, j_radius, steps, checkpoints);
  write_csv(ctx, "survival.csv", {"n", "p"}, [&](CsvWriter& w) {
    for (std::size_t i = 0; i < rep.survival.size(); ++i) {
      w.row({static_cast<index_t>(i) - steps, rep.survival[i]});
    }
  });
  write_csv(ctx, "rage.csv", {"N", "cesaro", "wiener"}, [&](CsvWriter& w) {
    for (std::size_t i = 0; i < rep.checkpoints.size(); ++i) w.row({rep.checkpoints[i], rep.cesaro[i], rep.wiener[i]});
  });
  write_json(ctx, "walk.json",
             {{"period", coins.period()},
              {"steps", steps},
              {"j_radius", j_radius},
              {"norm_drift", drift},
              {"cesaro_log_slope", rep.cesaro_log_slope},
              {"coins", json::parse(coins_to_json(coins))}});
  return kOk;
}

int cmd_verify(Context& ctx) {
  acceptance::SuiteOptions o;
  o.criteria = get_or<std::vector<int>>(ctx.cfg, "criteria", {});
  for (int id : o.criteria) {
    if (id < 1 || id > acceptance::kCriterionCount) config_error("criterion ids run from 1 to 13");
  }
  o.on_result = [&](const acceptance::CriterionResult& r) { ctx.log << acceptance::format_line(r) << std::endl; };
  const auto results = acceptance::run_suite(o);
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  write_csv(ctx, "verify.csv", {"criterion", "name", "pass", "detail"}, [&](CsvWriter& w) {
    for (const auto& r : results) w.row({static_cast<index_t>(r.id), r.name, static_cast<index_t>(r.pass), r.detail});
  });
  ctx.log << passed << " passed, " << results.size() - passed << " failed\n";
  return passed == static_cast<int>(results.size()) ? kOk : kToleranceFailure;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidWord:
    case ErrorCode::DegenerateCoin:
    case ErrorCode::NotWalkShaped:
    case ErrorCode::ArcTooLong:
    case ErrorCode::WindowTooSmall:
    case ErrorCode::OddIndex:
    case ErrorCode::ZeroSpectralParameter:
      return kConfigError;
    case ErrorCode::GapOpeningFailed:
    case ErrorCode::CoverCertificationFailed:
    case ErrorCode::NTooSmall:
    case ErrorCode::EtaNonPositive:
    case ErrorCode::ScheduleInfeasible:
      return kCertificationFailure;
    default:
      return kToleranceFailure;
  }
}

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Dos: return "dos";
    case Command::Lyapunov: return "lyapunov";
    case Command::Schur: return "schur";
    case Command::Thin: return "thin";
    case Command::Tower: return "tower";
    case Command::Walk: return "walk";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

std::optional<Command> command_from_string(const std::string& name) {
  for (Command c : {Command::Spectrum, Command::Dos, Command::Lyapunov, Command::Schur, Command::Thin, Command::Tower,
                    Command::Walk, Command::Verify}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void validate(const RunConfig& config) {
  if (config.grid && *config.grid < kMinGrid) config_error("--grid must be at least " + std::to_string(kMinGrid));
  if (config.tol && !(*config.tol > 0.0)) config_error("--tol must be positive");
  if (config.threads && *config.threads == 0) config_error("--threads must be positive");
  if (config.out_dir.empty()) config_error("--out must not be empty");
}

int run(const RunConfig& config, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx{config, json::object(), fs::current_path(), "", {}, log};
  int status = kOk;
  std::string error;
  try {
    validate(config);
    if (config.threads) set_thread_count(*config.threads);
    if (!config.config_path.empty()) {
      ctx.input_bytes = read_text(config.config_path);
      ctx.base = fs::path(config.config_path).parent_path();
      try {
        ctx.cfg = json::parse(ctx.input_bytes);
      } catch (const json::exception& e) {
        config_error(std::string("config is not valid JSON: ") + e.what());
      }
      if (!ctx.cfg.is_object()) config_error("config must be a JSON object");
    }
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) config_error("cannot create " + config.out_dir + ": " + ec.message());
    switch (config.command) {
      case Command::Spectrum: status = cmd_spectrum(ctx); break;
      case Command::Dos: status = cmd_dos(ctx); break;
      case Command::Lyapunov: status = cmd_lyapunov(ctx); break;
      case Command::Schur: status = cmd_schur(ctx); break;
      case Command::Thin: status = cmd_thin(ctx); break;
      case Command::Tower: status = cmd_tower(ctx); break;
      case Command::Walk: status = cmd_walk(ctx); break;
      case Command::Verify: status = cmd_verify(ctx); break;
    }
  } catch (const Error& e) {
    status = exit_code_for(e.code());
    error = e.what();
    log << "error: " << error << "\n";
  }
  if (status == kConfigError && !fs::is_directory(config.out_dir)) return status;

  json artifacts = json::array();
  for (const auto& [name, hash] : ctx.artifacts) artifacts.push_back({{"name", name}, {"fnv1a", hash}});
  json manifest = {{"command", to_string(config.command)},
                   {"version", CMVSPEC_VERSION},
                   {"inputs_hash", fnv1a_hex(to_string(config.command) + "\n" + ctx.input_bytes)},
                   {"config", ctx.cfg},
                   {"overrides",
                    {{"grid", config.grid ? json(*config.grid) : json()}, {"tol", config.tol ? json(*config.tol) : json()}}},
                   {"artifacts", artifacts},
                   {"exit_code", status},
                   {"error", error.empty() ? json() : json(error)},
                   {"wall_time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                   {"timestamp", utc_timestamp()}};
  std::ofstream out(fs::path(config.out_dir) / "manifest.json");
  out << manifest.dump(2) << "\n";
  return status;
}

}  // namespace cmvspec::app
