#include "rotwave/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rotwave/atlas.hpp"
#include "rotwave/closedform.hpp"
#include "rotwave/errors.hpp"
#include "rotwave/portrait.hpp"
#include "rotwave/verify.hpp"
#include "rotwave/writers.hpp"

namespace rotwave::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

/// Usage-level failure: bad flags, inconsistent configuration, unwritable output.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + path);
  f << content;
  if (!f) throw UsageError("failed writing output file: " + path);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError("not a number in list: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<double> linspace(double from, double to, std::size_t n) {
  if (n < 2) throw UsageError("--samples must be at least 2");
  if (from == to) throw UsageError("--from and --to must differ");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// ---------------------------------------------------------------------------------------------
// params

int cmd_params(const RunConfig& cfg, std::ostream& out) {
  const WaveParams wp = cfg.wave_params();
  std::optional<CoriolisParams> cp;
  if (!cfg.direct_mode()) cp = derive_coriolis(*cfg.omega);
  const FirstIntegral fi = build_first_integral(wp);

  if (cfg.format == Format::Jsonl) {
    if (cp) {
      io::JsonRecord r("coriolis");
      r.field("Omega", cp->Omega).field("k", cp->k).field("alpha", cp->alpha).field("beta0", cp->beta0);
      r.field("beta", cp->beta).field("omega1", cp->omega1).field("omega2", cp->omega2);
      out << r.line();
    }
    io::JsonRecord w("wave");
    w.field("mode", cp ? "physical" : "direct").field("theta", wp.theta.str());
    if (cp) w.field("c", wp.c);
    w.field("C1", wp.C1).field("C2", wp.C2).field("C3", wp.C3).field("K", wp.K);
    w.field("singularAbscissa", wp.singular_abscissa()).field("m", wp.m());
    out << w.line();
    io::JsonRecord f("firstIntegral");
    f.field("validityNote", fi.validityNote);
    out << f.line();
    return kOk;
  }

  auto kv = [&](const std::string& k, const std::string& v) { out << k << " = " << v << '\n'; };
  if (cp) {
    kv("Omega", io::num(cp->Omega));
    kv("k", io::num(cp->k));
    kv("alpha", io::num(cp->alpha));
    kv("beta0", io::num(cp->beta0));
    kv("beta", io::num(cp->beta));
    kv("omega1", io::num(cp->omega1));
    kv("omega2", io::num(cp->omega2));
  }
  kv("mode", cp ? "physical" : "direct");
  kv("theta", wp.theta.str());
  if (cp) kv("c", io::num(wp.c));
  kv("C1", io::num(wp.C1));
  kv("C2", io::num(wp.C2));
  kv("C3", io::num(wp.C3));
  kv("K", io::num(wp.K));
  kv("singularAbscissa", io::num(wp.singular_abscissa()));
  kv("m", std::to_string(wp.m()));
  kv("validityNote", fi.validityNote);
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// portrait

int cmd_portrait(const RunConfig& cfg, std::ostream& out) {
  PortraitConfig pc;
  pc.wp = cfg.wave_params();
  pc.levels = cfg.h;
  pc.randomOrbits = cfg.orbits;
  pc.seed = cfg.seed;
  if (cfg.phiMin || cfg.phiMax || cfg.yMin || cfg.yMax) {
    PortraitWindow w = default_window(pc.wp, census(pc.wp));
    w.phiMin = cfg.phiMin.value_or(w.phiMin);
    w.phiMax = cfg.phiMax.value_or(w.phiMax);
    w.yMin = cfg.yMin.value_or(w.yMin);
    w.yMax = cfg.yMax.value_or(w.yMax);
    if (!(w.phiMin < w.phiMax) || !(w.yMin < w.yMax)) throw UsageError("portrait window is empty");
    pc.window = w;
  }
  const PortraitOutput po = render_portrait(pc);

  if (cfg.out.empty()) {
    out << (cfg.format == Format::Csv ? po.csv : po.svg);
    return kOk;
  }
  write_file(cfg.out + ".svg", po.svg);
  write_file(cfg.out + ".csv", po.csv);
  out << "svg = " << cfg.out << ".svg\n";
  out << "csv = " << cfg.out << ".csv\n";
  out << "case = " << to_string(po.census.caseLabel) << '\n';
  for (const auto& e : po.census.equilibria)
    out << fmt::format("equilibrium = {} phi={} y={}{}\n", to_string(e.kind), io::num(e.location.phi),
                       io::num(e.location.y), e.onSingularLine ? " line" : "");
  const auto& m = po.menu;
  out << fmt::format("orbits = solitary {} periodicSmooth {} peakon {} antiPeakon {} periodicPeakon {} unbounded {}\n",
                     m.solitary, m.periodicSmooth, m.peakon, m.antiPeakon, m.periodicPeakon, m.unbounded);
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// wave

struct WaveChoice {
  WaveSolution wave;
  double h = 0.0;
  std::optional<QuarticFactorization> factorization;
  double drift = 0.0;  ///< numeric orbits only
};

WaveSolution construct(const std::string& type, const QuarticFactorization& F) {
  if (type == "cn") return construct_cn_periodic(F);
  if (type == "sn-right") return construct_sn_periodic(F, true);
  if (type == "sn-left") return construct_sn_periodic(F, false);
  if (type == "solitary-right") return construct_solitary(F, true);
  return construct_solitary(F, false);  // "solitary" and "solitary-left"
}

/// Levels worth trying when no --h is given: saddle levels for solitary waves, otherwise
/// midpoints between critical levels first, then the remaining canonical levels.
std::vector<double> candidate_levels(const WaveParams& wp, const FirstIntegral& fi, const std::string& type) {
  const auto cs = census(wp);
  std::vector<double> levels;
  if (type.rfind("solitary", 0) == 0) {
    for (const auto& e : cs.equilibria)
      if (!e.onSingularLine && e.kind == EquilibriumKind::Saddle) levels.push_back(fi.potential(e.location.phi));
    return levels;
  }
  const auto crit = critical_levels(wp, fi, cs);
  for (std::size_t i = 0; i + 1 < crit.size(); ++i) levels.push_back(0.5 * (crit[i] + crit[i + 1]));
  for (double h : canonical_levels(crit, 1e-3))
    if (std::find(levels.begin(), levels.end(), h) == levels.end()) levels.push_back(h);
  return levels;
}

WaveChoice closed_form_wave(const RunConfig& cfg, const WaveParams& wp) {
  const FirstIntegral fi = build_first_integral(wp);
  if (!cfg.h.empty()) {
    WaveChoice c;
    c.h = cfg.h.front();
    c.factorization = factor_quartic(orbit_polynomial(wp, c.h));
    c.wave = construct(cfg.waveType, *c.factorization);
    return c;
  }
  (void)orbit_polynomial(wp, 0.0);  // surfaces UnsupportedForClosedForm before the search
  std::string tried;
  for (double h : candidate_levels(wp, fi, cfg.waveType)) {
    try {
      WaveChoice c;
      c.h = h;
      c.factorization = factor_quartic(orbit_polynomial(wp, h));
      c.wave = construct(cfg.waveType, *c.factorization);
      if (std::isfinite(c.wave.residualReport)) return c;
    } catch (const std::invalid_argument& e) {
      tried += fmt::format("\n  h={}: {}", io::num(h), e.what());
    }
  }
  throw RootPatternError("no level admits a " + cfg.waveType + " wave; pass --h explicitly" + tried);
}

WaveChoice numeric_wave(const RunConfig& cfg, const WaveParams& wp) {
  if (cfg.h.empty()) throw UsageError("--type numeric needs --h");
  const double h = cfg.h.front();
  const FirstIntegral fi = build_first_integral(wp);
  const auto cs = census(wp);
  const auto win = default_window(wp, cs);
  const double span = win.phiMax - win.phiMin;
  std::optional<CurveBranch> closed;
  for (auto& b : trace_level_curve(fi, h, win.phiMin - span, win.phiMax + span, 4000)) {
    if (b.leftTurning && b.rightTurning && !b.isPoint) {
      closed = std::move(b);
      break;
    }
  }
  if (!closed) throw RootPatternError(fmt::format("level h={} has no closed oval", io::num(h)));

  StopRule rule;
  rule.closeOnReturn = true;
  const Trajectory tr = integrate_until(wp, {closed->phiMin, 0.0}, 1e4, rule);
  if (tr.status != IntegrationStatus::Closed)
    throw RootPatternError(fmt::format("orbit on h={} did not close ({})", io::num(h), to_string(tr.status)));

  WaveChoice c;
  c.h = h;
  c.drift = tr.hDriftMax;
  c.wave.variant = WaveVariant::NumericOrbit;
  c.wave.source = wp;
  for (const auto& s : tr.samples) c.wave.samples.emplace_back(s.xi, s.point.phi);
  if (c.wave.samples.size() > 1 && c.wave.samples.back().first < c.wave.samples.front().first) {
    for (auto& s : c.wave.samples) s.first = -s.first;
  }
  std::sort(c.wave.samples.begin(), c.wave.samples.end());
  c.wave.samples.erase(std::unique(c.wave.samples.begin(), c.wave.samples.end(),
                                   [](const auto& a, const auto& b) { return a.first == b.first; }),
                       c.wave.samples.end());
  c.wave.parameters.period = tr.period.value_or(std::numeric_limits<double>::quiet_NaN());
  c.wave.parameters.lower = closed->phiMin;
  c.wave.parameters.upper = closed->phiMax;
  c.wave.residualReport = tr.hDriftMax;
  c.wave.notes = "numerically integrated closed orbit; residual is the relative first-integral drift";
  return c;
}

int cmd_wave(const RunConfig& cfg, std::ostream& out) {
  const WaveParams wp = cfg.wave_params();
  const bool numeric = cfg.waveType == "numeric";
  const WaveChoice c = numeric ? numeric_wave(cfg, wp) : closed_form_wave(cfg, wp);
  const WaveSolution& w = c.wave;
  const auto& P = w.parameters;

  std::vector<double> grid;
  if (numeric) {
    const double lo = w.samples.front().first;
    const double hi = w.samples.back().first;
    for (std::size_t i = 0; i < cfg.samples; ++i)
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(1, cfg.samples - 1)));
  } else {
    grid = default_grid(w, cfg.samples);
  }

  if (!cfg.out.empty()) {
    std::string body;
    if (cfg.format == Format::Jsonl) {
      for (double x : grid) body += io::JsonRecord("sample").field("xi", x).field("phi", w(x)).line();
    } else {
      io::CsvTable t({"xi", "phi"});
      for (double x : grid) t.row({io::num(x), io::num(w(x))});
      body = t.str();
    }
    write_file(cfg.out, body);
  }

  const bool solitary = w.variant == WaveVariant::SolitaryLeft || w.variant == WaveVariant::SolitaryRight;
  const bool ok = std::isfinite(w.residualReport) && w.residualReport <= cfg.tolerance;
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("variant", to_string(w.variant));
  rows.emplace_back("h", io::num(c.h));
  if (c.factorization) {
    rows.emplace_back("rootPattern", to_string(c.factorization->pattern));
    rows.emplace_back("leadingCoefficient", io::num(c.factorization->leadingCoefficient));
  }
  if (!numeric) {
    for (std::size_t i = 0; i < P.p.size(); ++i)
      if (!std::isnan(P.p[i])) rows.emplace_back(fmt::format("p{}", i + 1), io::num(P.p[i]));
    rows.emplace_back("omega", io::num(P.omega));
    rows.emplace_back("m", io::num(P.mParam));
  }
  rows.emplace_back("period", io::num(P.period));
  rows.emplace_back("lower", io::num(P.lower));
  rows.emplace_back("upper", io::num(P.upper));
  rows.emplace_back("phi(0)", io::num(w(grid.empty() ? 0.0 : (numeric ? grid.front() : 0.0))));
  if (solitary) {
    rows.emplace_back("limit", io::num(P.p[1]));
    rows.emplace_back("phi(xiMin)", io::num(w(grid.front())));
    rows.emplace_back("phi(xiMax)", io::num(w(grid.back())));
  }
  rows.emplace_back(numeric ? "drift" : "residual", io::num(w.residualReport));
  rows.emplace_back("tolerance", io::num(cfg.tolerance));
  rows.emplace_back("status", ok ? "ok" : "residual above tolerance");
  if (!cfg.out.empty()) rows.emplace_back("samples", cfg.out);

  if (cfg.format == Format::Jsonl) {
    io::JsonRecord r("report");
    for (const auto& [k, v] : rows) r.field(k, v);
    out << r.line();
  } else {
    for (const auto& [k, v] : rows) out << k << " = " << v << '\n';
  }
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------------------------
// sweep

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  SweepOptions opt;
  opt.execution = cfg.serial ? Execution::Serial : Execution::Parallel;

  std::string vary = cfg.vary;
  double from = 0.0;
  double to = 0.0;
  std::function<WaveParams(double)> make;
  if (cfg.scenario == "t1" || cfg.scenario == "t3") {
    if (cfg.direct_mode() || cfg.omega || cfg.c) throw UsageError("scenario " + cfg.scenario + " fixes its own parameters");
    const bool t1 = cfg.scenario == "t1";
    const WaveParams base = t1 ? WaveParams::direct(Theta::quarter(), 0.0, 0.0, -1.0, 0.5)
                               : WaveParams::direct(Theta::half(), 0.0, 0.0, -1.0, 0.0);
    vary = t1 ? "c1" : "k";
    from = cfg.from.value_or(t1 ? 0.4 : 0.5);
    to = cfg.to.value_or(t1 ? -0.15 : -0.5);
    make = t1 ? std::function<WaveParams(double)>([base](double v) { auto w = base; w.C1 = v; return w; })
              : std::function<WaveParams(double)>([base](double v) { auto w = base; w.K = v; return w; });
  } else {
    if (!cfg.from || !cfg.to) throw UsageError("custom sweeps need --from and --to");
    from = *cfg.from;
    to = *cfg.to;
    if (vary == "c") {
      if (cfg.direct_mode() || !cfg.omega) throw UsageError("--vary c needs physical mode with --omega");
      const Theta th = Theta::parse(cfg.theta);
      const double Omega = *cfg.omega;
      (void)derive_coriolis(Omega);
      make = [Omega, th](double v) { return derive_wave_params(derive_coriolis(Omega), v, th); };
    } else {
      const WaveParams base = cfg.wave_params();
      if (vary == "c1") make = [base](double v) { auto w = base; w.C1 = v; return w; };
      else make = [base](double v) { auto w = base; w.K = v; return w; };
    }
  }

  const SweepReport rep = sweep_family(vary, linspace(from, to, cfg.sweepSamples), make, opt);

  if (!cfg.out.empty()) {
    std::string body;
    auto agreement = [](const SweepSample& s) { return s.agreement ? (*s.agreement ? "yes" : "no") : "excluded"; };
    if (cfg.format == Format::Jsonl) {
      for (const auto& s : rep.samples) {
        io::JsonRecord r("sample");
        r.field(vary, s.parameter).field("theorem", to_string(s.label.theorem)).field("domain", s.label.domain);
        r.field("linePosition", s.label.singularLinePosition).field("boundary", s.label.boundary);
        r.field("predicted", s.predicted ? s.predicted->str() : std::string("-"));
        r.field("observed", s.observed.str()).field("agreement", agreement(s)).field("diagnostic", s.diagnostic);
        body += r.line();
      }
      io::JsonRecord r("summary");
      r.field("compared", rep.compared).field("agreed", rep.agreed).field("excluded", rep.excluded);
      r.field("agreementRate", rep.agreement_rate());
      body += r.line();
    } else {
      io::CsvTable t({vary, "theorem", "domain", "linePosition", "boundary", "predicted", "observed", "agreement",
                      "diagnostic"});
      for (const auto& s : rep.samples)
        t.row({io::num(s.parameter), to_string(s.label.theorem), s.label.domain, s.label.singularLinePosition,
               s.label.boundary ? "true" : "false", s.predicted ? s.predicted->str() : "-", s.observed.str(),
               agreement(s), s.diagnostic});
      body = t.str();
    }
    write_file(cfg.out, body);
  }

  for (const auto& s : rep.samples)
    if (s.agreement && !*s.agreement)
      out << fmt::format("disagreement {}={}: {}\n", vary, io::num(s.parameter), s.diagnostic);
  out << fmt::format("sweep {} from {} to {}: {} samples, {} compared, {} excluded as boundary\n", vary, io::num(from),
                     io::num(to), rep.samples.size(), rep.compared, rep.excluded);
  out << fmt::format("agreement {}/{} = {:.1f}% ({} 95% threshold)\n", rep.agreed, rep.compared,
                     100.0 * rep.agreement_rate(), rep.agreement_rate() >= 0.95 ? "meets" : "below");
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// verify

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto results = run_property_suite(cfg.seed, cfg.serial ? Execution::Serial : Execution::Parallel);
  const std::string ledger = render_ledger(results);
  if (!cfg.out.empty()) write_file(cfg.out, ledger);
  out << ledger;
  const bool ok = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------------------------
// argument handling

/// Splices config-file tokens in right after the subcommand so later flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;
  if (rest.empty()) throw UsageError("--config given without a command");
  auto tokens = config_tokens(*path);
  rest.insert(rest.begin() + 1, tokens.begin(), tokens.end());
  return rest;
}

void add_model_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--theta", cfg.theta, "theta as p/q (1/4, 1/2, 1, ...)")->capture_default_str();
  cmd->add_option("--omega", cfg.omega, "Coriolis frequency Omega >= 0 (physical mode)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--c", cfg.c, "wave speed c (physical mode)");
  cmd->add_option("--c1", cfg.c1, "direct coefficient C1");
  cmd->add_option("--c2", cfg.c2, "direct coefficient C2");
  cmd->add_option("--c3", cfg.c3, "direct coefficient C3");
  cmd->add_option("--k", cfg.k, "direct integration constant K");
}

Format to_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "jsonl") return Format::Jsonl;
  if (s == "svg") return Format::Svg;
  return Format::Text;
}

}  // namespace

WaveParams RunConfig::wave_params() const {
  const bool physical = omega.has_value() || c.has_value();
  if (physical && direct_mode())
    throw std::invalid_argument(
        "direct coefficients (--c1 --c2 --c3 --k) and physical parameters (--omega --c) are mutually exclusive");
  const Theta th = Theta::parse(theta);
  if (direct_mode()) return WaveParams::direct(th, c1.value_or(0.0), c2.value_or(0.0), c3.value_or(0.0), k.value_or(0.0));
  if (!omega || !c) throw std::invalid_argument("give --omega and --c, or direct coefficients --c1 --c2 --c3 --k");
  return derive_wave_params(derive_coriolis(*omega), *c, th);
}

std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  int lineNo = 0;
  while (std::getline(f, line)) {
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(fmt::format("{}:{}: expected key=value", path, lineNo));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") throw UsageError(fmt::format("{}:{}: invalid key", path, lineNo));
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format;
  std::string hList;

  CLI::App app{"Traveling waves of the rotation-theta shallow-water equation", "rotwave"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");
  app.set_help_all_flag("--help-all", "help for every command");
  app.footer("Every command also accepts --config FILE with key = value lines; later flags override them.\n"
             "Exit codes: 0 success, 1 check or residual failure, 2 usage error.");

  auto* params = app.add_subcommand("params", "derived coefficients and first-integral note");
  add_model_options(params, cfg);
  params->add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));

  auto* portrait = app.add_subcommand("portrait", "SVG phase portrait and CSV of all curves");
  add_model_options(portrait, cfg);
  portrait->add_option("--h", hList, "comma-separated extra level curves H = h");
  portrait->add_option("--phi-min", cfg.phiMin);
  portrait->add_option("--phi-max", cfg.phiMax);
  portrait->add_option("--y-min", cfg.yMin);
  portrait->add_option("--y-max", cfg.yMax);
  portrait->add_option("--orbits", cfg.orbits, "extra orbits from seeded random starts");
  portrait->add_option("--seed", cfg.seed, "seed for the random starts")->capture_default_str();
  portrait->add_option("--out", cfg.out, "output prefix; writes PREFIX.svg and PREFIX.csv");
  portrait->add_option("--format", format, "stdout format without --out: svg or csv")
      ->check(CLI::IsMember({"svg", "csv"}));

  auto* wave = app.add_subcommand("wave", "closed-form (or integrated) wave profile with residual report");
  add_model_options(wave, cfg);
  wave->add_option("--type", cfg.waveType, "cn | sn-right | sn-left | solitary | solitary-right | solitary-left | numeric")
      ->check(CLI::IsMember({"cn", "sn-right", "sn-left", "solitary", "solitary-right", "solitary-left", "numeric"}))
      ->capture_default_str();
  wave->add_option("--h", hList, "level H = h (chosen automatically when omitted)");
  wave->add_option("--samples", cfg.samples, "profile sample count")->check(CLI::Range(2, 10'000'000))->capture_default_str();
  wave->add_option("--tol", cfg.tolerance, "residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  wave->add_option("--out", cfg.out, "profile samples file");
  wave->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  auto* sweep = app.add_subcommand("sweep", "prediction/observation agreement along a parameter sweep");
  add_model_options(sweep, cfg);
  sweep->add_option("--scenario", cfg.scenario, "t1 | t3 | custom")
      ->check(CLI::IsMember({"t1", "t3", "custom"}))
      ->capture_default_str();
  sweep->add_option("--vary", cfg.vary, "c1 | k | c (custom scenario)")->check(CLI::IsMember({"c1", "k", "c"}));
  sweep->add_option("--from", cfg.from);
  sweep->add_option("--to", cfg.to);
  sweep->add_option("--samples", cfg.sweepSamples)->check(CLI::Range(2, 100'000))->capture_default_str();
  sweep->add_flag("--serial", cfg.serial, "run the serial reference instead of the OpenMP kernel");
  sweep->add_option("--out", cfg.out, "per-sample report file");
  sweep->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  auto* verify = app.add_subcommand("verify", "full property suite; exit 1 on any failure");
  verify->add_option("--seed", cfg.seed)->capture_default_str();
  verify->add_flag("--serial", cfg.serial, "run the serial reference instead of the OpenMP kernels");
  verify->add_option("--out", cfg.out, "ledger file");

  try {
    auto argv = expand_config(args);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (!hList.empty()) cfg.h = parse_list(hList);
    if (params->parsed()) {
      cfg.command = Command::Params;
      cfg.format = format == "jsonl" ? Format::Jsonl : Format::Text;
      return cmd_params(cfg, out);
    }
    if (portrait->parsed()) {
      cfg.command = Command::Portrait;
      cfg.format = format.empty() ? Format::Svg : to_format(format);
      return cmd_portrait(cfg, out);
    }
    if (wave->parsed()) {
      cfg.command = Command::Wave;
      cfg.format = format.empty() ? (cfg.out.empty() ? Format::Text : Format::Csv) : to_format(format);
      return cmd_wave(cfg, out);
    }
    if (sweep->parsed()) {
      cfg.command = Command::Sweep;
      cfg.format = format.empty() ? Format::Csv : to_format(format);
      return cmd_sweep(cfg, out);
    }
    cfg.command = Command::Verify;
    return cmd_verify(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace rotwave::cli
