#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "tennis/bestof.hpp"
#include "tennis/efficiency.hpp"
#include "tennis/game.hpp"
#include "tennis/match.hpp"
#include "tennis/montecarlo.hpp"
#include "tennis/set.hpp"
#include "tennis/system.hpp"

namespace tennis::cli {
namespace {

using json = nlohmann::ordered_json;

struct Params {
  std::optional<double> p, pa, pb;
  int k = 7, k0 = 7, k1 = 10, q = 2;
  std::optional<int> l;
  std::string tiebreak = "sttg";
  int precision = 6;
  std::string format = "json";
};

void add_common(CLI::App* sub, Params& p) {
  sub->add_option("--p", p.p, "Server's probability of winning a point (gt, game, bofk)");
  sub->add_option("--pa", p.pa, "Probability that A wins a point on A's serve");
  sub->add_option("--pb", p.pb, "Probability that B wins a point on B's serve");
  sub->add_option("--k", p.k, "Set tie-breaker target (st, set)")->capture_default_str();
  sub->add_option("--k0", p.k0, "Tie-breaker target in sets 1..2Q (match)")->capture_default_str();
  sub->add_option("--k1", p.k1, "Tie-breaker target in the deciding set (match)")->capture_default_str();
  sub->add_option("--q", p.q, "Match is best of 2Q+1 sets")->capture_default_str();
  sub->add_option("--l", p.l, "Best of 2L+1 points (bofk, default 4) or games (bog, default 22)");
  sub->add_option("--tiebreak", p.tiebreak, "Tie-break at L-L for bog: sg, sttg, sttp")->capture_default_str();
  sub->add_option("--precision", p.precision, "Significant digits in output")
      ->check(CLI::Range(1, 15))
      ->capture_default_str();
  sub->add_option("--format", p.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

SystemSpec build_spec(const std::string& name, const Params& p) {
  SystemSpec s;
  s.kind = parse_system(name);
  s.K = p.k;
  s.match = {p.k0, p.k1, p.q};
  s.L = p.l.value_or(s.kind == SystemKind::BoG ? 22 : 4);
  s.tiebreak = parse_tiebreak(p.tiebreak);
  validate(s);
  return s;
}

ServePair build_pair(const SystemSpec& s, const Params& p) {
  if (is_one_parameter(s.kind)) {
    const std::optional<double> v = p.p ? p.p : p.pa;
    if (!v) throw DomainError("p", "--p is required for system " + system_name(s.kind));
    check_probability(*v, "p");
    return {*v, 0.5};
  }
  if (!p.pa) throw DomainError("pa", "--pa is required for system " + system_name(s.kind));
  if (!p.pb) throw DomainError("pb", "--pb is required for system " + system_name(s.kind));
  check_probability(*p.pa, "pa");
  check_probability(*p.pb, "pb");
  return {*p.pa, *p.pb};
}

double rounded(double v, int prec) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return std::strtod(buf, nullptr);
}

json num(double v, int prec) {
  if (!std::isfinite(v)) return nullptr;
  return rounded(v, prec);
}

std::string text(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

json header(const std::string& command, const SystemSpec& s) {
  json doc;
  doc["tool"] = "tennis";
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["system"] = describe(s);
  return doc;
}

json inputs(const SystemSpec& s, const ServePair& pair, int prec) {
  json in;
  if (is_one_parameter(s.kind)) {
    in["p"] = num(pair.pa, prec);
  } else {
    in["pa"] = num(pair.pa, prec);
    in["pb"] = num(pair.pb, prec);
  }
  switch (s.kind) {
    case SystemKind::ST:
    case SystemKind::Set: in["k"] = s.K; break;
    case SystemKind::Match:
      in["k0"] = s.match.K0;
      in["k1"] = s.match.K1;
      in["q"] = s.match.Q;
      break;
    case SystemKind::BofK: in["l"] = s.L; break;
    case SystemKind::BoG:
      in["l"] = s.L;
      in["tiebreak"] = tiebreak_name(s.tiebreak);
      break;
    default: break;
  }
  return in;
}

std::string csv_value(const json& v, int prec) {
  if (v.is_number_float()) return text(v.get<double>(), prec);
  return v.dump();
}

void emit(const json& doc, std::ostream& out) { out << doc.dump(2) << "\n"; }

void add_moments(json& res, const std::string& sym, const Moments& m, int prec) {
  res["mu_" + sym] = num(m.mean, prec);
  res["sigma2_" + sym] = num(m.variance, prec);
  res["sigma_" + sym] = num(m.stddev(), prec);
}

PointCountDistribution distribution_of(const SystemSpec& s, const ServePair& pair, int n_max) {
  switch (s.kind) {
    case SystemKind::Game: return game_points_pmf(pair.pa, n_max);
    case SystemKind::STT: return stt_points_distribution(pair, n_max);
    case SystemKind::ST: return st_points_distribution(pair, s.K, n_max);
    case SystemKind::Set: return set_points_distribution(pair, s.K, n_max);
    case SystemKind::Match: return match_points_distribution(pair, s.match, n_max);
    case SystemKind::BofK: return bofk_points_distribution(pair.pa, s.L);
    default: throw DomainError("pmf", "--pmf is not available for system " + system_name(s.kind));
  }
}

int cmd_compute(const std::string& system, const Params& p, bool want_pmf, int n_max, std::ostream& out) {
  const SystemSpec s = build_spec(system, p);
  const ServePair pair = build_pair(s, p);
  const int prec = p.precision;
  const std::string sym = system_symbol(s.kind);

  json res;
  res["theta_" + sym] = num(system_win_prob(s, pair), prec);
  add_moments(res, sym, system_points_moments(s, pair), prec);
  if (s.kind == SystemKind::BoG && s.tiebreak == TieBreak::STTG)
    add_moments(res, sym + "_games_count", bog_match_points_moments(pair, {s.L, s.tiebreak}, TieCount::GamesCount),
                prec);

  std::optional<PointCountDistribution> dist;
  if (want_pmf) dist = distribution_of(s, pair, n_max);

  if (p.format == "csv") {
    if (dist) {
      out << "n,mass\n";
      for (int n = 0; n <= dist->n_max(); ++n)
        if (dist->mass[n] != 0.0) out << n << "," << text(dist->mass[n], prec) << "\n";
      out << "truncated," << text(dist->truncation_mass, prec) << "\n";
      return kOk;
    }
    out << "symbol,value\n";
    for (const auto& [key, value] : res.items()) out << key << "," << csv_value(value, prec) << "\n";
    return kOk;
  }
  json doc = header("compute", s);
  doc["inputs"] = inputs(s, pair, prec);
  doc["results"] = res;
  if (dist) {
    json n = json::array(), mass = json::array();
    for (int i = 0; i <= dist->n_max(); ++i) {
      if (dist->mass[i] == 0.0) continue;
      n.push_back(i);
      mass.push_back(num(dist->mass[i], prec));
    }
    doc["pmf"] = {{"n", n}, {"mass", mass}, {"truncation_mass", num(dist->truncation_mass, prec)}};
  }
  emit(doc, out);
  return kOk;
}

int cmd_breakdown(const std::string& system, const Params& p, std::ostream& out) {
  const SystemSpec s = build_spec(system, p);
  const ServePair pair = build_pair(s, p);
  Breakdown b;
  switch (s.kind) {
    case SystemKind::Game: b = game_breakdown(pair.pa); break;
    case SystemKind::Set: b = set_breakdown(pair, s.K); break;
    case SystemKind::Match: b = match_breakdown(pair, s.match); break;
    default: throw DomainError("system", "breakdown is available for game, set and match");
  }
  const int prec = p.precision;
  if (p.format == "csv") {
    out << "score,win_a,win_b,total,cond_mean,cond_variance\n";
    auto line = [&](const ScoreRow& r) {
      out << r.label << "," << text(r.win_a, prec) << "," << text(r.win_b, prec) << "," << text(r.probability(), prec)
          << "," << text(r.mean, prec) << "," << text(r.variance, prec) << "\n";
    };
    for (const ScoreRow& r : b.rows) line(r);
    line(b.overall);
    return kOk;
  }
  auto row_json = [&](const ScoreRow& r) {
    json j;
    j["score"] = r.label;
    j["win_a"] = num(r.win_a, prec);
    j["win_b"] = num(r.win_b, prec);
    j["total"] = num(r.probability(), prec);
    j["cond_mean"] = num(r.mean, prec);
    j["cond_variance"] = num(r.variance, prec);
    return j;
  };
  json doc = header("breakdown", s);
  doc["inputs"] = inputs(s, pair, prec);
  json rows = json::array();
  for (const ScoreRow& r : b.rows) rows.push_back(row_json(r));
  doc["rows"] = rows;
  doc["overall"] = row_json(b.overall);
  emit(doc, out);
  return kOk;
}

using CellFn = std::function<double(const ServePair&)>;

CellFn quantity_fn(const std::string& quantity, const SystemSpec& a, const std::optional<SystemSpec>& b) {
  if (quantity == "win_prob") return [a](const ServePair& x) { return system_win_prob(a, x); };
  if (quantity == "mean_points") return [a](const ServePair& x) { return system_points_moments(a, x).mean; };
  if (quantity == "std_points") return [a](const ServePair& x) { return system_points_moments(a, x).stddev(); };
  if (!b) throw DomainError("versus", "--quantity " + quantity + " needs a second system via --versus");
  const SystemSpec c = *b;
  if (quantity == "diff")
    return [a, c](const ServePair& x) { return system_win_prob(a, x) - system_win_prob(c, x); };
  if (quantity == "log_ratio")
    return [a, c](const ServePair& x) { return std::log(system_win_prob(a, x) / system_win_prob(c, x)); };
  if (quantity == "mean_ratio")
    return [a, c](const ServePair& x) { return system_points_moments(a, x).mean / system_points_moments(c, x).mean; };
  if (quantity == "std_ratio")
    return [a, c](const ServePair& x) {
      return system_points_moments(a, x).stddev() / system_points_moments(c, x).stddev();
    };
  throw DomainError("quantity", "unknown quantity '" + quantity + "'");
}

int cmd_grid(std::string system, std::string quantity, const std::string& versus, int res, double pmin, double pmax,
             const Params& p, std::ostream& out) {
  // "match-mean" style shorthands select the quantity.
  const auto dash = system.find('-');
  if (dash != std::string::npos) {
    const std::string suffix = system.substr(dash + 1);
    system = system.substr(0, dash);
    if (suffix == "mean") quantity = "mean_points";
    else if (suffix == "std") quantity = "std_points";
    else if (suffix == "win") quantity = "win_prob";
    else throw DomainError("system", "unknown grid suffix '-" + suffix + "' (expected -win, -mean, -std)");
  }
  const SystemSpec s = build_spec(system, p);
  std::optional<SystemSpec> other;
  if (!versus.empty()) {
    other = build_spec(versus, p);
    if (is_one_parameter(other->kind) != is_one_parameter(s.kind))
      throw DomainError("versus", "--versus must take the same number of serve parameters as the main system");
  }
  if (res < 2) throw DomainError("res", "--res must be at least 2");
  check_probability(pmin, "pmin");
  check_probability(pmax, "pmax");
  if (!(pmin < pmax)) throw DomainError("pmin", "--pmin must be below --pmax");
  const CellFn f = quantity_fn(quantity, s, other);
  const int prec = p.precision;

  std::vector<double> axis(res);
  for (int i = 0; i < res; ++i) axis[i] = rounded(pmin + (pmax - pmin) * i / (res - 1), 12);

  if (is_one_parameter(s.kind)) {
    std::vector<double> values(res);
    for (int i = 0; i < res; ++i) values[i] = f({axis[i], 0.5});
    if (p.format == "csv") {
      out << "p," << quantity << "\n";
      for (int i = 0; i < res; ++i) out << text(axis[i], prec) << "," << text(values[i], prec) << "\n";
      return kOk;
    }
    json doc = header("grid", s);
    doc["quantity"] = quantity;
    if (other) doc["versus"] = describe(*other);
    json xs = json::array(), vs = json::array();
    for (int i = 0; i < res; ++i) {
      xs.push_back(num(axis[i], prec));
      vs.push_back(num(values[i], prec));
    }
    doc["p"] = xs;
    doc["values"] = vs;
    emit(doc, out);
    return kOk;
  }

  std::vector<std::vector<double>> grid(res, std::vector<double>(res));
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) grid[i][j] = f({axis[i], axis[j]});
  if (p.format == "csv") {
    out << "pa\\pb";
    for (int j = 0; j < res; ++j) out << "," << text(axis[j], prec);
    out << "\n";
    for (int i = 0; i < res; ++i) {
      out << text(axis[i], prec);
      for (int j = 0; j < res; ++j) out << "," << text(grid[i][j], prec);
      out << "\n";
    }
    return kOk;
  }
  json doc = header("grid", s);
  doc["quantity"] = quantity;
  if (other) doc["versus"] = describe(*other);
  json xs = json::array();
  for (double x : axis) xs.push_back(num(x, prec));
  doc["pa"] = xs;
  doc["pb"] = xs;
  json rows = json::array();
  for (const auto& r : grid) {
    json row = json::array();
    for (double v : r) row.push_back(num(v, prec));
    rows.push_back(row);
  }
  doc["values"] = rows;
  emit(doc, out);
  return kOk;
}

std::vector<BetaPrior> parse_prior(const std::string& text_value) {
  std::vector<double> v;
  std::stringstream ss(text_value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw DomainError("prior", "--prior expects four numbers a,b,c,d");
    v.push_back(x);
  }
  if (v.size() != 4) throw DomainError("prior", "--prior expects four numbers a,b,c,d");
  return {{v[0], v[1]}, {v[2], v[3]}};
}

int cmd_efficiency(const std::vector<std::string>& systems, double alpha, double beta, const std::string& prior,
                   std::optional<int> panels, std::optional<double> tolerance, const Params& p, std::ostream& out) {
  const std::vector<BetaPrior> pair_prior = parse_prior(prior);
  const BetaPrior single{alpha, beta};
  check_prior(single, "alpha");
  check_prior(pair_prior[0], "prior");
  check_prior(pair_prior[1], "prior");
  const int prec = p.precision;
  std::vector<EfficiencyReport> reports;
  for (const std::string& name : systems) {
    const SystemSpec s = build_spec(name, p);
    QuadratureOptions opts = is_one_parameter(s.kind) ? one_param_defaults() : two_param_defaults();
    if (panels) opts.panels = *panels;
    if (tolerance) opts.tolerance = *tolerance;
    if (is_one_parameter(s.kind)) reports.push_back(system_efficiency(s, single, {}, opts));
    else reports.push_back(system_efficiency(s, pair_prior[0], pair_prior[1], opts));
  }
  auto prior_text = [&](const EfficiencyReport& r) {
    std::string t;
    for (const BetaPrior& b : r.priors) {
      if (!t.empty()) t += ";";
      t += "Be(" + text(b.alpha, prec) + "," + text(b.beta, prec) + ")";
    }
    return t;
  };
  if (p.format == "csv") {
    out << "system,prior,value,error_estimate\n";
    for (const auto& r : reports)
      out << r.system << "," << prior_text(r) << "," << text(r.value, prec) << "," << text(r.error_estimate, 3) << "\n";
    return kOk;
  }
  json doc;
  doc["tool"] = "tennis";
  doc["version"] = kVersion;
  doc["command"] = "efficiency";
  json arr = json::array();
  for (const auto& r : reports) {
    json j;
    j["system"] = r.system;
    json pr = json::array();
    for (const BetaPrior& b : r.priors) pr.push_back({{"alpha", num(b.alpha, prec)}, {"beta", num(b.beta, prec)}});
    j["prior"] = pr;
    j["efficiency"] = num(r.value, prec);
    j["error_estimate"] = num(r.error_estimate, 3);
    j["panels"] = r.panels;
    arr.push_back(j);
  }
  doc["reports"] = arr;
  emit(doc, out);
  return kOk;
}

int cmd_simulate(const std::string& system, std::uint64_t reps, std::optional<std::uint64_t> seed, std::uint64_t cap,
                 unsigned threads, const Params& p, std::ostream& out) {
  const SystemSpec s = build_spec(system, p);
  const ServePair pair = build_pair(s, p);
  SimConfig c;
  c.system = s;
  c.params = pair;
  c.replications = reps;
  if (seed) {
    c.seed = *seed;
  } else {
    std::random_device rd;
    c.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  c.max_points = cap;
  c.threads = threads;
  const SimSummary sum = simulate(c);
  const int prec = p.precision;

  json res;
  res["replications"] = sum.replications;
  res["completed"] = sum.completed;
  res["capped_replications"] = sum.capped_replications;
  res["win_rate_A"] = num(sum.win_rate_a, prec);
  res["win_rate_A_se"] = num(sum.win_rate_se, prec);
  res["mean_points"] = num(sum.points.mean, prec);
  res["mean_points_se"] = num(sum.points.mean_se, prec);
  res["std_points"] = num(sum.points.stddev, prec);
  res["std_points_se"] = num(sum.points.stddev_se, prec);

  if (p.format == "csv") {
    out << "symbol,value\n";
    out << "seed," << c.seed << "\n";
    for (const auto& [key, value] : res.items()) out << key << "," << csv_value(value, prec) << "\n";
    return kOk;
  }
  json doc = header("simulate", s);
  json in = inputs(s, pair, prec);
  in["reps"] = reps;
  in["seed"] = c.seed;
  in["cap"] = cap;
  doc["inputs"] = in;
  doc["results"] = res;
  if (!sum.rows.empty()) {
    json rows = json::array();
    for (const SimRow& r : sum.rows) {
      json j;
      j["score"] = r.label;
      j["wins_a"] = r.wins_a;
      j["wins_b"] = r.wins_b;
      j["cond_mean"] = num(r.points.mean, prec);
      j["cond_variance"] = num(r.points.variance, prec);
      j["cond_variance_se"] = num(r.points.variance_se, prec);
      rows.push_back(j);
    }
    doc["rows"] = rows;
  }
  emit(doc, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact probabilities, point-count moments and efficiencies of tennis scoring systems"};
  app.name("tennis");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Params compute_p, breakdown_p, grid_p, eff_p, sim_p;
  std::string compute_sys, breakdown_sys, grid_sys, sim_sys;
  std::vector<std::string> eff_systems;

  auto* compute = app.add_subcommand("compute", "Win probability and point-count moments of one system");
  compute->add_option("system", compute_sys, "gt, game, stt, st, set, match, bofk, bog")->required();
  add_common(compute, compute_p);
  bool want_pmf = false;
  int n_max = 0;
  compute->add_flag("--pmf", want_pmf, "Also emit the distribution of the number of points");
  compute->add_option("--nmax", n_max, "Largest point count in the emitted distribution (default per system)");

  auto* breakdown = app.add_subcommand("breakdown", "Per-final-score table for game, set or match");
  breakdown->add_option("system", breakdown_sys, "game, set, match")->required();
  add_common(breakdown, breakdown_p);

  auto* grid = app.add_subcommand("grid", "Evaluate a quantity over a grid of serve probabilities");
  grid->add_option("system", grid_sys, "System, optionally suffixed -win, -mean or -std")->required();
  add_common(grid, grid_p);
  std::string quantity = "win_prob", versus;
  int res = 99;
  double pmin = 0.01, pmax = 0.99;
  grid->add_option("--quantity", quantity, "win_prob, mean_points, std_points, diff, log_ratio, mean_ratio, std_ratio")
      ->capture_default_str();
  grid->add_option("--versus", versus, "Second system for diff, log_ratio, mean_ratio, std_ratio");
  grid->add_option("--res", res, "Grid points per axis")->capture_default_str();
  grid->add_option("--pmin", pmin, "Lowest grid coordinate")->capture_default_str();
  grid->add_option("--pmax", pmax, "Highest grid coordinate")->capture_default_str();

  auto* eff = app.add_subcommand("efficiency", "Efficiency of one or more systems under beta priors");
  eff->add_option("systems", eff_systems, "Systems to evaluate")->required();
  add_common(eff, eff_p);
  double alpha = 2.0, beta = 1.0;
  std::string prior = "2,1,2,1";
  std::optional<int> panels;
  std::optional<double> tolerance;
  eff->add_option("--alpha", alpha, "Beta prior alpha for one-parameter systems")->capture_default_str();
  eff->add_option("--beta", beta, "Beta prior beta for one-parameter systems")->capture_default_str();
  eff->add_option("--prior", prior, "Product prior a,b,c,d = Be(a,b) x Be(c,d) for two-parameter systems")
      ->capture_default_str();
  eff->add_option("--panels", panels, "Quadrature panels per piece before refinement");
  eff->add_option("--tolerance", tolerance, "Largest acceptable quadrature error estimate");

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo estimate by playing out the scoring rules");
  sim->add_option("system", sim_sys, "gt, game, stt, st, set, match, bofk, bog")->required();
  add_common(sim, sim_p);
  std::uint64_t reps = 100000, cap = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  sim->add_option("--reps", reps, "Replications")->capture_default_str();
  sim->add_option("--seed", seed, "Seed; drawn from the system entropy source and echoed when omitted");
  sim->add_option("--cap", cap, "Point cap per replication")->capture_default_str();
  sim->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute) {
      if (n_max == 0) n_max = compute_sys == "match" ? 4000 : compute_sys == "set" ? 2000 : compute_sys == "game" ? 400 : 1000;
      return cmd_compute(compute_sys, compute_p, want_pmf, n_max, out);
    }
    if (*breakdown) return cmd_breakdown(breakdown_sys, breakdown_p, out);
    if (*grid) return cmd_grid(grid_sys, quantity, versus, res, pmin, pmax, grid_p, out);
    if (*eff) return cmd_efficiency(eff_systems, alpha, beta, prior, panels, tolerance, eff_p, out);
    if (*sim) return cmd_simulate(sim_sys, reps, seed, cap, threads, sim_p, out);
  } catch (const DomainError& e) {
    err << "error: invalid --" << e.parameter() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const NonTerminatingError& e) {
    err << "error: " << e.what() << "\n";
    return kNonTerminating;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << " (best estimate " << text(e.best_estimate(), 10) << ", error estimate "
        << text(e.error_estimate(), 3) << ")\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace tennis::cli
