#include "tennis/efficiency.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <thread>

namespace tennis {

void check_prior(const BetaPrior& prior, const char* name) {
  if (!(prior.alpha > 0.0 && prior.beta > 0.0 && std::isfinite(prior.alpha) && std::isfinite(prior.beta)))
    throw DomainError(name, std::string(name) + ": beta parameters must be positive");
}

namespace {

double log_beta_fn(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Maps t in [0,1] to p and carries the prior density in t. For priors with
// an endpoint singularity p = sin^2(pi t / 2), which keeps t = 1/2 at p = 1/2.
struct Coordinate {
  BetaPrior prior;
  bool stretched;
  double log_norm;

  explicit Coordinate(const BetaPrior& pr)
      : prior(pr), stretched(pr.alpha < 1.0 || pr.beta < 1.0), log_norm(log_beta_fn(pr.alpha, pr.beta)) {}

  void eval(double t, double& p, double& weight) const {
    if (!stretched) {
      p = t;
      weight = std::exp((prior.alpha - 1.0) * std::log(t) + (prior.beta - 1.0) * std::log1p(-t) - log_norm);
      return;
    }
    const double s = std::sin(std::numbers::pi * t / 2.0);
    const double c = std::cos(std::numbers::pi * t / 2.0);
    p = s * s;
    weight = std::numbers::pi *
             std::exp((2.0 * prior.alpha - 1.0) * std::log(s) + (2.0 * prior.beta - 1.0) * std::log(c) - log_norm);
  }
};

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Composite rule on [a, b].
Rule composite(double a, double b, int panels) {
  using G = boost::math::quadrature::gauss<double, 20>;
  const auto& abs = G::abscissa();
  const auto& wts = G::weights();
  Rule r;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double mid = a + (i + 0.5) * h;
    for (std::size_t k = 0; k < abs.size(); ++k) {
      const double off = abs[k] * h / 2.0;
      const double wk = wts[k] * h / 2.0;
      if (off == 0.0) {
        r.x.push_back(mid);
        r.w.push_back(wk);
        continue;
      }
      r.x.push_back(mid - off);
      r.w.push_back(wk);
      r.x.push_back(mid + off);
      r.w.push_back(wk);
    }
  }
  return r;
}

unsigned thread_count(unsigned requested, std::size_t work) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (n > work) n = static_cast<unsigned>(work);
  return std::max(1u, n);
}

// Fills out[i] = f(i) for i < n using contiguous blocks per thread.
template <class F>
void parallel_fill(std::vector<double>& out, std::size_t n, unsigned threads, F f) {
  out.assign(n, 0.0);
  const unsigned t = thread_count(threads, n);
  if (t == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < t; ++k) {
    pool.emplace_back([&, k] {
      for (std::size_t i = k; i < n; i += t) out[i] = f(i);
    });
  }
  for (auto& th : pool) th.join();
}

double ordered_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double one_param_value(const std::function<double(double)>& curve, const Coordinate& coord, int panels,
                       unsigned threads) {
  const Rule lo = composite(0.0, 0.5, panels);
  const Rule hi = composite(0.5, 1.0, panels);
  std::vector<double> terms;
  const std::size_t n = lo.x.size();
  parallel_fill(terms, 2 * n, threads, [&](std::size_t i) {
    const bool upper = i >= n;
    const Rule& r = upper ? hi : lo;
    const std::size_t k = upper ? i - n : i;
    double p, weight;
    coord.eval(r.x[k], p, weight);
    const double theta = curve(p);
    return r.w[k] * weight * (upper ? 2.0 * theta - 1.0 : 1.0 - 2.0 * theta);
  });
  return ordered_sum(terms);
}

double two_param_value(const std::function<double(double, double)>& surface, const Coordinate& ca,
                       const Coordinate& cb, int panels, unsigned threads) {
  const Rule r = composite(0.0, 1.0, panels);
  const std::size_t n = r.x.size();
  // Row i integrates over u for outer node x_i on both triangles. With
  // t_B = u t_A the region t_A > t_B (equivalently pA > pB) becomes the unit
  // square with Jacobian t_A; the other triangle swaps roles.
  std::vector<double> rows;
  parallel_fill(rows, n, threads, [&](std::size_t i) {
    const double x = r.x[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double y = r.x[j] * x;
      double pa, wa, pb, wb;
      ca.eval(x, pa, wa);
      cb.eval(y, pb, wb);
      double upper = (2.0 * surface(pa, pb) - 1.0) * wa * wb;
      ca.eval(y, pa, wa);
      cb.eval(x, pb, wb);
      double lower = (1.0 - 2.0 * surface(pa, pb)) * wa * wb;
      acc += r.w[j] * (upper + lower);
    }
    return r.w[i] * x * acc;
  });
  return ordered_sum(rows);
}

void check_options(const QuadratureOptions& opts) {
  if (opts.panels < 1) throw DomainError("panels", "quadrature needs at least one panel");
}

}  // namespace

double beta_pdf(const BetaPrior& prior, double p) {
  check_prior(prior, "prior");
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return std::exp((prior.alpha - 1.0) * std::log(p) + (prior.beta - 1.0) * std::log1p(-p) -
                  log_beta_fn(prior.alpha, prior.beta));
}

QuadratureOptions one_param_defaults() { return {16, 1e-5, 0}; }
QuadratureOptions two_param_defaults() { return {4, 5e-4, 0}; }

EfficiencyReport efficiency_one_param(const std::function<double(double)>& curve, const BetaPrior& prior,
                                      const QuadratureOptions& opts) {
  check_prior(prior, "prior");
  check_options(opts);
  const Coordinate coord(prior);
  const double coarse = one_param_value(curve, coord, opts.panels, opts.threads);
  const double fine = one_param_value(curve, coord, 2 * opts.panels, opts.threads);
  EfficiencyReport rep;
  rep.priors = {prior};
  rep.value = fine;
  rep.error_estimate = std::abs(fine - coarse);
  rep.panels = 2 * opts.panels;
  if (!(rep.error_estimate <= opts.tolerance))
    throw NumericalError("quadrature did not reach the requested tolerance", fine, rep.error_estimate);
  return rep;
}

EfficiencyReport efficiency_two_param(const std::function<double(double, double)>& surface,
                                      const BetaPrior& prior_a, const BetaPrior& prior_b,
                                      const QuadratureOptions& opts) {
  check_prior(prior_a, "prior_a");
  check_prior(prior_b, "prior_b");
  check_options(opts);
  const Coordinate ca(prior_a), cb(prior_b);
  const double coarse = two_param_value(surface, ca, cb, opts.panels, opts.threads);
  const double fine = two_param_value(surface, ca, cb, 2 * opts.panels, opts.threads);
  EfficiencyReport rep;
  rep.priors = {prior_a, prior_b};
  rep.value = fine;
  rep.error_estimate = std::abs(fine - coarse);
  rep.panels = 2 * opts.panels;
  if (!(rep.error_estimate <= opts.tolerance))
    throw NumericalError("quadrature did not reach the requested tolerance", fine, rep.error_estimate);
  return rep;
}

EfficiencyReport system_efficiency(const SystemSpec& spec, const BetaPrior& prior_a, const BetaPrior& prior_b) {
  return system_efficiency(spec, prior_a, prior_b,
                           is_one_parameter(spec.kind) ? one_param_defaults() : two_param_defaults());
}

EfficiencyReport system_efficiency(const SystemSpec& spec, const BetaPrior& prior_a, const BetaPrior& prior_b,
                                   const QuadratureOptions& opts) {
  validate(spec);
  EfficiencyReport rep;
  if (is_one_parameter(spec.kind)) {
    rep = efficiency_one_param([&](double p) { return system_win_prob(spec, {p, 0.5}); }, prior_a, opts);
  } else {
    rep = efficiency_two_param([&](double pa, double pb) { return system_win_prob(spec, {pa, pb}); }, prior_a,
                               prior_b, opts);
  }
  rep.system = describe(spec);
  return rep;
}

}  // namespace tennis
