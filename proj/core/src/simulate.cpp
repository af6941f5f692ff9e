#include "pinctl/simulate.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "pinctl/error.hpp"
#include "pinctl/spectral.hpp"

namespace pinctl {

namespace {

// RK4's stability interval on the negative real axis ends near -2.785.
constexpr double kMaxStepProduct = 2.5;

void validate(const Graph& g, const SimConfig& cfg) {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(cfg.k)) throw Error(ErrorCode::InvalidArgument, "controller gain k must be positive");
  if (!positive(cfg.g)) throw Error(ErrorCode::InvalidArgument, "pinning gain g must be positive");
  if (!positive(cfg.dt)) throw Error(ErrorCode::InvalidArgument, "step size dt must be positive");
  if (!std::isfinite(cfg.t_end) || cfg.t_end <= cfg.dt) {
    throw Error(ErrorCode::InvalidArgument, "horizon t_end must exceed dt");
  }
  if (cfg.e0.size() != g.size()) {
    throw Error(ErrorCode::DimensionMismatch, "initial error has " + std::to_string(cfg.e0.size()) +
                                                  " entries for " + std::to_string(g.size()) + " nodes");
  }
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "simulation requires a connected graph");
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> default_initial_error(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-2.0, 2.0);
  std::vector<double> e(n);
  for (double& v : e) v = -10.0 + jitter(rng);
  return e;
}

Trace simulate_secondary(const Graph& g, const SimConfig& cfg) {
  validate(g, cfg);
  const std::size_t n = g.size();

  // System matrix k L + g Z (= k (L + (g/k) Z)).
  const Matrix a = pinned_matrix(g, PinningPlan::uniform(n, cfg.pins, cfg.g), cfg.k);
  const double top = lambda_max(SymmetricMatrix(a));
  if (cfg.dt * top > kMaxStepProduct) {
    std::ostringstream msg;
    msg << "step size dt = " << cfg.dt << " is unstable for this network (dt * lambda_max = "
        << cfg.dt * top << " > " << kMaxStepProduct << "); use dt <= " << std::setprecision(3)
        << 2.0 / top;
    throw Error(ErrorCode::StepTooLarge, msg.str());
  }

  const auto steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
  Trace tr;
  tr.times.reserve(steps + 1);
  tr.errors.reserve(steps + 1);
  tr.norms.reserve(steps + 1);

  std::vector<double> e = cfg.e0;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), w(n);
  auto deriv = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
      out[i] = -s;
    }
  };

  const double h = cfg.dt;
  for (std::size_t step = 0;; ++step) {
    tr.times.push_back(static_cast<double>(step) * h);
    tr.errors.push_back(e);
    tr.norms.push_back(norm2(e));
    if (step == steps) break;

    deriv(e, k1);
    for (std::size_t i = 0; i < n; ++i) w[i] = e[i] + 0.5 * h * k1[i];
    deriv(w, k2);
    for (std::size_t i = 0; i < n; ++i) w[i] = e[i] + 0.5 * h * k2[i];
    deriv(w, k3);
    for (std::size_t i = 0; i < n; ++i) w[i] = e[i] + h * k3[i];
    deriv(w, k4);
    for (std::size_t i = 0; i < n; ++i) e[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }

  try {
    tr.rate = estimate_rate(tr, 0.5);
  } catch (const Error& err) {
    // A zero initial error never decays; leave the rate at 0.
    if (err.code() != ErrorCode::ShortTrace) throw;
  }
  return tr;
}

double estimate_rate(const Trace& trace, double burn_in_fraction) {
  if (!(burn_in_fraction > 0.0 && burn_in_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "burn-in fraction must lie in (0, 1)");
  }
  if (trace.times.size() != trace.norms.size() || trace.times.empty()) {
    throw Error(ErrorCode::ShortTrace, "trace has no samples");
  }
  const double t0 = trace.times.front() + burn_in_fraction * (trace.times.back() - trace.times.front());

  std::vector<double> ts;
  std::vector<double> ys;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    if (trace.times[i] >= t0 && trace.norms[i] > 1e-300) {
      ts.push_back(trace.times[i]);
      ys.push_back(std::log(trace.norms[i]));
    }
  }
  if (ts.size() < 10) {
    throw Error(ErrorCode::ShortTrace, "need at least 10 post-burn-in samples with nonzero norm, have " +
                                           std::to_string(ts.size()));
  }

  const double m = static_cast<double>(ts.size());
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t_mean += ts[i];
    y_mean += ys[i];
  }
  t_mean /= m;
  y_mean /= m;
  double sty = 0.0;
  double stt = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sty += (ts[i] - t_mean) * (ys[i] - y_mean);
    stt += (ts[i] - t_mean) * (ts[i] - t_mean);
  }
  return -sty / stt;
}

double predicted_rate(const Graph& g, const SimConfig& cfg) {
  return cfg.k * lambda_min_pinned(g, PinningPlan::uniform(g.size(), cfg.pins, cfg.effective_gain()), 1.0);
}

RelayCheck relay_check(const Trace& trace, double v_ref, double deadline) {
  if (!std::isfinite(v_ref) || v_ref <= 0.0) throw Error(ErrorCode::InvalidArgument, "v_ref must be positive");
  const double lo = kRelayLow * v_ref;
  const double hi = kRelayHigh * v_ref;

  std::size_t first_settled = 0;
  for (std::size_t s = 0; s < trace.errors.size(); ++s) {
    for (double e : trace.errors[s]) {
      if (e < lo || e > hi) {
        first_settled = s + 1;
        break;
      }
    }
  }
  RelayCheck rc;
  rc.settle_time = first_settled < trace.times.size() ? trace.times[first_settled]
                                                      : std::numeric_limits<double>::infinity();
  rc.trip = rc.settle_time > deadline;
  return rc;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const std::size_t n = trace.errors.empty() ? 0 : trace.errors.front().size();
  out << 't';
  for (std::size_t i = 1; i <= n; ++i) out << ",e_" << i;
  out << ",norm\n";

  const auto old_flags = out.flags();
  const auto old_precision = out.precision(12);
  out.unsetf(std::ios::floatfield);
  for (std::size_t s = 0; s < trace.times.size(); ++s) {
    out << trace.times[s];
    for (double e : trace.errors[s]) out << ',' << e;
    out << ',' << trace.norms[s] << '\n';
  }
  out.precision(old_precision);
  out.flags(old_flags);
}

}  // namespace pinctl
