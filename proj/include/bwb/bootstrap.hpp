#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bwb/barycenter.hpp"
#include "bwb/bw_core.hpp"
#include "bwb/errors.hpp"
#include "bwb/rng.hpp"

namespace bwb {

/// Multiplier distribution with unit mean and unit variance.
struct WeightScheme {
  enum class Kind { Exp1, Po1, Bern2, Provided };

  Kind kind = Kind::Exp1;
  std::vector<double> provided;

  static WeightScheme Exp1() { return {Kind::Exp1, {}}; }
  static WeightScheme Po1() { return {Kind::Po1, {}}; }
  static WeightScheme Bern2() { return {Kind::Bern2, {}}; }
  static WeightScheme Provided(std::vector<double> weights) {
    return {Kind::Provided, std::move(weights)};
  }

  std::string name() const {
    switch (kind) {
      case Kind::Exp1: return "exp1";
      case Kind::Po1: return "po1";
      case Kind::Bern2: return "bern2";
      case Kind::Provided: return "provided";
    }
    return "?";
  }
};

namespace detail {

inline std::vector<double> draw_weights_with(Rng& rng, const WeightScheme& scheme, std::size_t n) {
  std::vector<double> u(n);
  switch (scheme.kind) {
    case WeightScheme::Kind::Exp1:
      for (double& w : u) w = rng.exponential();
      break;
    case WeightScheme::Kind::Po1:
      for (double& w : u) w = static_cast<double>(rng.poisson(1.0));
      break;
    case WeightScheme::Kind::Bern2:
      for (double& w : u) w = rng.bernoulli(0.5) ? 2.0 : 0.0;
      break;
    case WeightScheme::Kind::Provided:
      if (scheme.provided.size() != n) {
        throw ShapeError("draw_weights: provided weight list has wrong length");
      }
      u = scheme.provided;
      break;
  }
  return u;
}

}  // namespace detail

/// n i.i.d. multiplier draws, deterministic given the seed. A Provided scheme
/// is returned verbatim.
inline std::vector<double> draw_weights(const WeightScheme& scheme, std::size_t n,
                                        std::uint64_t seed) {
  if (n < 1) throw ConfigError("draw_weights: n must be >= 1");
  Rng rng(seed);
  return detail::draw_weights_with(rng, scheme, n);
}

/// Right-continuous empirical CDF: F(x) = #(points <= x) / n.
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;

  static EmpiricalCdf FromValues(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    EmpiricalCdf cdf;
    cdf.points_ = std::move(values);
    return cdf;
  }

  double eval(double x) const {
    const auto it = std::upper_bound(points_.begin(), points_.end(), x);
    return static_cast<double>(it - points_.begin()) / static_cast<double>(points_.size());
  }

  const std::vector<double>& points() const { return points_; }
  std::size_t n() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

 private:
  std::vector<double> points_;
};

/// Kolmogorov distance sup_x |F(x) - G(x)|, computed exactly by scanning the
/// merged jump points.
inline double ks_distance(const EmpiricalCdf& f, const EmpiricalCdf& g) {
  if (f.empty() || g.empty()) throw DomainError("ks_distance: empty CDF");
  const std::vector<double>& a = f.points();
  const std::vector<double>& b = g.points();
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (i == a.size()) {
      x = b[j];
    } else if (j == b.size()) {
      x = a[i];
    } else {
      x = std::min(a[i], b[j]);
    }
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    const double diff = std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                                 static_cast<double>(j) / static_cast<double>(b.size()));
    sup = std::max(sup, diff);
  }
  return sup;
}

/// Order statistic at ceil(level * n), 1-based. The tiny relative guard keeps
/// exact-integer products (0.95 * 1000) from rounding up one rank.
inline double quantile(const EmpiricalCdf& cdf, double level) {
  if (cdf.empty()) throw DomainError("quantile: empty CDF");
  if (level <= 0.0 || level >= 1.0) throw DomainError("quantile: level must be in (0, 1)");
  const double t = level * static_cast<double>(cdf.n());
  auto k = static_cast<std::size_t>(std::ceil(t - t * 1e-12));
  k = std::clamp<std::size_t>(k, 1, cdf.n());
  return cdf.points()[k - 1];
}

/// Pointwise band across a family of CDFs evaluated on a grid.
struct BandPoint {
  double x = 0.0;
  double lo = 0.0;   // pointwise min
  double q05 = 0.0;  // pointwise 5% quantile
  double mean = 0.0;
  double q95 = 0.0;  // pointwise 95% quantile
  double hi = 0.0;   // pointwise max
};

inline std::vector<BandPoint> confidence_bands(const std::vector<EmpiricalCdf>& cdfs,
                                               const std::vector<double>& grid) {
  if (cdfs.size() < 2) throw ConfigError("confidence_bands: need at least two CDFs");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw ConfigError("confidence_bands: grid must be sorted");
  }
  std::vector<BandPoint> band;
  band.reserve(grid.size());
  std::vector<double> vals(cdfs.size());
  for (double x : grid) {
    for (std::size_t k = 0; k < cdfs.size(); ++k) vals[k] = cdfs[k].eval(x);
    std::sort(vals.begin(), vals.end());
    BandPoint p;
    p.x = x;
    p.lo = vals.front();
    p.hi = vals.back();
    double sum = 0.0;
    for (double v : vals) sum += v;
    p.mean = sum / static_cast<double>(vals.size());
    const EmpiricalCdf tmp = EmpiricalCdf::FromValues(vals);
    p.q05 = quantile(tmp, 0.05);
    p.q95 = quantile(tmp, 0.95);
    band.push_back(p);
  }
  return band;
}

enum class StatKind { Frobenius, BuresWasserstein };

inline std::string stat_kind_name(StatKind kind) {
  return kind == StatKind::Frobenius ? "frobenius" : "bw";
}

struct BootstrapReport {
  StatKind stat_kind = StatKind::BuresWasserstein;
  std::size_t n = 0;  // sample size
  int b = 0;          // replicate count
  std::string scheme;
  std::uint64_t seed = 0;
  double scale = 0.0;  // the sqrt(n) factor applied to every replicate
  std::vector<double> replicates;
  EmpiricalCdf cdf;
  long rejected_draws = 0;
  std::map<double, double> quantiles;
};

inline constexpr double kReportQuantileLevels[] = {0.5, 0.9, 0.95, 0.99};

/// Multiplier bootstrap: for each replicate draw i.i.d. weights, re-solve the
/// barycenter warm-started at Q_n, and record sqrt(n) * rho(Q_u, Q_n). Draws
/// whose positively weighted matrices are all singular (or all zero) are
/// rejected and redrawn within a 10 B attempt budget. Replicate b consumes
/// sub-stream (seed, b), so the replicate list is identical for any worker
/// count.
inline BootstrapReport run_bootstrap(const SampleSet& data, const SymMatrix& q_n, int b,
                                     const WeightScheme& scheme, StatKind stat_kind,
                                     const SolverConfig& cfg, std::uint64_t seed,
                                     int threads = 1) {
  if (b < 1) throw ConfigError("run_bootstrap: B must be >= 1");
  if (!q_n.is_pd()) throw DomainError("run_bootstrap: Q_n must be positive definite");
  if (q_n.dim() != data.dim()) throw ShapeError("run_bootstrap: dimension mismatch");

  const std::size_t n = data.size();
  const double scale = std::sqrt(static_cast<double>(n));
  const long attempt_budget = 10L * b;

  SolverConfig warm = cfg;
  warm.use_provided_init = true;
  warm.provided_init = q_n;
  warm.track_objective = false;

  std::vector<double> replicates(static_cast<std::size_t>(b));
  std::atomic<long> attempts{0};
  std::atomic<long> rejected{0};
  std::atomic<bool> exhausted{false};
  std::atomic<int> next{0};

  auto worker = [&]() {
    for (;;) {
      const int rep = next.fetch_add(1);
      if (rep >= b || exhausted.load()) break;
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(rep));
      std::vector<double> u;
      for (;;) {
        if (attempts.fetch_add(1) + 1 > attempt_budget) {
          exhausted.store(true);
          return;
        }
        u = detail::draw_weights_with(rng, scheme, n);
        bool valid = false;
        for (std::size_t i = 0; i < n && !valid; ++i) {
          valid = u[i] > 0.0 && data.matrices[i].is_pd();
        }
        if (valid) break;
        rejected.fetch_add(1);
        if (scheme.kind == WeightScheme::Kind::Provided) {
          exhausted.store(true);  // a fixed degenerate list can never recover
          return;
        }
      }
      const BarycenterResult fit = detail::solve_barycenter(data.matrices, u, warm);
      const double rho = stat_kind == StatKind::Frobenius
                             ? (fit.q.mat() - q_n.mat()).norm()
                             : detail::bw_distance_raw(fit.q.mat(), q_n.mat());
      replicates[static_cast<std::size_t>(rep)] = scale * rho;
    }
  };

  const int workers = std::clamp(threads, 1, b);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (exhausted.load()) {
    throw DegenerateResampleError("run_bootstrap: resample attempt budget exhausted");
  }

  BootstrapReport report;
  report.stat_kind = stat_kind;
  report.n = n;
  report.b = b;
  report.scheme = scheme.name();
  report.seed = seed;
  report.scale = scale;
  report.replicates = replicates;
  report.cdf = EmpiricalCdf::FromValues(replicates);
  report.rejected_draws = rejected.load();
  for (double level : kReportQuantileLevels) {
    report.quantiles[level] = quantile(report.cdf, level);
  }
  return report;
}

}  // namespace bwb
