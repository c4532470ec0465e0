#include "edspin/trajectories/trajectories.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <thread>

#include "edspin/common/errors.hpp"
#include "edspin/dynamics/observables.hpp"

namespace edspin::trajectories {

namespace {

struct Stencil {
  std::array<std::size_t, 3> lo{0, 0, 0};
  std::array<std::size_t, 3> hi{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
};

Stencil locate(const field::Lattice& lat, const Vec3& x) {
  const Vec3 w = lat.wrap(x);
  Stencil s;
  for (int a = 0; a < lat.dim(); ++a) {
    const double u = (w[a] + 0.5 * lat.extent(a)) / lat.spacing(a);
    const double fl = std::floor(u);
    const std::size_t n = lat.points(a);
    const std::size_t i = static_cast<std::size_t>(fl) % n;
    s.lo[a] = i;
    s.hi[a] = (i + 1) % n;
    s.frac[a] = u - fl;
  }
  return s;
}

template <typename T>
T interpolate_impl(const field::Lattice& lat, const std::vector<T>& f, const Vec3& x) {
  const Stencil s = locate(lat, x);
  T out{};
  const int corners = 1 << lat.dim();
  for (int c = 0; c < corners; ++c) {
    std::array<std::size_t, 3> idx{0, 0, 0};
    double weight = 1.0;
    for (int a = 0; a < lat.dim(); ++a) {
      const bool upper = (c >> a) & 1;
      idx[a] = upper ? s.hi[a] : s.lo[a];
      weight *= upper ? s.frac[a] : 1.0 - s.frac[a];
    }
    out += f[lat.flat_index(idx)] * weight;
  }
  return out;
}

}  // namespace

double interpolate(const field::Lattice& lattice, const std::vector<double>& f, const Vec3& x) {
  return interpolate_impl(lattice, f, x);
}

Vec3 interpolate(const field::Lattice& lattice, const std::vector<Vec3>& f, const Vec3& x) {
  return interpolate_impl(lattice, f, x);
}

void VelocityHistory::add(double t, std::vector<Vec3> v) {
  if (v.size() != lattice_.size()) throw LatticeMismatch("velocity frame size");
  if (!times_.empty() && !(t > times_.back())) throw InvalidArgument("velocity frames must advance");
  times_.push_back(t);
  frames_.push_back(std::move(v));
}

Vec3 VelocityHistory::at(const Vec3& x, double t) const {
  if (times_.empty()) throw InvalidArgument("empty velocity history");
  if (t <= times_.front()) return interpolate(lattice_, frames_.front(), x);
  if (t >= times_.back()) return interpolate(lattice_, frames_.back(), x);
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - times_.begin());
  const double f = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
  return interpolate(lattice_, frames_[k - 1], x) * (1.0 - f) +
         interpolate(lattice_, frames_[k], x) * f;
}

Path integrate_trajectory(const Vec3& start, const VelocityFn& velocity, double t0, double t1,
                          double dt, const field::Lattice* wrap) {
  if (!(dt > 0.0)) throw InvalidArgument("trajectory dt must be positive");
  Path p;
  p.t.push_back(t0);
  p.x.push_back(start);
  Vec3 x = start;
  double t = t0;
  const double slack = 1e-9 * dt;
  while (t < t1 - slack) {
    const double h = std::min(dt, t1 - t);
    const Vec3 k1 = velocity(x, t);
    const Vec3 k2 = velocity(x + k1 * (0.5 * h), t + 0.5 * h);
    const Vec3 k3 = velocity(x + k2 * (0.5 * h), t + 0.5 * h);
    const Vec3 k4 = velocity(x + k3 * h, t + h);
    x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    t += h;
    if (wrap != nullptr) {
      const Vec3 w = wrap->wrap(x);
      if (!(w == x)) p.left_domain = true;
      x = w;
    }
    p.t.push_back(t);
    p.x.push_back(x);
  }
  return p;
}

void SubQuantumParams::validate() const {
  if (gamma != 0.5) throw InvalidArgument("gamma is fixed at 1/2");
  if (!(eta > 0.0) || !(dt_sub > 0.0)) throw InvalidArgument("eta and dt_sub must be positive");
}

Vec3 sample_subquantum_step(const Vec3& x, double t, const VelocityFn& velocity,
                            const SubQuantumParams& params, const Units& units, int dim,
                            std::mt19937_64& rng) {
  params.validate();
  std::normal_distribution<double> normal(0.0, std::sqrt(params.variance(units)));
  Vec3 next = x + velocity(x, t) * params.dt_sub;
  for (int a = 0; a < dim; ++a) next[a] += normal(rng);
  return next;
}

std::mt19937_64 particle_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

// Inverse CDF of the piecewise-linear density through (x_i, rho_i) on the periodic axis.
double inverse_cdf_1d(const field::Lattice& lat, const std::vector<double>& rho,
                      const std::vector<double>& cdf, double u) {
  const std::size_t n = lat.points(0);
  const double h = lat.spacing(0);
  const double target = u * cdf.back();
  std::size_t k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), target) - cdf.begin());
  k = std::clamp<std::size_t>(k, 1, n) - 1;
  // Segment k runs from x_k to x_{k+1} with density rising linearly from a to b.
  const double a = rho[k];
  const double b = rho[(k + 1) % n];
  const double need = target - cdf[k];
  double s;
  const double slope = (b - a) / h;
  if (std::abs(slope) * h < 1e-12 * std::max(a, 1e-300)) {
    s = a > 0.0 ? need / a : 0.0;
  } else {
    // a s + slope s^2 / 2 = need.
    const double disc = std::max(0.0, a * a + 2.0 * slope * need);
    s = 2.0 * need / (a + std::sqrt(disc));
  }
  return lat.coordinate(0, k) + std::clamp(s, 0.0, h);
}

}  // namespace

Ensemble sample_ensemble(const field::Lattice& lat, const std::vector<double>& rho,
                         std::size_t count, std::uint64_t seed, int threads) {
  if (rho.size() != lat.size()) throw LatticeMismatch("density size for sampling");
  Ensemble e;
  e.seed = seed;
  e.positions.resize(count);
  if (lat.dim() == 1) {
    const std::size_t n = lat.points(0);
    std::vector<double> cdf(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      cdf[k + 1] = cdf[k] + 0.5 * lat.spacing(0) * (rho[k] + rho[(k + 1) % n]);
    }
    parallel_for(count, threads, [&](std::size_t i) {
      auto rng = particle_rng(seed, i);
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      e.positions[i] = lat.wrap(Vec3{inverse_cdf_1d(lat, rho, cdf, uni(rng)), 0.0, 0.0});
    });
    return e;
  }
  const double rho_max = *std::max_element(rho.begin(), rho.end());
  if (!(rho_max > 0.0)) throw InvalidArgument("cannot sample a zero density");
  std::vector<std::size_t> proposals(count, 0);
  parallel_for(count, threads, [&](std::size_t i) {
    auto rng = particle_rng(seed, i);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (;;) {
      ++proposals[i];
      Vec3 x;
      for (int a = 0; a < lat.dim(); ++a) x[a] = -0.5 * lat.extent(a) + uni(rng) * lat.extent(a);
      if (uni(rng) * rho_max <= interpolate(lat, rho, x)) {
        e.positions[i] = x;
        return;
      }
    }
  });
  std::size_t total = 0;
  for (auto p : proposals) total += p;
  e.acceptance_rate = static_cast<double>(count) / static_cast<double>(std::max<std::size_t>(total, 1));
  return e;
}

void propagate_ensemble(Ensemble& ensemble, const VelocityHistory& history, double t0, double t1,
                        double dt, int threads) {
  const VelocityFn v = [&history](const Vec3& x, double t) { return history.at(x, t); };
  parallel_for(ensemble.positions.size(), threads, [&](std::size_t i) {
    const Path p = integrate_trajectory(ensemble.positions[i], v, t0, t1, dt, &history.lattice());
    ensemble.positions[i] = p.x.back();
  });
}

std::vector<double> cell_probabilities(const field::Lattice& lat, const std::vector<double>& rho) {
  std::vector<double> p(lat.size(), 0.0);
  // Integral of the linear interpolant over [x_i - h/2, x_i + h/2) in units of h:
  // 1/8 f_{i-1} + 3/4 f_i + 1/8 f_{i+1}, applied per axis.
  std::vector<double> cur = rho;
  for (int a = 0; a < lat.dim(); ++a) {
    std::vector<double> next(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      next[i] = lat.spacing(a) * (0.125 * cur[lat.neighbor(i, a, -1)] + 0.75 * cur[i] +
                                  0.125 * cur[lat.neighbor(i, a, 1)]);
    }
    cur = std::move(next);
  }
  const double total = pairwise_sum(cur);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = cur[i] / total;
  return p;
}

nlohmann::json BornReport::to_json() const {
  return {{"chi2", chi2},         {"dof", dof},         {"p_value", p_value},
          {"distance", distance}, {"passed", passed},   {"histogram", histogram},
          {"expected", expected}};
}

BornReport born_statistics(const Ensemble& ensemble, const field::Lattice& lat,
                           const std::vector<double>& rho, double significance,
                           double min_expected) {
  if (rho.size() != lat.size()) throw LatticeMismatch("density size for born_statistics");
  const std::size_t count = ensemble.positions.size();
  if (count == 0) throw InvalidArgument("empty ensemble");
  const auto prob = cell_probabilities(lat, rho);

  // Cell of each particle: nearest lattice point, periodic.
  std::vector<std::size_t> cell_counts(lat.size(), 0);
  for (const Vec3& x : ensemble.positions) {
    const Vec3 w = lat.wrap(x);
    std::array<std::size_t, 3> idx{0, 0, 0};
    for (int a = 0; a < lat.dim(); ++a) {
      const double u = (w[a] + 0.5 * lat.extent(a)) / lat.spacing(a);
      idx[a] = static_cast<std::size_t>(std::llround(u)) % lat.points(a);
    }
    ++cell_counts[lat.flat_index(idx)];
  }

  BornReport r;
  double acc_expected = 0.0;
  std::size_t acc_count = 0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    acc_expected += prob[i] * static_cast<double>(count);
    acc_count += cell_counts[i];
    if (acc_expected >= min_expected) {
      r.expected.push_back(acc_expected);
      r.histogram.push_back(acc_count);
      acc_expected = 0.0;
      acc_count = 0;
    }
  }
  if (!r.expected.empty()) {
    r.expected.back() += acc_expected;
    r.histogram.back() += acc_count;
  }
  for (std::size_t b = 0; b < r.expected.size(); ++b) {
    const double diff = static_cast<double>(r.histogram[b]) - r.expected[b];
    r.chi2 += diff * diff / r.expected[b];
    r.distance += 0.5 * std::abs(diff) / static_cast<double>(count);
  }
  r.dof = static_cast<int>(r.expected.size()) - 1;
  r.p_value = r.dof > 0 ? boost::math::gamma_q(0.5 * r.dof, 0.5 * r.chi2) : 1.0;
  r.passed = r.p_value >= significance;
  return r;
}

std::vector<Vec3> velocity_field(const field::SpinorField& psi, const dynamics::ExternalFields& ext,
                                 const Units& units, field::DerivativeScheme scheme,
                                 double rho_floor) {
  return dynamics::drift_velocity(psi, ext, units, scheme, rho_floor).v;
}

}  // namespace edspin::trajectories
