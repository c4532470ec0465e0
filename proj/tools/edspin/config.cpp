#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "expression.hpp"

#include "edspin/common/errors.hpp"
#include "edspin/dynamics/eigenstates.hpp"
#include "edspin/field/polar.hpp"
#include "edspin/field/snapshot.hpp"

namespace edspin::cli {

using nlohmann::json;

ConfigError::ConfigError(const std::string& file, int line, const std::string& pointer,
                         const std::string& what)
    : std::runtime_error(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         (pointer.empty() ? std::string("(root)") : pointer) + ": " + what),
      line_(line),
      pointer_(pointer) {}

bool Scenario::wants(const std::string& output) const {
  return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

void Scenario::require(const std::string& block) const {
  const bool present = (block == "lattice" && lattice) || (block == "state" && state) ||
                       (block == "sg" && sg);
  if (!present) throw ConfigError(source_path, 0, "/" + block, "required block is missing");
}

bool Scenario::kappa_e_enabled() const {
  if (schedule.base().kappa_e != 0.0) return true;
  for (const auto& s : schedule.segments()) {
    if (s.fields.kappa_e != 0.0) return true;
  }
  return false;
}

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Recursive scan of an already validated document, recording the line where each value starts.
class LineScanner {
 public:
  explicit LineScanner(const std::string& t) : t_(t) {}
  std::map<std::string, int> run() {
    value("");
    return lines_;
  }

 private:
  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) {
      if (t_[i_] == '\n') ++line_;
      ++i_;
    }
  }
  std::string string() {
    std::string s;
    ++i_;
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\') {
        s += t_[i_ + 1];
        i_ += 2;
      } else {
        s += t_[i_++];
      }
    }
    ++i_;
    return s;
  }
  void value(const std::string& ptr) {
    skip();
    if (i_ >= t_.size()) return;
    lines_[ptr] = line_;
    const char c = t_[i_];
    if (c == '{') {
      ++i_;
      skip();
      if (t_[i_] == '}') {
        ++i_;
        return;
      }
      for (;;) {
        skip();
        const std::string key = string();
        skip();
        ++i_;  // ':'
        value(ptr + "/" + escape_token(key));
        skip();
        if (t_[i_++] == '}') return;
      }
    }
    if (c == '[') {
      ++i_;
      skip();
      if (t_[i_] == ']') {
        ++i_;
        return;
      }
      for (int k = 0;; ++k) {
        value(ptr + "/" + std::to_string(k));
        skip();
        if (t_[i_++] == ']') return;
      }
    }
    if (c == '"') {
      string();
      return;
    }
    while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[i_])) && t_[i_] != ',' &&
           t_[i_] != '}' && t_[i_] != ']') {
      ++i_;
    }
  }

  const std::string& t_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

struct Context {
  std::string file;
  std::map<std::string, int> lines;

  [[noreturn]] void fail(const std::string& ptr, const std::string& what) const {
    std::string p = ptr;
    int line = 0;
    for (;;) {
      if (auto it = lines.find(p); it != lines.end()) {
        line = it->second;
        break;
      }
      const auto cut = p.rfind('/');
      if (cut == std::string::npos) break;
      p = p.substr(0, cut);
    }
    throw ConfigError(file, line, ptr, what);
  }
};

// Typed access to one JSON object with unknown-key detection.
class Reader {
 public:
  Reader(const json& j, std::string ptr, const Context& ctx) : j_(j), ptr_(std::move(ptr)), ctx_(ctx) {
    if (!j_.is_object()) ctx_.fail(ptr_, "expected an object");
  }

  const std::string& pointer() const { return ptr_; }
  std::string at(const std::string& key) const { return ptr_ + "/" + escape_token(key); }
  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    ctx_.fail(key.empty() ? ptr_ : at(key), what);
  }
  const Context& context() const { return ctx_; }

  bool has(const std::string& key) {
    used_.insert(key);
    return j_.contains(key);
  }
  const json& raw(const std::string& key) {
    if (!has(key)) fail(key, "required field is missing");
    return j_.at(key);
  }
  Reader object(const std::string& key) { return Reader(raw(key), at(key), ctx_); }

  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }
  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "must be finite");
    return d;
  }
  double positive(const std::string& key, double fallback) {
    const double d = number(key, fallback);
    if (!(d > 0.0)) fail(key, "must be positive");
    return d;
  }
  long integer(const std::string& key, long fallback, long min_value) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    const long n = v.get<long>();
    if (n < min_value) fail(key, "must be at least " + std::to_string(min_value));
    return n;
  }
  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail(key, "expected true or false");
    return v.get<bool>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }
  template <class E>
  E choice(const std::string& key, E fallback, const std::vector<std::pair<std::string, E>>& options) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    std::string names;
    for (const auto& [name, value] : options) {
      if (v.is_string() && v.get<std::string>() == name) return value;
      names += (names.empty() ? "" : ", ") + name;
    }
    fail(key, "expected one of: " + names);
  }
  std::vector<double> numbers(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_number()) ctx_.fail(at(key) + "/" + std::to_string(k), "expected a number");
      out.push_back(v[k].get<double>());
    }
    return out;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) ctx_.fail(at(it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string ptr_;
  const Context& ctx_;
  std::set<std::string> used_;
};

// A scalar profile: a number or an expression string.
std::vector<double> sample_profile(const json& v, const std::string& ptr, const Context& ctx,
                                   const field::Lattice& lat, const std::map<std::string, double>& constants) {
  std::vector<double> out(lat.size());
  if (v.is_number()) {
    std::fill(out.begin(), out.end(), v.get<double>());
    return out;
  }
  if (!v.is_string()) ctx.fail(ptr, "expected a number or an expression string");
  try {
    const Expression e(v.get<std::string>(), constants);
    for (std::size_t i = 0; i < lat.size(); ++i) out[i] = e(lat.position(i));
  } catch (const ExpressionError& err) {
    ctx.fail(ptr, err.what());
  }
  for (double d : out) {
    if (!std::isfinite(d)) ctx.fail(ptr, "expression is not finite on the lattice");
  }
  return out;
}

std::vector<Vec3> sample_vector(const json& v, const std::string& ptr, const Context& ctx,
                                const field::Lattice& lat, const std::map<std::string, double>& constants) {
  if (!v.is_array() || v.size() != 3) ctx.fail(ptr, "expected three components");
  std::vector<Vec3> out(lat.size());
  for (int c = 0; c < 3; ++c) {
    const auto comp = sample_profile(v[c], ptr + "/" + std::to_string(c), ctx, lat, constants);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      (c == 0 ? out[i].x : c == 1 ? out[i].y : out[i].z) = comp[i];
    }
  }
  return out;
}

dynamics::ExternalFields parse_fields(Reader& r, const field::Lattice& lat,
                                      const std::map<std::string, double>& constants,
                                      const dynamics::ExternalFields& base) {
  dynamics::ExternalFields f = base;
  const Context& ctx = r.context();
  if (r.has("V")) f.V = sample_profile(r.raw("V"), r.at("V"), ctx, lat, constants);
  if (r.has("A")) f.A = sample_vector(r.raw("A"), r.at("A"), ctx, lat, constants);
  if (r.has("B")) f.B = sample_vector(r.raw("B"), r.at("B"), ctx, lat, constants);
  if (r.has("E")) f.E = sample_vector(r.raw("E"), r.at("E"), ctx, lat, constants);
  f.kappa_m = r.number("kappa_m", base.kappa_m);
  f.kappa_e = r.number("kappa_e", base.kappa_e);
  return f;
}

field::Lattice parse_lattice(Reader r) {
  const auto extents = r.numbers("extents");
  const auto points = r.numbers("points");
  if (extents.empty() || extents.size() > 3) r.fail("extents", "expected 1 to 3 entries");
  if (points.size() != extents.size()) r.fail("points", "must have as many entries as extents");
  std::vector<std::size_t> n;
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (!(extents[a] > 0.0)) r.fail("extents", "entries must be positive");
    if (points[a] < 2.0 || points[a] != std::floor(points[a])) r.fail("points", "entries must be integers >= 2");
    n.push_back(static_cast<std::size_t>(points[a]));
  }
  r.finish();
  return field::Lattice(extents, n);
}

// Gaussian packet, product over the lattice axes, with a uniform spin direction.
field::SpinorField packet_state(Reader& r, const field::Lattice& lat) {
  const int dim = lat.dim();
  std::vector<double> center(dim, 0.0), sigma(dim, 1.0), k(dim, 0.0);
  auto vector_of = [&](const std::string& key, std::vector<double>& out, bool positive) {
    if (!r.has(key)) return;
    const json& v = r.raw(key);
    if (v.is_number()) {
      std::fill(out.begin(), out.end(), v.get<double>());
    } else {
      const auto list = r.numbers(key);
      if (static_cast<int>(list.size()) != dim) r.fail(key, "expected one entry per lattice axis");
      out = list;
    }
    for (double d : out) {
      if (positive && !(d > 0.0)) r.fail(key, "entries must be positive");
    }
  };
  vector_of("center", center, false);
  vector_of("sigma", sigma, true);
  vector_of("wavevector", k, false);
  const double theta = r.number("theta", 0.0);
  const double phi = r.number("phi", 0.0);
  const Complex up = std::cos(0.5 * theta);
  const Complex down = std::polar(std::sin(0.5 * theta), phi);
  return field::SpinorField::sample(lat, [&](const Vec3& x) {
    const double c[3] = {x.x, x.y, x.z};
    double re = 0.0, im = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double d = c[a] - center[a];
      re -= d * d / (4.0 * sigma[a] * sigma[a]);
      im += k[a] * c[a];
    }
    const Complex g = std::exp(Complex(re, im));
    return std::pair{g * up, g * down};
  });
}

// Polar chart expressions (rho, Phi, theta, phi); missing entries default to rho = 1 and 0.
field::SpinorField polar_state(Reader& r, const field::Lattice& lat, const Scenario& s) {
  const Context& ctx = r.context();
  auto profile = [&](const std::string& key, double fallback) {
    if (!r.has(key)) return std::vector<double>(lat.size(), fallback);
    return sample_profile(r.raw(key), r.at(key), ctx, lat, s.constants);
  };
  field::PolarChart chart;
  chart.lattice = lat;
  chart.rho = profile("rho", 1.0);
  chart.Phi = profile("Phi", 0.0);
  chart.theta = profile("theta", 0.0);
  chart.phi = profile("phi", 0.0);
  chart.singular.assign(lat.size(), 0);
  for (double rho : chart.rho) {
    if (rho < 0.0) r.fail("rho", "density is negative on the lattice");
  }
  return field::amplitudes_from_polar(chart, s.units);
}

field::SpinorField parse_state(Reader r, const Scenario& s, const std::filesystem::path& base_dir) {
  const field::Lattice& lat = *s.lattice;
  const std::string type = r.string("type", "");
  field::SpinorField f;
  if (type == "packet") {
    f = packet_state(r, lat);
  } else if (type == "polar") {
    f = polar_state(r, lat, s);
  } else if (type == "ground_state") {
    const double theta = r.number("theta", 0.0);
    const double phi = r.number("phi", 0.0);
    if (lat.size() > dynamics::kMaxDenseEigenPoints) r.fail("type", "ground_state supports at most 4096 points");
    const auto& V = s.schedule.base().V;
    f = dynamics::ground_state(lat, V.empty() ? std::vector<double>(lat.size(), 0.0) : V, s.units, theta, phi).state;
  } else if (type == "snapshot") {
    const std::filesystem::path p = base_dir / r.string("path", "");
    try {
      if (p.extension() == ".json") {
        std::ifstream in(p);
        if (!in) throw InvalidArgument("cannot open " + p.string());
        f = field::snapshot_from_json(json::parse(in));
      } else {
        f = field::read_snapshot(p);
      }
    } catch (const std::exception& e) {
      r.fail("path", e.what());
    }
    if (f.lattice() != lat) r.fail("path", "snapshot lattice differs from the scenario lattice");
    f.set_time(0.0);
  } else {
    r.fail("type", "expected one of: packet, polar, ground_state, snapshot");
  }
  const bool normalize = r.boolean("normalize", true);
  r.finish();
  if (normalize) {
    if (!(f.norm() > 0.0)) r.fail("", "state has zero norm");
    f.normalize();
  }
  return f;
}

trajectories::SgConfig parse_sg(Reader r, const Scenario& s) {
  trajectories::SgConfig c;
  c.z0 = r.number("z0", c.z0);
  c.sigma0 = r.positive("sigma0", c.sigma0);
  c.p0 = r.number("p0", c.p0);
  c.theta0 = r.number("theta0", c.theta0);
  c.phi0 = r.number("phi0", c.phi0);
  c.gradient = r.number("gradient", c.gradient);
  c.t1 = r.number("t1", c.t1);
  c.t2 = r.number("t2", c.t2);
  if (!(c.t2 > c.t1) || c.t1 < 0.0) r.fail("t2", "needs 0 <= t1 < t2");
  c.drift = r.number("drift", c.drift);
  if (c.drift < 0.0) r.fail("drift", "must be non-negative");
  c.extent = r.positive("extent", c.extent);
  c.points = static_cast<std::size_t>(r.integer("points", static_cast<long>(c.points), 8));
  c.dt = r.positive("dt", c.dt);
  c.trajectory_dt = r.positive("trajectory_dt", c.trajectory_dt);
  c.particles = static_cast<std::size_t>(r.integer("particles", static_cast<long>(c.particles), 1));
  c.threads = static_cast<int>(r.integer("threads", s.ensemble.threads, 1));
  c.derivative = r.choice<field::DerivativeScheme>("derivative", field::DerivativeScheme::kSpectral,
                                                   {{"central", field::DerivativeScheme::kCentral},
                                                    {"spectral", field::DerivativeScheme::kSpectral}});
  c.overlap_tolerance = r.positive("overlap_tolerance", c.overlap_tolerance);
  c.mode_threshold = r.positive("mode_threshold", c.mode_threshold);
  c.trajectory_samples = static_cast<int>(r.integer("trajectory_samples", c.trajectory_samples, 0));
  c.seed = s.seed;
  r.finish();
  return c;
}

const std::vector<std::string> kOutputs = {"ledger",     "snapshots", "snapshot_json", "polar",
                                           "velocity",   "diagnostics", "trajectories", "born",
                                           "particles"};

}  // namespace

std::map<std::string, int> json_pointer_lines(const std::string& text) { return LineScanner(text).run(); }

Scenario parse_scenario(const std::string& text, const std::string& source_name) {
  Context ctx;
  ctx.file = source_name;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line number.
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(end), '\n'));
    throw ConfigError(source_name, line, "", std::string("malformed JSON: ") + e.what());
  }
  ctx.lines = json_pointer_lines(text);

  Scenario s;
  s.source_path = source_name;
  s.source_text = text;
  Reader root(doc, "", ctx);
  s.name = root.string("name", s.name);
  if (root.has("$schema")) root.string("$schema", "");
  if (root.has("seed")) {
    const json& v = root.raw("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long>() >= 0)) root.fail("seed", "expected a non-negative integer");
    s.seed = v.get<std::uint64_t>();
  }
  if (root.has("units")) {
    Reader u = root.object("units");
    s.units.hbar = u.positive("hbar", s.units.hbar);
    s.units.mass = u.positive("mass", s.units.mass);
    s.units.c = u.positive("c", s.units.c);
    s.units.charge = u.number("charge", s.units.charge);
    u.finish();
  }
  if (root.has("constants")) {
    const json& c = root.raw("constants");
    if (!c.is_object()) root.fail("constants", "expected an object of numbers");
    for (auto it = c.begin(); it != c.end(); ++it) {
      if (!it.value().is_number()) ctx.fail(root.at("constants") + "/" + escape_token(it.key()), "expected a number");
      s.constants[it.key()] = it.value().get<double>();
    }
  }
  if (root.has("numerics")) {
    Reader n = root.object("numerics");
    s.derivative = n.choice<field::DerivativeScheme>("derivative", s.derivative,
                                                     {{"central", field::DerivativeScheme::kCentral},
                                                      {"spectral", field::DerivativeScheme::kSpectral}});
    s.rho_floor = n.positive("rho_floor", s.rho_floor);
    s.pole_epsilon = n.positive("pole_epsilon", s.pole_epsilon);
    n.finish();
  }
  if (root.has("lattice")) {
    try {
      s.lattice = parse_lattice(root.object("lattice"));
    } catch (const Error& e) {
      root.fail("lattice", e.what());
    }
  }

  if (root.has("fields")) {
    if (!s.lattice) root.fail("fields", "fields need a lattice block");
    Reader f = root.object("fields");
    const dynamics::ExternalFields base = parse_fields(f, *s.lattice, s.constants, {});
    s.schedule = dynamics::FieldSchedule(base);
    if (f.has("schedule")) {
      const json& list = f.raw("schedule");
      if (!list.is_array()) f.fail("schedule", "expected an array of segments");
      for (std::size_t k = 0; k < list.size(); ++k) {
        Reader seg(list[k], f.at("schedule") + "/" + std::to_string(k), ctx);
        const double t0 = seg.number("t_begin");
        const double t1 = seg.number("t_end");
        dynamics::ExternalFields fields = base;
        if (seg.has("fields")) {
          Reader sf = seg.object("fields");
          fields = parse_fields(sf, *s.lattice, s.constants, base);
          sf.finish();
        }
        seg.finish();
        try {
          s.schedule.add_segment(t0, t1, fields);
        } catch (const Error& e) {
          seg.fail("", e.what());
        }
      }
    }
    f.finish();
    s.has_fields = true;
  }

  if (root.has("evolver")) {
    Reader e = root.object("evolver");
    auto& c = s.evolver;
    c.dt = e.positive("dt", c.dt);
    s.t_end = e.positive("t_end", s.t_end);
    c.scheme = e.choice<dynamics::Scheme>("scheme", c.scheme,
                                          {{"crank_nicolson", dynamics::Scheme::kCrankNicolson},
                                           {"split_step", dynamics::Scheme::kSplitStep}});
    c.solver = e.choice<dynamics::LinearSolver>("solver", c.solver,
                                                {{"direct", dynamics::LinearSolver::kDirect},
                                                 {"bicgstab", dynamics::LinearSolver::kBicgstab}});
    c.tolerance = e.positive("tolerance", c.tolerance);
    c.max_iterations = static_cast<int>(e.integer("max_iterations", c.max_iterations, 1));
    c.max_steps = e.integer("max_steps", c.max_steps, 1);
    c.cfl_safety = e.positive("cfl_safety", c.cfl_safety);
    s.record_every = static_cast<int>(e.integer("record_every", s.record_every, 1));
    if (c.scheme == dynamics::Scheme::kSplitStep) {
      bool has_a = s.schedule.base().has_vector_potential();
      for (const auto& seg : s.schedule.segments()) has_a = has_a || seg.fields.has_vector_potential();
      if (has_a) e.fail("scheme", "split_step requires A = 0; use crank_nicolson");
    }
    e.finish();
  }

  if (root.has("ensemble")) {
    Reader e = root.object("ensemble");
    auto& c = s.ensemble;
    c.particles = static_cast<std::size_t>(e.integer("particles", static_cast<long>(c.particles), 1));
    c.threads = static_cast<int>(e.integer("threads", c.threads, 1));
    c.trajectory_dt = e.positive("trajectory_dt", c.trajectory_dt);
    c.frame_stride = static_cast<int>(e.integer("frame_stride", c.frame_stride, 1));
    if (e.has("born_times")) {
      c.born_times = e.numbers("born_times");
      for (double t : c.born_times) {
        if (!(t > 0.0) || t > s.t_end) e.fail("born_times", "entries must lie in (0, evolver.t_end]");
      }
      std::sort(c.born_times.begin(), c.born_times.end());
      c.born_times.erase(std::unique(c.born_times.begin(), c.born_times.end()), c.born_times.end());
    }
    c.significance = e.positive("significance", c.significance);
    c.min_expected = e.positive("min_expected", c.min_expected);
    c.trajectory_samples = static_cast<std::size_t>(e.integer("trajectory_samples", static_cast<long>(c.trajectory_samples), 0));
    c.subquantum_params.eta = s.units.hbar;
    if (e.has("subquantum")) {
      Reader q = e.object("subquantum");
      c.subquantum = q.boolean("enabled", true);
      c.subquantum_params.eta = q.positive("eta", s.units.hbar);
      c.subquantum_params.dt_sub = q.positive("dt_sub", c.subquantum_params.dt_sub);
      c.subquantum_params.gamma = q.number("gamma", 0.5);
      try {
        c.subquantum_params.validate();
      } catch (const Error& err) {
        q.fail("gamma", err.what());
      }
      q.finish();
    }
    e.finish();
  } else {
    s.ensemble.subquantum_params.eta = s.units.hbar;
  }

  if (root.has("geometry")) {
    Reader g = root.object("geometry");
    auto& o = s.geometry.flow;
    o.steps = static_cast<int>(g.integer("steps", o.steps, 1));
    o.dlambda = g.positive("dlambda", o.dlambda);
    o.stepper = g.choice<geometry::FlowStepper>("stepper", o.stepper,
                                                {{"exponential", geometry::FlowStepper::kExponential},
                                                 {"rk4", geometry::FlowStepper::kRk4}});
    o.neighbour_offset = g.positive("neighbour_offset", o.neighbour_offset);
    o.tolerance = g.positive("tolerance", o.tolerance);
    s.geometry.quartic_coupling = g.number("quartic_coupling", s.geometry.quartic_coupling);
    g.finish();
  }

  if (root.has("sg")) s.sg = parse_sg(root.object("sg"), s);

  if (root.has("outputs")) {
    const json& o = root.raw("outputs");
    if (!o.is_array()) root.fail("outputs", "expected an array of names");
    for (std::size_t k = 0; k < o.size(); ++k) {
      const std::string p = root.at("outputs") + "/" + std::to_string(k);
      if (!o[k].is_string()) ctx.fail(p, "expected a string");
      const std::string name = o[k].get<std::string>();
      if (std::find(kOutputs.begin(), kOutputs.end(), name) == kOutputs.end()) {
        std::string all;
        for (const auto& n : kOutputs) all += (all.empty() ? "" : ", ") + n;
        ctx.fail(p, "unknown output '" + name + "'; expected one of: " + all);
      }
      s.outputs.push_back(name);
    }
  } else {
    s.outputs = {"ledger", "diagnostics", "trajectories", "born"};
  }

  // The state comes last: ground states read the potential.
  if (root.has("state")) {
    if (!s.lattice) root.fail("state", "state needs a lattice block");
    const std::filesystem::path dir = std::filesystem::path(source_name).parent_path();
    s.state = parse_state(root.object("state"), s, dir);
  }
  root.finish();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), 0, "", "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.string());
}

}  // namespace edspin::cli
