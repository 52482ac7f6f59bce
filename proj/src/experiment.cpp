// Copyright 2026 The tetrisyk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tetrisyk/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "tetrisyk/errors.hpp"
#include "tetrisyk/evolution.hpp"
#include "tetrisyk/mirror.hpp"
#include "tetrisyk/noise_theory.hpp"
#include "tetrisyk/parallel.hpp"
#include "tetrisyk/resources.hpp"
#include "tetrisyk/tetris.hpp"
#include "tetrisyk/trotter.hpp"

#ifndef TETRISYK_GIT_DESCRIBE
#define TETRISYK_GIT_DESCRIBE "unknown"
#endif

namespace tetrisyk {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::array<std::pair<ExperimentKind, const char*>, 8> kKindNames = {{
    {ExperimentKind::kLoschmidtScan, "loschmidt_scan"},
    {ExperimentKind::kVarianceStudy, "variance_study"},
    {ExperimentKind::kAngleSweep, "angle_sweep"},
    {ExperimentKind::kLgaeHardwareProtocol, "lgae_hardware_protocol"},
    {ExperimentKind::kNoiseModelOverlay, "noise_model_overlay"},
    {ExperimentKind::kTrotterCrossover, "trotter_crossover"},
    {ExperimentKind::kMirrorSweep, "mirror_sweep"},
    {ExperimentKind::kResources, "resources"},
}};

// ---------------------------------------------------------------------------
// Config reading

/// Typed access to one JSON object that remembers which keys were read.
class ObjectReader {
 public:
  ObjectReader(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return doc_.contains(key); }
  std::string path(const std::string& key) const { return path_ + "." + key; }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return doc_.at(key);
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    if (!has(key)) return fallback;
    return convert<T>(raw(key), path(key));
  }

  template <typename T>
  T require(const std::string& key) {
    if (!has(key)) throw ConfigError(path(key), "required field is missing");
    return convert<T>(raw(key), path(key));
  }

  template <typename T>
  std::vector<T> list(const std::string& key, std::vector<T> fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(path(key), "expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(convert<T>(v[i], path(key) + "[" + std::to_string(i) + "]"));
    return out;
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (auto it = doc_.begin(); it != doc_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(path(it.key()), "unknown key");
    }
  }

  template <typename T>
  static T convert(const json& v, const std::string& where) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(where, "expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
          throw ConfigError(where, "expected a non-negative integer");
        }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(where, "expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(where, "expected a string");
    }
    return v.get<T>();
  }

 private:
  const json& doc_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
void check(bool ok, const std::string& path, F&& message) {
  if (!ok) throw ConfigError(path, message());
}

/// Kind-specific sections and the kinds allowed to carry them.
const std::vector<std::pair<std::string, ExperimentKind>>& kind_sections() {
  static const std::vector<std::pair<std::string, ExperimentKind>> sections = {
      {"variance_study", ExperimentKind::kVarianceStudy},
      {"angle_sweep", ExperimentKind::kAngleSweep},
      {"lgae", ExperimentKind::kLgaeHardwareProtocol},
      {"noise_model", ExperimentKind::kNoiseModelOverlay},
      {"mirror", ExperimentKind::kMirrorSweep},
      {"resources", ExperimentKind::kResources},
  };
  return sections;
}

bool uses_times(ExperimentKind kind) { return kind != ExperimentKind::kResources; }

bool is_echo_kind(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kLoschmidtScan:
    case ExperimentKind::kVarianceStudy:
    case ExperimentKind::kAngleSweep:
    case ExperimentKind::kLgaeHardwareProtocol:
    case ExperimentKind::kNoiseModelOverlay: return true;
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Output helpers

using Row = std::vector<std::string>;

struct PointResult {
  std::vector<Row> results;
  std::vector<Row> circuits;
};

struct Point {
  std::string label;
  std::function<PointResult()> run;
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(std::size_t v, int) { return std::to_string(v); }

std::string id_range(std::size_t count) { return count == 0 ? "none" : "0-" + std::to_string(count - 1); }

std::string instance_ids(const ExperimentConfig& c, std::size_t circuits) {
  return c.instances == 0 ? "fresh:" + id_range(circuits) : id_range(static_cast<std::size_t>(c.instances));
}

/// Per-point circuit seed: independent streams for every point.
std::uint64_t point_seed(const ExperimentConfig& c, std::uint64_t point, std::uint64_t sub = 0) {
  return Rng(c.circuit_seed).split(Stream::kCircuit, point).split(sub).key();
}

EchoSetup echo_setup(const ExperimentConfig& c, double t, std::uint64_t seed, int workers) {
  EchoSetup s;
  s.params = c.syk;
  s.instances = c.instances;
  s.time = t;
  s.angle = c.angle;
  s.noise = c.noise;
  s.circuits = c.circuits;
  s.shots_per_circuit = c.shots_per_circuit;
  s.circuit_seed = seed;
  s.exact_reference = true;
  s.workers = workers;
  return s;
}

std::vector<Row> circuit_rows(const EchoRun& run, const std::string& tag) {
  std::vector<Row> rows;
  rows.reserve(run.circuits.size());
  for (const auto& r : run.circuits) {
    rows.push_back({tag, fmt(run.setup.time), fmt(run.setup.circuit_seed), fmt(run.setup.params.seed),
                    fmt(r.instance), fmt(r.circuit, 0), fmt(r.gate_angle), fmt(r.lambda), fmt(r.tq_gates),
                    fmt(r.rotations, 0), fmt(r.raw[0]), fmt(r.raw[1]), fmt(r.raw[2]), fmt(r.exact)});
  }
  return rows;
}

double z_score(double mean, double stderr, double exact) {
  return stderr > 0.0 ? (mean - exact) / stderr : std::numeric_limits<double>::quiet_NaN();
}

Row provenance(const ExperimentConfig& c, std::uint64_t seed, std::size_t circuits) {
  return {fmt(c.syk.seed), fmt(seed), instance_ids(c, circuits), id_range(circuits)};
}

Row concat(Row a, const Row& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ---------------------------------------------------------------------------
// Points per kind

std::vector<Point> loschmidt_points(const ExperimentConfig& c, int workers, double alpha_override = -1.0) {
  std::vector<Point> points;
  std::vector<std::pair<double, double>> grid;  // (t, alpha)
  if (c.kind == ExperimentKind::kAngleSweep) {
    for (double t : c.times) {
      for (double a : c.alphas) grid.emplace_back(t, a);
    }
  } else {
    for (double t : c.times) grid.emplace_back(t, alpha_override);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [t, alpha] = grid[i];
    points.push_back({"t=" + fmt(t) + (alpha > 0 ? " alpha=" + fmt(alpha) : ""), [&c, workers, t, alpha, i] {
                        EchoSetup s = echo_setup(c, t, point_seed(c, i), workers);
                        if (alpha > 0) s.angle.alpha = alpha;
                        const EchoRun run = run_echo(s);
                        PointResult out;
                        for (EchoObservable o : c.observables) {
                          const EstimateRecord r = run.estimate(o);
                          const double exact = run.exact_mean();
                          Row row = {fmt(t),
                                     to_string(o),
                                     s.angle.describe(),
                                     fmt(r.gate_angle),
                                     fmt(r.alpha),
                                     fmt(r.lambda),
                                     fmt(r.mean),
                                     fmt(r.stderr),
                                     fmt(exact),
                                     fmt(z_score(r.mean, r.stderr, exact)),
                                     fmt(run.mean_tq_gates()),
                                     fmt(r.circuits, 0),
                                     fmt(r.shots_per_circuit, 0),
                                     c.noise.describe()};
                          out.results.push_back(concat(row, provenance(c, s.circuit_seed, s.circuits)));
                        }
                        if (c.write_circuits) out.circuits = circuit_rows(run, "t=" + fmt(t));
                        return out;
                      }});
  }
  return points;
}

std::vector<Point> variance_points(const ExperimentConfig& c, int workers) {
  std::vector<Point> points;
  std::size_t index = 0;
  for (double t : c.times) {
    for (double alpha : c.alphas) {
      const std::size_t i = index++;
      for (std::size_t shots : c.shots_grid) {
      points.push_back({"t=" + fmt(t) + " alpha=" + fmt(alpha) + " shots=" + std::to_string(shots), [&c, workers, t, alpha, i, shots] {
                          // Common circuits across the shot grid at fixed (t, alpha).
                          EchoSetup s = echo_setup(c, t, point_seed(c, i), workers);
                          s.angle.alpha = alpha;
                          s.shots_per_circuit = shots;
                          const EchoRun run = run_echo(s);
                          PointResult out;
                          for (EchoObservable o : c.observables) {
                            const EstimateRecord r = run.estimate(o);
                            const double sd = r.stderr * std::sqrt(static_cast<double>(r.circuits));
                            Row row = {fmt(t),
                                       fmt(alpha),
                                       fmt(r.gate_angle),
                                       fmt(shots, 0),
                                       to_string(o),
                                       fmt(run.mean_tq_gates()),
                                       fmt(r.lambda),
                                       fmt(r.mean),
                                       fmt(r.stderr),
                                       fmt(sd),
                                       fmt(run.exact_mean()),
                                       fmt(r.circuits, 0),
                                       fmt(r.circuits * shots, 0)};
                            out.results.push_back(concat(row, provenance(c, s.circuit_seed, s.circuits)));
                          }
                          if (c.write_circuits) out.circuits = circuit_rows(run, "shots=" + std::to_string(shots));
                          return out;
                        }});
      }
    }
  }
  return points;
}

std::vector<Point> lgae_points(const ExperimentConfig& c, int workers) {
  std::vector<Point> points;
  for (std::size_t ti = 0; ti < c.times.size(); ++ti) {
    const double t = c.times[ti];
    points.push_back({"t=" + fmt(t), [&c, workers, t, ti] {
                        EchoSetup shallow = echo_setup(c, t, point_seed(c, ti, 0), workers);
                        shallow.angle = AnglePolicy{AnglePolicy::Kind::kShallow, 1.0, 0.0};
                        EchoSetup deep = echo_setup(c, t, point_seed(c, ti, 1), workers);
                        deep.angle = AnglePolicy{AnglePolicy::Kind::kScaled, c.lgae_alpha, 0.0};
                        const EchoRun r0 = run_echo(shallow);
                        const EchoRun ra = run_echo(deep);
                        PointResult out;
                        const double exact = r0.exact_mean();
                        for (EchoObservable o : c.observables) {
                          const EstimateRecord e0 = r0.estimate(o);
                          const EstimateRecord ea = ra.estimate(o);
                          const Extrapolation lin = lgae_linear(e0.mean, e0.stderr, ea.mean, ea.stderr, c.lgae_alpha);
                          Extrapolation ex{std::numeric_limits<double>::quiet_NaN(),
                                           std::numeric_limits<double>::quiet_NaN(), true};
                          try {
                            ex = lgae_exponential(e0.mean, e0.stderr, ea.mean, ea.stderr, c.lgae_alpha);
                          } catch (const DomainError&) {
                          }
                          Row row = {fmt(t),
                                     to_string(o),
                                     fmt(c.lgae_alpha),
                                     fmt(e0.gate_angle),
                                     fmt(ea.gate_angle),
                                     fmt(r0.mean_tq_gates()),
                                     fmt(ra.mean_tq_gates()),
                                     fmt(e0.mean),
                                     fmt(e0.stderr),
                                     fmt(ea.mean),
                                     fmt(ea.stderr),
                                     fmt(lin.value),
                                     fmt(lin.stderr),
                                     fmt(ex.value),
                                     fmt(ex.stderr),
                                     ex.low_confidence ? "1" : "0",
                                     fmt(exact),
                                     fmt(z_score(lin.value, lin.stderr, exact)),
                                     c.noise.describe()};
                          out.results.push_back(
                              concat(row, {fmt(c.syk.seed), fmt(shallow.circuit_seed) + "/" + fmt(deep.circuit_seed),
                                           instance_ids(c, c.circuits), id_range(c.circuits)}));
                        }
                        if (c.write_circuits) {
                          out.circuits = circuit_rows(r0, "shallow");
                          for (auto& row : circuit_rows(ra, "deep")) out.circuits.push_back(std::move(row));
                        }
                        return out;
                      }});
  }
  return points;
}

std::vector<Point> overlay_points(const ExperimentConfig& c, int workers) {
  if (c.instances == 0) throw ConfigError("$.ensemble.instances", "noise_model_overlay needs a finite disorder pool");
  if (c.syk.num_qubits() > kMaxDenseQubits) {
    throw CapabilityError("noise model tabulation needs L <= " + std::to_string(kMaxDenseQubits));
  }
  // Ensemble tabulation shared by all points.
  double t_max = 0.0;
  for (double t : c.times) t_max = std::max(t_max, t);
  const auto points_needed = static_cast<std::size_t>(std::llround(t_max / c.model_step)) + 1;
  auto table = std::make_shared<SpectralTabulation>();
  auto ensure_table = [&c, workers, table, points_needed] {
    if (!table->loschmidt.empty()) return;
    auto tables = run_tasks<SpectralTabulation>(static_cast<std::size_t>(c.instances), workers, [&](std::size_t k) {
      return tabulate(SpectralDecomposition(sample_ensemble_member(c.syk, k).hamiltonian()), c.model_step,
                      points_needed);
    });
    *table = average(tables);
  };

  std::vector<Point> points;
  std::size_t index = 0;
  for (double t : c.times) {
    for (double qt : c.qt_values) {
      const std::size_t i = index++;
      points.push_back({"t=" + fmt(t) + " qt=" + fmt(qt), [&c, workers, t, qt, i, table, ensure_table] {
                          ensure_table();
                          const double q = qt / t;
                          std::optional<EchoRun> run;
                          EchoSetup s = echo_setup(c, t, point_seed(c, i), workers);
                          s.noise = NoiseSpec::global(q);
                          if (c.circuits > 0) run = run_echo(s);
                          PointResult out;
                          for (EchoObservable o : c.observables) {
                            if (o == EchoObservable::kProjectZeroMitigated) continue;
                            const NoiseObservable no = o == EchoObservable::kIdentityOnSystem
                                                           ? NoiseObservable::kIdentity
                                                           : NoiseObservable::kProjectZero;
                            const auto noisy_in = model_inputs(*table, t, q, 1.0, no);
                            const double model = noisy_expectation(noisy_in, solve_F(noisy_in)).real();
                            const double clean = table->loschmidt[static_cast<std::size_t>(
                                                                      std::llround(t / c.model_step))]
                                                     .real();
                            double mean = std::numeric_limits<double>::quiet_NaN(), se = mean;
                            if (run) {
                              const EstimateRecord r = run->estimate(o);
                              mean = r.mean;
                              se = r.stderr;
                            }
                            Row row = {fmt(t), fmt(qt), fmt(q), to_string(o), fmt(model), fmt(clean),
                                       fmt(mean), fmt(se), fmt(z_score(mean, se, model)), fmt(c.circuits, 0),
                                       fmt(c.shots_per_circuit, 0)};
                            out.results.push_back(concat(row, provenance(c, s.circuit_seed, c.circuits)));
                          }
                          if (run && c.write_circuits) out.circuits = circuit_rows(*run, "qt=" + fmt(qt));
                          return out;
                        }});
    }
  }
  return points;
}

std::vector<Point> crossover_points(const ExperimentConfig& c) {
  std::vector<Point> points;
  if (c.instances < 1) throw ConfigError("$.ensemble.instances", "trotter_crossover needs at least one instance");
  for (double t : c.times) {
    points.push_back({"t=" + fmt(t), [&c, t] {
                        const auto rows = crossover_study(c.syk, {t}, c.instances);
                        PointResult out;
                        for (const auto& r : rows) {
                          out.results.push_back({std::to_string(c.syk.n_majorana), fmt(r.t), fmt(r.tq_tetris_optimal),
                                                 fmt(r.tq_trotter_1), fmt(r.tq_trotter_2), r.cheaper_scheme,
                                                 fmt(r.exact_mean), fmt(r.trotter_mean_1), fmt(r.trotter_mean_2),
                                                 r.trotter_error_1.defined ? fmt(r.trotter_error_1.value) : "nan",
                                                 r.trotter_error_2.defined ? fmt(r.trotter_error_2.value) : "nan",
                                                 r.instance_error_1.defined ? fmt(r.instance_error_1.value) : "nan",
                                                 r.instance_error_2.defined ? fmt(r.instance_error_2.value) : "nan",
                                                 fmt(c.syk.seed), "none", id_range(static_cast<std::size_t>(c.instances)),
                                                 "none"});
                        }
                        return out;
                      }});
  }
  return points;
}

std::vector<Point> mirror_points(const ExperimentConfig& c, int workers) {
  if (c.instances < 1) throw ConfigError("$.ensemble.instances", "mirror_sweep needs a finite disorder pool");
  std::vector<Point> points;
  std::size_t index = 0;
  for (double t : c.times) {
    for (double p : c.p_dep_values) {
      const std::size_t i = index++;
      points.push_back({"t=" + fmt(t) + " p_dep=" + fmt(p), [&c, workers, t, p, i] {
                          MirrorRunSpec spec;
                          spec.params = c.syk;
                          spec.instances = c.instances;
                          spec.time = t;
                          spec.angle = c.angle;
                          spec.noise = NoiseSpec::per_gate(p);
                          spec.circuits = c.circuits;
                          spec.shots_per_circuit = c.shots_per_circuit;
                          spec.circuit_seed = point_seed(c, i);
                          spec.workers = workers;
                          const StandardMirrorResult standard = standard_mirror(spec);
                          const MirrorOnAverageResult average = mirror_on_average(spec);
                          const double exact_local = exact_local_observable(spec);
                          const double model = std::pow(1.0 - 15.0 * p / 16.0, standard.mean_tq_gates);
                          PointResult out;
                          Row row = {fmt(t),
                                     fmt(p),
                                     fmt(standard.survival.mean),
                                     fmt(standard.survival.stderr),
                                     fmt(average.survival.mean),
                                     fmt(average.survival.stderr),
                                     fmt(average.local_obs.mean),
                                     fmt(average.local_obs.stderr),
                                     fmt(exact_local),
                                     fmt(model),
                                     fmt(standard.mean_tq_gates),
                                     fmt(average.mean_tq_gates),
                                     fmt(c.circuits, 0),
                                     fmt(c.shots_per_circuit, 0)};
                          out.results.push_back(concat(row, provenance(c, spec.circuit_seed, c.circuits)));
                          return out;
                        }});
    }
  }
  return points;
}

std::vector<Point> resource_points(const ExperimentConfig& c) {
  std::vector<Point> points;
  for (int L : c.resource_qubits) {
    points.push_back({"L=" + std::to_string(L), [&c, L] {
                        ResourceQuery q;
                        q.num_qubits = L;
                        q.sparsity_k = c.syk.sparsity_k;
                        q.jt = c.resource_jt;
                        q.lyapunov_preset = c.lyapunov_preset;
                        q.depth_time_s = c.depth_time_s;
                        q.parallel = true;
                        const std::int64_t tq = otoc_tq_count(q);
                        const RuntimeEstimate rt = runtime_estimate(q, tq);
                        const double jt = q.lyapunov_preset ? std::log(2.0 * L) : q.jt;
                        PointResult out;
                        out.results.push_back({std::to_string(L), fmt(q.sparsity_k), fmt(jt), fmt(tq),
                                               fmt(rt.serial_s / 3600.0), fmt(rt.parallel_factor),
                                               fmt(rt.parallel_s / 3600.0), fmt(round_significant(rt.serial_s / 3600.0)),
                                               fmt(round_significant(rt.parallel_s / 3600.0)), rt.label});
                        return out;
                      }});
  }
  return points;
}

std::vector<Point> make_points(const ExperimentConfig& c, int workers) {
  switch (c.kind) {
    case ExperimentKind::kLoschmidtScan:
    case ExperimentKind::kAngleSweep: return loschmidt_points(c, workers);
    case ExperimentKind::kVarianceStudy: return variance_points(c, workers);
    case ExperimentKind::kLgaeHardwareProtocol: return lgae_points(c, workers);
    case ExperimentKind::kNoiseModelOverlay: return overlay_points(c, workers);
    case ExperimentKind::kTrotterCrossover: return crossover_points(c);
    case ExperimentKind::kMirrorSweep: return mirror_points(c, workers);
    case ExperimentKind::kResources: return resource_points(c);
  }
  throw ParameterError("unknown experiment kind");
}

// ---------------------------------------------------------------------------
// Files

std::string csv_line(const Row& row) {
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) line += ',';
    line += row[i];
  }
  return line + '\n';
}

std::vector<std::string> read_lines(const fs::path& file) {
  std::vector<std::string> lines;
  std::ifstream in(file);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

void write_text(const fs::path& file, const std::string& text) {
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, file);
}

/// Keeps the header and the first `rows` data lines of a CSV file.
void truncate_csv(const fs::path& file, std::size_t rows) {
  auto lines = read_lines(file);
  if (lines.size() < rows + 1) throw std::runtime_error(file.string() + " is shorter than its manifest");
  std::string text;
  for (std::size_t i = 0; i <= rows; ++i) text += lines[i] + '\n';
  write_text(file, text);
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

json summarize(const ExperimentConfig& c, const fs::path& results) {
  const auto lines = read_lines(results);
  json summary;
  summary["kind"] = to_string(c.kind);
  summary["rows"] = lines.empty() ? 0 : lines.size() - 1;
  const auto& columns = result_columns(c.kind);
  // Range of every numeric column.
  json ranges = json::object();
  for (std::size_t col = 0; col < columns.size(); ++col) {
    double lo = INFINITY, hi = -INFINITY;
    bool numeric = lines.size() > 1;
    for (std::size_t i = 1; i < lines.size() && numeric; ++i) {
      std::vector<std::string> cells;
      std::stringstream ss(lines[i]);
      for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
      if (col >= cells.size()) {
        numeric = false;
        break;
      }
      double v = 0.0;
      const auto& s = cells[col];
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        if (s == "nan") continue;
        numeric = false;
        break;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (numeric && lo <= hi) ranges[columns[col]] = {{"min", lo}, {"max", hi}};
  }
  summary["ranges"] = ranges;
  return summary;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : kKindNames) {
    if (name == n) return k;
  }
  throw ParameterError("unknown experiment kind '" + name + "'");
}

const std::vector<ExperimentKind>& all_experiment_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> out;
    for (const auto& [k, name] : kKindNames) out.push_back(k);
    return out;
  }();
  return kinds;
}

void ExperimentConfig::override_seed(std::uint64_t seed) {
  syk.seed = seed;
  circuit_seed = seed;
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig c;
  ObjectReader top(doc, "$");
  const int version = top.require<int>("schema_version");
  check(version == kConfigSchemaVersion, top.path("schema_version"),
        [&] { return "unsupported schema version " + std::to_string(version); });
  const std::string kind = top.require<std::string>("kind");
  try {
    c.kind = experiment_kind_from_string(kind);
  } catch (const ParameterError& e) {
    throw ConfigError(top.path("kind"), e.what());
  }

  if (top.has("syk")) {
    ObjectReader syk(top.raw("syk"), top.path("syk"));
    c.syk.n_majorana = syk.get<int>("n_majorana", c.syk.n_majorana);
    c.syk.coupling_scale = syk.get<double>("coupling_scale", c.syk.coupling_scale);
    c.syk.sparsity_k = syk.get<double>("sparsity_k", c.syk.sparsity_k);
    c.syk.dense = syk.get<bool>("dense", c.syk.dense);
    c.syk.seed = syk.get<std::uint64_t>("seed", c.syk.seed);
    syk.finish();
    try {
      c.syk.validate();
    } catch (const ParameterError& e) {
      throw ConfigError(top.path("syk"), e.what());
    }
  }
  if (top.has("ensemble")) {
    ObjectReader ens(top.raw("ensemble"), top.path("ensemble"));
    c.instances = ens.get<int>("instances", c.instances);
    check(c.instances >= 0, ens.path("instances"), [] { return "must be >= 0"; });
    ens.finish();
  }
  c.times = top.list<double>("times", {});
  if (uses_times(c.kind)) {
    check(!c.times.empty(), top.path("times"), [] { return "time grid is empty"; });
    for (std::size_t i = 0; i < c.times.size(); ++i) {
      check(std::isfinite(c.times[i]) && c.times[i] >= 0.0, top.path("times") + "[" + std::to_string(i) + "]",
            [] { return "times must be finite and non-negative"; });
    }
  }
  if (top.has("angle")) {
    ObjectReader angle(top.raw("angle"), top.path("angle"));
    const std::string policy = angle.get<std::string>("policy", "optimal");
    if (policy == "optimal") {
      c.angle.kind = AnglePolicy::Kind::kOptimal;
    } else if (policy == "shallow") {
      c.angle.kind = AnglePolicy::Kind::kShallow;
    } else if (policy == "scaled") {
      c.angle.kind = AnglePolicy::Kind::kScaled;
    } else if (policy == "fixed") {
      c.angle.kind = AnglePolicy::Kind::kFixed;
    } else {
      throw ConfigError(angle.path("policy"), "expected optimal, shallow, scaled or fixed");
    }
    c.angle.alpha = angle.get<double>("alpha", c.angle.alpha);
    c.angle.value = angle.get<double>("value", c.angle.value);
    angle.finish();
    check(c.angle.kind == AnglePolicy::Kind::kFixed || (c.angle.alpha > 0.0 && c.angle.alpha <= 1.0),
          angle.path("alpha"), [] { return "must lie in (0, 1]"; });
    check(c.angle.kind != AnglePolicy::Kind::kFixed || (c.angle.value > 0.0 && c.angle.value < std::acos(0.0)),
          angle.path("value"), [] { return "must lie in (0, pi/2)"; });
  }
  if (top.has("noise")) {
    ObjectReader noise(top.raw("noise"), top.path("noise"));
    const std::string mode = noise.get<std::string>("mode", "none");
    if (mode == "none") {
      c.noise = NoiseSpec::none();
    } else if (mode == "per_gate") {
      c.noise = NoiseSpec::per_gate(noise.require<double>("p_dep"));
    } else if (mode == "global") {
      c.noise = NoiseSpec::global(noise.require<double>("rate_q"));
    } else {
      throw ConfigError(noise.path("mode"), "expected none, per_gate or global");
    }
    noise.finish();
    try {
      c.noise.validate();
    } catch (const ParameterError& e) {
      throw ConfigError(top.path("noise"), e.what());
    }
  }
  c.circuits = top.get<std::size_t>("circuits", c.circuits);
  c.shots_per_circuit = top.get<std::size_t>("shots_per_circuit", c.shots_per_circuit);
  if (is_echo_kind(c.kind) && c.kind != ExperimentKind::kNoiseModelOverlay) {
    check(c.circuits > 0, top.path("circuits"), [] { return "must be positive"; });
  }
  if (top.has("seeds")) {
    ObjectReader seeds(top.raw("seeds"), top.path("seeds"));
    c.circuit_seed = seeds.get<std::uint64_t>("circuit", c.circuit_seed);
    seeds.finish();
  }
  if (top.has("observables")) {
    c.observables.clear();
    const auto names = top.list<std::string>("observables", {});
    for (std::size_t i = 0; i < names.size(); ++i) {
      try {
        c.observables.push_back(echo_observable_from_string(names[i]));
      } catch (const ParameterError& e) {
        throw ConfigError(top.path("observables") + "[" + std::to_string(i) + "]", e.what());
      }
    }
    check(!c.observables.empty(), top.path("observables"), [] { return "no observables selected"; });
  }
  c.write_circuits = top.get<bool>("write_circuits", c.write_circuits);
  c.output = top.get<std::string>("output", c.output);

  for (const auto& [section, owner] : kind_sections()) {
    if (!top.has(section)) continue;
    if (owner != c.kind) throw ConfigError(top.path(section), "section not used by kind " + kind);
    ObjectReader r(top.raw(section), top.path(section));
    switch (owner) {
      case ExperimentKind::kVarianceStudy:
        c.alphas = r.list<double>("alphas", {1.0});
        for (double a : c.alphas) check(a > 0.0 && a <= 1.0, r.path("alphas"), [] { return "alphas must lie in (0, 1]"; });
        c.shots_grid = r.list<std::size_t>("shots_grid", c.shots_grid);
        check(!c.shots_grid.empty(), r.path("shots_grid"), [] { return "empty shot grid"; });
        for (auto s : c.shots_grid) check(s > 0, r.path("shots_grid"), [] { return "shots must be positive"; });
        break;
      case ExperimentKind::kAngleSweep:
        c.alphas = r.list<double>("alphas", c.alphas);
        check(!c.alphas.empty(), r.path("alphas"), [] { return "empty alpha grid"; });
        for (double a : c.alphas) check(a > 0.0 && a <= 1.0, r.path("alphas"), [] { return "alphas must lie in (0, 1]"; });
        break;
      case ExperimentKind::kLgaeHardwareProtocol:
        c.lgae_alpha = r.get<double>("alpha", c.lgae_alpha);
        check(c.lgae_alpha > 0.0 && c.lgae_alpha < 1.0, r.path("alpha"), [] { return "must lie in (0, 1)"; });
        break;
      case ExperimentKind::kNoiseModelOverlay:
        c.qt_values = r.list<double>("qt_values", c.qt_values);
        c.model_step = r.get<double>("step", c.model_step);
        check(c.model_step > 0.0, r.path("step"), [] { return "must be positive"; });
        for (double q : c.qt_values) check(q >= 0.0, r.path("qt_values"), [] { return "must be non-negative"; });
        break;
      case ExperimentKind::kMirrorSweep:
        c.p_dep_values = r.list<double>("p_dep_values", c.p_dep_values);
        for (double p : c.p_dep_values) check(p >= 0.0 && p <= 1.0, r.path("p_dep_values"), [] { return "must lie in [0, 1]"; });
        break;
      case ExperimentKind::kResources:
        c.resource_qubits = r.list<int>("num_qubits", c.resource_qubits);
        c.depth_time_s = r.get<double>("depth_time_s", c.depth_time_s);
        c.lyapunov_preset = r.get<bool>("lyapunov_preset", c.lyapunov_preset);
        c.resource_jt = r.get<double>("jt", c.resource_jt);
        for (int L : c.resource_qubits) check(L >= 2, r.path("num_qubits"), [] { return "L must be >= 2"; });
        check(c.depth_time_s >= 0.0, r.path("depth_time_s"), [] { return "must be non-negative"; });
        break;
      default: break;
    }
    r.finish();
  }
  top.finish();

  if (c.kind == ExperimentKind::kAngleSweep && !top.has("angle_sweep")) c.alphas = {1.0, 0.5, 1.0 / 3};
  if (c.kind == ExperimentKind::kNoiseModelOverlay) {
    for (std::size_t i = 0; i < c.times.size(); ++i) {
      const double steps = c.times[i] / c.model_step;
      check(c.times[i] > 0.0 && std::abs(steps - std::round(steps)) < 1e-6, "$.times[" + std::to_string(i) + "]",
            [] { return "noise model times must be positive multiples of noise_model.step"; });
    }
  }
  return c;
}

ExperimentConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("$", "cannot open " + file.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
  json doc;
  doc["schema_version"] = kConfigSchemaVersion;
  doc["kind"] = to_string(c.kind);
  doc["syk"] = {{"n_majorana", c.syk.n_majorana},
                {"coupling_scale", c.syk.coupling_scale},
                {"sparsity_k", c.syk.sparsity_k},
                {"dense", c.syk.dense},
                {"seed", c.syk.seed}};
  doc["ensemble"] = {{"instances", c.instances}};
  doc["times"] = c.times;
  json angle = {{"policy", c.angle.describe()}};
  if (c.angle.kind != AnglePolicy::Kind::kFixed) angle["alpha"] = c.angle.alpha;
  if (c.angle.kind == AnglePolicy::Kind::kFixed) angle["value"] = c.angle.value;
  doc["angle"] = angle;
  switch (c.noise.mode) {
    case NoiseSpec::Mode::kNone: doc["noise"] = {{"mode", "none"}}; break;
    case NoiseSpec::Mode::kPerGateDepolarizing: doc["noise"] = {{"mode", "per_gate"}, {"p_dep", c.noise.p_dep}}; break;
    case NoiseSpec::Mode::kGlobalDepolarizing: doc["noise"] = {{"mode", "global"}, {"rate_q", c.noise.rate_q}}; break;
  }
  doc["circuits"] = c.circuits;
  doc["shots_per_circuit"] = c.shots_per_circuit;
  doc["seeds"] = {{"circuit", c.circuit_seed}};
  json obs = json::array();
  for (auto o : c.observables) obs.push_back(to_string(o));
  doc["observables"] = obs;
  doc["write_circuits"] = c.write_circuits;
  doc["output"] = c.output;
  switch (c.kind) {
    case ExperimentKind::kVarianceStudy:
      doc["variance_study"] = {{"shots_grid", c.shots_grid}, {"alphas", c.alphas}};
      break;
    case ExperimentKind::kAngleSweep: doc["angle_sweep"] = {{"alphas", c.alphas}}; break;
    case ExperimentKind::kLgaeHardwareProtocol: doc["lgae"] = {{"alpha", c.lgae_alpha}}; break;
    case ExperimentKind::kNoiseModelOverlay:
      doc["noise_model"] = {{"qt_values", c.qt_values}, {"step", c.model_step}};
      break;
    case ExperimentKind::kMirrorSweep: doc["mirror"] = {{"p_dep_values", c.p_dep_values}}; break;
    case ExperimentKind::kResources:
      doc["resources"] = {{"num_qubits", c.resource_qubits},
                          {"depth_time_s", c.depth_time_s},
                          {"lyapunov_preset", c.lyapunov_preset},
                          {"jt", c.resource_jt}};
      break;
    default: break;
  }
  return doc;
}

const std::vector<std::string>& result_columns(ExperimentKind kind) {
  static const std::vector<std::string> provenance = {"disorder_seed", "circuit_seed", "instance_ids", "circuit_ids"};
  auto with = [](std::vector<std::string> cols) {
    cols.insert(cols.end(), provenance.begin(), provenance.end());
    return cols;
  };
  static const std::vector<std::string> loschmidt =
      with({"t", "observable", "angle_policy", "gate_angle", "alpha", "lambda", "mean", "stderr", "exact", "z_score",
            "mean_tq", "circuits", "shots_per_circuit", "noise"});
  static const std::vector<std::string> variance =
      with({"t", "alpha", "gate_angle", "shots_per_circuit", "observable", "mean_tq", "lambda", "mean", "stderr", "circuit_sd", "exact",
            "circuits", "total_shots"});
  static const std::vector<std::string> lgae =
      with({"t", "observable", "alpha", "tau0", "tau_alpha", "mean_tq0", "mean_tq_alpha", "y0", "s0", "y_alpha",
            "s_alpha", "lgae_linear", "lgae_linear_stderr", "lgae_exponential", "lgae_exponential_stderr",
            "lgae_exponential_low_confidence", "exact", "z_linear", "noise"});
  static const std::vector<std::string> overlay =
      with({"t", "qt", "rate_q", "observable", "model", "noiseless", "trajectory_mean", "trajectory_stderr",
            "z_score", "circuits", "shots_per_circuit"});
  static const std::vector<std::string> crossover =
      with({"n_majorana", "t", "tq_tetris_optimal", "tq_trotter_1", "tq_trotter_2", "cheaper_scheme", "exact_mean",
            "trotter_mean_1", "trotter_mean_2", "trotter_error_1", "trotter_error_2", "instance_error_1",
            "instance_error_2"});
  static const std::vector<std::string> mirror =
      with({"t", "p_dep", "mirror", "mirror_stderr", "mirror_on_average", "mirror_on_average_stderr", "local_obs",
            "local_obs_stderr", "local_obs_exact", "fidelity_model", "mean_tq_standard", "mean_tq_on_average",
            "circuits", "shots_per_circuit"});
  static const std::vector<std::string> resources = {"L",           "k",           "jt",
                                                     "tq_count",    "serial_hours", "parallel_factor",
                                                     "parallel_hours", "serial_hours_1sf", "parallel_hours_1sf",
                                                     "label"};
  switch (kind) {
    case ExperimentKind::kLoschmidtScan:
    case ExperimentKind::kAngleSweep: return loschmidt;
    case ExperimentKind::kVarianceStudy: return variance;
    case ExperimentKind::kLgaeHardwareProtocol: return lgae;
    case ExperimentKind::kNoiseModelOverlay: return overlay;
    case ExperimentKind::kTrotterCrossover: return crossover;
    case ExperimentKind::kMirrorSweep: return mirror;
    case ExperimentKind::kResources: return resources;
  }
  return loschmidt;
}

const std::vector<std::string>& circuit_columns() {
  static const std::vector<std::string> cols = {
      "tag",       "t",         "circuit_seed", "disorder_seed", "instance_id",  "circuit_id",       "gate_angle",
      "lambda",    "tq_gates",  "rotations",    "raw_identity",  "raw_project_zero", "raw_project_zero_mit", "exact"};
  return cols;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string build_git_describe() { return TETRISYK_GIT_DESCRIBE; }

RunSummary run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const fs::path dir = options.out_dir.empty() ? fs::path(config.output) : options.out_dir;
  fs::create_directories(dir);
  const fs::path manifest_file = dir / "manifest.json";
  const fs::path results_file = dir / "results.csv";
  const fs::path circuits_file = dir / "circuits.csv";
  const json config_doc = to_json(config);

  auto points = make_points(config, std::max(1, options.workers));

  json manifest;
  std::size_t done = 0;
  if (options.resume && fs::exists(manifest_file)) {
    try {
      std::ifstream in(manifest_file);
      manifest = json::parse(in);
    } catch (const json::exception&) {
      manifest = json();
    }
    if (manifest.is_object() && manifest.value("config", json()) == config_doc &&
        manifest.value("git_describe", std::string()) == build_git_describe()) {
      done = manifest.value("completed_points", std::size_t{0});
    } else {
      manifest = json();
    }
  }
  if (done > points.size()) done = 0;

  if (done == 0) {
    manifest = json::object();
    manifest["schema_version"] = kConfigSchemaVersion;
    manifest["kind"] = to_string(config.kind);
    manifest["config"] = config_doc;
    manifest["git_describe"] = build_git_describe();
    manifest["seeds"] = {{"disorder", config.syk.seed}, {"circuit", config.circuit_seed}};
    manifest["created"] = timestamp();
    manifest["total_points"] = points.size();
    manifest["completed_points"] = 0;
    manifest["rows_per_point"] = json::array();
    manifest["circuit_rows_per_point"] = json::array();
    write_text(results_file, csv_line(result_columns(config.kind)));
    if (config.write_circuits) write_text(circuits_file, csv_line(circuit_columns()));
    fs::remove(dir / "summary.json");
  } else {
    std::size_t rows = 0, circuit_rows = 0;
    for (std::size_t i = 0; i < done; ++i) {
      rows += manifest["rows_per_point"][i].get<std::size_t>();
      circuit_rows += manifest["circuit_rows_per_point"][i].get<std::size_t>();
    }
    truncate_csv(results_file, rows);
    if (config.write_circuits) truncate_csv(circuits_file, circuit_rows);
    manifest["rows_per_point"].get_ref<json::array_t&>().resize(done);
    manifest["circuit_rows_per_point"].get_ref<json::array_t&>().resize(done);
    if (options.log) *options.log << "resuming after " << done << " of " << points.size() << " points\n";
  }
  manifest["status"] = "running";
  manifest["workers"] = options.workers;

  RunSummary summary;
  summary.points = points.size();
  summary.resumed_points = done;
  for (std::size_t i = done; i < points.size(); ++i) {
    if (options.log) *options.log << "[" << (i + 1) << "/" << points.size() << "] " << points[i].label << std::endl;
    const PointResult result = points[i].run();
    {
      std::ofstream out(results_file, std::ios::app | std::ios::binary);
      for (const auto& row : result.results) out << csv_line(row);
    }
    if (config.write_circuits) {
      std::ofstream out(circuits_file, std::ios::app | std::ios::binary);
      for (const auto& row : result.circuits) out << csv_line(row);
    }
    manifest["rows_per_point"].push_back(result.results.size());
    manifest["circuit_rows_per_point"].push_back(result.circuits.size());
    manifest["completed_points"] = i + 1;
    manifest["updated"] = timestamp();
    write_text(manifest_file, manifest.dump(2) + "\n");
  }
  manifest["status"] = "complete";
  manifest["updated"] = timestamp();
  write_text(manifest_file, manifest.dump(2) + "\n");

  summary.summary = summarize(config, results_file);
  summary.summary["points"] = points.size();
  summary.summary["git_describe"] = build_git_describe();
  summary.rows = summary.summary["rows"].get<std::size_t>();
  write_text(dir / "summary.json", summary.summary.dump(2) + "\n");
  return summary;
}

}  // namespace tetrisyk
