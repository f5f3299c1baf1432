#include "searchlab/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "searchlab/algorithms.hpp"
#include "searchlab/equivalence.hpp"
#include "searchlab/fullspace.hpp"
#include "searchlab/synthesis.hpp"
#include "searchlab/version.hpp"

namespace searchlab::reporting {

namespace {

constexpr double kPi = std::numbers::pi;
// Upper bound on the RK4 step used when a command integrates dynamics.  The
// Hamiltonians here have norm at most ~1, so this keeps the global error
// orders below the reported digits.
constexpr double kDtMax = 0.01;

SearchInstance make_instance(const RunConfig& c) {
  return SearchInstance(c.n, c.marked, c.gamma, c.eps);
}

std::int64_t samples_or(const RunConfig& c, std::int64_t fallback) {
  if (c.samples < 0) throw UsageError("samples must be positive");
  if (c.samples == 0) return fallback;
  if (c.samples < 2) throw UsageError("samples must be at least 2");
  return c.samples;
}

void base_metadata(const RunConfig& c, const SearchInstance& inst, Table& t) {
  t.metadata.emplace_back("tool", "searchlab");
  t.metadata.emplace_back("version", kVersion);
  t.metadata.emplace_back("command", to_string(c.command));
  t.metadata.emplace_back("N", std::to_string(inst.n));
  t.metadata.emplace_back("marked", std::to_string(inst.w));
  t.metadata.emplace_back("eps", format_double(inst.eps));
  t.metadata.emplace_back("gamma", format_double(inst.gamma));
}

double success_prob(const SubspaceState& st) {
  const double n2 = std::norm(st.a_w) + std::norm(st.a_r);
  return std::norm(st.a_w) / n2;
}

// (t, optional s, state) triple feeding a trajectory row.
struct PathSample {
  double t = 0.0;
  std::optional<double> s;
  SubspaceState state;
};

void push_trajectory_row(Table& table, std::int64_t index, const PathSample& p) {
  const BlochPoint b = bloch_coords(p.state);
  std::vector<double> row{static_cast<double>(index), p.t};
  if (p.s) row.push_back(*p.s);
  row.insert(row.end(), {p.state.a_w.real(), p.state.a_w.imag(), p.state.a_r.real(),
                         p.state.a_r.imag(), b.x, b.y, b.z, success_prob(p.state)});
  table.rows.push_back(std::move(row));
}

std::vector<std::string> trajectory_columns(bool with_s) {
  std::vector<std::string> cols{"index", "t"};
  if (with_s) cols.emplace_back("s");
  for (const char* c : {"re_aw", "im_aw", "re_ar", "im_ar", "x", "y", "z", "success_prob"}) {
    cols.emplace_back(c);
  }
  return cols;
}

// Integrates the scheduled interpolation and records exactly at the emission
// times, splitting each emission interval into RK4 substeps of at most kDtMax.
std::vector<PathSample> integrate_rc(const SearchInstance& inst, std::int64_t points) {
  const double T = rc_total_time(inst);
  const auto h_of_t = [&inst, T](double t) {
    return rc_hamiltonian(rc_schedule_s(std::clamp(t, 0.0, T), inst), inst);
  };
  std::vector<PathSample> out;
  out.reserve(points);
  SubspaceState psi = inst.uniform_state();
  out.push_back({0.0, 0.0, psi});
  for (std::int64_t j = 1; j < points; ++j) {
    const double t0 = T * static_cast<double>(j - 1) / static_cast<double>(points - 1);
    const double t1 = T * static_cast<double>(j) / static_cast<double>(points - 1);
    const int sub = std::max<int>(1, static_cast<int>(std::ceil((t1 - t0) / kDtMax)));
    const double dt = (t1 - t0) / sub;
    for (int i = 0; i < sub; ++i) {
      psi = rk4_step(h_of_t, psi, t0 + i * dt, dt);
    }
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > kNormDriftError) {
      throw NormDriftError("trajectory: norm drift exceeds tolerance");
    }
    out.push_back({t1, rc_schedule_s(t1, inst), psi});
  }
  return out;
}

// Natural sampling of each family: walks uniformly in time over their sweep,
// scheduled families uniformly in s.
std::vector<PathSample> sample_path(Algorithm alg, const SearchInstance& inst,
                                    std::int64_t points) {
  std::vector<PathSample> out;
  out.reserve(points);
  const double nn = static_cast<double>(inst.n);
  switch (alg) {
    case Algorithm::grover:
      for (std::int64_t k = 0; k < points; ++k) {
        out.push_back({static_cast<double>(k), std::nullopt, grover_state(k, inst)});
      }
      break;
    case Algorithm::fg: {
      const double sweep = kPi * std::sqrt(nn) / 2.0;
      for (std::int64_t j = 0; j < points; ++j) {
        const double t = sweep * static_cast<double>(j) / static_cast<double>(points - 1);
        out.push_back({t, std::nullopt, fg_state(t, inst)});
      }
      break;
    }
    case Algorithm::fenner: {
      const double sweep = fenner_success_time(inst);
      for (std::int64_t j = 0; j < points; ++j) {
        const double t = sweep * static_cast<double>(j) / static_cast<double>(points - 1);
        out.push_back({t, std::nullopt, fenner_state(t, inst)});
      }
      break;
    }
    case Algorithm::rc:
      return integrate_rc(inst, points);
    case Algorithm::rc_ground:
      for (std::int64_t j = 0; j < points; ++j) {
        const double s = static_cast<double>(j) / static_cast<double>(points - 1);
        out.push_back({rc_schedule_t(s, inst), s, rc_ground_state(s, inst)});
      }
      break;
    case Algorithm::walk_follower:
      for (std::int64_t j = 0; j < points; ++j) {
        const double s = static_cast<double>(j) / static_cast<double>(points - 1);
        const double t = std::sqrt(nn) * std::asin(std::sqrt(s));
        out.push_back({t, s, walk_follower_ground_state(s, inst)});
      }
      break;
  }
  return out;
}

Table trajectory_table(const RunConfig& c) {
  const SearchInstance inst = make_instance(c);
  std::int64_t points = 0;
  if (c.algorithm == Algorithm::grover) {
    points = samples_or(c, grover_optimal_iterations(inst) + 1);
  } else {
    points = samples_or(c, 512);
  }
  const std::vector<PathSample> samples = sample_path(c.algorithm, inst, points);

  Table t;
  t.kind = "trajectory";
  const bool with_s = samples.front().s.has_value();
  t.columns = trajectory_columns(with_s);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    push_trajectory_row(t, static_cast<std::int64_t>(i), samples[i]);
  }
  base_metadata(c, inst, t);
  t.metadata.emplace_back("algorithm", to_string(c.algorithm));
  t.summary.emplace_back("success_prob_final", success_prob(samples.back().state));
  return t;
}

Table gap_table(const RunConfig& c) {
  const SearchInstance inst = make_instance(c);
  const std::int64_t points = samples_or(c, 201);
  const bool rc = (c.algorithm == Algorithm::rc);
  if (!rc && c.algorithm != Algorithm::walk_follower) {
    throw UsageError("gap: algorithm must be rc or walk-follower");
  }
  Table t;
  t.kind = "gap";
  t.columns = {"s", "g"};
  double min_g = std::numeric_limits<double>::infinity();
  double s_at_min = 0.0;
  for (std::int64_t j = 0; j < points; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(points - 1);
    const double g = rc ? rc_gap(s, inst) : walk_follower_gap(s, inst);
    if (g < min_g) {
      min_g = g;
      s_at_min = s;
    }
    t.rows.push_back({s, g});
  }
  base_metadata(c, inst, t);
  t.metadata.emplace_back("algorithm", to_string(c.algorithm));
  t.summary.emplace_back("min_g", min_g);
  t.summary.emplace_back("s_at_min", s_at_min);
  return t;
}

Table schedule_table(const RunConfig& c) {
  const SearchInstance inst = make_instance(c);
  const std::int64_t points = samples_or(c, 201);
  Table t;
  t.kind = "schedule";
  t.columns = {"t", "s"};
  if (c.algorithm == Algorithm::rc) {
    const double T = rc_total_time(inst);
    for (std::int64_t j = 0; j < points; ++j) {
      const double time = T * static_cast<double>(j) / static_cast<double>(points - 1);
      t.rows.push_back({time, rc_schedule_s(time, inst)});
    }
    t.summary.emplace_back("total_time", T);
  } else if (c.algorithm == Algorithm::walk_follower) {
    const double sweep = kPi * std::sqrt(static_cast<double>(inst.n)) / 2.0;
    for (std::int64_t j = 0; j < points; ++j) {
      const double time = sweep * static_cast<double>(j) / static_cast<double>(points - 1);
      t.rows.push_back({time, walk_follower_schedule(time, inst).s});
    }
    t.summary.emplace_back("total_time", sweep);
  } else {
    throw UsageError("schedule: algorithm must be rc or walk-follower");
  }
  base_metadata(c, inst, t);
  t.metadata.emplace_back("algorithm", to_string(c.algorithm));
  return t;
}

Table equivalence_table(const RunConfig& c) {
  const SearchInstance inst = make_instance(c);
  if (inst.eps != 1.0) {
    throw UsageError("equivalence: the path identity holds for eps = 1 only");
  }
  const std::int64_t points = samples_or(c, 1000);
  Table t;
  t.kind = "equivalence";
  t.columns = {"s", "t", "lhs", "rhs", "deviation"};
  for (std::int64_t j = 0; j < points; ++j) {
    const double s = (static_cast<double>(j) + 0.5) / static_cast<double>(points);
    const double time = rc_schedule_t(s, inst);
    const double lhs = fenner_unnormalized(time, inst).w_coeff;
    const double rhs = rc_ground_unnormalized(s, inst).w_coeff;
    t.rows.push_back({s, time, lhs, rhs, std::abs(lhs - rhs)});
  }
  const IdentityReport rep = verify_identity(inst, points);
  base_metadata(c, inst, t);
  t.summary.emplace_back("max_relative_deviation", rep.max_relative_deviation);
  t.summary.emplace_back("samples_compared", static_cast<double>(rep.samples_compared));
  t.summary.emplace_back("samples_near_pole", static_cast<double>(rep.samples_near_pole));
  if (rep.samples_near_pole > 0) {
    t.summary.emplace_back("min_pole_fidelity", rep.min_pole_fidelity);
  }
  return t;
}

Table synth_table(const RunConfig& c) {
  const SearchInstance inst = make_instance(c);
  if (!inst.canonical_gamma()) {
    throw UsageError("synth: the walk-follower is built on the critical-rate walk");
  }
  const std::int64_t points = samples_or(c, 256);
  const ThreeTermDecomposition dec = three_term_decomposition(inst);
  Table t;
  t.kind = "synth";
  t.columns = {"index", "t",     "s",      "lambda1", "h11",
               "re_h12", "im_h12", "h22",   "ground_fidelity_deficit"};
  double worst = 0.0;
  for (std::int64_t j = 0; j < points; ++j) {
    // Interior midpoints: the endpoint matrices vanish and have no spectrum
    // to follow.
    const double s = (static_cast<double>(j) + 0.5) / static_cast<double>(points);
    const double time = std::sqrt(static_cast<double>(inst.n)) * std::asin(std::sqrt(s));
    const Hermitian2 h = dec.assemble(s);
    const double deficit =
        1.0 - fidelity(walk_follower_ground_state(s, inst), fg_state(time, inst));
    worst = std::max(worst, deficit);
    t.rows.push_back({static_cast<double>(j), time, s, dec.prefactor(s), h.h11(),
                      h.h12().real(), h.h12().imag(), h.h22(), deficit});
  }
  base_metadata(c, inst, t);
  t.summary.emplace_back("max_ground_fidelity_deficit", worst);
  return t;
}

Table fullspace_table(const RunConfig& c) {
  const SearchInstance inst = make_instance(c);
  Table t;
  t.kind = "fullspace";
  const bool rc = (c.algorithm == Algorithm::rc);
  t.columns = rc ? std::vector<std::string>{"s", "leakage", "norm", "subspace_norm",
                                            "complement_eig", "h11", "re_h12", "im_h12", "h22"}
                 : std::vector<std::string>{"leakage", "norm", "subspace_norm",
                                            "complement_eig", "h11", "re_h12", "im_h12", "h22"};

  const auto emit = [&t, &inst, rc](const FullOperator& op, std::optional<double> s) {
    const Reduction red = reduce_to_subspace(op, inst);
    const NormReport norm = spectral_norm_full(op, inst);
    std::vector<double> row;
    if (rc) row.push_back(*s);
    row.insert(row.end(),
               {red.leakage, norm.norm, norm.subspace_norm, norm.complement_eigenvalue,
                red.h.h11(), red.h.h12().real(), red.h.h12().imag(), red.h.h22()});
    t.rows.push_back(std::move(row));
  };

  switch (c.algorithm) {
    case Algorithm::fg:
      emit(complete_graph_walk(inst), std::nullopt);
      break;
    case Algorithm::fenner:
      emit(fenner_star(inst), std::nullopt);
      break;
    case Algorithm::rc: {
      const std::int64_t points = samples_or(c, 21);
      for (std::int64_t j = 0; j < points; ++j) {
        const double s = static_cast<double>(j) / static_cast<double>(points - 1);
        emit(rc_full(s, inst), s);
      }
      break;
    }
    default:
      throw UsageError("fullspace: algorithm must be fg, fenner, or rc");
  }
  base_metadata(c, inst, t);
  t.metadata.emplace_back("algorithm", to_string(c.algorithm));
  return t;
}

HamiltonianFamily family_of(Algorithm a) {
  switch (a) {
    case Algorithm::walk_follower:
      return HamiltonianFamily::walk_follower;
    case Algorithm::rc:
      return HamiltonianFamily::rc;
    case Algorithm::fenner:
      return HamiltonianFamily::fenner;
    case Algorithm::fg:
      return HamiltonianFamily::fg;
    default:
      throw UsageError("norms: algorithm must be walk-follower, rc, fenner, or fg");
  }
}

Table norms_table(const RunConfig& c) {
  std::vector<std::int64_t> sizes = c.sizes;
  if (sizes.empty()) sizes = {100, 1000, 10000, 100000};
  if (!(c.s >= 0.0 && c.s <= 1.0)) throw UsageError("norms: s outside [0, 1]");
  const ScalingReport rep = norm_scaling_probe(family_of(c.algorithm), c.s, sizes, c.eps);

  Table t;
  t.kind = "norms";
  t.columns = {"N", "norm"};
  for (std::size_t i = 0; i < rep.sizes.size(); ++i) {
    t.rows.push_back({static_cast<double>(rep.sizes[i]), rep.norms[i]});
  }
  t.metadata.emplace_back("tool", "searchlab");
  t.metadata.emplace_back("version", kVersion);
  t.metadata.emplace_back("command", to_string(c.command));
  t.metadata.emplace_back("algorithm", to_string(c.algorithm));
  t.metadata.emplace_back("s", format_double(c.s));
  t.metadata.emplace_back("eps", format_double(c.eps));
  t.summary.emplace_back("slope", rep.slope);
  t.summary.emplace_back("intercept", rep.intercept);
  return t;
}

Pairing resolve_pairing(Pairing requested, Algorithm a, Algorithm b) {
  if (requested != Pairing::automatic) return requested;
  const bool a_scheduled = (a == Algorithm::rc_ground || a == Algorithm::walk_follower);
  const bool b_timed = (b == Algorithm::fg || b == Algorithm::fenner);
  if (a_scheduled && b_timed) return Pairing::schedule;
  if (a == Algorithm::grover && b == Algorithm::fenner) return Pairing::iterate;
  return Pairing::uniform;
}

Table compare_table(const RunConfig& c) {
  if (!c.algorithm_b) throw UsageError("compare: second algorithm missing");
  const Algorithm a = c.algorithm;
  const Algorithm b = *c.algorithm_b;
  if (a == Algorithm::rc || b == Algorithm::rc) {
    throw UsageError("compare: integrated rc dynamics have no closed path to pair; "
                     "use rc-ground");
  }
  const SearchInstance inst = make_instance(c);
  const Pairing pairing = resolve_pairing(c.pairing, a, b);
  std::int64_t points = samples_or(c, pairing == Pairing::iterate
                                          ? grover_optimal_iterations(inst) + 1
                                          : 512);

  std::vector<PathSample> pa, pb;
  switch (pairing) {
    case Pairing::uniform:
      pa = sample_path(a, inst, points);
      pb = sample_path(b, inst, points);
      break;
    case Pairing::schedule: {
      if (!(a == Algorithm::rc_ground || a == Algorithm::walk_follower)) {
        throw UsageError("compare: schedule pairing needs rc-ground or walk-follower first");
      }
      if (!(b == Algorithm::fg || b == Algorithm::fenner)) {
        throw UsageError("compare: schedule pairing needs fg or fenner second");
      }
      pa = sample_path(a, inst, points);
      for (const PathSample& p : pa) {
        const SubspaceState st =
            (b == Algorithm::fg) ? fg_state(p.t, inst) : fenner_state(p.t, inst);
        pb.push_back({p.t, std::nullopt, st});
      }
      break;
    }
    case Pairing::iterate: {
      if (a != Algorithm::grover || b != Algorithm::fenner) {
        throw UsageError("compare: iterate pairing is grover against fenner");
      }
      const double interval = fenner_grover_interval(inst);
      for (std::int64_t k = 0; k < points; ++k) {
        pa.push_back({static_cast<double>(k), std::nullopt, grover_state(k, inst)});
        pb.push_back({interval * static_cast<double>(k), std::nullopt,
                      fenner_state(interval * static_cast<double>(k), inst)});
      }
      break;
    }
    case Pairing::automatic:
      throw std::logic_error("compare: pairing not resolved");
  }

  Table t;
  t.kind = "compare";
  t.columns = {"index", "t_a", "t_b", "fidelity", "bloch_distance"};
  double max_dist = 0.0, sum_dist = 0.0, max_deficit = 0.0;
  for (std::int64_t j = 0; j < points; ++j) {
    const double fid = fidelity(pa[j].state, pb[j].state);
    const double dist = bloch_angle(bloch_coords(pa[j].state), bloch_coords(pb[j].state));
    max_dist = std::max(max_dist, dist);
    sum_dist += dist;
    max_deficit = std::max(max_deficit, 1.0 - fid);
    t.rows.push_back({static_cast<double>(j), pa[j].t, pb[j].t, fid, dist});
  }
  base_metadata(c, inst, t);
  t.metadata.emplace_back("algorithm", to_string(a));
  t.metadata.emplace_back("algorithm_b", to_string(b));
  t.metadata.emplace_back("pairing", pairing == Pairing::uniform   ? "uniform"
                                     : pairing == Pairing::schedule ? "schedule"
                                                                    : "iterate");
  t.summary.emplace_back("max_bloch_distance", max_dist);
  t.summary.emplace_back("mean_bloch_distance", sum_dist / static_cast<double>(points));
  t.summary.emplace_back("max_fidelity_deficit", max_deficit);
  return t;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* to_string(Command c) {
  switch (c) {
    case Command::trajectory: return "trajectory";
    case Command::gap: return "gap";
    case Command::schedule: return "schedule";
    case Command::equivalence: return "equivalence";
    case Command::synth: return "synth";
    case Command::fullspace: return "fullspace";
    case Command::norms: return "norms";
    case Command::compare: return "compare";
  }
  return "?";
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::grover: return "grover";
    case Algorithm::fg: return "fg";
    case Algorithm::rc: return "rc";
    case Algorithm::rc_ground: return "rc-ground";
    case Algorithm::fenner: return "fenner";
    case Algorithm::walk_follower: return "walk-follower";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "grover") return Algorithm::grover;
  if (name == "fg") return Algorithm::fg;
  if (name == "rc") return Algorithm::rc;
  if (name == "rc-ground") return Algorithm::rc_ground;
  if (name == "fenner") return Algorithm::fenner;
  if (name == "walk-follower") return Algorithm::walk_follower;
  throw UsageError("unknown algorithm: " + name);
}

Table build_table(const RunConfig& config) {
  switch (config.command) {
    case Command::trajectory: return trajectory_table(config);
    case Command::gap: return gap_table(config);
    case Command::schedule: return schedule_table(config);
    case Command::equivalence: return equivalence_table(config);
    case Command::synth: return synth_table(config);
    case Command::fullspace: return fullspace_table(config);
    case Command::norms: return norms_table(config);
    case Command::compare: return compare_table(config);
  }
  throw UsageError("unknown command");
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << "\n";
  for (const std::vector<double>& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\n";
  }
  for (const auto& [key, value] : table.summary) {
    out << "# " << key << " = " << format_double(value) << "\n";
  }
}

void write_json(const Table& table, std::ostream& out, bool reproducible) {
  nlohmann::json j;
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [key, value] : table.metadata) meta[key] = value;
  if (!reproducible) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm);
    meta["generated"] = stamp;
  }
  j["kind"] = table.kind;
  j["metadata"] = meta;
  j["columns"] = table.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const std::vector<double>& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (double v : row) r.push_back(v == 0.0 ? 0.0 : v);  // drop negative zeros
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [key, value] : table.summary) summary[key] = value;
  j["summary"] = std::move(summary);
  out << j.dump(2) << "\n";
}

int run(const RunConfig& config) {
  const Table table = build_table(config);
  const auto emit = [&](std::ostream& out) {
    if (config.format == Format::csv) {
      write_csv(table, out);
    } else {
      write_json(table, out, config.reproducible);
    }
  };
  if (config.output == "-") {
    emit(std::cout);
    if (!std::cout) throw IoError("failed writing to stdout");
    return kExitOk;
  }
  std::ofstream out(config.output);
  if (!out) throw IoError("cannot open output file: " + config.output);
  emit(out);
  out.flush();
  if (!out) throw IoError("failed writing output file: " + config.output);
  return kExitOk;
}

}  // namespace searchlab::reporting
