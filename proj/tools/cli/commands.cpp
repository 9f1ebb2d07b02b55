#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qbrach/qbrach.hpp"

namespace qbrach::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Negative zeros are an artifact of sign conventions, not information.
void clear_negative_zeros(json& node) {
  if (node.is_number_float()) {
    if (node.get<double>() == 0.0) node = 0.0;
  } else if (node.is_structured()) {
    for (auto& child : node) clear_negative_zeros(child);
  }
}

std::string dump(json doc) {
  clear_negative_zeros(doc);
  return doc.dump(2) + "\n";
}

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const BlochVector& v) { return json::array({v.x, v.y, v.z}); }

json state_json(const QubitState& psi) {
  return {{"amplitudes", json::array({complex_json(psi.c0), complex_json(psi.c1)})},
          {"bloch", vector_json(state_to_bloch(psi))}};
}

json operator_json(const Matrix2& h) {
  const PauliOperator p = pauli_decompose(h);
  return {{"matrix", json::array({json::array({complex_json(h.m00), complex_json(h.m01)}),
                                  json::array({complex_json(h.m10), complex_json(h.m11)})})},
          {"eps0", p.eps0},
          {"eps", vector_json(p.eps)}};
}

json error_json(const Error& e) {
  return {{"error", {{"code", std::string(code_name(e.code()))}, {"message", e.what()}}}};
}

CommandResult domain_failure(const Error& e) {
  return {exit_domain, dump(error_json(e)), std::string(e.what()) + "\n"};
}

bool at_north_pole(const QubitState& psi) { return std::abs(psi.c1) < output_tolerance; }

// Plan data shared by plan and trace.
struct ResolvedBender {
  bender::Plan frame_plan;
  Matrix2 hamiltonian;
  Matrix2 rotation = Matrix2::identity();
  BlochVector axis;
  bool rotated = false;
};

ResolvedBender resolve_bender(const PlanRequest& req, double omega) {
  ResolvedBender out;
  if (req.rotate_frame) {
    const bender::RotatedPlan rp = bender::optimal_plan_b_from(req.initial, req.target, omega);
    out.frame_plan = rp.frame_plan;
    out.hamiltonian = rp.hamiltonian;
    out.rotation = rp.rotation;
    out.axis = rp.axis;
    out.rotated = true;
    return out;
  }
  if (!at_north_pole(req.initial))
    fail(ErrorCode::InvalidArgument,
         "the bender method starts from the north pole; pass --rotate-frame for other initial states");
  out.frame_plan = bender::optimal_plan_b(req.target, omega);
  out.hamiltonian = out.frame_plan.hamiltonian;
  out.axis = out.frame_plan.axis;
  return out;
}

Matrix2 bender_unitary(const ResolvedBender& b, double t) {
  const Matrix2 u = bender::optimal_unitary_b(b.frame_plan, t);
  return b.rotated ? b.rotation.adjoint() * u * b.rotation : u;
}

json mostafazadeh_json(const mostafazadeh::Plan& plan, double hbar) {
  return {{"energy", plan.energy},
          {"theta", plan.theta},
          {"tau_min", plan.tau_min * hbar},
          {"hamiltonian", operator_json(pauli_compose(plan.hamiltonian))},
          {"field", vector_json(plan.field)},
          {"axis", vector_json(plan.axis)}};
}

json bender_json(const ResolvedBender& b, double hbar) {
  return {{"omega", b.frame_plan.omega},
          {"tau_min", b.frame_plan.tau_min * hbar},
          {"theta_param", b.frame_plan.theta_param},
          {"diagonal", b.frame_plan.diagonal},
          {"rotated_frame", b.rotated},
          {"hamiltonian", operator_json(b.hamiltonian)},
          {"axis", vector_json(b.axis)}};
}

json report_json(const equivalence::EquivalenceReport& r) {
  return {{"trace_sum", r.inputs.trace_sum},
          {"hamiltonian_residual", r.hamiltonian_residual},
          {"traceless_residual", r.traceless_residual},
          {"time_residual", r.time_residual},
          {"phase_residual", r.phase_residual},
          {"propagator_residual", r.propagator_residual},
          {"within_contract", r.within_contract()}};
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Mostafazadeh: return "mostafazadeh";
    case Method::Bender: return "bender";
    case Method::Both: return "both";
  }
  return "";
}

void require_positive_budget(const PlanRequest& req) {
  if (!(req.energy_budget > 0.0) || !std::isfinite(req.energy_budget))
    fail(ErrorCode::InvalidArgument, "--energy must be positive and finite");
  if (!(req.hbar > 0.0) || !std::isfinite(req.hbar))
    fail(ErrorCode::InvalidArgument, "--hbar must be positive and finite");
}

// ---------------------------------------------------------------------------
// Argument parsing helpers

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (item.empty() || end != begin + item.size() || !std::isfinite(value))
      throw UsageError(std::string(flag) + ": '" + item + "' is not a finite number");
    out.push_back(value);
  }
  if (out.size() != expected || (!text.empty() && text.back() == ','))
    throw UsageError(std::string(flag) + " expects " + std::to_string(expected) +
                     " comma-separated numbers, got '" + text + "'");
  return out;
}

QubitState resolve_state(const std::string& angles, const std::string& amplitudes,
                         bool degrees, const char* angle_flag, const char* amp_flag) {
  const bool has_angles = !angles.empty();
  const bool has_amps = !amplitudes.empty();
  if (has_angles == has_amps)
    throw UsageError(std::string("exactly one of ") + angle_flag + " and " + amp_flag +
                     " is required");
  if (has_angles) {
    auto v = parse_numbers(angles, 2, angle_flag);
    const double scale = degrees ? pi / 180.0 : 1.0;
    return state_from_angles(v[0] * scale, v[1] * scale);
  }
  auto v = parse_numbers(amplitudes, 4, amp_flag);
  return QubitState::from_amplitudes({v[0], v[1]}, {v[2], v[3]});
}

GridAxis parse_axis(const std::string& text, const char* flag) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError(std::string(flag) + " expects LO:HI:COUNT");
  GridAxis axis;
  axis.lo = parse_numbers(parts[0], 1, flag)[0];
  axis.hi = parse_numbers(parts[1], 1, flag)[0];
  const double count = parse_numbers(parts[2], 1, flag)[0];
  if (count < 1.0 || count != std::floor(count) || count > 100000.0)
    throw UsageError(std::string(flag) + ": COUNT must be a positive integer");
  axis.count = static_cast<int>(count);
  if (axis.hi < axis.lo) throw UsageError(std::string(flag) + ": HI must not be below LO");
  return axis;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value == 0.0 ? 0.0 : value);
  return std::string(buf, res.ptr);
}

std::vector<double> GridAxis::values() const {
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  return out;
}

// ---------------------------------------------------------------------------
// plan

CommandResult cmd_plan(const PlanRequest& req) {
  try {
    require_positive_budget(req);
    json doc;
    doc["command"] = "plan";
    doc["method"] = method_name(req.method);
    doc["energy_budget"] = req.energy_budget;
    doc["hbar"] = req.hbar;
    doc["initial"] = state_json(req.initial);
    doc["final"] = state_json(req.target);

    if (req.method == Method::Mostafazadeh || req.method == Method::Both) {
      const auto plan = mostafazadeh::optimal_plan_m(req.initial, req.target, req.energy_budget);
      doc["mostafazadeh"] = mostafazadeh_json(plan, req.hbar);
    }
    if (req.method == Method::Bender || req.method == Method::Both) {
      const double omega =
          req.method == Method::Both ? 2.0 * req.energy_budget : req.energy_budget;
      const ResolvedBender b = resolve_bender(req, omega);
      doc["bender"] = bender_json(b, req.hbar);
      if (req.method == Method::Both) {
        const QubitState frame_target = b.rotation * req.target;
        doc["equivalence"] =
            report_json(equivalence::verify_hamiltonian_equality(frame_target, omega));
      }
    }
    return {exit_ok, dump(doc), ""};
  } catch (const Error& e) {
    return domain_failure(e);
  }
}

// ---------------------------------------------------------------------------
// trace

CommandResult cmd_trace(const PlanRequest& req, const TraceOptions& opts) {
  if (opts.samples < 2) return {exit_usage, "", "--samples must be at least 2\n"};
  if (opts.steps < 10) return {exit_usage, "", "--steps must be at least 10\n"};
  if (req.method == Method::Both)
    return {exit_usage, "", "trace takes --method mostafazadeh or --method bender\n"};

  try {
    require_positive_budget(req);
    Matrix2 hamiltonian;
    BlochVector axis;
    double tau = 0.0;
    std::function<Matrix2(double)> propagator;

    if (req.method == Method::Mostafazadeh) {
      const auto plan = mostafazadeh::optimal_plan_m(req.initial, req.target, req.energy_budget);
      hamiltonian = pauli_compose(plan.hamiltonian);
      axis = plan.axis;
      tau = plan.tau_min;
      propagator = [plan](double t) { return mostafazadeh::optimal_unitary_m(plan, t); };
    } else {
      const ResolvedBender b = resolve_bender(req, req.energy_budget);
      hamiltonian = b.hamiltonian;
      axis = b.axis;
      tau = b.frame_plan.tau_min;
      propagator = [b](double t) { return bender_unitary(b, t); };
    }

    std::ostringstream csv;
    csv << "t,re_c0,im_c0,re_c1,im_c1,x,y,z,fidelity_to_target\n";
    for (int k = 0; k < opts.samples; ++k) {
      const double t = tau * static_cast<double>(k) / (opts.samples - 1);
      const QubitState psi = propagator(t) * req.initial;
      const BlochVector r = state_to_bloch(psi);
      const double values[] = {t * req.hbar, psi.c0.real(), psi.c0.imag(), psi.c1.real(),
                               psi.c1.imag(), r.x, r.y, r.z, fidelity(req.target, psi)};
      for (std::size_t i = 0; i < std::size(values); ++i)
        csv << (i ? "," : "") << format_double(values[i]);
      csv << "\n";
    }

    const oracle::Trajectory traj =
        oracle::integrate_schrodinger(hamiltonian, req.initial, tau, opts.steps);
    const double arrival =
        oracle::first_arrival_time(hamiltonian, req.initial, req.target, 2.0 * tau, 2 * opts.steps);

    json summary;
    summary["command"] = "trace";
    summary["method"] = method_name(req.method);
    summary["samples"] = opts.samples;
    summary["steps"] = opts.steps;
    summary["hbar"] = req.hbar;
    summary["tau_min"] = tau * req.hbar;
    summary["measured_arrival_time"] = arrival * req.hbar;
    summary["arrival_time_error"] = std::abs(arrival - tau) * req.hbar;
    summary["path_length"] = traj.path_length;
    summary["fs_length"] = traj.fs_length;
    summary["geodesic_efficiency"] = oracle::geodesic_efficiency(req.initial, traj);
    summary["great_circle_residual"] = oracle::great_circle_residual(traj, axis);
    summary["oracle_final_fidelity"] = fidelity(req.target, traj.final_state());
    summary["max_norm_drift"] = traj.max_norm_drift;
    summary["csv"] = opts.out_path ? json(*opts.out_path) : json(nullptr);

    if (opts.out_path) {
      std::ofstream file(*opts.out_path, std::ios::binary);
      if (!file) return {exit_io, "", "cannot open " + *opts.out_path + " for writing\n"};
      file << csv.str();
      file.flush();
      if (!file) return {exit_io, "", "failed writing " + *opts.out_path + "\n"};
      return {exit_ok, dump(summary), ""};
    }
    return {exit_ok, csv.str(), dump(summary)};
  } catch (const Error& e) {
    return domain_failure(e);
  }
}

// ---------------------------------------------------------------------------
// compare

CommandResult cmd_compare(const CompareRequest& req) {
  const std::vector<double> b_values = req.b_mod.values();
  const std::vector<double> omega_values = req.omega.values();
  if (b_values.empty() || omega_values.empty())
    return {exit_usage, "", "comparison grid must be nonempty\n"};
  for (double b : b_values)
    if (b < 0.0 || b > 1.0) return {exit_usage, "", "|b| values must lie in [0, 1]\n"};
  for (double w : omega_values)
    if (!(w > 0.0)) return {exit_usage, "", "omega values must be positive\n"};

  json points = json::array();
  int evaluated = 0, skipped = 0, failed = 0;
  double worst_h = 0.0, worst_t = 0.0, worst_p = 0.0;

  for (double omega : omega_values) {
    for (double b_mod : b_values) {
      json point;
      point["b"] = b_mod;
      point["omega"] = omega;
      const bool degenerate = b_mod < mostafazadeh::degeneracy_threshold ||
                              1.0 - b_mod < mostafazadeh::degeneracy_threshold;
      if (degenerate) {
        point["status"] = "SKIPPED_DEGENERATE";
        ++skipped;
        points.push_back(point);
        continue;
      }
      const QubitState target{std::polar(std::sqrt(1.0 - b_mod * b_mod), req.arg_a),
                              std::polar(b_mod, req.arg_b)};
      try {
        const auto r = equivalence::verify_hamiltonian_equality(target, omega);
        ++evaluated;
        const bool ok = r.within_contract() && r.phase_residual < equivalence::matrix_threshold;
        if (!ok) ++failed;
        worst_h = std::max(worst_h, r.hamiltonian_residual);
        worst_t = std::max(worst_t, r.time_residual);
        worst_p = std::max(worst_p, r.phase_residual);
        point["status"] = ok ? "OK" : "FAIL";
        point["hamiltonian_residual"] = r.hamiltonian_residual;
        point["time_residual"] = r.time_residual;
        point["phase_residual"] = r.phase_residual;
      } catch (const Error& e) {
        point["status"] = "SKIPPED_DEGENERATE";
        point["reason"] = std::string(code_name(e.code()));
        ++skipped;
      }
      points.push_back(point);
    }
  }

  json doc;
  doc["command"] = "compare";
  doc["arg_a"] = req.arg_a;
  doc["arg_b"] = req.arg_b;
  doc["thresholds"] = {{"hamiltonian_residual", equivalence::matrix_threshold},
                       {"time_residual", equivalence::scalar_threshold},
                       {"phase_residual", equivalence::matrix_threshold}};
  doc["points"] = points;
  doc["summary"] = {{"evaluated", evaluated},
                    {"skipped", skipped},
                    {"failed", failed},
                    {"worst_hamiltonian_residual", worst_h},
                    {"worst_time_residual", worst_t},
                    {"worst_phase_residual", worst_p}};
  return {failed == 0 ? exit_ok : exit_domain, dump(doc), ""};
}

// ---------------------------------------------------------------------------
// command line

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Time-optimal stationary Hamiltonians for a single qubit", "qbrach"};
  app.require_subcommand(1);

  struct StateFlags {
    std::string from, from_amps, to, to_amps;
    double energy = 0.0;
    std::string method = "mostafazadeh";
    bool degrees = false;
    bool rotate_frame = false;
    double hbar = 1.0;
  };
  StateFlags pf, tf;
  TraceOptions topts;
  topts.samples = 101;
  std::string out_path;

  const auto add_state_flags = [](CLI::App* sub, StateFlags& f) {
    sub->add_option("--from", f.from, "initial state as THETA,PHI (Bloch angles)");
    sub->add_option("--from-amplitudes", f.from_amps, "initial state as RE0,IM0,RE1,IM1");
    sub->add_option("--to", f.to, "final state as THETA,PHI (Bloch angles)");
    sub->add_option("--to-amplitudes", f.to_amps, "final state as RE0,IM0,RE1,IM1");
    sub->add_option("--energy", f.energy, "E for mostafazadeh/both, omega for bender")->required();
    sub->add_option("--method", f.method, "mostafazadeh | bender | both")
        ->check(CLI::IsMember({"mostafazadeh", "bender", "both"}));
    sub->add_flag("--degrees", f.degrees, "angles are given in degrees");
    sub->add_option("--hbar", f.hbar, "scale applied to reported times");
    sub->add_flag("--rotate-frame", f.rotate_frame,
                  "allow the bender method from an arbitrary initial state");
  };

  CLI::App* plan = app.add_subcommand("plan", "construct the optimal Hamiltonian");
  add_state_flags(plan, pf);

  CLI::App* trace = app.add_subcommand("trace", "sample the optimal trajectory as CSV");
  add_state_flags(trace, tf);
  trace->add_option("--samples", topts.samples, "number of CSV rows over [0, tau_min]");
  trace->add_option("--steps", topts.steps, "RK4 steps used by the verification oracle");
  trace->add_option("--out", out_path, "CSV destination (default: standard output)");

  std::string b_grid = "0.1:0.9:9", omega_grid = "0.1:10:9";
  double arg_a = pi / 4.0, arg_b = pi / 3.0;
  bool compare_degrees = false;
  CLI::App* compare = app.add_subcommand("compare", "sweep the equivalence of both constructions");
  compare->add_option("--b", b_grid, "|b| grid as LO:HI:COUNT");
  compare->add_option("--omega", omega_grid, "omega grid as LO:HI:COUNT");
  compare->add_option("--arg-a", arg_a, "phase of a on every grid point");
  compare->add_option("--arg-b", arg_b, "phase of b on every grid point");
  compare->add_flag("--degrees", compare_degrees, "phases are given in degrees");

  std::vector<std::string> argv_storage{"qbrach"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return {exit_ok, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    msg << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      msg << sub->help();
    return {exit_usage, "", msg.str()};
  }

  const auto to_request = [](const StateFlags& f) {
    PlanRequest req;
    req.initial = resolve_state(f.from, f.from_amps, f.degrees, "--from", "--from-amplitudes");
    req.target = resolve_state(f.to, f.to_amps, f.degrees, "--to", "--to-amplitudes");
    req.energy_budget = f.energy;
    req.method = f.method == "bender" ? Method::Bender
                 : f.method == "both" ? Method::Both
                                      : Method::Mostafazadeh;
    req.rotate_frame = f.rotate_frame;
    req.hbar = f.hbar;
    return req;
  };

  try {
    if (plan->parsed()) return cmd_plan(to_request(pf));
    if (trace->parsed()) {
      if (!out_path.empty()) topts.out_path = out_path;
      return cmd_trace(to_request(tf), topts);
    }
    CompareRequest req;
    req.b_mod = parse_axis(b_grid, "--b");
    req.omega = parse_axis(omega_grid, "--omega");
    const double scale = compare_degrees ? pi / 180.0 : 1.0;
    req.arg_a = arg_a * scale;
    req.arg_b = arg_b * scale;
    return cmd_compare(req);
  } catch (const UsageError& e) {
    return {exit_usage, "", std::string(e.what()) + "\n"};
  } catch (const Error& e) {
    return domain_failure(e);
  }
}

}  // namespace qbrach::cli
