// specdens command-line workbench: plan, transform, estimate, verify, bench.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specdens/accuracy.hpp"
#include "specdens/chebyshev.hpp"
#include "specdens/error.hpp"
#include "specdens/estimators.hpp"
#include "specdens/io.hpp"
#include "specdens/jackson.hpp"
#include "specdens/kernels.hpp"
#include "specdens/metrics.hpp"
#include "specdens/parallel.hpp"
#include "specdens/sampler.hpp"
#include "specdens/target.hpp"
#include "specdens/transform.hpp"
#include "specdens/truncation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace specdens;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kValidation = 2, kRegime = 3, kResource = 4, kIo = 5 };

struct Options {
  std::string command;
  std::string method = "fejer";
  AccuracyTarget target;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 200;
  std::size_t models = 10;
  std::optional<double> grid_spacing;
  std::string model_path;
  std::string gen = "dense";
  std::size_t dim = 32;
  std::string out = ".";
  unsigned workers = default_workers();
  std::optional<double> nu;
  std::string spectrum;
  double samples_scale = 1.0;
  double fault_dt = 0.0;
  std::vector<double> fault_dts{1e-3, 1e-2};
  std::size_t fault_trials = 20;
};

// Everything that changes outputs, in a fixed order. Worker count is left out
// because results do not depend on it.
std::string canonical_config(const Options& o) {
  std::ostringstream s;
  s << "command=" << o.command << "\nmethod=" << o.method << "\nsigma=" << format_double(o.target.sigma)
    << "\ndelta=" << format_double(o.target.delta) << "\nbeta=" << format_double(o.target.beta)
    << "\neta=" << format_double(o.target.eta) << "\nseed=" << (o.seed ? std::to_string(*o.seed) : "")
    << "\ntrials=" << o.trials << "\nmodels=" << o.models
    << "\ngrid_spacing=" << (o.grid_spacing ? format_double(*o.grid_spacing) : "") << "\nmodel=" << o.model_path
    << "\ngen=" << o.gen << "\ndim=" << o.dim << "\nnu=" << (o.nu ? format_double(*o.nu) : "")
    << "\nspectrum=" << o.spectrum << "\nsamples_scale=" << format_double(o.samples_scale)
    << "\nfault_dt=" << format_double(o.fault_dt) << "\nfault_trials=" << o.fault_trials << "\nfault_dts=";
  for (double d : o.fault_dts) s << format_double(d) << ',';
  s << '\n';
  return s.str();
}

std::string config_hash(const Options& o) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_config(o)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string header(const Options& o) {
  std::ostringstream s;
  s << "specdens " << version() << " config=" << config_hash(o) << "\ncommand=" << o.command
    << " method=" << o.method << " seed=" << (o.seed ? std::to_string(*o.seed) : "none");
  return s.str();
}

json meta(const Options& o) {
  return {{"version", version()},
          {"config_hash", config_hash(o)},
          {"command", o.command},
          {"seed", o.seed ? json(*o.seed) : json(nullptr)}};
}

std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw ValidationError("--seed is required for '" + o.command + "'");
  return *o.seed;
}

void write_output(const Options& o, const std::string& name, const std::string& contents) {
  const fs::path path = fs::path(o.out) / name;
  write_text_file(path, contents);
  std::cout << "wrote " << path.string() << '\n';
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SpectrumTarget spectrum_for(const Options& o) {
  if (o.spectrum == "full") return SpectrumTarget::Full;
  if (o.spectrum == "half") return SpectrumTarget::Half;
  if (o.spectrum == "unit") return SpectrumTarget::Unit;
  if (!o.spectrum.empty()) throw ValidationError("--spectrum must be full, half or unit");
  return o.method == "qfejer" ? SpectrumTarget::Unit : SpectrumTarget::Full;
}

struct LoadedModel {
  HermitianOperator op;
  ProbeState psi;
  AffineMap map;
  SpectralModel model;
};

LoadedModel load_model(const Options& o, std::uint64_t index = 0) {
  std::optional<ModelInstance> inst;
  if (!o.model_path.empty()) {
    OperatorFile f = read_operator_file(o.model_path);
    if (!f.psi) throw ValidationError("operator file '" + o.model_path + "' has no probe row");
    inst = ModelInstance{std::move(f.op), std::move(*f.psi)};
  } else {
    inst = random_model(o.dim, child_seed(require_seed(o), index), parse_generator_spec(o.gen));
  }
  NormalizedOperator n = normalize_operator(inst->op, spectrum_for(o));
  SpectralModel model = diagonalize(n.op, inst->psi);
  return {std::move(n.op), std::move(inst->psi), n.map, std::move(model)};
}

json map_json(const AffineMap& m) { return {{"scale", m.scale}, {"shift", m.shift}}; }

Method parse_method(const std::string& m) {
  if (m == "fejer") return Method::Fejer;
  if (m == "qfejer") return Method::QubitizedFejer;
  if (m == "git") return Method::GIT;
  throw ValidationError("method '" + m + "' is not available for this command");
}

// Frequencies for GIT evaluation: --nu, else a uniform grid on the active interval.
std::vector<double> git_grid(const Options& o, RescaleMode mode) {
  if (o.nu) return {*o.nu};
  const double edge = mode == RescaleMode::Half ? 0.5 : 1.0;
  return uniform_grid(-edge, edge, o.grid_spacing.value_or(0.01));
}

// ---------------------------------------------------------------- plan

json plan_fejer(const AccuracyTarget& t) {
  const auto n = fejer_plan(t);
  const auto ideal = plan_fejer_samples(t.beta, t.eta);
  const auto faulty = plan_fejer_samples(t.beta, t.eta, true, n);
  return {{"method", "fejer"}, {"N", n}, {"N_S", ideal.samples}, {"faulty_N_S", faulty.samples},
          {"delta_t", *faulty.evolution_tolerance}};
}

json plan_qfejer(const AccuracyTarget& t) {
  return {{"method", "qfejer"}, {"Delta_theta", qubitized_resolution(t.delta)}, {"M", qubitized_fejer_plan(t)},
          {"N_S", plan_fejer_samples(t.beta, t.eta).samples}};
}

json plan_git(const AccuracyTarget& t, const Options& o) {
  const TruncationBudget tb = truncation_order(t);
  const auto nu = git_grid(o, RescaleMode::Full);
  std::vector<ChebExpansion> table;
  table.reserve(nu.size());
  for (double v : nu) table.push_back(shifted_coeffs(tb.width, v, tb.order));
  const GitSamplePlan sp = plan_git_samples(tb.order, table, t.beta, t.eta);
  json j = json::parse(to_json(tb));
  j["method"] = "git";
  j["Lambda"] = tb.width;
  j["per_order_shots"] = sp.per_order_shots;
  j["N_S"] = sp.total;
  j["N_S_loose"] = sp.loose_bound;
  j["max_coefficient"] = sp.max_coefficient;
  j["nu_points"] = nu.size();
  return j;
}

json plan_jackson(const AccuracyTarget& t) {
  const JacksonPlan p = jackson_plan(t);
  return {{"method", "jackson"}, {"delta", p.delta},  {"N", p.N},
          {"k", p.k},            {"tau", p.tau},      {"d_min", p.d_min},
          {"total_degree", p.total_degree()}, {"consistent", p.consistent}};
}

void print_row(const json& row) {
  std::cout << row.at("method").get<std::string>() << ':';
  for (const auto& [key, value] : row.items())
    if (key != "method") std::cout << ' ' << key << '=' << value.dump();
  std::cout << '\n';
}

int cmd_plan(const Options& o) {
  o.target.validate();
  std::vector<std::string> methods{o.method};
  if (o.method == "all") methods = {"fejer", "qfejer", "git", "jackson"};
  json rows = json::array();
  for (const auto& m : methods) {
    json row;
    if (m == "fejer") row = plan_fejer(o.target);
    else if (m == "qfejer") row = plan_qfejer(o.target);
    else if (m == "git") row = plan_git(o.target, o);
    else if (m == "jackson") row = plan_jackson(o.target);
    else throw ValidationError("unknown method '" + m + "'");
    print_row(row);
    rows.push_back(row);
  }
  if (!o.out.empty() && o.out != "-") {
    json doc{{"meta", meta(o)}, {"target", json::parse(to_json(o.target))}, {"plans", rows}};
    write_output(o, "plan.json", dump(doc));
  }
  return kOk;
}

// ----------------------------------------------------------- transform

int cmd_transform(const Options& o) {
  o.target.validate();
  const LoadedModel lm = load_model(o);
  std::optional<KernelSpec> kernel;
  if (o.method == "fejer") kernel = FejerKernel{fejer_plan(o.target)};
  else if (o.method == "qfejer") kernel = QubitizedFejerKernel{qubitized_fejer_plan(o.target)};
  else if (o.method == "git") kernel = GaussianKernel{git_resolution(o.target)};
  else if (o.method == "jackson") kernel = JacksonKernel::from_plan(jackson_plan(o.target));
  else throw ValidationError("transform needs one of fejer, qfejer, git, jackson");

  TransformGrid grid;
  if (is_discrete(*kernel)) {
    grid = exact_transform(lm.model, *kernel);
  } else {
    const double w = kernel_width(*kernel);
    const double margin = o.method == "git" ? 8.0 * w : 0.0;
    grid = exact_transform(lm.model, *kernel,
                           uniform_grid(-1.0 - margin, 1.0 + margin, o.grid_spacing.value_or(w / 4.0)));
  }
  std::ostringstream csv;
  // Qubitized outcomes are phases theta / pi; the eigenvalue estimate is cos(pi nu).
  const std::string units = o.method == "qfejer" ? "nu is theta/pi" : "nu in normalized units";
  write_transform_csv(csv, grid, header(o) + "\n" + units + "; discrete=" + (grid.discrete ? "1" : "0"));
  write_output(o, "transform.csv", csv.str());
  json doc{{"meta", meta(o)},
           {"kernel", json::parse(to_json(*kernel))},
           {"model", json::parse(to_json(lm.model))},
           {"map", map_json(lm.map)},
           {"target", json::parse(to_json(o.target))}};
  write_output(o, "transform.json", dump(doc));
  return kOk;
}

// ------------------------------------------------------------ estimate

int cmd_estimate(const Options& o) {
  o.target.validate();
  const std::uint64_t seed = require_seed(o);
  if (!(o.samples_scale > 0.0)) throw ValidationError("--samples-scale must be positive");
  const Method method = parse_method(o.method);
  const LoadedModel lm = load_model(o);
  const std::string head = header(o);
  json record{{"meta", meta(o)}, {"target", json::parse(to_json(o.target))}, {"map", map_json(lm.map)}};

  EstimationResult r;
  if (method == Method::GIT) {
    Algorithm2Options opt;
    opt.mode = spectrum_for(o) == SpectrumTarget::Half ? RescaleMode::Half : RescaleMode::Full;
    opt.shot_scale = o.samples_scale;
    const auto nu = git_grid(o, opt.mode);
    r = run_algorithm2(lm.op, lm.psi, o.target, nu, seed, opt);
    std::ostringstream moments;
    write_moments_csv(moments, r.moments, head);
    write_output(o, "moments.csv", moments.str());
    record["truncation"] = json::parse(to_json(*r.truncation));
  } else {
    Budget b;
    b.method = method;
    b.kernel_order = method == Method::Fejer ? fejer_plan(o.target) : qubitized_fejer_plan(o.target);
    b.total_samples = static_cast<std::uint64_t>(std::max(
        1.0, std::round(static_cast<double>(plan_fejer_samples(o.target.beta, o.target.eta).samples) * o.samples_scale)));
    if (o.fault_dt > 0.0) {
      r = run_algorithm1(lm.op, lm.psi, b, FaultModel{o.fault_dt, child_seed(seed, 2)}, seed);
    } else {
      r = run_algorithm1(lm.model, b, seed);
    }
    std::ostringstream hist;
    write_histogram_csv(hist, fejer_grid(b.kernel_order), r.counts, head);
    write_output(o, "histogram.csv", hist.str());
  }
  std::ostringstream csv;
  write_transform_csv(csv, r.transform,
                      head + (method == Method::QubitizedFejer ? "\nnu = cos(pi sigma_q)" : "\nnu in normalized units"));
  write_output(o, "transform.csv", csv.str());
  record["budget"] = json::parse(to_json(r.budget));
  record["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
  write_output(o, "run.json", dump(record));
  return kOk;
}

// -------------------------------------------------------------- verify

struct TrialResult {
  double delta_v = 0.0;         // sup over [-1, 1]
  double delta_v_margin = 0.0;  // sup over the full evaluation grid
  double err_one = 0.0;
  double err_omega = 0.0;
};

int cmd_verify(const Options& o) {
  o.target.validate();
  const std::uint64_t seed = require_seed(o);
  if (o.trials == 0 || o.models == 0) throw ValidationError("--trials and --models must be positive");
  if (!(o.samples_scale > 0.0)) throw ValidationError("--samples-scale must be positive");
  const Method method = parse_method(o.method);
  const AccuracyTarget& t = o.target;
  const std::string head = header(o);

  // Sigma contract of the planned kernel.
  KernelSpec kernel = GaussianKernel{git_resolution(t)};
  if (method == Method::Fejer) kernel = FejerKernel{fejer_plan(t)};
  if (method == Method::QubitizedFejer) kernel = QubitizedFejerKernel{qubitized_fejer_plan(t)};
  const double spacing = o.grid_spacing.value_or(t.delta / 20.0);
  // Qubitized outcomes live on the [0, 1] spectrum, where the window is Delta / 2.
  const bool unit = method == Method::QubitizedFejer;
  const double window = unit ? 0.5 * t.delta : t.delta;
  const SigmaAccuracy acc = sigma_accuracy(kernel, window, spacing, unit ? 0.0 : -1.0, 1.0);
  const SigmaAccuracy refined = sigma_accuracy(kernel, window, spacing / 2, unit ? 0.0 : -1.0, 1.0);
  const double refine_change =
      refined.measured > 0.0 ? std::abs(refined.measured - acc.measured) / refined.measured : 0.0;

  // Beta contract and observables over seeded trials.
  std::vector<LoadedModel> models;
  Options model_opts = o;
  if (method == Method::QubitizedFejer) model_opts.spectrum = "unit";
  for (std::size_t m = 0; m < o.models; ++m) models.push_back(load_model(model_opts, m));

  Budget budget;
  budget.method = method;
  std::vector<double> nu;
  double width = 0.0;
  if (method == Method::GIT) {
    width = git_resolution(t);
    nu = uniform_grid(-1.0 - 8.0 * width, 1.0 + 8.0 * width, 0.25 * width);
  } else {
    budget.kernel_order = method == Method::Fejer ? fejer_plan(t) : qubitized_fejer_plan(t);
    budget.total_samples = static_cast<std::uint64_t>(
        std::max(1.0, std::round(static_cast<double>(plan_fejer_samples(t.beta, t.eta).samples) * o.samples_scale)));
  }
  std::vector<TransformGrid> exact;
  for (const auto& m : models)
    exact.push_back(method == Method::GIT ? exact_transform(m.model, GaussianKernel{width}, nu)
                                          : exact_transform(m.model, kernel));

  const ObservableFn one{[](double) { return 1.0; }, 1e-3, "one"};
  const ObservableFn ident{[](double w) { return w; }, 1e-3, "omega"};
  std::vector<TrialResult> results(o.trials);
  std::vector<std::uint64_t> shots(o.trials);
  Algorithm2Options opt;
  opt.shot_scale = o.samples_scale;
  parallel_for(o.trials, o.workers, [&](std::size_t i) {
    const std::size_t m = i % models.size();
    const std::uint64_t s = child_seed(seed, 1000 + i);
    const EstimationResult r = method == Method::GIT ? run_algorithm2(models[m].model, t, nu, s, opt)
                                                     : run_algorithm1(models[m].model, budget, s);
    shots[i] = r.budget.total_samples;
    TrialResult& tr = results[i];
    for (std::size_t k = 0; k < r.transform.nu.size(); ++k) {
      const double d = std::abs(r.transform.values[k] - exact[m].values[k]);
      tr.delta_v_margin = std::max(tr.delta_v_margin, d);
      if (std::abs(exact[m].nu[k]) <= 1.0 + 1e-12) tr.delta_v = std::max(tr.delta_v, d);
    }
    tr.err_one = std::abs(observable_from_transform(r.transform, one).value - observable_exact(models[m].model, one));
    tr.err_omega =
        std::abs(observable_from_transform(r.transform, ident).value - observable_exact(models[m].model, ident));
  });

  const double slack = binomial_slack(o.trials, t.eta);
  AccuracyReport report;
  report.measured_sigma = acc.measured;
  report.grid_spacing = spacing;
  report.trials = o.trials;
  report.sigma_pass = acc.measured <= t.sigma && refine_change < 0.05;
  std::size_t within = 0;
  double margin_max = 0.0;
  for (const auto& r : results) {
    within += r.delta_v <= t.beta ? 1 : 0;
    report.delta_v = std::max(report.delta_v, r.delta_v);
    margin_max = std::max(margin_max, r.delta_v_margin);
  }
  report.empirical_confidence = static_cast<double>(within) / static_cast<double>(o.trials);
  report.beta_pass = report.empirical_confidence >= 1.0 - t.eta - slack;

  json observables = json::array();
  bool observables_pass = true;
  for (const auto* f : {&one, &ident}) {
    ObservableCheck c;
    c.trials = o.trials;
    c.bound = observable_bound(*f, t).bound;
    for (const auto& r : results) {
      const double e = f == &one ? r.err_one : r.err_omega;
      c.max_error = std::max(c.max_error, e);
      c.violations += e > c.bound ? 1 : 0;
    }
    c.violation_rate = static_cast<double>(c.violations) / static_cast<double>(c.trials);
    c.pass = c.violation_rate <= t.eta + slack;
    observables_pass = observables_pass && c.pass;
    json j = json::parse(to_json(c));
    j["observable"] = f->name;
    observables.push_back(j);
    std::cout << "observable " << f->name << ": " << (c.pass ? "PASS" : "FAIL") << " (violation rate "
              << c.violation_rate << ", bound " << c.bound << ")\n";
  }

  // Faulty-evolution bound on small statevector simulations.
  std::ostringstream fault_csv;
  fault_csv << "# " << head.substr(0, head.find('\n')) << "\nN,delta_t,trials,max_deviation,bound,violations\n";
  json fault_rows = json::array();
  bool fault_pass = true;
  std::uint64_t fi = 0;
  for (unsigned a : {4u, 5u, 6u})
    for (double dt : o.fault_dts) {
      double worst = 0.0;
      std::size_t violations = 0;
      const double bound = a * dt;
      for (std::size_t r = 0; r < o.fault_trials; ++r, ++fi) {
        const auto inst = random_model(2 + fi % 7, child_seed(seed, 500000 + fi));
        const auto ideal = statevector_qpe(inst.op, inst.psi, a);
        const auto faulty = statevector_qpe(inst.op, inst.psi, a, FaultModel{dt, child_seed(seed, 600000 + fi)});
        double dev = 0.0;
        for (std::size_t q = 0; q < ideal.size(); ++q) dev = std::max(dev, std::abs(faulty.probs[q] - ideal.probs[q]));
        worst = std::max(worst, dev);
        violations += dev > bound ? 1 : 0;
      }
      fault_pass = fault_pass && violations == 0;
      const std::uint64_t n = std::uint64_t{1} << a;
      fault_csv << n << ',' << format_double(dt) << ',' << o.fault_trials << ',' << format_double(worst) << ','
                << format_double(bound) << ',' << violations << '\n';
      fault_rows.push_back({{"N", n}, {"delta_t", dt}, {"trials", o.fault_trials}, {"max_deviation", worst},
                            {"bound", bound}, {"violations", violations}});
    }

  std::ostringstream trials_csv;
  trials_csv << "# " << head.substr(0, head.find('\n')) << "\ntrial,model,delta_v,delta_v_margin,err_one,err_omega\n";
  for (std::size_t i = 0; i < results.size(); ++i)
    trials_csv << i << ',' << i % models.size() << ',' << format_double(results[i].delta_v) << ','
               << format_double(results[i].delta_v_margin) << ',' << format_double(results[i].err_one) << ','
               << format_double(results[i].err_omega) << '\n';
  std::ostringstream capture;
  write_capture_csv(capture, acc, head);

  const bool pass = report.pass() && observables_pass && fault_pass;
  json doc{{"meta", meta(o)},
           {"method", o.method},
           {"target", json::parse(to_json(t))},
           {"N_S", shots.empty() ? 0 : shots.front()},
           {"samples_scale", o.samples_scale},
           {"models", o.models},
           {"report", json::parse(to_json(report))},
           {"sigma_refinement_change", refine_change},
           {"confidence_threshold", 1.0 - t.eta - slack},
           {"delta_v_with_margin", margin_max},
           {"observables", observables},
           {"fault", fault_rows},
           {"pass", pass}};
  write_output(o, "capture.csv", capture.str());
  write_output(o, "trials.csv", trials_csv.str());
  write_output(o, "fault.csv", fault_csv.str());
  write_output(o, "report.json", dump(doc));

  std::cout << "sigma check: " << (report.sigma_pass ? "PASS" : "FAIL") << " (Sigma' " << acc.measured
            << ", spacing " << spacing << ")\n"
            << "beta check: " << (report.beta_pass ? "PASS" : "FAIL") << " (confidence "
            << report.empirical_confidence << " vs " << 1.0 - t.eta - slack << ", max delta_V " << report.delta_v
            << ")\n"
            << "fault bound: " << (fault_pass ? "PASS" : "FAIL") << '\n'
            << "verify: " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kOk : kOther;
}

// --------------------------------------------------------------- bench

int cmd_bench(const Options& o) {
  const double eta = o.target.eta;
  std::vector<std::pair<double, double>> points;
  for (double d : {1e-1, 1e-2, 1e-3})
    for (double e : {1e-1, 1e-2, 1e-3}) points.emplace_back(d, e);
  const auto rows = complexity_table(points, eta);
  std::ostringstream table;
  table << "# " << header(o).substr(0, header(o).find('\n')) << "\nmethod,variant,delta,epsilon,order,samples,analytic_only\n";
  for (const auto& r : rows)
    table << r.method << ',' << r.variant << ',' << format_double(r.delta) << ',' << format_double(r.epsilon) << ','
          << format_double(r.order) << ',' << format_double(r.samples) << ',' << (r.analytic_only ? 1 : 0) << '\n';
  write_output(o, "complexity.csv", table.str());

  const double step = std::pow(10.0, 0.125);
  struct Sweep {
    std::string name;
    std::vector<std::pair<double, double>> points;
  };
  std::vector<Sweep> sweeps{{"fejer_delta", {}}, {"git_delta", {}}, {"fejer_sigma", {}}, {"git_beta", {}}};
  const AccuracyTarget& t = o.target;
  for (double d = 1e-4; d <= 0.1 * (1 + 1e-9); d *= step) {
    const AccuracyTarget x{t.sigma, d, t.beta, eta};
    sweeps[0].points.emplace_back(1.0 / d, static_cast<double>(fejer_plan(x, std::uint64_t{1} << 40)));
    sweeps[1].points.emplace_back(1.0 / d, static_cast<double>(truncation_order(x).order));
  }
  for (double s = 1e-5; s <= 1e-2 * (1 + 1e-9); s *= step)
    sweeps[2].points.emplace_back(1.0 / s,
                                  static_cast<double>(fejer_plan({s, t.delta, t.beta, eta}, std::uint64_t{1} << 40)));
  for (double b = 1e-6; b <= 0.1 * (1 + 1e-9); b *= step)
    sweeps[3].points.emplace_back(1.0 / b, static_cast<double>(truncation_order({t.sigma, 0.01, b, eta}).order));

  json fits = json::array();
  for (const auto& s : sweeps) {
    const ScalingFit fit = scaling_fit(s.points);
    std::ostringstream csv;
    write_scaling_csv(csv, s.points, fit, header(o) + "\nsweep=" + s.name);
    write_output(o, s.name + ".csv", csv.str());
    fits.push_back({{"sweep", s.name}, {"exponent", fit.exponent}, {"intercept", fit.intercept}, {"r2", fit.r2}});
    std::cout << s.name << ": exponent " << fit.exponent << " r2 " << fit.r2 << '\n';
  }
  write_output(o, "fits.json", dump({{"meta", meta(o)}, {"fits", fits}}));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral density estimation workbench"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  Options o;
  app.add_option("--method", o.method, "fejer, qfejer, git, jackson or all (plan only)")
      ->check(CLI::IsMember({"fejer", "qfejer", "git", "jackson", "all"}));
  app.add_option("--sigma", o.target.sigma, "tail mass Sigma");
  app.add_option("--delta", o.target.delta, "resolution Delta");
  app.add_option("--beta", o.target.beta, "transform error beta");
  app.add_option("--eta", o.target.eta, "failure probability eta");
  app.add_option("--seed", o.seed, "random seed (required for sampling and generated models)");
  app.add_option("--trials", o.trials, "verification trials");
  app.add_option("--models", o.models, "random models used by verify");
  app.add_option("--grid-spacing", o.grid_spacing, "evaluation grid spacing");
  auto* model = app.add_option("--model", o.model_path, "operator file");
  auto* gen = app.add_option("--gen", o.gen, "generator: dense, spiked or gapped[:gap=..,overlap=..]");
  model->excludes(gen);
  app.add_option("--dim", o.dim, "dimension of generated models");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--nu", o.nu, "single GIT frequency");
  app.add_option("--spectrum", o.spectrum, "normalization target: full, half or unit");
  app.add_option("--samples-scale", o.samples_scale, "multiplies planned sample counts");
  app.add_option("--fault-dt", o.fault_dt, "faulty evolution strength for Fejér estimates");
  app.add_option("--fault-dts", o.fault_dts, "delta_t sweep for verify")->delimiter(',');
  app.add_option("--fault-trials", o.fault_trials, "realizations per (N, delta_t) in verify");

  app.add_subcommand("plan", "print planner outputs");
  app.add_subcommand("transform", "exact transform of a model");
  app.add_subcommand("estimate", "sampled estimate: Fejér histogram or GIT moments");
  app.add_subcommand("verify", "check the accuracy contract");
  app.add_subcommand("bench", "complexity table and scaling fits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    if (o.command == "plan") return cmd_plan(o);
    if (o.command == "transform") return cmd_transform(o);
    if (o.command == "estimate") return cmd_estimate(o);
    if (o.command == "verify") return cmd_verify(o);
    return cmd_bench(o);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const RegimeError& e) {
    std::cerr << "out of regime: " << e.what() << '\n';
    return kRegime;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kResource;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
}
