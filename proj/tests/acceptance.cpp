// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit status 1 when
// any criterion fails. Every tolerance is pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "specdens/accuracy.hpp"
#include "specdens/chebyshev.hpp"
#include "specdens/estimators.hpp"
#include "specdens/jackson.hpp"
#include "specdens/kernels.hpp"
#include "specdens/metrics.hpp"
#include "specdens/parallel.hpp"
#include "specdens/sampler.hpp"
#include "specdens/special.hpp"
#include "specdens/truncation.hpp"

using namespace specdens;

namespace {

constexpr std::uint64_t kSeed = 20211115;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED{" << what << "}";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double runtime_limit_s;
  std::function<void(Outcome&)> body;
};

SpectralModel model_of(const ModelInstance& inst) { return diagonalize(inst.op, inst.psi); }

// Criterion 7 state reused by criterion 8.
struct EndToEnd {
  AccuracyTarget fejer_target{0.25, 0.1, 0.1, 0.05};
  AccuracyTarget git_target{0.1, 0.2, 0.1, 0.05};
  std::vector<SpectralModel> fejer_models;
  std::vector<SpectralModel> git_models;
  std::vector<EstimationResult> fejer_runs;  // 20 per model
  std::vector<std::size_t> fejer_model_of;
};

EndToEnd& e2e() {
  static EndToEnd state;
  return state;
}

constexpr std::size_t kModels = 10;
constexpr std::size_t kTrials = 200;

void criterion1(Outcome& o) {
  const AccuracyTarget f{0.25, 0.1, 0.1, 0.05};
  const auto n = fejer_plan(f);
  const auto ns = plan_fejer_samples(0.1, 0.05).samples;
  const double dtheta = qubitized_resolution(0.1);
  const auto tb = truncation_order({0.1, 0.2, 0.05, 0.05});
  const auto jp = jackson_plan({0.1, 0.1, 0.1, 0.05});
  const double k1 = kappa(1.0);
  const double w1 = lambert_w(1.0);
  o.detail << "N=" << n << " N_S=" << ns << " Delta_theta=" << dtheta << " L=" << tb.closed_form_order
           << " (certified " << tb.order << ") d_min=" << jp.d_min << " kappa(1)=" << k1 << " W(1)=" << w1;
  o.require(n == 64, "fejer_plan == 64");
  o.require(ns == 185, "N_S == 185");
  o.require(std::abs(dtheta - (std::sqrt(1.1) - 1.0)) <= 1e-9, "Delta_theta formula to 1e-9");
  o.require(std::abs(dtheta - 0.048809) <= 5e-7, "Delta_theta == 0.048809 to printed digits");
  o.require(tb.closed_form_order == 55, "L_int == 55");
  o.require(kAlpha1 == 2.93 && kAlpha2 == 4.14, "alpha constants");
  o.require(std::abs(jp.d_min - 2880.0 * std::log(171.0)) <= 1e-9, "d_min formula to 1e-9");
  o.require(std::abs(jp.d_min - 14808.1) <= 0.2, "d_min ~ 14808.1 (0.2)");
  o.require(std::abs(k1 - 0.23358) <= 1e-5, "kappa(1)");
  o.require(std::abs(w1 - 0.567143) <= 1e-6, "W(1)");
}

void criterion2(Outcome& o) {
  int violations = 0;
  double worst_refine = 0.0;
  for (double d : {0.05, 0.1, 0.2})
    for (double s : {0.05, 0.1, 0.25}) {
      const AccuracyTarget t{s, d, 0.1, 0.05};
      const std::vector<KernelSpec> kernels{FejerKernel{fejer_plan(t)}, GaussianKernel{git_resolution(t)}};
      for (const auto& k : kernels) {
        const double measured = sigma_accuracy(k, d, d / 20).measured;
        const double refined = sigma_accuracy(k, d, d / 40).measured;
        if (measured > s) ++violations;
        if (refined > 0.0) worst_refine = std::max(worst_refine, std::abs(refined - measured) / refined);
      }
    }
  o.detail << "violations=" << violations << " max grid-refinement change=" << worst_refine;
  o.require(violations == 0, "zero Sigma violations");
  o.require(worst_refine < 0.05, "halving spacing changes Sigma' by < 5%");
}

double max_kernel_error(double width, std::size_t order, double sigma) {
  const ChebExpansion ex = shifted_coeffs(width, sigma, order);
  double worst = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double w = -1.0 + i / 2000.0;
    worst = std::max(worst, std::abs(ex(w) - gaussian_eval(sigma, w, width)));
  }
  return worst;
}

void criterion3(Outcome& o) {
  std::mt19937_64 rng(child_seed(kSeed, 3));
  std::uniform_real_distribution<double> log_width(std::log(0.02), std::log(1.0));
  std::uniform_real_distribution<double> centre(-1.0, 1.0);
  int pairs = 0;
  int violations = 0;
  double worst_ratio = 0.0;
  while (pairs < 50) {
    const double w = std::exp(log_width(rng));
    const std::size_t lo = certified_order(w, 0.5);
    std::uniform_int_distribution<std::size_t> pick(lo, 3 * lo + 20);
    const std::size_t l = pick(rng);
    const double bound = best_truncation_bound(l, w);
    if (!std::isfinite(bound) || bound < 1e-10) continue;
    const double measured = max_kernel_error(w, l, centre(rng));
    worst_ratio = std::max(worst_ratio, measured / bound);
    if (measured > bound) ++violations;
    ++pairs;
  }
  int planner_violations = 0;
  for (double d : {0.05, 0.1, 0.2, 0.4})
    for (double beta : {1e-8, 1e-4, 0.01, 0.1}) {
      const AccuracyTarget t{0.1, d, beta, 0.05};
      const auto tb = truncation_order(t);
      for (double s : {-0.9, -0.3, 0.0, 0.55})
        if (max_kernel_error(tb.width, tb.order, s) > beta / 2) ++planner_violations;
    }
  o.detail << "pairs=" << pairs << " violations=" << violations << " max measured/bound=" << worst_ratio
           << " planner violations=" << planner_violations << "/64";
  o.require(violations == 0, "measured <= R_L bound on 50 pairs");
  o.require(planner_violations == 0, "planner L gives error <= beta/2");
}

void criterion4(Outcome& o) {
  double worst = 0.0;
  for (int i = 0; i <= 19; ++i) {
    const double w = 0.05 + 0.05 * i;
    const auto a = gauss_cheb_coeffs(w, 60);
    for (std::size_t n = 0; n <= 60; ++n) worst = std::max(worst, std::abs(a[n] - coeff_quadrature_oracle(w, n, 4096)));
  }
  std::mt19937_64 rng(child_seed(kSeed, 4));
  std::uniform_real_distribution<double> log_width(std::log(0.01), std::log(1.0));
  std::uniform_real_distribution<double> centre(-0.5, 0.5);
  std::uniform_real_distribution<double> log_eps(std::log(1e-12), std::log(0.1));
  int violations = 0;
  double max_ratio = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double w = std::exp(log_width(rng));
    const std::size_t l = certified_order(w, std::exp(log_eps(rng)));
    const auto ex = shifted_coeffs(w, centre(rng), l, RescaleMode::Half);
    for (double c : ex.c) max_ratio = std::max(max_ratio, std::abs(c) / ex.coeff_bound);
    if (!ex.bound_ok) ++violations;
  }
  o.detail << "max |Bessel - quadrature|=" << worst << " half-mode violations=" << violations
           << " max |c_j|/bound=" << max_ratio;
  o.require(worst <= 1e-10, "a_n agreement to 1e-10");
  o.require(violations == 0, "|c_j| <= 2(R_L + 1.1)");
}

void criterion5(Outcome& o) {
  double worst = 0.0;
  for (std::size_t dim = 1; dim <= 16; ++dim) {
    const auto inst = random_model(dim, child_seed(kSeed, 500 + dim));
    const auto walk = Qubiterate::build(inst.op).walk_moments(inst.psi, 64);
    const auto rec = cheb_moments(inst.op, inst.psi, 64);
    for (std::size_t k = 0; k <= 64; ++k) worst = std::max(worst, std::abs(walk[k] - rec[k]));
  }
  o.detail << "max |walk - recurrence|=" << worst;
  o.require(worst <= 1e-10, "moments agree to 1e-10");
}

void criterion6(Outcome& o) {
  int realizations = 0;
  int violations = 0;
  double worst_ratio = 0.0;
  std::uint64_t index = 0;
  for (unsigned a : {4u, 5u, 6u})
    for (double dt : {1e-3, 1e-2})
      for (int r = 0; r < 17; ++r, ++index) {
        const std::size_t dim = 2 + index % 7;
        const auto inst = random_model(dim, child_seed(kSeed, 600 + index));
        const auto ideal = statevector_qpe(inst.op, inst.psi, a);
        const auto faulty = statevector_qpe(inst.op, inst.psi, a, FaultModel{dt, child_seed(kSeed, 700 + index)});
        const double bound = a * dt;
        double dev = 0.0;
        for (std::size_t q = 0; q < ideal.size(); ++q) dev = std::max(dev, std::abs(faulty.probs[q] - ideal.probs[q]));
        worst_ratio = std::max(worst_ratio, dev / bound);
        if (dev > bound) ++violations;
        ++realizations;
      }
  o.detail << "realizations=" << realizations << " violations=" << violations << " max deviation/bound=" << worst_ratio;
  o.require(realizations >= 100, ">= 100 realizations");
  o.require(violations == 0, "deviation <= log2(N) delta_t");
}

void criterion7(Outcome& o) {
  auto& s = e2e();
  const unsigned workers = default_workers();
  s.fejer_models.clear();
  s.git_models.clear();
  for (std::size_t m = 0; m < kModels; ++m) {
    const auto inst = random_model(32, child_seed(kSeed, 7000 + m));
    s.fejer_models.push_back(model_of(inst));
    const auto half = normalize_operator(inst.op, SpectrumTarget::Half);
    s.git_models.push_back(diagonalize(half.op, inst.psi));
  }

  Budget budget;
  budget.kernel_order = fejer_plan(s.fejer_target);
  budget.total_samples = plan_fejer_samples(s.fejer_target.beta, s.fejer_target.eta).samples;
  std::vector<TransformGrid> exact;
  for (const auto& m : s.fejer_models) exact.push_back(exact_transform(m, FejerKernel{budget.kernel_order}));
  s.fejer_runs.assign(kTrials, {});
  s.fejer_model_of.assign(kTrials, 0);
  std::vector<double> fejer_dv(kTrials);
  parallel_for(kTrials, workers, [&](std::size_t i) {
    const std::size_t m = i % kModels;
    s.fejer_model_of[i] = m;
    s.fejer_runs[i] = run_algorithm1(s.fejer_models[m], budget, child_seed(kSeed, 71000 + i));
    fejer_dv[i] = total_variation(s.fejer_runs[i].transform, exact[m]);
  });

  const auto nu = uniform_grid(-0.5, 0.5, 0.25);
  const double width = git_resolution(s.git_target);
  std::vector<TransformGrid> git_exact;
  for (const auto& m : s.git_models) git_exact.push_back(exact_transform(m, GaussianKernel{width}, nu));
  std::vector<double> git_dv(kTrials);
  std::vector<std::uint64_t> git_shots(kTrials);
  std::vector<std::size_t> git_order(kTrials);
  Algorithm2Options opt;
  opt.mode = RescaleMode::Half;
  parallel_for(kTrials, workers, [&](std::size_t i) {
    const std::size_t m = i % kModels;
    const auto r = run_algorithm2(s.git_models[m], s.git_target, nu, child_seed(kSeed, 72000 + i), opt);
    git_dv[i] = total_variation(r.transform, git_exact[m]);
    git_shots[i] = r.budget.total_samples;
    git_order[i] = r.budget.kernel_order;
  });

  auto confidence = [](const std::vector<double>& dv, double beta) {
    std::size_t ok = 0;
    for (double v : dv) ok += v <= beta ? 1 : 0;
    return static_cast<double>(ok) / static_cast<double>(dv.size());
  };
  const double threshold = 1.0 - s.fejer_target.eta - binomial_slack(kTrials, s.fejer_target.eta);
  const double cf = confidence(fejer_dv, s.fejer_target.beta);
  const double cg = confidence(git_dv, s.git_target.beta);
  const double max_f = *std::max_element(fejer_dv.begin(), fejer_dv.end());
  const double max_g = *std::max_element(git_dv.begin(), git_dv.end());
  o.detail << "Fejer N=" << budget.kernel_order << " N_S=" << budget.total_samples << " P(dV<=beta)=" << cf
           << " max dV=" << max_f << "; GIT L=" << git_order[0] << " N_S=" << git_shots[0] << " P(dV<=beta)=" << cg
           << " max dV=" << max_g << "; threshold=" << threshold;
  o.require(cf >= threshold, "Fejer confidence");
  o.require(cg >= threshold, "GIT confidence");
}

void criterion8(Outcome& o) {
  auto& s = e2e();
  if (s.fejer_runs.empty()) {
    o.require(false, "criterion 7 runs available");
    return;
  }
  const std::vector<std::pair<const char*, ObservableFn>> observables{
      {"one", ObservableFn{[](double) { return 1.0; }, 1e-3, "one"}},
      {"omega", ObservableFn{[](double w) { return w; }, 1e-3, "omega"}}};
  const double threshold = 1.0 - 0.05 - binomial_slack(kTrials, 0.05);
  for (const auto& [name, f] : observables) {
    const double bound = observable_bound(f, s.fejer_target).bound;
    std::size_t ok = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < s.fejer_runs.size(); ++i) {
      const double q = observable_exact(s.fejer_models[s.fejer_model_of[i]], f);
      const double err = std::abs(observable_from_transform(s.fejer_runs[i].transform, f).value - q);
      worst = std::max(worst, err);
      ok += err <= bound ? 1 : 0;
    }
    const double rate = static_cast<double>(ok) / static_cast<double>(s.fejer_runs.size());
    o.detail << "Fejer f=" << name << ": P=" << rate << " max err=" << worst << " bound=" << bound << "; ";
    o.require(rate >= threshold, std::string("Fejer observable ") + name);

    std::size_t git_trials = 0;
    std::size_t git_violations = 0;
    double git_worst = 0.0;
    double git_bound = 0.0;
    for (std::size_t m = 0; m < kModels; ++m) {
      const auto c = observable_bound_empirical_check(s.git_models[m], Method::GIT, f, s.git_target,
                                                      kTrials / kModels, child_seed(kSeed, 8000 + m),
                                                      default_workers());
      git_trials += c.trials;
      git_violations += c.violations;
      git_worst = std::max(git_worst, c.max_error);
      git_bound = c.bound;
    }
    const double git_rate = 1.0 - static_cast<double>(git_violations) / static_cast<double>(git_trials);
    o.detail << "GIT f=" << name << ": P=" << git_rate << " max err=" << git_worst << " bound=" << git_bound << "; ";
    o.require(git_rate >= threshold, std::string("GIT observable ") + name);
  }
  o.detail << "threshold=" << threshold;
}

void criterion9(Outcome& o) {
  std::vector<std::pair<double, double>> fejer_delta;
  std::vector<std::pair<double, double>> git_delta;
  std::vector<std::pair<double, double>> fejer_sigma;
  std::vector<std::pair<double, double>> git_beta;
  const double step = std::pow(10.0, 0.125);
  for (double d = 1e-4; d <= 0.1 * (1 + 1e-9); d *= step) {
    const AccuracyTarget t{0.1, d, 0.1, 0.05};
    fejer_delta.emplace_back(1.0 / d, static_cast<double>(fejer_plan(t, std::uint64_t{1} << 40)));
    git_delta.emplace_back(1.0 / d, static_cast<double>(truncation_order(t).order));
  }
  for (double s = 1e-5; s <= 1e-2 * (1 + 1e-9); s *= step) {
    const AccuracyTarget t{s, 0.1, 0.1, 0.05};
    fejer_sigma.emplace_back(1.0 / s, static_cast<double>(fejer_plan(t, std::uint64_t{1} << 40)));
  }
  for (double b = 1e-6; b <= 0.1 * (1 + 1e-9); b *= step) {
    const AccuracyTarget t{0.1, 0.01, b, 0.05};
    git_beta.emplace_back(1.0 / b, static_cast<double>(truncation_order(t).order));
  }
  const auto f_d = scaling_fit(fejer_delta);
  const auto g_d = scaling_fit(git_delta);
  const auto f_s = scaling_fit(fejer_sigma);
  const auto g_b = scaling_fit(git_beta);
  o.detail << "Fejer M~(1/Delta)^" << f_d.exponent << " (r2 " << f_d.r2 << "), GIT L~(1/Delta)^" << g_d.exponent
           << " (r2 " << g_d.r2 << "), Fejer M~(1/Sigma)^" << f_s.exponent << " (r2 " << f_s.r2
           << "), GIT L~(1/beta)^" << g_b.exponent << " (r2 " << g_b.r2 << ")";
  o.require(std::abs(f_d.exponent - 1.0) <= 0.1, "Fejer Delta exponent 1 +- 0.1");
  o.require(std::abs(g_d.exponent - 1.0) <= 0.1, "GIT Delta exponent 1 +- 0.1");
  o.require(std::abs(f_s.exponent - 1.0) <= 0.05, "Fejer Sigma exponent 1 +- 0.05");
  o.require(g_b.exponent < 0.2, "GIT beta exponent < 0.2");
}

void criterion10(Outcome& o) {
  double worst = 0.0;
  for (double delta : {0.5, 0.1, 0.05, 0.025}) {
    const auto n = static_cast<std::uint64_t>(std::ceil(24.0 / delta - 1e-9));
    const JacksonApproximant j(n, delta);
    for (int i = 0; i < 10000; ++i) {
      const double x = -1.0 + 2.0 * i / 9999.0;
      worst = std::max(worst, std::abs(j(x) - jackson_g(x, delta)));
    }
  }
  const AccuracyTarget t{0.1, 0.05, 0.1, 0.05};
  const auto plan = jackson_plan(t);
  const auto kernel = JacksonKernel::from_plan(plan);
  const auto b = kernel.bounds();
  const auto git = truncation_order(t);
  o.detail << "max |J_N - g|=" << worst << " N=" << plan.N << " k=" << plan.k << " normalization="
           << kernel.normalization() << " in [" << b.lower << ", " << b.upper << "] GIT L=" << git.order
           << " Jackson d_min=" << plan.d_min;
  o.require(worst <= 0.25, "J_N error <= 1/4");
  o.require(b.upper_available && kernel.normalization() >= b.lower && kernel.normalization() <= b.upper,
            "normalization between bounds");
  o.require(static_cast<double>(git.order) < plan.d_min, "GIT L < Jackson d_min");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "planner golden values", 1.0, criterion1},
      {2, "Sigma-accuracy contract", 10.0, criterion2},
      {3, "GIT truncation validity", 60.0, criterion3},
      {4, "coefficient identities", 60.0, criterion4},
      {5, "qubiterate identity", 10.0, criterion5},
      {6, "faulty phase-kickback bound", 300.0, criterion6},
      {7, "end-to-end (Sigma, Delta, beta, eta) contract", 900.0, criterion7},
      {8, "observable error bound", 900.0, criterion8},
      {9, "complexity trends", 30.0, criterion9},
      {10, "Jackson comparison", 60.0, criterion10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs <= c.runtime_limit_s, "runtime");
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d: %s | %s | %.2f s (limit %.0f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.str().c_str(), secs, c.runtime_limit_s);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
