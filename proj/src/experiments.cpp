#include "sqz/experiments.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>

#include "sqz/errors.hpp"
#include "sqz/gaussian.hpp"
#include "sqz/oracle.hpp"
#include "sqz/parallel.hpp"
#include "sqz/special.hpp"

namespace sqz {

namespace {

const std::vector<double> kFigureEtas = {0.999, 0.99, 0.90, 0.50};

// Fixed coordinates of the two reliability panels.
constexpr double kPanelDeltaPlus = 1.0;
constexpr double kPanelDeltaMinus = 0.2;

// Upper end of the delta+ sweep that documents delta+-independence.
constexpr double kSweepDeltaPlusMax = 2.4;

double parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError("not a number: '" + s + "'");
  }
  return v;
}

double omega_of(double delta_minus) { return overlap(std::abs(delta_minus)); }

std::vector<double> etas_or(const ExperimentConfig& cfg, const std::vector<double>& fallback) {
  return cfg.etas.empty() ? fallback : cfg.etas;
}

}  // namespace

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  Range r;
  if (colon == std::string::npos) {
    r.lo = r.hi = parse_double(text);
  } else {
    r.lo = parse_double(text.substr(0, colon));
    r.hi = parse_double(text.substr(colon + 1));
  }
  if (r.lo > r.hi) throw ConfigError("range '" + text + "' has lo > hi");
  return r;
}

std::vector<double> grid(const Range& range, double step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  const double span = range.hi - range.lo;
  const auto n = static_cast<long long>(std::floor(span / step + 1e-9));
  if (n > 10000000LL) throw ConfigError("grid has too many points");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (long long i = 0; i <= n; ++i) out.push_back(range.lo + static_cast<double>(i) * step);
  if (std::abs(out.back() - range.hi) <= 1e-9 * step) out.back() = range.hi;
  return out;
}

void validate_config(const ExperimentConfig& cfg) {
  if (!(cfg.tail_tol > 0.0 && cfg.tail_tol < 1.0)) {
    throw ConfigError("tail-tol must lie in (0, 1)");
  }
  if (cfg.n_max && *cfg.n_max < 2) throw ConfigError("n-max must be at least 2");
  for (double e : cfg.etas) {
    if (!(e > 0.0 && e <= 1.0)) {
      throw ConfigError("eta must lie in (0, 1], got " + num(e));
    }
  }
  if (!(cfg.grid_step > 0.0)) throw ConfigError("grid-step must be positive");
  if (!(cfg.sweep_step > 0.0)) throw ConfigError("sweep-step must be positive");
  if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
  if (cfg.delta_minus && cfg.delta_minus->lo < 0.0) {
    throw ConfigError("delta-minus must be nonnegative");
  }
  if (cfg.r && cfg.r->lo < 0.0) throw ConfigError("r must be nonnegative");
  if (cfg.s && *cfg.s < 0.0) throw ConfigError("s must be nonnegative");
}

Truncation truncation_for(const ExperimentConfig& cfg, double r, double s) {
  if (cfg.n_max) return Truncation(*cfg.n_max, cfg.tail_tol);
  return recommended_truncation(r, s, cfg.tail_tol);
}

Truncation series_truncation_for(const ExperimentConfig& cfg, double r) {
  if (cfg.n_max) return Truncation(*cfg.n_max, cfg.tail_tol);
  const double lam = std::tanh(std::abs(r));
  if (lam == 0.0) return Truncation(2, cfg.tail_tol);
  // remainder lam^(2(n+1)) below 1e-15
  const double n = std::ceil(std::log(1e-15) / (2.0 * std::log(lam)));
  return Truncation(static_cast<int>(std::clamp(n, 2.0, 1e7)), cfg.tail_tol);
}

Table figure2(const ExperimentConfig& cfg) {
  for (double e : cfg.etas) {
    if (e != 1.0) throw ConfigError("figure2 is defined for ideal detectors (eta = 1) only");
  }
  const auto dms = grid(cfg.delta_minus.value_or(Range{0.0, 3.0}), cfg.grid_step);

  auto p_diff = [&](double dm, double dp) {
    const double r = 0.5 * (dp + dm);
    const double s = 0.5 * (dp - dm);
    const Truncation t = truncation_for(cfg, r, s);
    return p_zero(SqueezeParam::real(r), SqueezeParam::real(s), t).p_diff;
  };

  const auto rows = parallel_map(dms.size(), cfg.workers, [&](std::size_t i) {
    const double dm = dms[i];
    const double dp = cfg.delta_plus ? cfg.delta_plus->lo : dm;
    const double p_opt = p_diff(dm, dp);
    const Range sweep = cfg.delta_plus && cfg.delta_plus->hi > cfg.delta_plus->lo
                            ? *cfg.delta_plus
                            : Range{dm, std::max(dm, kSweepDeltaPlusMax)};
    double dev = 0.0;
    const auto sweep_points = grid(sweep, cfg.sweep_step);
    for (double sp : sweep_points) dev = std::max(dev, std::abs(p_diff(dm, sp) - p_opt));
    const double w = omega_of(dm);
    return std::vector<Cell>{dm,
                             dp,
                             p_opt,
                             p_universal(w),
                             p_two_hypotheses(w),
                             static_cast<long long>(sweep_points.size()),
                             dev};
  });

  Table t;
  t.columns = {"delta_minus",      "delta_plus",   "p_opt",        "p_universal",
               "p_two_hypotheses", "sweep_points", "sweep_max_dev"};
  for (const auto& row : rows) t.add_row(row);
  return t;
}

Table figure3(const ExperimentConfig& cfg) {
  const auto etas = etas_or(cfg, kFigureEtas);
  const auto rs = grid(cfg.r.value_or(Range{0.0, 3.0}), cfg.grid_step);
  const std::size_t n = etas.size() * rs.size();
  const auto rows = parallel_map(n, cfg.workers, [&](std::size_t i) {
    const double eta = etas[i / rs.size()];
    const double r = rs[i % rs.size()];
    const double p = p_eta_same(r, Efficiency(eta), series_truncation_for(cfg, r));
    return std::vector<Cell>{r, eta, p, 1.0 - p};
  });
  Table t;
  t.columns = {"r", "eta", "p_zero", "p_diff"};
  for (const auto& row : rows) t.add_row(row);
  return t;
}

Table figure4(const ExperimentConfig& cfg) {
  const auto etas = etas_or(cfg, kFigureEtas);
  const Range dm_range = cfg.delta_minus.value_or(Range{0.0, kPanelDeltaPlus});
  const Range dp_range = cfg.delta_plus.value_or(Range{kPanelDeltaMinus, 2.0});
  if (dm_range.hi > kPanelDeltaPlus) {
    throw ConfigError("figure4: delta-minus must not exceed the fixed delta+ = 1.0");
  }
  if (dp_range.lo < kPanelDeltaMinus) {
    throw ConfigError("figure4: delta-plus must be at least the fixed delta- = 0.2");
  }

  struct Point {
    const char* panel;
    double dm, dp, eta;
  };
  std::vector<Point> points;
  for (double eta : etas) {
    for (double dm : grid(dm_range, cfg.grid_step)) {
      points.push_back({"vs_delta_minus", dm, kPanelDeltaPlus, eta});
    }
  }
  for (double eta : etas) {
    for (double dp : grid(dp_range, cfg.grid_step)) {
      points.push_back({"vs_delta_plus", kPanelDeltaMinus, dp, eta});
    }
  }

  const auto rows = parallel_map(points.size(), cfg.workers, [&](std::size_t i) {
    const Point& p = points[i];
    const double r = 0.5 * (p.dp + p.dm);
    const double s = 0.5 * (p.dp - p.dm);
    const double top = std::max(r, s);
    Cell value;
    std::string status = "ok";
    try {
      value = reliability(r, s, Efficiency(p.eta), truncation_for(cfg, top, top));
    } catch (const DegenerateDenominator&) {
      status = "degenerate";
    }
    return std::vector<Cell>{std::string(p.panel), p.dm, p.dp, p.eta, value, status};
  });

  Table t;
  t.columns = {"panel", "delta_minus", "delta_plus", "eta", "reliability", "status"};
  for (const auto& row : rows) t.add_row(row);
  return t;
}

Table probe(const ExperimentConfig& cfg) {
  const double r = cfg.r ? cfg.r->lo : 0.5;
  const double s = cfg.s.value_or(0.0);
  const auto etas = etas_or(cfg, {1.0});
  const double top = std::max(r, s);
  const Truncation trunc = truncation_for(cfg, top, top);
  const SqueezeParam a(r), b(s);
  const double w = omega_of(r - s);

  Table t;
  t.columns = {"r",        "s",           "eta",       "n_max",       "p_zero",
               "p_diff",   "truncation_bound", "reliability", "status", "overlap",
               "p_universal", "p_two_hypotheses"};
  for (double eta : etas) {
    const Efficiency e(eta);
    const ComparisonResult res = e.ideal() ? p_zero(a, b, trunc) : p_zero_eta(a, b, e, trunc);
    Cell rel;
    std::string status = "ok";
    try {
      rel = reliability(r, s, e, trunc);
    } catch (const DegenerateDenominator&) {
      status = "degenerate";
    }
    t.add_row({r, s, eta, static_cast<long long>(trunc.n_max()), res.p_zero, res.p_diff,
               res.truncation_bound, rel, status, w, p_universal(w), p_two_hypotheses(w)});
  }
  return t;
}

namespace {

// Runs one check body; exceptions become a failed outcome with the message.
CheckOutcome run_check(const std::string& name, double threshold,
                       const std::function<double(std::string&)>& body,
                       bool smaller_is_better = true) {
  CheckOutcome c;
  c.name = name;
  c.threshold = threshold;
  try {
    c.value = body(c.detail);
    c.passed = smaller_is_better ? c.value <= threshold : c.value >= threshold;
  } catch (const std::exception& e) {
    c.passed = false;
    c.value = std::nan("");
    c.detail = e.what();
  }
  return c;
}

}  // namespace

std::vector<CheckOutcome> run_validation(const ExperimentConfig& cfg) {
  const int n_max = cfg.n_max.value_or(60);
  std::vector<CheckOutcome> out;

  out.push_back(run_check("squeeze_matrix_vs_expm", 1e-8, [](std::string& detail) {
    const SqueezeParam gammas[] = {SqueezeParam(0.1), SqueezeParam(0.5), SqueezeParam(1.0),
                                   SqueezeParam(0.5, std::numbers::pi / 3)};
    double worst = 0.0;
    for (const auto& g : gammas) {
      const ComplexMatrix ref = oracle::expm_squeeze(g, 256).elements().topLeftCorner(33, 33);
      worst = std::max(worst, (ref - squeeze_elements(g, 33, 33)).cwiseAbs().maxCoeff());
    }
    detail = "h,k <= 32, oracle dim 256";
    return worst;
  }));

  out.push_back(run_check("output_state_vs_expm_pipeline", 1e-8, [](std::string& detail) {
    double worst = 0.0;
    for (auto [r, s] : {std::pair{0.5, 0.0}, std::pair{0.3, 0.7}}) {
      const JointFockState ref =
          oracle::expm_output_state(SqueezeParam(r), SqueezeParam(s), 128);
      const JointFockState main =
          output_state(SqueezeParam(r), SqueezeParam(s), Truncation(ref.dim() - 1, 1e-6));
      worst = std::max(worst, (ref.amps() - main.amps()).cwiseAbs().maxCoeff());
    }
    detail = "(0.5,0) and (0.3,0.7), oracle dim 128";
    return worst;
  }));

  out.push_back(run_check("gaussian_identity", 1e-12, [](std::string& detail) {
    double worst = 0.0, det_worst = 0.0, margin = 0.0;
    const Symplectic4 fixed[] = {sympl_bs(), sympl_local(0.7, -0.3)};
    for (const auto& s : fixed) worst = std::max(worst, symplectic_defect(s));
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        const double r = -1.0 + 0.1 * i, s = -1.0 + 0.1 * j;
        const CovMat a = sigma_out(r, s);
        worst = std::max(worst, (a - sigma_prime(r, s)).cwiseAbs().maxCoeff());
        worst = std::max(worst, (a - sigma_out_composed(r, s)).cwiseAbs().maxCoeff());
        det_worst = std::max(det_worst, std::abs(a.determinant() - 1.0 / 16.0));
        margin = std::min(margin, uncertainty_margin(a));
      }
    }
    if (det_worst > 1e-10) throw std::runtime_error("det deviates by " + format_number(det_worst));
    if (margin < -1e-10) throw std::runtime_error("uncertainty violated: " + format_number(margin));
    detail = "21x21 grid on [-1,1]^2; max |det - 1/16| = " + format_number(det_worst);
    return worst;
  }));

  out.push_back(run_check("closed_form_vs_grid", 1e-8, [&](std::string& detail) {
    double worst = 0.0;
    for (double r : {0.1, 0.3, 0.5, 1.0}) {
      const Truncation t =
          cfg.n_max ? Truncation(*cfg.n_max, 1e-10) : recommended_truncation(r, r, 1e-10);
      for (double eta : {0.5, 0.9, 0.99}) {
        const double grid_value = p_zero_eta(SqueezeParam(r), SqueezeParam(r), Efficiency(eta), t).p_zero;
        const double closed = p_eta_same(r, Efficiency(eta), series_truncation_for(cfg, r));
        worst = std::max(worst, std::abs(grid_value - closed));
      }
    }
    detail = "r in {0.1,0.3,0.5,1.0}, eta in {0.5,0.9,0.99}";
    return worst;
  }));

  out.push_back(run_check("literal_sum_n12", 1e-4, [&](std::string& detail) {
    double worst = 0.0;
    const Efficiency eta(0.9);
    for (double r : {0.1, 0.3, 0.5}) {
      const double lit = oracle::literal_five_fold_sum(SqueezeParam(r), SqueezeParam(r), eta, 12);
      worst = std::max(worst, std::abs(lit - p_eta_same(r, eta, series_truncation_for(cfg, r))));
    }
    const double lit = oracle::literal_five_fold_sum(SqueezeParam(0.3), SqueezeParam(0.1), eta, 12);
    const double main =
        p_zero_eta(SqueezeParam(0.3), SqueezeParam(0.1), eta, truncation_for(cfg, 0.3, 0.3)).p_zero;
    worst = std::max(worst, std::abs(lit - main));
    detail = "eta 0.9; r = r in {0.1,0.3,0.5} and (0.3,0.1)";
    return worst;
  }));

  out.push_back(run_check("no_error_eta1", 10.0 * cfg.tail_tol, [&](std::string& detail) {
    std::vector<double> rs = {0.0, 0.25, 0.5, 0.75, 1.0};
    if (cfg.r) {
      for (double r : grid(*cfg.r, cfg.grid_step)) rs.push_back(r);
    }
    const NoErrorReport rep = verify_no_error(rs, Efficiency(1.0), Truncation(n_max, cfg.tail_tol));
    detail = "n_max " + std::to_string(n_max) + ", " + std::to_string(rs.size()) + " points";
    return rep.max_p_diff;
  }));

  out.push_back(run_check("fock_vs_gaussian_moments", 100.0 * cfg.tail_tol, [&](std::string& detail) {
    double worst = 0.0;
    for (auto [r, s] : {std::pair{0.0, 0.0}, {0.3, 0.3}, {0.5, 0.1}, {0.8, 0.4}}) {
      worst = std::max(worst, crosscheck_fock(r, s, Truncation(n_max, cfg.tail_tol)).max_deviation);
    }
    detail = "(0,0) (0.3,0.3) (0.5,0.1) (0.8,0.4) at n_max " + std::to_string(n_max);
    return worst;
  }));

  out.push_back(run_check("povm_structure", 1e-12, [](std::string& detail) {
    double worst = 0.0;
    const Truncation t(60, 1e-6);
    for (double eta : {0.1, 0.5, 0.9}) {
      const Eigen::MatrixXd k = binomial_loss_kernel(eta, t.dim());
      worst = std::max(worst, (k.rowwise().sum().array() - 1.0).abs().maxCoeff());
      const PovmPair p = smeared_povm(Efficiency(eta), t);
      if (((p.zero.weights() + p.diff.weights()).array() != 1.0).any()) {
        throw std::runtime_error("complementarity broken at eta " + format_number(eta));
      }
    }
    const PovmPair one = smeared_povm(Efficiency(1.0), t);
    if (one.zero.weights() != ideal_povm(t).zero.weights()) {
      throw std::runtime_error("eta = 1 smeared POVM differs from the ideal one");
    }
    detail = "binomial completeness, complementarity, eta = 1 limit";
    return worst;
  }));

  out.push_back(run_check("small_r_expansion", 0.0, [&](std::string& detail) {
    // margin = min over points of 5 r^4 - |p - approx|; must stay >= 0
    double margin = 1.0;
    for (double r : {0.01, 0.02, 0.05}) {
      for (double eta : {0.5, 0.9}) {
        const double p = p_eta_same(r, Efficiency(eta), series_truncation_for(cfg, r));
        margin = std::min(margin, 5.0 * std::pow(r, 4) - std::abs(p - small_r_approx(r, Efficiency(eta))));
      }
    }
    detail = "|p - (1 - 2 eta (1-eta) r^2)| <= 5 r^4";
    return margin;
  }, false));

  out.push_back(run_check("delta_plus_independence", 1e-6, [&](std::string& detail) {
    double worst = 0.0;
    for (double dm : {0.2, 0.5, 1.0}) {
      double lo = 1.0, hi = 0.0;
      for (double dp : grid(Range{dm, kSweepDeltaPlusMax}, 0.2)) {
        const double r = 0.5 * (dp + dm), s = 0.5 * (dp - dm);
        const double p = p_zero(SqueezeParam(r), SqueezeParam(s), truncation_for(cfg, r, s)).p_diff;
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
      worst = std::max(worst, hi - lo);
    }
    detail = "eta 1, delta- in {0.2,0.5,1.0}, delta+ in [delta-, 2.4]";
    return worst;
  }));

  return out;
}

Table validation_table(const std::vector<CheckOutcome>& checks) {
  Table t;
  t.columns = {"check", "status", "value", "threshold", "detail"};
  for (const auto& c : checks) {
    t.add_row({c.name, std::string(c.passed ? "PASS" : "FAIL"), c.value, c.threshold, c.detail});
  }
  return t;
}

}  // namespace sqz
