#include "semidens/bias_bench.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Dense>

#include "semidens/errors.hpp"
#include "semidens/fit.hpp"
#include "semidens/quadrature.hpp"
#include "semidens/rng.hpp"

namespace semidens {

namespace {

Eigen::VectorXd raw_basis(double x, int p) {
  Eigen::VectorXd t(p);
  double xp = 1.0;
  for (int j = 0; j < p; ++j) {
    xp *= x;
    t(j) = xp;
  }
  return t;
}

// Solve Sigma w = e_t2 once; g(x) is then a dot product per evaluation.
Eigen::VectorXd g_weights(const MomentSummary& s) {
  return s.sigma.ldlt().solve(s.e_t2);
}

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double g_function(const MomentSummary& summary, const NormalMixture& m, int p,
                  double x) {
  (void)m;
  if (summary.p != p) {
    throw ValidationError("g_function: summary order does not match p");
  }
  const Eigen::VectorXd w = g_weights(summary);
  return w.dot(raw_basis(x, p) - summary.xi);
}

BiasProfile make_bias_profile(Method method, const NormalMixture& m) {
  BiasProfile profile;
  profile.method = method;
  profile.density = m.name;

  if (is_et_method(method)) {
    const int p = et_order(method);
    if (p < 2) {
      // g is identically zero for t(x) = x, so et1 shares the kernel factor.
      profile.b = [m](double x) { return mixture_pdf(m, x, 2); };
      return profile;
    }
    const MomentSummary s = moment_summary(m, p);
    const Eigen::VectorXd w = g_weights(s);
    const Eigen::VectorXd xi = s.xi;
    profile.b = [m, w, xi, p](double x) {
      const double f = mixture_pdf(m, x, 0);
      const double fpp = mixture_pdf(m, x, 2);
      return fpp - f * w.dot(raw_basis(x, p) - xi);
    };
    return profile;
  }

  const double mu = m.mean();
  const double s2 = m.variance();
  switch (method) {
    case Method::kernel:
      profile.b = [m](double x) { return mixture_pdf(m, x, 2); };
      break;
    case Method::jones:
      profile.b = [m, mu, s2](double x) {
        const double f = mixture_pdf(m, x, 0);
        const double fp = mixture_pdf(m, x, 1);
        const double fpp = mixture_pdf(m, x, 2);
        return fpp + (f + (x - mu) * fp) / s2;
      };
      break;
    case Method::hg:
      // f'' - (f')^2/f + f[(f'/f + (x-mu)/s2)^2 + 1/s2] with the (f')^2/f
      // terms cancelled, so the far tails need no division guard.
      profile.b = [m, mu, s2](double x) {
        const double f = mixture_pdf(m, x, 0);
        const double fp = mixture_pdf(m, x, 1);
        const double fpp = mixture_pdf(m, x, 2);
        const double c = (x - mu) / s2;
        return fpp + 2.0 * fp * c + f * (c * c + 1.0 / s2);
      };
      break;
    case Method::local1:
      profile.b = [m, mu, s2](double x) {
        const double f = mixture_pdf(m, x, 0);
        const double fpp = mixture_pdf(m, x, 2);
        const double c = (x - mu);
        return fpp - f * (c * c / s2 - 1.0) / s2;
      };
      break;
    case Method::local2:
      profile.b = [m, s2](double x) {
        const double f = mixture_pdf(m, x, 0);
        if (f < 1e-300) return 0.0;
        const double fp = mixture_pdf(m, x, 1);
        const double fpp = mixture_pdf(m, x, 2);
        return fpp - fp * fp / f + f / s2;
      };
      break;
    default:
      throw ValidationError("make_bias_profile: unsupported method");
  }
  return profile;
}

double bias_factor(Method method, const NormalMixture& m, double x) {
  return make_bias_profile(method, m).b(x);
}

double integrated_squared_bias(Method method, const NormalMixture& m,
                               const std::function<double(double)>& weight) {
  const BiasProfile profile = make_bias_profile(method, m);
  const auto integrand = [&](double x) {
    const double b = profile.b(x);
    const double w = weight ? weight(x) : 1.0;
    return w * b * b;
  };
  return integrate_whole_line(integrand, m.mean(), m.sd(), 1e-7).value;
}

BenchmarkTable benchmark_table(const std::vector<NormalMixture>& catalog) {
  BenchmarkTable table;
  table.methods = {Method::et2,    Method::et3, Method::et4, Method::jones,
                   Method::hg,     Method::local1, Method::local2};
  for (const NormalMixture& m : catalog) {
    table.densities.push_back(m.name);
    std::vector<double> row;
    double denom = 0.0;
    try {
      denom = integrated_squared_bias(Method::kernel, m);
    } catch (const NonConvergence& e) {
      throw NonConvergence("benchmark_table: " + m.name + "/kernel: " +
                           e.what());
    }
    for (Method method : table.methods) {
      try {
        row.push_back(
            std::sqrt(integrated_squared_bias(method, m) / denom));
      } catch (const NonConvergence& e) {
        throw NonConvergence("benchmark_table: " + m.name + "/" +
                             method_name(method) + ": " + e.what());
      }
    }
    table.entries.push_back(std::move(row));
  }
  return table;
}

std::string BenchmarkTable::to_csv() const {
  std::ostringstream out;
  out << "density";
  for (Method m : methods) out << ',' << method_name(m);
  out << '\n';
  for (std::size_t i = 0; i < densities.size(); ++i) {
    out << densities[i];
    for (double v : entries[i]) out << ',' << format17(v);
    out << '\n';
  }
  return out.str();
}

std::string BenchmarkTable::to_text() const {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-22s", "density");
  out << buf;
  for (Method m : methods) {
    std::snprintf(buf, sizeof buf, "%9s", method_name(m));
    out << buf;
  }
  out << '\n';
  for (std::size_t i = 0; i < densities.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%-22s", densities[i].c_str());
    out << buf;
    for (double v : entries[i]) {
      std::snprintf(buf, sizeof buf, "%9.4f", v);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::function<double(double)> bias_after_et(
    const std::function<double(double)>& b, const NormalMixture& m, int p,
    KernelSpec k) {
  const MomentSummary s = moment_summary(m, p);
  const double k2 = kernel_constants(k).k2;
  const double d = integrate_whole_line(b, m.mean(), m.sd(), 1e-9).value;
  Eigen::VectorXd gamma(p);
  for (int j = 1; j <= p; ++j) {
    const auto bt = [&](double x) {
      double xp = x;
      for (int i = 1; i < j; ++i) xp *= x;
      return b(x) * xp;
    };
    gamma(j - 1) = integrate_whole_line(bt, m.mean(), m.sd(), 1e-9).value -
                   (2.0 * d / k2) * s.xi(j - 1);
  }
  const Eigen::VectorXd w = s.sigma.ldlt().solve(gamma);
  const Eigen::VectorXd xi = s.xi;
  return [b, m, w, xi, p](double x) {
    return b(x) - mixture_pdf(m, x, 0) * w.dot(raw_basis(x, p) - xi);
  };
}

McReport mc_verify_proposition(const NormalMixture& m, Method method, long n,
                               double h, long reps, std::uint64_t seed,
                               const std::vector<double>& x_grid,
                               KernelSpec k) {
  if (reps < 2) {
    throw ValidationError("mc_verify_proposition: need at least 2 reps");
  }
  const std::size_t g = x_grid.size();
  std::vector<double> sum(g, 0.0), sumsq(g, 0.0), row(g, 0.0);
  McReport report;

  for (long rep = 0; rep < reps; ++rep) {
    const Sample data = sample(m, n, derive_stream_seed(seed, rep));
    bool ok = true;
    try {
      const DensityEstimate est = fit_method(method, data, h, k);
      for (std::size_t j = 0; j < g; ++j) row[j] = est.value(x_grid[j]);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) {
      ++report.failures;
      continue;
    }
    ++report.reps_done;
    for (std::size_t j = 0; j < g; ++j) {
      sum[j] += row[j];
      sumsq[j] += row[j] * row[j];
    }
  }
  if (report.reps_done < 2) {
    throw NonConvergence(
        "mc_verify_proposition: fewer than 2 replications succeeded");
  }

  const double cnt = static_cast<double>(report.reps_done);
  const KernelConstants kc = kernel_constants(k);
  const BiasProfile profile = make_bias_profile(method, m);
  for (std::size_t j = 0; j < g; ++j) {
    McRow r;
    r.x = x_grid[j];
    const double f = mixture_pdf(m, r.x, 0);
    const double mean = sum[j] / cnt;
    r.empirical_bias = mean - f;
    r.predicted_bias = 0.5 * kc.k2 * h * h * profile.b(r.x);
    r.empirical_var = (sumsq[j] - cnt * mean * mean) / (cnt - 1.0);
    r.predicted_var =
        kc.rk * f / (static_cast<double>(n) * h) - f * f / static_cast<double>(n);
    const double se_mean = std::sqrt(r.empirical_var / cnt);
    const double se_var = r.empirical_var * std::sqrt(2.0 / (cnt - 1.0));
    r.z_bias = (r.empirical_bias - r.predicted_bias) / se_mean;
    r.z_var = (r.empirical_var - r.predicted_var) / se_var;
    report.rows.push_back(r);
  }
  return report;
}

std::string McReport::to_csv() const {
  std::ostringstream out;
  out << "x,empirical_bias,predicted_bias,empirical_var,predicted_var,"
         "z_bias,z_var\n";
  for (const McRow& r : rows) {
    out << format17(r.x) << ',' << format17(r.empirical_bias) << ','
        << format17(r.predicted_bias) << ',' << format17(r.empirical_var)
        << ',' << format17(r.predicted_var) << ',' << format17(r.z_bias)
        << ',' << format17(r.z_var) << '\n';
  }
  return out.str();
}

}  // namespace semidens
