#include "semidens/expfam.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "semidens/errors.hpp"
#include "semidens/kde.hpp"
#include "semidens/quadrature.hpp"

namespace semidens {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1], positive half (symmetric).
constexpr int kGlHalf = 8;
constexpr double kGlNode[kGlHalf] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499,
};
constexpr double kGlWeight[kGlHalf] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541,
};

// Fixed-grid view of the carrier over the domain: node positions, carrier
// mass weights (carrier value times quadrature weight), and the standardized
// basis powers at each node. Built once per fit; every Newton step is then a
// handful of weighted sums.
struct CarrierGrid {
  std::vector<double> node;
  std::vector<double> mass;
  // powers[j][i] = t_{j+1}(node[i]) for j = 0..p-1
  std::vector<std::vector<double>> powers;
};

void append_panel_nodes(double a, double b, std::vector<double>* node,
                        std::vector<double>* weight) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < kGlHalf; ++i) {
    node->push_back(mid - half * kGlNode[i]);
    weight->push_back(half * kGlWeight[i]);
    node->push_back(mid + half * kGlNode[i]);
    weight->push_back(half * kGlWeight[i]);
  }
}

std::vector<double> panel_edges(const DensityEstimate& carrier,
                                const Sample& data, Interval domain) {
  const double h = carrier.h;
  std::vector<double> edges{domain.lo};
  if (carrier.kernel.kind == KernelKind::Epanechnikov) {
    // The carrier has kinks at every x_i +- h/2; panels must not straddle
    // them or the Gauss rule loses its accuracy.
    std::vector<double> kinks;
    kinks.reserve(2 * data.values().size());
    for (double xi : data.values()) {
      kinks.push_back(xi - 0.5 * h);
      kinks.push_back(xi + 0.5 * h);
    }
    std::sort(kinks.begin(), kinks.end());
    for (double kx : kinks) {
      if (kx > edges.back() + 1e-12 * std::max(1.0, std::abs(kx)) &&
          kx < domain.hi) {
        edges.push_back(kx);
      }
    }
  }
  edges.push_back(domain.hi);

  // Subdivide so no panel is wider than h/2 (and keep at least 16 panels);
  // cap the total to bound the cost for pathologically small h.
  const double target =
      std::max(std::min(0.5 * h, domain.width() / 16.0),
               domain.width() / 4096.0);
  std::vector<double> out;
  out.push_back(edges.front());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const double seg = edges[i] - edges[i - 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(seg / target)));
    for (int j = 1; j <= pieces; ++j) {
      out.push_back(edges[i - 1] + seg * j / pieces);
    }
  }
  return out;
}

CarrierGrid build_grid(const DensityEstimate& carrier,
                       const CanonicalBasis& basis, const Sample& data,
                       Interval domain) {
  const std::vector<double> edges = panel_edges(carrier, data, domain);
  CarrierGrid grid;
  std::vector<double> weight;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    append_panel_nodes(edges[i - 1], edges[i], &grid.node, &weight);
  }
  grid.mass.resize(grid.node.size());
  for (std::size_t i = 0; i < grid.node.size(); ++i) {
    grid.mass[i] = weight[i] * carrier.value(grid.node[i]);
  }
  grid.powers.assign(basis.p, std::vector<double>(grid.node.size()));
  for (std::size_t i = 0; i < grid.node.size(); ++i) {
    const double z = (grid.node[i] - basis.center) / basis.scale;
    double zp = 1.0;
    for (int j = 0; j < basis.p; ++j) {
      zp *= z;
      grid.powers[j][i] = zp;
    }
  }
  return grid;
}

// log sum of mass_i * exp(beta^t t_i), shifted by the max exponent.
double grid_log_c(const CarrierGrid& grid, const Eigen::VectorXd& beta,
                  std::vector<double>* tilt_out) {
  const std::size_t m = grid.node.size();
  const int p = static_cast<int>(beta.size());
  std::vector<double> expo(m, 0.0);
  for (int j = 0; j < p; ++j) {
    const double bj = beta(j);
    if (bj == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) expo[i] += bj * grid.powers[j][i];
  }
  const double shift = *std::max_element(expo.begin(), expo.end());
  double total = 0.0;
  if (tilt_out) tilt_out->resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double e = grid.mass[i] * std::exp(expo[i] - shift);
    if (tilt_out) (*tilt_out)[i] = e;
    total += e;
  }
  return shift + std::log(total);
}

Eigen::VectorXd sample_tbar(const Sample& data, const CanonicalBasis& basis) {
  Eigen::VectorXd tbar = Eigen::VectorXd::Zero(basis.p);
  for (double x : data.values()) {
    const double z = (x - basis.center) / basis.scale;
    double zp = 1.0;
    for (int j = 0; j < basis.p; ++j) {
      zp *= z;
      tbar(j) += zp;
    }
  }
  return tbar / static_cast<double>(data.n());
}

double check_spd(const Eigen::MatrixXd& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || !(hi > 0.0) || lo / hi < 1e-12) {
    throw DegenerateHessian(std::string(what) +
                            ": matrix is not safely positive definite");
  }
  return lo / hi;
}

}  // namespace

CanonicalBasis::CanonicalBasis(int p_, double center_, double scale_)
    : p(p_), center(center_), scale(scale_) {
  if (p < 1 || p > 4) {
    throw ValidationError("CanonicalBasis: order must be 1..4");
  }
  if (!(scale > 0.0)) {
    throw ValidationError("CanonicalBasis: scale must be positive");
  }
}

Eigen::VectorXd CanonicalBasis::t(double x) const {
  Eigen::VectorXd v(p);
  const double z = (x - center) / scale;
  double zp = 1.0;
  for (int j = 0; j < p; ++j) {
    zp *= z;
    v(j) = zp;
  }
  return v;
}

Eigen::VectorXd CanonicalBasis::t_prime(double x) const {
  Eigen::VectorXd v(p);
  const double z = (x - center) / scale;
  double zp = 1.0;  // z^(j-1)
  for (int j = 1; j <= p; ++j) {
    v(j - 1) = j * zp / scale;
    zp *= z;
  }
  return v;
}

Eigen::VectorXd CanonicalBasis::t_second(double x) const {
  Eigen::VectorXd v(p);
  const double z = (x - center) / scale;
  v(0) = 0.0;
  double zp = 1.0;  // z^(j-2)
  for (int j = 2; j <= p; ++j) {
    v(j - 1) = j * (j - 1) * zp / (scale * scale);
    zp *= z;
  }
  return v;
}

Interval choose_domain(const DensityEstimate& carrier, const Sample& data) {
  const double h = carrier.h;
  const double r = carrier.kernel.kind == KernelKind::Gaussian
                       ? 10.0 * h
                       : carrier.kernel.support_radius() * h;
  return {data.min() - r, data.max() + r};
}

double log_norm_const(const DensityEstimate& carrier,
                      const CanonicalBasis& basis, const Eigen::VectorXd& beta,
                      Interval domain) {
  if (beta.size() != basis.p) {
    throw ValidationError("log_norm_const: beta length does not match basis");
  }
  const auto exponent = [&](double x) { return beta.dot(basis.t(x)); };
  double shift = exponent(domain.lo);
  for (int i = 1; i <= 512; ++i) {
    shift = std::max(shift, exponent(domain.lo + domain.width() * i / 512.0));
  }
  const auto f = [&](double x) {
    return carrier.value(x) * std::exp(exponent(x) - shift);
  };
  const IntegrationResult r = integrate(f, domain.lo, domain.hi, 1e-12);
  return shift + std::log(r.value);
}

ExpFamilyModel fit_beta(const DensityEstimate& carrier,
                        const CanonicalBasis& basis, const Sample& data,
                        Interval domain) {
  if (data.distinct_count() < basis.p) {
    throw TooFewDistinctPoints(
        "fit_beta: need at least " + std::to_string(basis.p) +
        " distinct data points, have " + std::to_string(data.distinct_count()));
  }
  const int p = basis.p;
  const CarrierGrid grid = build_grid(carrier, basis, data, domain);
  const Eigen::VectorXd tbar = sample_tbar(data, basis);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  std::vector<double> tilt;
  double log_c = grid_log_c(grid, beta, &tilt);
  double objective = log_c - beta.dot(tbar);

  FitDiagnostics diag;
  diag.objective_trace.push_back(objective);
  const int max_iter = 100;
  double grad_norm = 0.0;
  bool converged = false;

  for (int iter = 1; iter <= max_iter; ++iter) {
    // Tilted moments from the cached grid: mu = E_beta t, H = Var_beta t.
    double total = 0.0;
    for (double e : tilt) total += e;
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(p);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t i = 0; i < tilt.size(); ++i) {
      const double e = tilt[i];
      for (int j = 0; j < p; ++j) {
        const double tj = grid.powers[j][i];
        mu(j) += e * tj;
        for (int k = j; k < p; ++k) second(j, k) += e * tj * grid.powers[k][i];
      }
    }
    mu /= total;
    second /= total;
    Eigen::MatrixXd hess = second.selfadjointView<Eigen::Upper>();
    hess -= mu * mu.transpose();

    const Eigen::VectorXd grad = mu - tbar;
    grad_norm = grad.lpNorm<Eigen::Infinity>();
    diag.iterations = iter - 1;
    if (grad_norm < 1e-10) {
      converged = true;
      break;
    }

    check_spd(hess, "fit_beta Newton Hessian");
    const Eigen::VectorXd step = hess.ldlt().solve(-grad);

    // Backtracking halving on the objective. Near the optimum the decrease
    // drops below double precision, so once the gradient is already small
    // the full Newton step is accepted as-is.
    const bool require_decrease = grad_norm >= 1e-6;
    double lambda = 1.0;
    Eigen::VectorXd candidate;
    double cand_log_c = 0.0, cand_objective = 0.0;
    std::vector<double> cand_tilt;
    for (int halving = 0; halving < 60; ++halving) {
      candidate = beta + lambda * step;
      cand_log_c = grid_log_c(grid, candidate, &cand_tilt);
      cand_objective = cand_log_c - candidate.dot(tbar);
      if (!require_decrease || cand_objective <= objective) break;
      lambda *= 0.5;
    }
    beta = candidate;
    log_c = cand_log_c;
    objective = std::min(objective, cand_objective);
    tilt = std::move(cand_tilt);
    diag.objective_trace.push_back(objective);
  }

  if (!converged) {
    throw NonConvergence(
        "fit_beta: Newton did not reach gradient tolerance 1e-10 in 100 "
        "iterations (last sup-norm " +
        std::to_string(grad_norm) + ")");
  }
  diag.grad_norm = grad_norm;

  ExpFamilyModel model{carrier, basis, beta, 0.0, domain, diag};
  model.log_c = log_norm_const(carrier, basis, beta, domain);
  return model;
}

double et_density(const ExpFamilyModel& model, double x) {
  if (x < model.domain.lo || x > model.domain.hi) return 0.0;
  return model.carrier.value(x) *
         std::exp(model.beta.dot(model.basis.t(x)) - model.log_c);
}

EvalPair et_eval(const ExpFamilyModel& model, double x) {
  if (x < model.domain.lo || x > model.domain.hi) return {0.0, 0.0};
  const EvalPair f0 = model.carrier.eval(x);
  const double w = std::exp(model.beta.dot(model.basis.t(x)) - model.log_c);
  const double slope = model.beta.dot(model.basis.t_prime(x));
  return {f0.value * w, w * (f0.deriv + f0.value * slope)};
}

Eigen::VectorXd taylor_beta(const Sample& data, const CanonicalBasis& basis,
                            KernelSpec k, double h) {
  const int p = basis.p;
  const double n = static_cast<double>(data.n());
  Eigen::VectorXd tbar = Eigen::VectorXd::Zero(p);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd tdd = Eigen::VectorXd::Zero(p);
  for (double x : data.values()) {
    const Eigen::VectorXd t = basis.t(x);
    tbar += t;
    second.selfadjointView<Eigen::Upper>().rankUpdate(t);
    tdd += basis.t_second(x);
  }
  tbar /= n;
  tdd /= n;
  Eigen::MatrixXd sigma = second.selfadjointView<Eigen::Upper>();
  sigma = sigma / n - tbar * tbar.transpose();
  check_spd(sigma, "taylor_beta empirical variance");
  const double k2 = kernel_constants(k).k2;
  return -0.5 * k2 * h * h * sigma.ldlt().solve(tdd);
}

DensityEstimate et_fit(const Sample& data, int p, double h, KernelSpec k) {
  const DensityEstimate carrier = kde_fit(data, h, k);
  const double scale = data.sd() > 0.0 ? data.sd() : 1.0;
  const CanonicalBasis basis(p, data.mean(), scale);
  const Interval domain = choose_domain(carrier, data);
  auto model = std::make_shared<const ExpFamilyModel>(
      fit_beta(carrier, basis, data, domain));

  DensityEstimate est;
  switch (p) {
    case 1: est.method = Method::et1; break;
    case 2: est.method = Method::et2; break;
    case 3: est.method = Method::et3; break;
    case 4: est.method = Method::et4; break;
    default: throw ValidationError("et_fit: order must be 1..4");
  }
  est.h = h;
  est.kernel = k;
  est.eval = [model](double x) { return et_eval(*model, x); };
  est.beta.assign(model->beta.data(), model->beta.data() + model->beta.size());
  est.diagnostics = model->diagnostics;
  return est;
}

}  // namespace semidens
