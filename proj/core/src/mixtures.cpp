#include "semidens/mixtures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "semidens/errors.hpp"
#include "semidens/rng.hpp"

namespace semidens {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double normal_pdf(double x, double mu, double sd) {
  const double z = (x - mu) / sd;
  return kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
}

}  // namespace

NormalMixture::NormalMixture(std::string name_, std::vector<double> weights_,
                             std::vector<double> means_,
                             std::vector<double> sds_)
    : name(std::move(name_)),
      weights(std::move(weights_)),
      means(std::move(means_)),
      sds(std::move(sds_)) {
  const auto k = weights.size();
  if (k < 1 || k > 8) {
    throw ValidationError("mixture '" + name + "': component count " +
                          std::to_string(k) + " outside 1..8");
  }
  if (means.size() != k || sds.size() != k) {
    throw ValidationError("mixture '" + name +
                          "': weights/means/sds lengths differ");
  }
  double wsum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(weights[i] > 0.0)) {
      throw ValidationError("mixture '" + name + "': weight " +
                            std::to_string(i) + " not positive");
    }
    if (!(sds[i] > 0.0)) {
      throw ValidationError("mixture '" + name + "': sd " +
                            std::to_string(i) + " not positive");
    }
    wsum += weights[i];
  }
  if (std::abs(wsum - 1.0) > 1e-12) {
    throw ValidationError("mixture '" + name + "': weights sum to " +
                          std::to_string(wsum) + ", expected 1");
  }
}

double NormalMixture::mean() const {
  double m = 0.0;
  for (int i = 0; i < components(); ++i) m += weights[i] * means[i];
  return m;
}

double NormalMixture::variance() const {
  const double mu = mean();
  double v = 0.0;
  for (int i = 0; i < components(); ++i) {
    v += weights[i] * (sds[i] * sds[i] + (means[i] - mu) * (means[i] - mu));
  }
  return v;
}

double NormalMixture::sd() const { return std::sqrt(variance()); }

double mixture_pdf(const NormalMixture& m, double x, int deriv) {
  if (deriv < 0 || deriv > 2) {
    throw ValidationError("mixture_pdf: deriv must be 0, 1, or 2");
  }
  double acc = 0.0;
  for (int i = 0; i < m.components(); ++i) {
    const double sd = m.sds[i];
    const double z = (x - m.means[i]) / sd;
    const double phi = m.weights[i] * normal_pdf(x, m.means[i], sd);
    switch (deriv) {
      case 0: acc += phi; break;
      case 1: acc += phi * (-z / sd); break;
      case 2: acc += phi * ((z * z - 1.0) / (sd * sd)); break;
    }
  }
  return acc;
}

double raw_moment(const NormalMixture& m, int k) {
  if (k < 0 || k > 8) {
    throw ValidationError("raw_moment: order must be 0..8");
  }
  double total = 0.0;
  for (int i = 0; i < m.components(); ++i) {
    const double mu = m.means[i];
    const double s2 = m.sds[i] * m.sds[i];
    double prev = 1.0, cur = mu;
    if (k == 0) {
      total += m.weights[i];
      continue;
    }
    for (int j = 2; j <= k; ++j) {
      const double next = mu * cur + (j - 1) * s2 * prev;
      prev = cur;
      cur = next;
    }
    total += m.weights[i] * cur;
  }
  return total;
}

MomentSummary moment_summary(const NormalMixture& m, int p) {
  if (p < 2 || p > 4) {
    throw ValidationError("moment_summary: order must be 2, 3, or 4");
  }
  MomentSummary s;
  s.p = p;
  s.xi.resize(p);
  s.sigma.resize(p, p);
  s.e_t2.resize(p);
  for (int j = 1; j <= p; ++j) s.xi(j - 1) = raw_moment(m, j);
  for (int j = 1; j <= p; ++j) {
    for (int k = j; k <= p; ++k) {
      const double c = raw_moment(m, j + k) - s.xi(j - 1) * s.xi(k - 1);
      s.sigma(j - 1, k - 1) = c;
      s.sigma(k - 1, j - 1) = c;
    }
  }
  const double mu = m.mean();
  const double var = m.variance();
  s.e_t2(0) = 0.0;
  s.e_t2(1) = 2.0;
  if (p >= 3) s.e_t2(2) = 6.0 * mu;
  if (p >= 4) s.e_t2(3) = 12.0 * (mu * mu + var);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.sigma);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || lo / hi < 1e-12) {
    throw SingularMoments("moment_summary: Sigma for '" + m.name +
                          "', p=" + std::to_string(p) +
                          " is not safely positive definite");
  }
  return s;
}

Sample sample(const NormalMixture& m, long n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample: n must be at least 1");
  Rng rng(seed);
  std::vector<double> cum(m.weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < m.weights.size(); ++i) {
    acc += m.weights[i];
    cum[i] = acc;
  }
  cum.back() = 1.0;
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) {
    const double u = rng.uniform();
    std::size_t i = 0;
    while (u > cum[i]) ++i;
    x = m.means[i] + m.sds[i] * rng.normal();
  }
  return Sample(std::move(xs));
}

std::vector<NormalMixture> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("catalog " + path + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw ParseError("catalog " + path + ": top level must be an array");
  }
  std::vector<NormalMixture> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    const std::string where = "catalog entry " + std::to_string(i);
    if (!e.is_object()) throw ParseError(where + ": not an object");
    for (const char* field : {"name", "weights", "means", "sds"}) {
      if (!e.contains(field)) {
        throw ParseError(where + ": missing field '" + field + "'");
      }
    }
    try {
      out.emplace_back(e.at("name").get<std::string>(),
                       e.at("weights").get<std::vector<double>>(),
                       e.at("means").get<std::vector<double>>(),
                       e.at("sds").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(where + ": " + ex.what());
    }
  }
  return out;
}

}  // namespace semidens
