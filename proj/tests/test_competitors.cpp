#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "semidens/competitors.hpp"
#include "semidens/errors.hpp"
#include "semidens/kde.hpp"
#include "semidens/mixtures.hpp"
#include "semidens/quadrature.hpp"

using namespace semidens;

namespace {

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

double normal_pdf(double x, double mu, double sd) { return phi((x - mu) / sd) / sd; }

Sample normal_sample(long n, std::uint64_t seed, double mu = 0.0, double sd = 1.0) {
    return sample(NormalMixture("n", {1.0}, {mu}, {sd}), n, seed);
}

using Fitter = std::function<DensityEstimate(const Sample&, double)>;

std::vector<std::pair<const char*, Fitter>> all_fitters() {
    return {
        {"jones", [](const Sample& d, double h) { return jones_fit(d, h, KernelSpec::gaussian()); }},
        {"hg", [](const Sample& d, double h) { return hjort_glad_fit(d, h); }},
        {"local1", [](const Sample& d, double h) { return local_level_fit(d, h); }},
        {"local2", [](const Sample& d, double h) { return local_linear_fit(d, h); }},
    };
}

}  // namespace

TEST_CASE("normal start moments") {
    Sample data({1.0, 2.0, 3.0, 6.0});
    auto s = normal_start(data);
    CHECK(s.mu_hat == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s.sigma_hat == doctest::Approx(std::sqrt(3.5)).epsilon(1e-14));
}

TEST_CASE("jones shrinks toward the mean before smoothing") {
    Sample data({-1.0, 1.0});
    auto est = jones_fit(data, 1.0, KernelSpec::gaussian());
    const double y = 1.0 / std::sqrt(2.0);
    auto oracle = kde_fit(Sample({-y, y}), 1.0, KernelSpec::gaussian());
    for (double x : {-1.5, -0.3, 0.0, 0.4, 2.0}) {
        CHECK(est.value(x) == doctest::Approx(oracle.value(x)).epsilon(1e-13));
        CHECK(est.deriv(x) == doctest::Approx(oracle.deriv(x)).epsilon(1e-12));
    }
    CHECK(est.mu_hat == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(est.sigma_hat == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("jones matches the sample variance exactly in expectation form") {
    auto data = normal_sample(50, 13, 0.4, 1.3);
    const double h = 0.6;
    auto est = jones_fit(data, h, KernelSpec::gaussian());
    const double s2 = data.sd() * data.sd();
    auto m1 = integrate_whole_line([&](double x) { return x * est.value(x); }, data.mean(),
                                   data.sd() + h, 1e-10);
    auto m2 = integrate_whole_line([&](double x) { return x * x * est.value(x); }, data.mean(),
                                   data.sd() + h, 1e-10);
    const double fitted_var = m2.value - m1.value * m1.value;
    CHECK(fitted_var == doctest::Approx(s2 * s2 / (s2 + h * h) + h * h).epsilon(1e-8));
    CHECK(m1.value == doctest::Approx(data.mean()).epsilon(1e-9));

    auto total = integrate_whole_line([&](double x) { return est.value(x); }, data.mean(),
                                      data.sd() + h, 1e-10);
    CHECK(std::abs(total.value - 1.0) < 1e-8);
}

TEST_CASE("hjort glad closed form at a symmetric pair") {
    Sample data({-1.0, 1.0});
    const double h = 0.7;
    auto est = hjort_glad_fit(data, h);
    const double expected = phi(1.0 / h) / h * std::exp(0.5);
    CHECK(est.value(0.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("hjort glad nearly normalizes on normal data") {
    auto data = normal_sample(500, 29, 3.0, 2.0);
    auto est = hjort_glad_fit(data, 0.4);
    auto total = integrate_whole_line([&](double x) { return est.value(x); }, data.mean(),
                                      data.sd() + 0.4, 1e-10);
    CHECK(std::abs(total.value - 1.0) < 0.01);
}

TEST_CASE("local level closed form structure") {
    auto data = normal_sample(120, 37);
    const double h = 0.45;
    auto est = local_level_fit(data, h);
    auto carrier = kde_fit(data, h, KernelSpec::gaussian());
    auto s = normal_start(data);
    const double s2 = s.sigma_hat * s.sigma_hat;

    CHECK(est.value(s.mu_hat) ==
          doctest::Approx(carrier.value(s.mu_hat) * std::sqrt(1.0 + h * h / s2)).epsilon(1e-13));

    for (int i = 0; i < 20; ++i) {
        const double x = s.mu_hat + (i - 9.5) * 0.25 * s.sigma_hat;
        auto denom = integrate(
            [&](double t) { return phi((t - x) / h) / h * normal_pdf(t, s.mu_hat, s.sigma_hat); },
            x - 12.0 * h, x + 12.0 * h, 1e-13);
        const double oracle = carrier.value(x) * normal_pdf(x, s.mu_hat, s.sigma_hat) / denom.value;
        CHECK(est.value(x) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("local linear value at a symmetric pair midpoint") {
    Sample data({-1.0, 1.0});
    const double h = 0.8;
    auto est = local_linear_fit(data, h);
    auto carrier = kde_fit(data, h, KernelSpec::gaussian());
    const double s2 = 1.0;
    CHECK(est.value(0.0) ==
          doctest::Approx(carrier.value(0.0) * std::sqrt(1.0 + h * h / s2)).epsilon(1e-13));
}

TEST_CASE("local linear throws far outside the sample") {
    auto data = normal_sample(40, 43);
    auto est = local_linear_fit(data, 0.2);
    CHECK_THROWS_AS((void)est.value(data.max() + 50.0), EvaluationOutsideSupport);
}

TEST_CASE("derivatives match finite differences") {
    auto data = normal_sample(80, 47);
    const double h = 0.35;
    const double step = 1e-6;
    for (auto& [name, fit] : all_fitters()) {
        CAPTURE(name);
        auto est = fit(data, h);
        for (int i = 0; i < 15; ++i) {
            const double x = data.mean() + (i - 7) * 0.3 * data.sd();
            const double fd = (est.value(x + step) - est.value(x - step)) / (2.0 * step);
            CHECK(est.deriv(x) == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("only the gaussian kernel is accepted where a kernel is taken") {
    auto data = normal_sample(30, 53);
    CHECK_THROWS_AS((void)jones_fit(data, 0.3, KernelSpec::epanechnikov()), ValidationError);
}

TEST_CASE("degenerate inputs are rejected") {
    Sample single({1.0});
    Sample constant({2.0, 2.0, 2.0});
    auto data = normal_sample(30, 59);
    for (auto& [name, fit] : all_fitters()) {
        CAPTURE(name);
        CHECK_THROWS_AS((void)fit(single, 0.3), ValidationError);
        CHECK_THROWS_AS((void)fit(constant, 0.3), ValidationError);
        CHECK_THROWS_AS((void)fit(data, 0.0), ValidationError);
        CHECK_THROWS_AS((void)fit(data, -1.0), ValidationError);
    }
}

TEST_CASE("nonnegative on a wide grid") {
    auto data = normal_sample(60, 61);
    for (auto& [name, fit] : all_fitters()) {
        CAPTURE(name);
        auto est = fit(data, 0.3);
        for (int i = 0; i <= 40; ++i) {
            const double x = data.mean() + (i - 20) * 0.2 * data.sd();
            CHECK(est.value(x) >= 0.0);
        }
    }
}

TEST_CASE("all four approach the kernel estimate as h shrinks") {
    // The local linear fit needs a larger sample before its distance to the
    // kernel estimate is bias- rather than noise-dominated at small h.
    auto small = normal_sample(100, 67);
    auto big = normal_sample(4000, 67);
    for (auto& [name, fit] : all_fitters()) {
        CAPTURE(name);
        const Sample& data = std::string(name) == "local2" ? big : small;
        double previous = std::numeric_limits<double>::infinity();
        for (double h : {0.4, 0.2, 0.1, 0.05}) {
            auto est = fit(data, h);
            auto base = kde_fit(data, h, KernelSpec::gaussian());
            double sup = 0.0;
            for (int i = 0; i <= 20; ++i) {
                const double x = data.mean() + (i - 10) * 0.2 * data.sd();
                sup = std::max(sup, std::abs(est.value(x) - base.value(x)));
            }
            CHECK(sup < previous);
            previous = sup;
        }
    }
}

namespace {

double integral_defect(const DensityEstimate& est, const Sample& data, double h) {
    const double lo = std::max(data.mean() - 6.0 * (data.sd() + h), data.min() - 20.0 * h);
    const double hi = std::min(data.mean() + 6.0 * (data.sd() + h), data.max() + 20.0 * h);
    auto total = integrate([&](double x) { return est.value(x); }, lo, hi, 1e-12);
    return std::abs(total.value - 1.0);
}

}  // namespace

TEST_CASE("multiplicative corrections lose their integral defect faster than h squared") {
    auto data = normal_sample(500, 71);
    for (auto& [name, fit] : all_fitters()) {
        if (std::string(name) == "jones" || std::string(name) == "local2") continue;
        CAPTURE(name);
        std::vector<double> defect;
        for (double h : {0.4, 0.2, 0.1}) {
            defect.push_back(integral_defect(fit(data, h), data, h));
        }
        CHECK(defect[0] > defect[1]);
        CHECK(defect[1] > defect[2]);
        CHECK(defect[0] / defect[1] > 4.0);
        CHECK(defect[2] < 1e-4);
    }
}

TEST_CASE("local linear integral defect shrinks with sample size") {
    const double h = 0.3;
    std::vector<double> defect;
    for (long n : {125L, 500L, 2000L}) {
        auto data = normal_sample(n, 71);
        defect.push_back(integral_defect(local_linear_fit(data, h), data, h));
    }
    CHECK(defect[0] > defect[1]);
    CHECK(defect[1] > defect[2]);
    CHECK(defect[2] < 1e-3);
}

TEST_CASE("location equivariance") {
    auto data = normal_sample(50, 73);
    const double shift = 13.5;
    std::vector<double> moved = data.values();
    for (auto& v : moved) v += shift;
    Sample translated(moved);
    for (auto& [name, fit] : all_fitters()) {
        CAPTURE(name);
        auto base = fit(data, 0.3);
        auto shifted = fit(translated, 0.3);
        for (int i = 0; i <= 10; ++i) {
            const double x = data.mean() + (i - 5) * 0.4 * data.sd();
            CHECK(std::abs(base.value(x) - shifted.value(x + shift)) < 1e-12);
        }
    }
}
