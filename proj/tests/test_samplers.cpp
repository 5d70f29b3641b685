#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "ellsym/errors.hpp"
#include "ellsym/samplers.hpp"
#include "ellsym/statdist.hpp"

using namespace ellsym;

namespace {

// One-sample Kolmogorov-Smirnov statistic against a given CDF.
double ks_stat(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        sup = std::max(sup, std::abs(f - (i + 1) / n));
        sup = std::max(sup, std::abs(f - i / n));
    }
    return sup;
}

// 1% critical value of the KS statistic (asymptotic).
double ks_crit_1pct(int n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

} // namespace

TEST_CASE("RngStream substreams are reproducible and distinct") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool identical = true, differs_stream = false, differs_seed = false;
    for (int i = 0; i < 100; ++i) {
        const double ua = a.uniform();
        identical = identical && (ua == b.uniform());
        differs_stream = differs_stream || (ua != c.uniform());
        differs_seed = differs_seed || (ua != d.uniform());
        (void)ua;
    }
    CHECK(identical);
    CHECK(differs_stream);
    CHECK(differs_seed);
}

TEST_CASE("elliptical Gaussian sample has the right law") {
    const int n = 20000;
    const RadialDensity g = RadialDensity::make_gaussian(3);
    Eigen::VectorXd theta(3);
    theta << 1.0, -2.0, 0.5;
    Eigen::MatrixXd s(3, 3);
    s << 2.0, 0.5, 0.0, 0.5, 1.0, 0.3, 0.0, 0.3, 1.5;
    const SpdMatrix sigma{s};
    RngStream rng(2718, 0);
    const Eigen::MatrixXd x = sample_elliptical(g, theta, sigma, n, rng);

    SUBCASE("mean and covariance within Monte Carlo error") {
        const Eigen::VectorXd mean = x.colwise().mean();
        for (int j = 0; j < 3; ++j) {
            const double se = std::sqrt(s(j, j) / n);
            CHECK(std::abs(mean(j) - theta(j)) < 4.0 * se);
        }
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(3, 3);
        for (int i = 0; i < n; ++i) {
            const Eigen::VectorXd z = x.row(i).transpose() - mean;
            cov += z * z.transpose();
        }
        cov /= n;
        // Covariance-entry MC standard error under Gaussianity.
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const double se =
                    std::sqrt((s(a, a) * s(b, b) + s(a, b) * s(a, b)) / n);
                CHECK(std::abs(cov(a, b) - s(a, b)) < 4.0 * se);
            }
    }
    SUBCASE("squared Mahalanobis distances are chi-square(3)") {
        const Eigen::MatrixXd sinv = s.inverse();
        std::vector<double> d2(n);
        for (int i = 0; i < n; ++i) {
            const Eigen::VectorXd z = x.row(i).transpose() - theta;
            d2[i] = z.dot(sinv * z);
        }
        CHECK(ks_stat(d2, [](double v) { return chi2_cdf(v, 3.0); }) <
              ks_crit_1pct(n));
    }
}

TEST_CASE("Student radii reproduce the F connection") {
    // d2 / d * (nu / (nu-2)) ~ F(d, nu); check via the chi2 ratio CDF
    // using a plain Monte Carlo on the second chi-square.
    const int n = 20000;
    const RadialDensity g = RadialDensity::make_student(5.0, 2);
    RngStream rng(31, 4);
    const Eigen::MatrixXd x = sample_elliptical(
        g, Eigen::VectorXd::Zero(2), SpdMatrix::identity(2), n, rng);
    // E[rho^2] = d exactly for the standardized family.
    double m2 = 0.0;
    for (int i = 0; i < n; ++i) m2 += x.row(i).squaredNorm();
    m2 /= n;
    // var(rho^2) = E[rho^4] - d^2 with E[rho^4] = d(d+2)(nu-2)/(nu-4) = 24.
    const double se = std::sqrt((24.0 - 4.0) / n);
    CHECK(std::abs(m2 - 2.0) < 4.0 * se);
}

TEST_CASE("generalized skew-elliptical sampler") {
    SUBCASE("d = 1 Gaussian base is skew-normal") {
        const int n = 40000;
        const double lam = 2.0;
        RngStream rng(99, 1);
        Eigen::VectorXd lambda(1), theta(1);
        lambda << lam;
        theta << 0.0;
        const Eigen::MatrixXd x =
            sample_gse(RadialDensity::make_gaussian(1), theta,
                       SpdMatrix::identity(1), lambda, n, rng);
        // P(X <= 0) = 1/2 - arctan(lambda)/pi for the skew-normal law.
        const double p0 = 0.5 - std::atan(lam) / M_PI;
        int below = 0;
        for (int i = 0; i < n; ++i) below += x(i, 0) <= 0.0;
        const double se = std::sqrt(p0 * (1.0 - p0) / n);
        CHECK(std::abs(below / static_cast<double>(n) - p0) < 4.0 * se);
        // E[X] = sqrt(2/pi) * lambda / sqrt(1 + lambda^2).
        const double mu = std::sqrt(2.0 / M_PI) * lam / std::sqrt(1.0 + lam * lam);
        CHECK(std::abs(x.col(0).mean() - mu) < 4.0 / std::sqrt(n));
    }
    SUBCASE("lambda = 0 reduces to the symmetric law") {
        const int n = 30000;
        RngStream rng(5, 5);
        const Eigen::MatrixXd x =
            sample_gse(RadialDensity::make_gaussian(2), Eigen::VectorXd::Zero(2),
                       SpdMatrix::identity(2), Eigen::VectorXd::Zero(2), n, rng);
        CHECK(std::abs(x.col(0).mean()) < 4.0 / std::sqrt(n));
        CHECK(std::abs(x.col(1).mean()) < 4.0 / std::sqrt(n));
        std::vector<double> d2(n);
        for (int i = 0; i < n; ++i) d2[i] = x.row(i).squaredNorm();
        CHECK(ks_stat(d2, [](double v) { return chi2_cdf(v, 2.0); }) <
              ks_crit_1pct(n));
    }
}

TEST_CASE("sinh-arcsinh sampler") {
    SUBCASE("eps = 0 is the identity transform") {
        RngStream r1(7, 0), r2(7, 0);
        const Eigen::MatrixXd a = sample_elliptical(
            RadialDensity::make_gaussian(2), Eigen::VectorXd::Zero(2),
            SpdMatrix::identity(2), 50, r1);
        const Eigen::MatrixXd b =
            sample_sas(RadialDensity::make_gaussian(2), Eigen::VectorXd::Zero(2),
                       SpdMatrix::identity(2), Eigen::VectorXd::Zero(2), 50, r2);
        CHECK((a - b).norm() < 1e-12);
    }
    SUBCASE("positive eps skews to the right") {
        const int n = 30000;
        RngStream rng(11, 3);
        Eigen::VectorXd eps(1);
        eps << 0.8;
        const Eigen::MatrixXd x =
            sample_sas(RadialDensity::make_gaussian(1), Eigen::VectorXd::Zero(1),
                       SpdMatrix::identity(1), eps, n, rng);
        // sinh(asinh(z) + eps) is strictly increasing in eps: the median
        // shifts to sinh(eps) > 0.
        std::vector<double> v(x.col(0).data(), x.col(0).data() + n);
        std::nth_element(v.begin(), v.begin() + n / 2, v.end());
        CHECK(v[n / 2] > 0.5 * std::sinh(0.8));
    }
}

TEST_CASE("Gaussian mixture sampler") {
    SUBCASE("weight validation") {
        RngStream rng(1, 1);
        const Eigen::VectorXd mu = Eigen::VectorXd::Zero(2);
        CHECK_THROWS_AS(sample_gauss_mixture(1.5, mu, SpdMatrix::identity(2),
                                             mu, SpdMatrix::identity(2), 10,
                                             rng),
                        ConfigError);
    }
    SUBCASE("mean matches the weighted component means") {
        const int n = 40000;
        RngStream rng(13, 2);
        Eigen::VectorXd mu1(2), mu2(2);
        mu1 << 4.0, 0.0;
        mu2 << -16.0, 0.0;
        const Eigen::MatrixXd x =
            sample_gauss_mixture(0.8, mu1, SpdMatrix::identity(2), mu2,
                                 SpdMatrix::identity(2), n, rng);
        // 0.8 * 4 + 0.2 * (-16) = 0: the centered mixture.
        // sd of component means: sqrt(1 + 0.8*16 + 0.2*256 - 0) ~ 8.1
        CHECK(std::abs(x.col(0).mean()) < 4.0 * 8.1 / std::sqrt(n));
        CHECK(std::abs(x.col(1).mean()) < 4.0 / std::sqrt(n));
    }
    SUBCASE("translating both components translates the sample exactly") {
        RngStream r1(21, 0), r2(21, 0);
        Eigen::VectorXd mu1(2), mu2(2), shift(2);
        mu1 << 1.0, 0.0;
        mu2 << -1.0, 2.0;
        shift << 5.0, -3.0;
        const Eigen::MatrixXd a =
            sample_gauss_mixture(0.3, mu1, SpdMatrix::identity(2), mu2,
                                 SpdMatrix::identity(2), 40, r1);
        const Eigen::MatrixXd b = sample_gauss_mixture(
            0.3, mu1 + shift, SpdMatrix::identity(2), mu2 + shift,
            SpdMatrix::identity(2), 40, r2);
        CHECK(((a.rowwise() + shift.transpose()) - b).norm() < 1e-10);
    }
}

TEST_CASE("alternative spec dispatch") {
    AlternativeSpec spec;
    spec.family = "no-such-family";
    RngStream rng(1, 0);
    CHECK_THROWS_AS(sample_alternative(spec, 10, rng), ConfigError);

    AlternativeSpec ell;
    ell.family = "elliptical";
    ell.density = "t5";
    ell.theta = Eigen::VectorXd::Zero(2);
    ell.sigma = Eigen::MatrixXd::Identity(2, 2);
    RngStream rng2(1, 0);
    const Eigen::MatrixXd x = sample_alternative(ell, 25, rng2);
    CHECK(x.rows() == 25);
    CHECK(x.cols() == 2);
}
