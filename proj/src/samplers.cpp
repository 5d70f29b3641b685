#include "ellsym/samplers.hpp"

#include <cmath>

#include "ellsym/errors.hpp"
#include "ellsym/statdist.hpp"

namespace ellsym {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
    // Mix the pair so that (seed, k) and (seed, k+1) are unrelated.
    std::uint64_t s = splitmix64(seed ^ splitmix64(stream_id));
    std::seed_seq seq{static_cast<std::uint32_t>(s & 0xffffffffULL),
                      static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(stream_id & 0xffffffffULL),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RngStream::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RngStream::normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

double RngStream::chi2(double df) {
    return std::gamma_distribution<double>(0.5 * df, 2.0)(engine_);
}

Eigen::VectorXd RngStream::normal_vector(int d) {
    Eigen::VectorXd z(d);
    for (int j = 0; j < d; ++j) z(j) = normal();
    return z;
}

namespace {

double draw_radius(const RadialDensity& g, RngStream& rng) {
    const int d = g.dim();
    if (g.is_gaussian()) return std::sqrt(rng.chi2(d));
    // Standardized Student radius: rho^2 = (nu-2) * chi2_d / chi2_nu.
    const double nu = g.nu();
    const double num = rng.chi2(d);
    const double den = rng.chi2(nu);
    return std::sqrt((nu - 2.0) * num / den);
}

Eigen::MatrixXd sample_centered(const RadialDensity& g, const SpdMatrix& sigma,
                                int n, RngStream& rng) {
    const int d = g.dim();
    if (sigma.dim() != d) throw ConfigError("sampler: Sigma dimension mismatch");
    const Eigen::MatrixXd root = sym_sqrt(sigma).matrix();
    Eigen::MatrixXd x(n, d);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd z = rng.normal_vector(d);
        const double nz = z.norm();
        if (nz < 1e-300) { --i; continue; }
        const double rho = draw_radius(g, rng);
        x.row(i) = (root * (rho / nz * z)).transpose();
    }
    return x;
}

} // namespace

Eigen::MatrixXd sample_elliptical(const RadialDensity& g, const Eigen::VectorXd& theta,
                                  const SpdMatrix& sigma, int n, RngStream& rng) {
    Eigen::MatrixXd x = sample_centered(g, sigma, n, rng);
    x.rowwise() += theta.transpose();
    return x;
}

Eigen::MatrixXd sample_gse(const RadialDensity& g, const Eigen::VectorXd& theta,
                           const SpdMatrix& sigma, const Eigen::VectorXd& lambda,
                           int n, RngStream& rng) {
    const int d = g.dim();
    if (lambda.size() != d) throw ConfigError("sample_gse: lambda dimension mismatch");
    const Eigen::MatrixXd w = sym_inv_sqrt(sigma).matrix();
    const Eigen::VectorXd proj = w.transpose() * lambda; // lambda' W z == proj' z
    Eigen::MatrixXd x = sample_centered(g, sigma, n, rng);
    for (int i = 0; i < n; ++i) {
        const double v = rng.uniform();
        if (v > norm_cdf(proj.dot(x.row(i).transpose()))) x.row(i) = -x.row(i);
    }
    x.rowwise() += theta.transpose();
    return x;
}

Eigen::MatrixXd sample_sas(const RadialDensity& base, const Eigen::VectorXd& theta,
                           const SpdMatrix& sigma, const Eigen::VectorXd& eps,
                           int n, RngStream& rng) {
    const int d = base.dim();
    if (eps.size() != d) throw ConfigError("sample_sas: eps dimension mismatch");
    Eigen::MatrixXd x = sample_centered(base, sigma, n, rng);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            x(i, j) = std::sinh(std::asinh(x(i, j)) + eps(j));
    x.rowwise() += theta.transpose();
    return x;
}

Eigen::MatrixXd sample_gauss_mixture(double w1, const Eigen::VectorXd& mu1,
                                     const SpdMatrix& sigma1,
                                     const Eigen::VectorXd& mu2,
                                     const SpdMatrix& sigma2, int n,
                                     RngStream& rng) {
    if (!(w1 >= 0.0 && w1 <= 1.0))
        throw ConfigError("sample_gauss_mixture: weight outside [0,1]");
    const int d = static_cast<int>(mu1.size());
    if (mu2.size() != d || sigma1.dim() != d || sigma2.dim() != d)
        throw ConfigError("sample_gauss_mixture: dimension mismatch");
    const Eigen::MatrixXd root1 = sym_sqrt(sigma1).matrix();
    const Eigen::MatrixXd root2 = sym_sqrt(sigma2).matrix();
    Eigen::MatrixXd x(n, d);
    for (int i = 0; i < n; ++i) {
        const bool first = rng.uniform() < w1;
        const Eigen::VectorXd z = rng.normal_vector(d);
        if (first)
            x.row(i) = (mu1 + root1 * z).transpose();
        else
            x.row(i) = (mu2 + root2 * z).transpose();
    }
    return x;
}

Eigen::MatrixXd sample_alternative(const AlternativeSpec& spec, int n,
                                   RngStream& rng) {
    if (spec.family == "gauss-mixture") {
        return sample_gauss_mixture(spec.weight1, spec.mu1, SpdMatrix(spec.sigma1),
                                    spec.mu2, SpdMatrix(spec.sigma2), n, rng);
    }
    const int d = static_cast<int>(spec.theta.size());
    const RadialDensity g = RadialDensity::parse(spec.density, d);
    const SpdMatrix sigma{spec.sigma};
    if (spec.family == "elliptical")
        return sample_elliptical(g, spec.theta, sigma, n, rng);
    if (spec.family == "gse")
        return sample_gse(g, spec.theta, sigma, spec.lambda, n, rng);
    if (spec.family == "sas")
        return sample_sas(g, spec.theta, sigma, spec.eps, n, rng);
    throw ConfigError("sample_alternative: unsupported family '" + spec.family + "'");
}

} // namespace ellsym
