#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "ellsym/matops.hpp"
#include "ellsym/radial.hpp"

namespace ellsym {

/// Deterministic substream: (seed, stream_id) fully determine the draws.
/// The pair is mixed through SplitMix64 before seeding the engine, so
/// nearby stream ids give unrelated streams.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    double uniform();               // U(0,1)
    double normal();                // N(0,1)
    double chi2(double df);
    Eigen::VectorXd normal_vector(int d);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Elliptical sample via X = theta + rho * Sigma^{1/2} U.
Eigen::MatrixXd sample_elliptical(const RadialDensity& g, const Eigen::VectorXd& theta,
                                  const SpdMatrix& sigma, int n, RngStream& rng);

// Generalized skew-elliptical sample by the exact sign-flip construction:
// draw Z elliptical about 0, keep Z if V <= Pi(lambda' Sigma^{-1/2} Z),
// else flip to -Z; Pi is the Gaussian distribution function.
Eigen::MatrixXd sample_gse(const RadialDensity& g, const Eigen::VectorXd& theta,
                           const SpdMatrix& sigma, const Eigen::VectorXd& lambda,
                           int n, RngStream& rng);

// Sinh-arcsinh-transformed elliptical sample: componentwise
// X_j = sinh(asinh(Z_j) + eps_j) applied to the correlated coordinates.
Eigen::MatrixXd sample_sas(const RadialDensity& base, const Eigen::VectorXd& theta,
                           const SpdMatrix& sigma, const Eigen::VectorXd& eps,
                           int n, RngStream& rng);

// Two-component Gaussian location-scatter mixture.
Eigen::MatrixXd sample_gauss_mixture(double w1, const Eigen::VectorXd& mu1,
                                     const SpdMatrix& sigma1,
                                     const Eigen::VectorXd& mu2,
                                     const SpdMatrix& sigma2, int n,
                                     RngStream& rng);

/// Declarative description of a data-generating process, as it appears in
/// simulation configs.
struct AlternativeSpec {
    std::string family;      // "elliptical", "gse", "sas", "gauss-mixture"
    std::string density;     // radial density name (elliptical/gse/sas base)
    Eigen::VectorXd theta;
    Eigen::MatrixXd sigma;
    Eigen::VectorXd lambda;  // gse skewness
    Eigen::VectorXd eps;     // sas skewness
    double weight1 = 0.5;    // mixture
    Eigen::VectorXd mu1, mu2;
    Eigen::MatrixXd sigma1, sigma2;
    std::string label;
};

Eigen::MatrixXd sample_alternative(const AlternativeSpec& spec, int n,
                                   RngStream& rng);

} // namespace ellsym
