#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "ellsym/estimators.hpp"
#include "ellsym/radial.hpp"
#include "ellsym/statdist.hpp"
#include "ellsym/ulan.hpp"

namespace ellsym {

struct TestResult {
    double statistic = 0.0;
    int df = 0;                 // 0 when calibrated by a simulated null table
    double p_value = 1.0;
    std::string test_name;
    bool location_specified = false;
    Eigen::VectorXd theta0;     // only meaningful for specified-location tests
    std::string reference_density; // empty when not applicable
    EstimatorChoice estimators;
    int n = 0;
    int d = 0;
};

// Specified-location Gaussian-optimal test:
// Q = n (Xbar - theta0)' Sigma^{-1} (Xbar - theta0), chi2_d.
TestResult test_specified(const Eigen::MatrixXd& data, const Eigen::VectorXd& theta0,
                          const EstimatorChoice& choice = {});

// f-parametric optimal test Q_f (unspecified location), chi2_d.
TestResult test_parametric(const Eigen::MatrixXd& data, const RadialDensity& f,
                           const EstimatorChoice& choice = {});

// Empirical estimate of K_{d,f,g} from a decomposed sample.
double estimate_K(const SampleDecomposition& dec, const RadialDensity& f);

// Semiparametric test Q_f^dd (unspecified location, unknown g), chi2_d.
TestResult test_semiparam(const Eigen::MatrixXd& data, const RadialDensity& f,
                          const EstimatorChoice& choice = {});

// Cassart pseudo-Gaussian test, unspecified location, chi2_d.
TestResult test_cassart_pg(const Eigen::MatrixXd& data,
                           const EstimatorChoice& choice = {});

// Cassart pseudo-Gaussian test with specified location, chi2_d.
TestResult test_cassart_pg_specified(const Eigen::MatrixXd& data,
                                     const Eigen::VectorXd& theta0,
                                     const EstimatorChoice& choice = {});

// Baringhaus rank statistic; p-value from a simulated null table.
TestResult test_baringhaus(const Eigen::MatrixXd& data, const Eigen::VectorXd& theta0,
                           const NullTable& table);

// Raw Baringhaus statistic (used for both testing and table simulation).
double baringhaus_statistic(const Eigen::MatrixXd& data,
                            const Eigen::VectorXd& theta0);

// Fechner-type sign vector S^U of Eq. (8): (U_1^2 sign(U_1), ...).
Eigen::VectorXd fechner_sign(const Eigen::VectorXd& u);

} // namespace ellsym
