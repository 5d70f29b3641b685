#pragma once

#include <string>
#include <vector>

#include "ellsym/radial.hpp"

namespace ellsym {

// Local noncentrality parameters of the chi-square limits under
// contiguous skew alternatives with direction tau3.

double noncentrality_specified(double pi_dot, double tau_sq);

double noncentrality_parametric(const RadialDensity& f, double pi_dot,
                                double tau_sq);

double noncentrality_semiparam(const RadialDensity& f, const RadialDensity& g,
                               double pi_dot, double tau_sq);

double noncentrality_pg(const RadialDensity& g, double pi_dot, double tau_sq);

// ARE of the semiparametric f-score test with respect to the
// pseudo-Gaussian test, under data density g.
double are_semiparam_vs_pg(const RadialDensity& f, const RadialDensity& g);

// Power of a chi2_d level-alpha test at the given noncentrality.
double local_power(double noncentrality, int d, double alpha);

struct AreRow {
    int d;
    std::string reference;
    std::string under;
    double are;
    std::string error; // non-empty when the pair is inadmissible
};

// Cartesian grid of ARE values; inadmissible pairs reported per-row.
std::vector<AreRow> are_grid(const std::vector<int>& dims,
                             const std::vector<std::string>& refs,
                             const std::vector<std::string>& unders);

} // namespace ellsym
