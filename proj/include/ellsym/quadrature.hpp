#pragma once

#include <functional>

namespace ellsym {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4000;
};

// Adaptive Gauss-Kronrod (7-15) on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts = {});

// Adaptive quadrature on (0, inf) via the rational map r = t/(1-t).
double integrate_0_inf(const std::function<double(double)>& f,
                       const QuadOptions& opts = {});

} // namespace ellsym
