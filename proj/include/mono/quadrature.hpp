#pragma once

#include <functional>
#include <vector>

#include "mono/core.hpp"

namespace mono::quad {

struct Result {
    Complex value{};
    double error = 0.0;
    bool converged = true;
    int evaluations = 0;
};

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_intervals = 200000;
    int initial_panels = 1;
};

using ComplexFn = std::function<Complex(double)>;

// Globally adaptive Gauss-Kronrod 7/15 (qag style, worst interval split first).
Result adaptive(const ComplexFn& f, double a, double b, const Options& opt = {});

// Real-valued convenience wrapper.
double adaptive_real(const std::function<double(double)>& f, double a, double b,
                     const Options& opt = {}, bool* converged = nullptr);

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre on [-1, 1].
const Rule& gauss_legendre(int n);

// Fixed composite Gauss-Legendre on `panels` equal panels.
Complex composite_gl(const ComplexFn& f, double a, double b, int panels, int order = 16);

}  // namespace mono::quad
