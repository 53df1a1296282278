#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "errors.hpp"
#include "radial_disk.hpp" // Branch

namespace cheeger2d {

// The elementary integrand g (reward for reaching height 1) and its convex
// envelope g**.
inline std::pair<double, double> g_and_gss(double t) {
    double g;
    if (t <= 0.0) g = -t;
    else if (t < 1.0) g = 0.0;
    else g = -1.0;
    double gss = -std::min(t, 1.0);
    return {g, gss};
}

struct OneDSolution {
    double lambda = 0.0;
    double R = 0.0;
    double alpha_c = 0.0; // optimal slope-support half-width in [0, R]
    double beta = 0.0;
    Branch branch = Branch::AllZero;
};

inline double ramp_energy_1d(double alpha, double lambda, double R) {
    return 2.0 * (std::sqrt(1.0 + alpha * alpha) + (1.0 - lambda) * (R - alpha));
}

inline double beta0_1d(double lambda, double R) {
    return 2.0 * R - 2.0 * std::max(0.0, lambda * R - 1.0);
}

// Closed-form minimization over ramp profiles on (-R, R): the ramp energy is
// strictly convex in the half-width, its stationary point solves
// alpha / sqrt(1 + alpha^2) = 1 - lambda. Ties at the thresholds report the
// trivial branch.
inline OneDSolution beta_1d(double lambda, double R) {
    if (lambda < 0.0) throw out_of_domain("lambda must be non-negative");
    if (!(R > 0.0)) throw out_of_domain("half-width must be positive");
    double alpha_c;
    if (lambda >= 1.0) {
        alpha_c = 0.0;
    } else if (lambda == 0.0) {
        alpha_c = R;
    } else {
        alpha_c = std::min(R, (1.0 - lambda) / std::sqrt(lambda * (2.0 - lambda)));
    }
    double f = ramp_energy_1d(alpha_c, lambda, R);
    OneDSolution sol;
    sol.lambda = lambda;
    sol.R = R;
    sol.alpha_c = alpha_c;
    if (2.0 * R <= f) {
        sol.branch = Branch::AllZero;
        sol.beta = 2.0 * R;
    } else {
        sol.branch = alpha_c == 0.0 ? Branch::AllOne : Branch::Profile;
        sol.beta = f;
    }
    return sol;
}

// lambda0(R) = 1/R for R <= 1, 2/(1+R^2) otherwise;
// lambda1(R) = 1/R for R <= 1, 1 otherwise.
inline std::pair<double, double> criticals_1d(double R) {
    if (!(R > 0.0)) throw out_of_domain("half-width must be positive");
    if (R <= 1.0) return {1.0 / R, 1.0 / R};
    return {2.0 / (1.0 + R * R), 1.0};
}

} // namespace cheeger2d
