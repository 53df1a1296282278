#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "arc_region.hpp"
#include "errors.hpp"
#include "rootfind.hpp"

namespace cheeger2d {

enum class Branch { AllZero, Profile, AllOne };

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::AllZero: return "AllZero";
        case Branch::Profile: return "Profile";
        default: return "AllOne";
    }
}

// Height of the catenoid-type radial profile with first-integral constant mu,
// measured at radius fraction t. Vanishes at t = 1 and for mu = 0.
inline double profile_height(double mu, double t, double R) {
    if (!(R > 0.0)) throw out_of_domain("disk radius must be positive");
    if (mu < 0.0 || t > 1.0 || mu > t)
        throw out_of_domain("profile constant must satisfy 0 <= mu <= t <= 1");
    if (mu == 0.0) return 0.0;
    double num = 1.0 + std::sqrt(std::max(0.0, 1.0 - mu * mu));
    double den = t + std::sqrt(std::max(0.0, t * t - mu * mu));
    return mu * R * std::log(num / den);
}

// Largest feasible first-integral constant for plateau fraction rho: rho
// itself when the profile cannot reach height 1, otherwise the unique root of
// profile_height(mu, rho) = 1 (strictly increasing in mu).
inline double mu_bar(double rho, double R) {
    if (rho < 0.0 || rho > 1.0) throw out_of_domain("plateau fraction must lie in [0, 1]");
    if (rho == 0.0) return 0.0; // continuity convention
    if (profile_height(rho, rho, R) <= 1.0) return rho;
    return bisect_predicate([&](double mu) { return profile_height(mu, rho, R) > 1.0; },
                            0.0, rho, 1e-12);
}

// Total energy of the optimal radial configuration with plateau fraction rho.
inline double plateau_energy(double rho, double lambda, double R) {
    if (rho < 0.0 || rho > 1.0) throw out_of_domain("plateau fraction must lie in [0, 1]");
    const double piR2 = kPi * R * R;
    if (rho == 0.0) return piR2;
    double mb = mu_bar(rho, R);
    double s1 = std::sqrt(std::max(0.0, 1.0 - mb * mb));
    double s2 = std::sqrt(std::max(0.0, rho * rho - mb * mb));
    double reach = profile_height(mb, rho, R);
    return piR2 * (s1 - rho * s2 + mb * mb * std::log((1.0 + s1) / (rho + s2)) +
                   2.0 * rho * (1.0 - reach) / R + (1.0 - lambda) * rho * rho);
}

// Total-variation variant: flat below the Cheeger constant of the disk,
// affine above it.
inline double beta0_disk(double lambda, double R) {
    const double piR2 = kPi * R * R;
    if (lambda <= 2.0 / R) return piR2;
    return 2.0 * kPi * R + (1.0 - lambda) * piR2;
}

struct RadialSolution {
    double lambda = 0.0;
    double R = 0.0;
    double rho_bar = 0.0;  // plateau radius fraction
    double mu_bar = 0.0;   // first-integral constant at the optimum
    double jump = 0.0;     // trace defect 1 - profile_height(mu_bar, rho_bar)
    double beta = 0.0;     // minimal energy
    Branch branch = Branch::AllZero;
};

// Global minimum of the plateau energy over [0, 1]: dense grid to bracket
// every local minimum, golden-section refinement, endpoint comparison. Ties
// with an endpoint report the trivial branch.
inline RadialSolution solve_beta_disk(double lambda, double R) {
    if (lambda < 0.0) throw out_of_domain("lambda must be non-negative");
    if (!(R > 0.0)) throw out_of_domain("disk radius must be positive");
    auto energy = [&](double rho) { return plateau_energy(rho, lambda, R); };

    const int n = 1000;
    std::vector<double> val(n + 1);
    for (int i = 0; i <= n; ++i) val[static_cast<std::size_t>(i)] = energy(static_cast<double>(i) / n);

    double best_rho = 0.0;
    double best_val = val[0];
    auto consider = [&](double rho, double v) {
        if (v < best_val) {
            best_val = v;
            best_rho = rho;
        }
    };
    consider(1.0, val[static_cast<std::size_t>(n)]);
    for (int i = 1; i < n; ++i) {
        if (val[static_cast<std::size_t>(i)] <= val[static_cast<std::size_t>(i - 1)] &&
            val[static_cast<std::size_t>(i)] <= val[static_cast<std::size_t>(i + 1)]) {
            double lo = static_cast<double>(i - 1) / n;
            double hi = static_cast<double>(i + 1) / n;
            double rho = golden_min(energy, lo, hi, 1e-10);
            consider(rho, energy(rho));
        }
    }
    // the branch handoff at the critical lambdas creates a shallow dip inside
    // the outermost grid cells; refine those two unconditionally
    for (auto [lo, hi] : {std::pair{0.0, 1.0 / n}, {1.0 - 1.0 / n, 1.0}}) {
        double rho = golden_min(energy, lo, hi, 1e-10);
        consider(rho, energy(rho));
    }

    const double tie = 1e-11 * kPi * R * R * std::max(1.0, lambda);
    RadialSolution sol;
    sol.lambda = lambda;
    sol.R = R;
    if (val[0] <= best_val + tie) {
        sol.branch = Branch::AllZero;
        sol.rho_bar = 0.0;
        sol.mu_bar = 0.0;
        sol.jump = 0.0;
        sol.beta = val[0];
    } else if (val[static_cast<std::size_t>(n)] <= best_val + tie) {
        sol.branch = Branch::AllOne;
        sol.rho_bar = 1.0;
        sol.mu_bar = 1.0;
        sol.jump = 1.0;
        sol.beta = val[static_cast<std::size_t>(n)];
    } else {
        sol.branch = Branch::Profile;
        sol.rho_bar = best_rho;
        sol.mu_bar = mu_bar(best_rho, R);
        sol.jump = std::max(0.0, 1.0 - profile_height(sol.mu_bar, best_rho, R));
        sol.beta = best_val;
    }
    return sol;
}

// Critical values of lambda for the disk: the trivial profiles u = 0 / u = 1
// stop/start being optimal at lambda0 / lambda1. Both branch predicates are
// monotone in lambda, so bisection applies.
inline std::pair<double, double> critical_lambdas_disk(double R) {
    if (!(R > 0.0)) throw out_of_domain("disk radius must be positive");
    double hi = 2.0 / R + 2.0;
    double lambda0 = bisect_predicate(
        [&](double l) { return solve_beta_disk(l, R).branch != Branch::AllZero; }, 0.0, hi,
        1e-8);
    double lambda1 = bisect_predicate(
        [&](double l) { return solve_beta_disk(l, R).branch == Branch::AllOne; }, 0.0, hi,
        1e-8);
    return {lambda0, lambda1};
}

} // namespace cheeger2d
