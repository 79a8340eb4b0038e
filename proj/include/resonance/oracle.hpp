#pragma once

#include "resonance/expansion.hpp"

namespace resonance {

struct NewtonOptions {
    // On |residual|. The triple model's residual bottoms out near 3e-13 by
    // n = 10 (term magnitudes ~200 cancelling to zero), so 1e-13 would report
    // spurious non-convergence there; 1e-12 is the bound every reported root
    // is held to anyway.
    double tolerance = 1e-12;
    int max_iterations = 50;
    double basin_radius = pi;   // give up if the iterate strays this far from the seed
    int max_halvings = 20;      // damping attempts per step
};

enum class RootStatus { Converged, MaxIterations, BasinEscape };

struct RootResult {
    Complex w;
    Complex seed;
    int iterations = 0;
    double residual_norm = 0.0;
    bool converged = false;
    RootStatus status = RootStatus::MaxIterations;
};

/// Damped Newton iteration on the model's pole condition. Each raw step is
/// halved (up to max_halvings times) until the residual actually drops; an
/// iterate leaving the seed's basin radius aborts with BasinEscape, so a
/// seed near pole n cannot silently report the root of a neighbouring n.
///
/// The iteration runs in strip-offset coordinates w = v + 2*pi*i*m, with m
/// the seed's strip index: v stays O(1) and is resolved far below the ulp of
/// w itself, which is what lets the residual reach ~1e-13 even at n = 10+
/// where |residual'| * ulp(Im w) alone would exceed 1e-12.
inline RootResult newton_solve(const ModelSpec& model, Complex seed,
                               const NewtonOptions& opts = {}) {
    if (!is_finite(seed)) throw std::invalid_argument("newton_solve: non-finite seed");
    if (opts.tolerance <= 0.0) throw std::invalid_argument("newton_solve: tolerance must be > 0");
    if (opts.max_iterations < 1) throw std::invalid_argument("newton_solve: max_iterations must be >= 1");

    const double m = std::round(seed.imag() / two_pi);
    const double strip_im = two_pi * m;
    // strip_im + strip_err == 2*pi*m to double-double accuracy
    const double strip_err = std::fma(two_pi, m, -strip_im) + m * two_pi_residual;
    // exact: seed.imag() and strip_im are within a factor of two of each other
    const Complex v_seed{seed.real(), seed.imag() - strip_im};

    RootResult out;
    out.seed = seed;

    Complex v = v_seed;
    Complex f = residual_reduced(model, v, strip_im, strip_err);
    double fn = std::abs(f);

    for (int it = 0; it < opts.max_iterations; ++it) {
        if (fn < opts.tolerance) break;

        const Complex d =
            residual_derivative(model, Complex{v.real(), v.imag() + strip_im});
        if (d == Complex{} || !is_finite(d)) break;  // stationary point; cannot proceed

        Complex step = f / d;
        Complex trial;
        Complex ftrial;
        double ftn = 0.0;
        for (int h = 0;; ++h) {
            trial = v - step;
            ftrial = residual_reduced(model, trial, strip_im, strip_err);
            ftn = std::abs(ftrial);
            if (is_finite(trial) && std::isfinite(ftn) && ftn < fn) break;
            if (h >= opts.max_halvings) break;  // accept and let the iteration cap decide
            step *= 0.5;
        }

        v = trial;
        f = ftrial;
        fn = ftn;
        out.iterations = it + 1;

        if (std::abs(v - v_seed) > opts.basin_radius) {
            out.w = Complex{v.real(), v.imag() + strip_im};
            out.residual_norm = fn;
            out.status = RootStatus::BasinEscape;
            return out;
        }
    }

    out.w = Complex{v.real(), v.imag() + strip_im};
    out.residual_norm = fn;
    if (fn < opts.tolerance) {
        out.converged = true;
        out.status = RootStatus::Converged;
    }
    return out;
}

/// Exact pole of (model, n, branch): refine the order-`seed_order` expansion
/// value by Newton iteration on the transcendental pole condition.
inline RootResult exact_pole(const ModelSpec& model, int n, Branch branch, int seed_order,
                             const NewtonOptions& opts = {}) {
    const ExpansionResult seed = generic_pole_approx(model, n, branch, seed_order);
    return newton_solve(model, seed.w_approx, opts);
}

}  // namespace resonance
