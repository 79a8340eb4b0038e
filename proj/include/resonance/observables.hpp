#pragma once

#include <optional>

#include "resonance/oracle.hpp"

namespace resonance {

/// One reported resonance: kinematics derived from the expansion pole w,
/// plus the refined root and its relative distance when available.
struct ResonanceRecord {
    int n = 0;
    Branch branch = Branch::None;
    int order = 0;
    Complex w;              // expansion pole
    Complex k;              // w / (2*pi*i)
    Complex E;              // k^2
    double gamma = 0.0;     // -2 Im E
    double residual = 0.0;  // |pole-condition residual|, at w_exact when known
    std::optional<Complex> w_exact;
    std::optional<double> rel_error;  // |w - w_exact| / |w_exact|
};

inline Complex momentum_from_w(Complex w) { return w / two_pi_i; }

inline double decay_rate(const ResonanceRecord& rec) { return -2.0 * rec.E.imag(); }

/// Leading-order (in 1/n) decay rate of the single-barrier resonance n:
/// (n/pi) * log(1 + (2*pi*z*n)^2). Physical rates need a real coupling.
inline double gamma_leading(int n, double z) {
    if (n < 1) throw std::domain_error("gamma_leading: n must be a positive integer");
    if (!std::isfinite(z)) throw std::invalid_argument("gamma_leading: non-finite coupling");
    const double x = 2.0 * pi * z * static_cast<double>(n);
    return static_cast<double>(n) / pi * std::log1p(x * x);
}

/// Same leading rate extracted from any model's leading shift function: the
/// O(n) part of -2 Im E with k = n + sigma0/(2*pi*i).
inline double leading_rate_from_sigma0(int n, Complex sigma0) {
    return -2.0 * std::imag(static_cast<double>(n) * sigma0 / (pi * Complex{0.0, 1.0}));
}

/// Outgoing-wave amplitude of the single-barrier resonance beyond the
/// barrier: a = pi*z*k / (2*pi*i*z*k + 1).
inline Complex outside_amplitude(Complex k, Complex z) {
    const Complex den = two_pi_i * z * k + 1.0;
    if (den == Complex{}) throw singularity_error("outside_amplitude: vanishing denominator");
    return pi * z * k / den;
}

/// Single-barrier resonance wavefunction at position x >= 0 and time t:
/// sqrt(2/pi) e^{-iEt} sin(kx) in the cavity (x <= pi, boundary included)
/// and sqrt(2/pi) e^{-iEt} a e^{ikx} beyond the barrier. At an exact pole
/// the two pieces match at x = pi; at an approximate one they differ by the
/// pole-condition residual.
inline Complex winter_wavefunction(double x, double t, const ResonanceRecord& rec, Complex z) {
    if (!(x >= 0.0)) throw std::domain_error("winter_wavefunction: x must be >= 0");
    const Complex phase = std::exp(Complex{0.0, -1.0} * rec.E * t);
    const double norm = std::sqrt(2.0 / pi);
    const Complex spatial = (x <= pi)
                                ? std::sin(rec.k * x)
                                : outside_amplitude(rec.k, z) * std::exp(Complex{0.0, 1.0} * rec.k * x);
    return norm * phase * spatial;
}

/// Assemble the record for one (n, branch). The refined root, when it
/// converged, supplies w_exact, the relative error and the residual column;
/// otherwise the residual is evaluated at the expansion pole itself.
inline ResonanceRecord make_record(const ModelSpec& model, const ExpansionResult& approx,
                                   const RootResult* refined = nullptr) {
    ResonanceRecord rec;
    rec.n = approx.n;
    rec.branch = approx.branch;
    rec.order = approx.order;
    rec.w = approx.w_approx;
    rec.k = momentum_from_w(rec.w);
    rec.E = rec.k * rec.k;
    rec.gamma = -2.0 * rec.E.imag();
    if (refined != nullptr && refined->converged) {
        rec.w_exact = refined->w;
        rec.residual = refined->residual_norm;
        rec.rel_error = std::abs(rec.w - refined->w) / std::abs(refined->w);
    } else {
        rec.residual = std::abs(residual(model, rec.w));
    }
    return rec;
}

}  // namespace resonance
