#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace resonance {

/// Working type for poles, couplings and expansion coefficients.
using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

inline constexpr double two_pi = 2.0 * pi;

/// What the double two_pi is missing: 2*pi - two_pi to the next 53 bits.
/// Lets 2*pi*m be carried as an exact double pair for integer m.
inline constexpr double two_pi_residual = 2.4492935982947064e-16;

/// 2*pi*i, the factor relating momentum and the pole variable: w = 2*pi*i*k.
inline constexpr Complex two_pi_i{0.0, 2.0 * pi};

/// Raised where a closed-form expression genuinely breaks down (logarithm of
/// zero, vanishing branch denominator) so callers never see Inf/NaN instead.
class singularity_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline bool is_finite(Complex c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

namespace detail {

// Collapse signed zeros so values on a branch cut land on its closed (upper)
// side: log(-x - 0.0i) must give +i*pi, same as log(-x + 0.0i).
inline Complex collapse_signed_zero(Complex c) {
    return {c.real() == 0.0 ? 0.0 : c.real(), c.imag() == 0.0 ? 0.0 : c.imag()};
}

}  // namespace detail

/// Principal logarithm, argument in (-pi, pi]. Negative real inputs map to
/// +i*pi regardless of the sign of a zero imaginary part.
inline Complex principal_log(Complex c) {
    if (!is_finite(c)) throw std::invalid_argument("principal_log: non-finite input");
    if (c == Complex{}) throw std::domain_error("principal_log: input is zero");
    return std::log(detail::collapse_signed_zero(c));
}

/// Principal square root, result argument in (-pi/2, pi/2]: Re >= 0, and
/// Im >= 0 on the cut where Re == 0. sqrt(0) = 0.
inline Complex principal_sqrt(Complex c) {
    if (!is_finite(c)) throw std::invalid_argument("principal_sqrt: non-finite input");
    return std::sqrt(detail::collapse_signed_zero(c));
}

}  // namespace resonance
