#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "resonance/complex_ops.hpp"

namespace resonance {

/// Square-root determination a three-barrier pole belongs to; branchless
/// models use None.
enum class Branch { None, Plus, Minus };

/// Hard wall at the origin plus one delta barrier of inverse strength z at
/// x = pi. Pole condition: e^w - z*w - 1 = 0, w = 2*pi*i*k.
struct WinterModel {
    Complex z;
};

/// Two delta barriers (couplings z0 at x = 0, zp at x = pi) on the line.
/// Pole condition: e^w - (1 + z0*w)(1 + zp*w) = 0.
struct DoubleDeltaModel {
    Complex z0;
    Complex zp;
};

/// Three delta barriers at x = -pi, 0, pi with couplings zm, z0, zp.
/// Pole condition: a(w) e^{2w} - b(w) e^w + c(w) = 0.
struct TripleDeltaModel {
    Complex zm;
    Complex z0;
    Complex zp;
};

using ModelSpec = std::variant<WinterModel, DoubleDeltaModel, TripleDeltaModel>;

/// Effective coupling of the n-th resonance: zeta = 2*pi*i*n*z.
inline Complex effective_coupling(int n, Complex z) {
    if (n == 0) throw std::domain_error("effective_coupling: n must be nonzero");
    return two_pi_i * static_cast<double>(n) * z;
}

inline Complex winter_residual(Complex w, Complex z) {
    return std::exp(w) - z * w - 1.0;
}

inline Complex winter_residual_derivative(Complex w, Complex z) {
    return std::exp(w) - z;
}

inline Complex double_residual(Complex w, Complex z0, Complex zp) {
    return std::exp(w) - (1.0 + z0 * w) * (1.0 + zp * w);
}

inline Complex double_residual_derivative(Complex w, Complex z0, Complex zp) {
    return std::exp(w) - z0 * (1.0 + zp * w) - zp * (1.0 + z0 * w);
}

/// Coefficients of the three-barrier pole condition a e^{2w} - b e^w + c = 0;
/// all three are polynomials in w.
struct TripleCoefficients {
    Complex a;
    Complex b;
    Complex c;
};

inline TripleCoefficients triple_coefficients(Complex w, Complex zm, Complex z0, Complex zp) {
    const Complex e1 = zm + z0 + zp;
    const Complex e2 = zm * z0 + zm * zp + z0 * zp;
    const Complex e3 = zm * z0 * zp;
    return {
        1.0 - z0 * w,
        2.0 + (zm + zp) * w,
        1.0 + e1 * w + e2 * w * w + e3 * w * w * w,
    };
}

/// w-derivatives of a, b, c (Newton on the three-barrier condition).
inline TripleCoefficients triple_coefficients_derivative(Complex w, Complex zm, Complex z0,
                                                         Complex zp) {
    const Complex e1 = zm + z0 + zp;
    const Complex e2 = zm * z0 + zm * zp + z0 * zp;
    const Complex e3 = zm * z0 * zp;
    return {-z0, zm + zp, e1 + 2.0 * e2 * w + 3.0 * e3 * w * w};
}

inline Complex triple_residual(Complex w, Complex zm, Complex z0, Complex zp) {
    const auto [a, b, c] = triple_coefficients(w, zm, z0, zp);
    const Complex ew = std::exp(w);
    return a * ew * ew - b * ew + c;
}

inline Complex triple_residual_derivative(Complex w, Complex zm, Complex z0, Complex zp) {
    const auto [a, b, c] = triple_coefficients(w, zm, z0, zp);
    const auto [da, db, dc] = triple_coefficients_derivative(w, zm, z0, zp);
    const Complex ew = std::exp(w);
    return (da + 2.0 * a) * ew * ew - (db + b) * ew + dc;
}

/// Residual evaluated against an explicit strip offset: w = v + i*(strip_im +
/// strip_err), where strip_im is a representable stand-in for 2*pi*m and
/// strip_err its tiny defect. Poles sit near Im w = 2*pi*n, where a plain
/// double w resolves the root only to ~|w|*eps and the residual bottoms out
/// at |residual'| * |w| * eps; carrying the offset separately keeps the
/// unknown at full precision. Since exp(2*pi*i*m) == 1, the exponentials see
/// only the small argument v + i*strip_err. The polynomial factors use the
/// reconstructed w directly; they are orders of magnitude less sensitive.
inline Complex winter_residual_reduced(Complex v, double strip_im, double strip_err, Complex z) {
    const Complex w{v.real(), v.imag() + strip_im};
    return std::exp(v + Complex{0.0, strip_err}) - z * w - 1.0;
}

inline Complex double_residual_reduced(Complex v, double strip_im, double strip_err, Complex z0,
                                       Complex zp) {
    const Complex w{v.real(), v.imag() + strip_im};
    return std::exp(v + Complex{0.0, strip_err}) - (1.0 + z0 * w) * (1.0 + zp * w);
}

inline Complex triple_residual_reduced(Complex v, double strip_im, double strip_err, Complex zm,
                                       Complex z0, Complex zp) {
    const Complex w{v.real(), v.imag() + strip_im};
    const auto [a, b, c] = triple_coefficients(w, zm, z0, zp);
    const Complex ev = std::exp(v + Complex{0.0, strip_err});
    return a * ev * ev - b * ev + c;
}

/// Pole-condition residual for any model.
inline Complex residual(const ModelSpec& model, Complex w) {
    return std::visit(
        [w](const auto& m) -> Complex {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, WinterModel>) return winter_residual(w, m.z);
            else if constexpr (std::is_same_v<T, DoubleDeltaModel>)
                return double_residual(w, m.z0, m.zp);
            else
                return triple_residual(w, m.zm, m.z0, m.zp);
        },
        model);
}

inline Complex residual_reduced(const ModelSpec& model, Complex v, double strip_im,
                                double strip_err) {
    return std::visit(
        [&](const auto& m) -> Complex {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, WinterModel>)
                return winter_residual_reduced(v, strip_im, strip_err, m.z);
            else if constexpr (std::is_same_v<T, DoubleDeltaModel>)
                return double_residual_reduced(v, strip_im, strip_err, m.z0, m.zp);
            else
                return triple_residual_reduced(v, strip_im, strip_err, m.zm, m.z0, m.zp);
        },
        model);
}

inline Complex residual_derivative(const ModelSpec& model, Complex w) {
    return std::visit(
        [w](const auto& m) -> Complex {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, WinterModel>) return winter_residual_derivative(w, m.z);
            else if constexpr (std::is_same_v<T, DoubleDeltaModel>)
                return double_residual_derivative(w, m.z0, m.zp);
            else
                return triple_residual_derivative(w, m.zm, m.z0, m.zp);
        },
        model);
}

inline std::string_view model_name(const ModelSpec& model) {
    return std::visit(
        [](const auto& m) -> std::string_view {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, WinterModel>) return "winter";
            else if constexpr (std::is_same_v<T, DoubleDeltaModel>) return "double";
            else return "triple";
        },
        model);
}

/// Whether poles of this model carry a +/- branch label.
inline bool is_branched(const ModelSpec& model) {
    return std::holds_alternative<TripleDeltaModel>(model);
}

inline std::vector<Complex> couplings(const ModelSpec& model) {
    return std::visit(
        [](const auto& m) -> std::vector<Complex> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, WinterModel>) return {m.z};
            else if constexpr (std::is_same_v<T, DoubleDeltaModel>) return {m.z0, m.zp};
            else return {m.zm, m.z0, m.zp};
        },
        model);
}

inline void validate_couplings(const ModelSpec& model) {
    for (Complex z : couplings(model))
        if (!is_finite(z)) throw std::invalid_argument("model coupling is not finite");
}

/// Couplings of modulus >= 1 are outside the regime the expansion is built
/// for; callers may still proceed but should surface these.
inline std::vector<std::string> coupling_warnings(const ModelSpec& model) {
    std::vector<std::string> warnings;
    for (Complex z : couplings(model))
        if (std::abs(z) >= 1.0)
            warnings.push_back("coupling has modulus >= 1; the expansion in 1/n is "
                               "not expected to be accurate");
    return warnings;
}

}  // namespace resonance
