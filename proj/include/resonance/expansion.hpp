#pragma once

#include <cassert>
#include <limits>
#include <vector>

#include "resonance/models.hpp"
#include "resonance/series.hpp"

namespace resonance {

/// Requested expansion order exceeds what is available for the model.
class expansion_order_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pole shift functions sigma_s(zeta) for the single-barrier model; the pole
/// sits at w = 2*pi*i*n + sum_s sigma_s / (2*pi*i*n)^s. Closed forms for
/// s = 0, 1, 2; arbitrary s via the series engine below.
inline Complex winter_sigma0(Complex zeta) {
    const Complex u = 1.0 + zeta;
    if (u == Complex{}) throw singularity_error("winter sigma: zeta = -1");
    return principal_log(u);
}

inline Complex winter_sigma1(Complex zeta) {
    const Complex u = 1.0 + zeta;
    if (u == Complex{}) throw singularity_error("winter sigma: zeta = -1");
    return zeta / u * principal_log(u);
}

inline Complex winter_sigma2(Complex zeta) {
    const Complex u = 1.0 + zeta;
    if (u == Complex{}) throw singularity_error("winter sigma: zeta = -1");
    const Complex r = zeta / u;
    const Complex L = principal_log(u);
    return -0.5 * r * r * L * (L - 2.0);
}

/// All shift functions sigma_0..sigma_order at once, generated from the
/// fixed-point form sigma = log(1 + zeta + eps*zeta*sigma) in the truncated
/// ring over eps = 1/(2*pi*i*n). Each substitution pass pins one more
/// coefficient (the k-th output coefficient only reads inputs below k), so
/// order+1 passes reach the fixed point exactly.
inline TruncatedSeries winter_sigma_series(int n, Complex zeta, int order) {
    if (n == 0) throw std::domain_error("winter_sigma_series: n must be nonzero");
    if (order < 0) throw std::invalid_argument("winter_sigma_series: negative order");
    const Complex base = 1.0 + zeta;
    if (base == Complex{}) throw singularity_error("winter sigma: zeta = -1");

    TruncatedSeries shift(order);  // the series eps * zeta
    if (order >= 1) shift[1] = zeta;

    TruncatedSeries sigma(order);
    for (int pass = 0; pass <= order; ++pass) {
        TruncatedSeries arg = shift * sigma;  // constant term is exactly zero
        arg[0] = base;
        sigma = log(arg);
    }

#ifndef NDEBUG
    // One more substitution must leave every coefficient in place.
    {
        TruncatedSeries arg = shift * sigma;
        arg[0] = base;
        const TruncatedSeries again = log(arg);
        double scale = 1.0;
        for (int k = 0; k <= order; ++k) scale = std::max(scale, std::abs(sigma[k]));
        for (int k = 0; k <= order; ++k)
            assert(std::abs(again[k] - sigma[k]) <= 1e-10 * scale && "sigma series not a fixed point");
    }
#endif
    return sigma;
}

/// Approximate pole of one model at excitation n, carrying the evaluated
/// shift functions it was assembled from.
struct ExpansionResult {
    int n = 0;
    Branch branch = Branch::None;
    int order = 0;
    std::vector<Complex> sigmas;  // sigma_0..sigma_order at the effective coupling
    Complex w_approx;
};

namespace detail {

inline Complex assemble_pole(int n, const std::vector<Complex>& sigmas) {
    const Complex base = two_pi_i * static_cast<double>(n);
    const Complex eps = 1.0 / base;
    Complex acc{};
    for (std::size_t k = sigmas.size(); k-- > 0;) acc = acc * eps + sigmas[k];
    return base + acc;
}

inline double branch_sign(Branch branch) {
    switch (branch) {
        case Branch::Plus: return 1.0;
        case Branch::Minus: return -1.0;
        default: throw std::invalid_argument("branch must be plus or minus for this model");
    }
}

}  // namespace detail

/// Single-barrier pole through order `order` in 1/(2*pi*i*n).
inline ExpansionResult winter_pole_approx(int n, Complex z, int order) {
    const Complex zeta = effective_coupling(n, z);
    const TruncatedSeries sigma = winter_sigma_series(n, zeta, order);
    ExpansionResult out;
    out.n = n;
    out.branch = Branch::None;
    out.order = order;
    out.sigmas = sigma.coefficients();
    out.w_approx = detail::assemble_pole(n, out.sigmas);
    return out;
}

/// Two-barrier shift functions of the effective couplings zeta0, zetap.
inline Complex double_sigma0(Complex zeta0, Complex zetap) {
    const Complex u0 = 1.0 + zeta0;
    const Complex up = 1.0 + zetap;
    if (u0 == Complex{} || up == Complex{})
        throw singularity_error("double-barrier sigma: an effective coupling equals -1");
    return principal_log(u0 * up);
}

inline Complex double_sigma1(Complex zeta0, Complex zetap) {
    const Complex u0 = 1.0 + zeta0;
    const Complex up = 1.0 + zetap;
    if (u0 == Complex{} || up == Complex{})
        throw singularity_error("double-barrier sigma: an effective coupling equals -1");
    return (zeta0 / u0 + zetap / up) * principal_log(u0 * up);
}

/// Discriminant-like square root splitting the two three-barrier branches.
inline Complex triple_delta_disc(Complex zetam, Complex zeta0, Complex zetap) {
    const Complex d = zetap - zetam;
    return principal_sqrt(d * d + 4.0 * zeta0 * zeta0 * (1.0 + zetap) * (1.0 + zetam));
}

/// Three-barrier leading shift on the chosen branch.
inline Complex triple_sigma0(Branch branch, Complex zetam, Complex zeta0, Complex zetap) {
    const double sign = detail::branch_sign(branch);
    const Complex den = 2.0 * (1.0 - zeta0);
    if (den == Complex{}) throw singularity_error("triple sigma: zeta0 = 1");
    const Complex num = 2.0 + zetap + zetam + sign * triple_delta_disc(zetam, zeta0, zetap);
    if (num == Complex{}) throw singularity_error("triple sigma: vanishing log argument");
    return principal_log(num / den);
}

/// Three-barrier subleading shift on the chosen branch.
inline Complex triple_sigma1(Branch branch, Complex zetam, Complex zeta0, Complex zetap) {
    const double sign = detail::branch_sign(branch);
    // free limit: the log factor vanishes faster than the N/D ratio degenerates
    if (zetam == Complex{} && zeta0 == Complex{} && zetap == Complex{}) return Complex{};
    const Complex disc = triple_delta_disc(zetam, zeta0, zetap);
    const Complex dd = zetam - zetap;
    const Complex num =
        -2.0 * zeta0 * zeta0 * zeta0 * (zetam + zetap + 2.0 * zetam * zetap) +
        zeta0 * zeta0 * (4.0 + 6.0 * zetam + 6.0 * zetap + 8.0 * zetam * zetap) + dd * dd +
        sign * (2.0 * zeta0 + zetam + zetap) * disc;
    const Complex den =
        (1.0 - zeta0) *
        (dd * dd + 4.0 * zeta0 * zeta0 * (1.0 + zetap) * (1.0 + zetam) + sign * (2.0 + zetam + zetap) * disc);
    if (den == Complex{})
        throw singularity_error("triple sigma: degenerate branch denominator");
    return num / den * triple_sigma0(branch, zetam, zeta0, zetap);
}

/// Highest expansion order with closed-form shift functions. The
/// single-barrier tower is generated to any order; the two- and
/// three-barrier models stop at the subleading shift.
inline int max_expansion_order(const ModelSpec& model) {
    return std::holds_alternative<WinterModel>(model) ? std::numeric_limits<int>::max() : 1;
}

/// Approximate pole for any model / branch / order. Branch must be None for
/// branchless models and Plus or Minus for the three-barrier model.
inline ExpansionResult generic_pole_approx(const ModelSpec& model, int n, Branch branch,
                                           int order) {
    if (order < 0) throw std::invalid_argument("generic_pole_approx: negative order");
    if (n == 0) throw std::domain_error("generic_pole_approx: n must be nonzero");
    if (order > max_expansion_order(model))
        throw expansion_order_error("generic_pole_approx: no closed-form shift beyond order 1 "
                                    "for this model");

    return std::visit(
        [&](const auto& m) -> ExpansionResult {
            using T = std::decay_t<decltype(m)>;
            ExpansionResult out;
            out.n = n;
            out.branch = branch;
            out.order = order;
            if constexpr (std::is_same_v<T, WinterModel>) {
                if (branch != Branch::None)
                    throw std::invalid_argument("single-barrier poles carry no branch label");
                return winter_pole_approx(n, m.z, order);
            } else if constexpr (std::is_same_v<T, DoubleDeltaModel>) {
                if (branch != Branch::None)
                    throw std::invalid_argument("two-barrier poles carry no branch label");
                const Complex zeta0 = effective_coupling(n, m.z0);
                const Complex zetap = effective_coupling(n, m.zp);
                out.sigmas.push_back(double_sigma0(zeta0, zetap));
                if (order >= 1) out.sigmas.push_back(double_sigma1(zeta0, zetap));
            } else {
                const Complex zetam = effective_coupling(n, m.zm);
                const Complex zeta0 = effective_coupling(n, m.z0);
                const Complex zetap = effective_coupling(n, m.zp);
                out.sigmas.push_back(triple_sigma0(branch, zetam, zeta0, zetap));
                if (order >= 1) out.sigmas.push_back(triple_sigma1(branch, zetam, zeta0, zetap));
            }
            out.w_approx = detail::assemble_pole(n, out.sigmas);
            return out;
        },
        model);
}

/// Single-barrier pole expanded in the bare coupling instead, keeping total
/// order z^2: the Taylor pieces zeta - zeta^2/2 (leading) and zeta^2
/// (weight 1/(2*pi*i*n)) are all double-series terms through that order.
/// Demonstrates why the bare-coupling series degrades as n grows while the
/// 1/n tower does not: its error grows with n*z.
inline Complex winter_pole_z_order2(int n, Complex z) {
    const Complex base = two_pi_i * static_cast<double>(n);
    const Complex zeta = effective_coupling(n, z);
    return base + (zeta - 0.5 * zeta * zeta) + zeta * zeta / base;
}

}  // namespace resonance
