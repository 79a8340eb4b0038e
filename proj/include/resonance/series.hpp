#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "resonance/complex_ops.hpp"

namespace resonance {

/// Power series in a small parameter, truncated at a fixed order: coefficients
/// for powers 0..order, with every operation discarding higher powers.
/// Operands of mixed truncation order are rejected rather than silently
/// promoted.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order) : coeffs_(checked_size(order)) {}

    static TruncatedSeries constant(Complex value, int order) {
        TruncatedSeries s(order);
        s.coeffs_[0] = value;
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    Complex& operator[](int k) { return coeffs_.at(checked_index(k)); }
    Complex operator[](int k) const { return coeffs_.at(checked_index(k)); }

    const std::vector<Complex>& coefficients() const { return coeffs_; }

    /// Horner evaluation at a concrete value of the expansion parameter.
    Complex evaluate(Complex eps) const {
        Complex acc{};
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * eps + coeffs_[k];
        return acc;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& rhs) {
        require_same_order(rhs);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
        return *this;
    }

    TruncatedSeries& operator-=(const TruncatedSeries& rhs) {
        require_same_order(rhs);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
        return *this;
    }

    TruncatedSeries& operator*=(Complex scale) {
        for (Complex& c : coeffs_) c *= scale;
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, Complex s) { return a *= s; }
    friend TruncatedSeries operator*(Complex s, TruncatedSeries a) { return a *= s; }

    friend TruncatedSeries operator-(TruncatedSeries a) {
        for (Complex& c : a.coeffs_) c = -c;
        return a;
    }

    /// Cauchy product truncated at the common order.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.require_same_order(b);
        TruncatedSeries out(a.order());
        for (std::size_t j = 0; j < a.coeffs_.size(); ++j) {
            if (a.coeffs_[j] == Complex{}) continue;
            for (std::size_t k = 0; j + k < b.coeffs_.size(); ++k)
                out.coeffs_[j + k] += a.coeffs_[j] * b.coeffs_[k];
        }
        return out;
    }

    /// Long division; the divisor needs a nonzero constant term.
    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.require_same_order(b);
        if (b.coeffs_[0] == Complex{})
            throw std::domain_error("series division: divisor has zero constant term");
        TruncatedSeries out(a.order());
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
            Complex acc = a.coeffs_[k];
            for (std::size_t j = 1; j <= k; ++j) acc -= b.coeffs_[j] * out.coeffs_[k - j];
            out.coeffs_[k] = acc / b.coeffs_[0];
        }
        return out;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    static std::size_t checked_size(int order) {
        if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
        return static_cast<std::size_t>(order) + 1;
    }

    static std::size_t checked_index(int k) {
        if (k < 0) throw std::out_of_range("TruncatedSeries: negative index");
        return static_cast<std::size_t>(k);
    }

    void require_same_order(const TruncatedSeries& other) const {
        if (coeffs_.size() != other.coeffs_.size())
            throw std::invalid_argument("series arithmetic: operands have different truncation orders");
    }

    std::vector<Complex> coeffs_;
};

/// Series logarithm: principal log of the constant term plus the Taylor tail
/// of log(1 + u) with u = s/s0 - 1. Only the constant term picks the branch;
/// the tail is a plain polynomial composition.
inline TruncatedSeries log(const TruncatedSeries& s) {
    const Complex s0 = s[0];
    if (s0 == Complex{}) throw std::domain_error("series log: zero constant term");

    const int order = s.order();
    TruncatedSeries u = s * (1.0 / s0);
    u[0] = Complex{};

    TruncatedSeries out = TruncatedSeries::constant(principal_log(s0), order);
    TruncatedSeries power = TruncatedSeries::constant(1.0, order);
    for (int m = 1; m <= order; ++m) {
        power = power * u;
        const double sign = (m % 2 == 1) ? 1.0 : -1.0;
        out += power * (sign / static_cast<double>(m));
    }
    return out;
}

}  // namespace resonance
