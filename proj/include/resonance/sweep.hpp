#pragma once

#include <algorithm>
#include <string>

#include "resonance/observables.hpp"

namespace resonance {

enum class OutputKind { Csv, Json, Svg };

/// One sweep over excitation numbers for a fixed model. `order` is the
/// expansion order for solve/plot and the largest compared order for
/// convergence studies.
struct SweepConfig {
    ModelSpec model = WinterModel{Complex{-0.1, 0.0}};
    int n_min = 1;
    int n_max = 10;
    int order = 2;
    std::vector<Branch> branches;     // empty: all branches the model has
    std::vector<OutputKind> outputs;  // files to emit
    std::string output_path = ".";
    NewtonOptions newton;
};

inline void validate(const SweepConfig& cfg) {
    if (cfg.n_min < 1) throw std::invalid_argument("sweep: n_min must be >= 1");
    if (cfg.n_max < cfg.n_min) throw std::invalid_argument("sweep: n_max must be >= n_min");
    if (cfg.order < 0) throw std::invalid_argument("sweep: order must be >= 0");
    if (cfg.newton.tolerance <= 0.0) throw std::invalid_argument("sweep: tolerance must be > 0");
    if (cfg.newton.max_iterations < 1)
        throw std::invalid_argument("sweep: max_iterations must be >= 1");
    validate_couplings(cfg.model);
    for (Branch b : cfg.branches) {
        if (is_branched(cfg.model) && b == Branch::None)
            throw std::invalid_argument("sweep: this model's poles carry a +/- branch label");
        if (!is_branched(cfg.model) && b != Branch::None)
            throw std::invalid_argument("sweep: this model's poles carry no branch label");
    }
}

/// Branches actually swept, in reporting order (plus before minus).
inline std::vector<Branch> resolved_branches(const SweepConfig& cfg) {
    if (!is_branched(cfg.model)) return {Branch::None};
    if (cfg.branches.empty()) return {Branch::Plus, Branch::Minus};
    std::vector<Branch> out;
    for (Branch b : {Branch::Plus, Branch::Minus})
        for (Branch c : cfg.branches)
            if (b == c && std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
    return out;
}

struct RowError {
    int n = 0;
    Branch branch = Branch::None;
    std::string message;
};

struct SolveReport {
    std::vector<ResonanceRecord> records;  // ordered by (n, branch)
    std::vector<RowError> errors;
    bool ok() const { return errors.empty(); }
};

/// Expansion pole plus refined root for every (n, branch) in the sweep.
/// Failures (singular shift functions, refinement not converging) become
/// per-row errors instead of aborting the whole sweep.
inline SolveReport run_solve(const SweepConfig& cfg) {
    validate(cfg);
    SolveReport report;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        for (Branch branch : resolved_branches(cfg)) {
            try {
                const ExpansionResult approx = generic_pole_approx(cfg.model, n, branch, cfg.order);
                const RootResult root = newton_solve(cfg.model, approx.w_approx, cfg.newton);
                if (!root.converged) {
                    const char* why = root.status == RootStatus::BasinEscape
                                          ? "refinement left the seed basin"
                                          : "refinement did not converge";
                    report.errors.push_back({n, branch, why});
                    continue;
                }
                report.records.push_back(make_record(cfg.model, approx, &root));
            } catch (const std::exception& e) {
                report.errors.push_back({n, branch, e.what()});
            }
        }
    }
    return report;
}

struct CompareRow {
    int n = 0;
    Branch branch = Branch::None;
    std::vector<double> rel_error_by_order;  // index = expansion order 0..order
    double z_order2_rel_error = 0.0;         // bare-coupling series, total order z^2
};

struct CompareReport {
    std::vector<CompareRow> rows;
    std::vector<RowError> errors;
    bool ok() const { return errors.empty(); }
};

/// Relative error of every truncation order 0..cfg.order against the refined
/// root, next to the fixed-order bare-coupling series. Single-barrier only:
/// the order sweep needs the generated shift tower.
inline CompareReport run_compare(const SweepConfig& cfg) {
    validate(cfg);
    const auto* winter = std::get_if<WinterModel>(&cfg.model);
    if (winter == nullptr)
        throw std::invalid_argument("compare sweeps support the single-barrier model only");

    CompareReport report;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        try {
            const Complex zeta = effective_coupling(n, winter->z);
            const TruncatedSeries sigma = winter_sigma_series(n, zeta, cfg.order);

            const RootResult root = exact_pole(cfg.model, n, Branch::None, std::min(cfg.order, 2),
                                               cfg.newton);
            if (!root.converged) {
                report.errors.push_back({n, Branch::None, "refinement did not converge"});
                continue;
            }
            const double scale = std::abs(root.w);

            CompareRow row;
            row.n = n;
            const Complex base = two_pi_i * static_cast<double>(n);
            const Complex eps = 1.0 / base;
            Complex acc{};
            Complex power{1.0, 0.0};
            for (int k = 0; k <= cfg.order; ++k) {
                acc += sigma[k] * power;
                power *= eps;
                row.rel_error_by_order.push_back(std::abs(base + acc - root.w) / scale);
            }
            row.z_order2_rel_error = std::abs(winter_pole_z_order2(n, winter->z) - root.w) / scale;
            report.rows.push_back(row);
        } catch (const std::exception& e) {
            report.errors.push_back({n, Branch::None, e.what()});
        }
    }
    return report;
}

}  // namespace resonance
