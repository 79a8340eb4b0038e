// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit on any
// failure. Criterion 10 exercises the CLI binary passed as argv[1].

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <resonance/resonance.hpp>

namespace {

using namespace resonance;

void check(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Complex> random_couplings(std::size_t count, double max_abs, unsigned seed) {
    // effective couplings |zeta| <= max_abs, away from the branch point -1
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coord(-max_abs, max_abs);
    std::vector<Complex> out;
    while (out.size() < count) {
        const Complex zeta{coord(rng), coord(rng)};
        if (std::abs(zeta) > max_abs) continue;
        if (std::abs(zeta + 1.0) <= 0.1) continue;
        out.push_back(zeta);
    }
    return out;
}

double multiset_match_distance(std::vector<Complex> a, std::vector<Complex> b) {
    check(a.size() == b.size(), "multiset match: size mismatch");
    double worst = 0.0;
    while (!a.empty()) {
        std::size_t best_i = 0, best_j = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (std::abs(a[i] - b[j]) < best) {
                    best = std::abs(a[i] - b[j]);
                    best_i = i;
                    best_j = j;
                }
        worst = std::max(worst, best);
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(best_i));
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(best_j));
    }
    return worst;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    check(static_cast<bool>(in), "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const ModelSpec kWinter = WinterModel{Complex{-0.1, 0.0}};
const ModelSpec kDouble = DoubleDeltaModel{Complex{0.1, 0.0}, Complex{0.15, 0.0}};
const ModelSpec kTriple =
    TripleDeltaModel{Complex{0.1, 0.0}, Complex{-0.05, 0.0}, Complex{0.15, 0.0}};

// --- criteria ---------------------------------------------------------------

void criterion_1_winter_accuracy() {
    const auto start = std::chrono::steady_clock::now();
    const Complex z{-0.1, 0.0};

    const RootResult exact1 = exact_pole(kWinter, 1, Branch::None, 2);
    const RootResult exact5 = exact_pole(kWinter, 5, Branch::None, 2);
    check(exact1.converged && exact5.converged, "reference roots did not converge");
    check(exact1.residual_norm < 1e-12, "n=1 oracle residual above 1e-12");
    check(exact5.residual_norm < 1e-12, "n=5 oracle residual above 1e-12");

    const double err1 =
        std::abs(winter_pole_approx(1, z, 2).w_approx - exact1.w) / std::abs(exact1.w);
    const double err5 =
        std::abs(winter_pole_approx(5, z, 2).w_approx - exact5.w) / std::abs(exact5.w);
    check(err1 >= 3e-5 && err1 <= 1.2e-4,
          "n=1 K=2 relative error " + std::to_string(err1) + " outside [3e-5, 1.2e-4]");
    check(err5 >= 1e-6 && err5 <= 4e-6,
          "n=5 K=2 relative error " + std::to_string(err5) + " outside [1e-6, 4e-6]");
    check(seconds_since(start) < 1.0, "criterion exceeded the 1 s budget");
}

void criterion_2_oracle_soundness() {
    struct Case {
        const ModelSpec* model;
        int n_max;
        std::vector<Branch> branches;
        int order;
    };
    const std::vector<Case> cases = {
        {&kWinter, 20, {Branch::None}, 2},
        {&kDouble, 10, {Branch::None}, 1},
        {&kTriple, 10, {Branch::Plus, Branch::Minus}, 1},
    };
    for (const Case& c : cases) {
        for (int n = 1; n <= c.n_max; ++n) {
            for (Branch branch : c.branches) {
                const RootResult root = exact_pole(*c.model, n, branch, c.order);
                check(root.converged, "pole (n=" + std::to_string(n) + ") did not converge");
                check(root.residual_norm < 1e-12, "residual above 1e-12 at n=" + std::to_string(n));
                const RootResult again = newton_solve(*c.model, root.w);
                check(again.converged && std::abs(again.w - root.w) <= 1e-14,
                      "re-solve moved the root at n=" + std::to_string(n));
            }
        }
    }
}

void criterion_3_series_engine_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    for (Complex zeta : random_couplings(100, 5.0, 987654u)) {
        const TruncatedSeries sigma = winter_sigma_series(1, zeta, 2);
        const bool ok = std::abs(sigma[0] - winter_sigma0(zeta)) <= 1e-12 &&
                        std::abs(sigma[1] - winter_sigma1(zeta)) <= 1e-12 &&
                        std::abs(sigma[2] - winter_sigma2(zeta)) <= 1e-12;
        std::ostringstream msg;
        msg << "series engine mismatch at zeta = " << zeta;
        check(ok, msg.str());
    }
    check(seconds_since(start) < 1.0, "criterion exceeded the 1 s budget");
}

void criterion_4_double_reductions() {
    // (a) one barrier off: two-barrier shifts collapse to the single-barrier ones
    for (Complex zeta : random_couplings(50, 3.0, 24681u)) {
        check(std::abs(double_sigma0(zeta, Complex{}) - winter_sigma0(zeta)) <= 1e-14,
              "sigma0 reduction exceeded 1e-14");
        check(std::abs(double_sigma1(zeta, Complex{}) - winter_sigma1(zeta)) <= 1e-14,
              "sigma1 reduction exceeded 1e-14");
    }
    // (b) additivity of the leading shift for real couplings
    for (double z0 : {-0.3, -0.1, 0.05, 0.2}) {
        for (double zp : {-0.25, -0.05, 0.1, 0.3}) {
            for (int n = 1; n <= 10; ++n) {
                const Complex zeta0 = effective_coupling(n, Complex{z0, 0.0});
                const Complex zetap = effective_coupling(n, Complex{zp, 0.0});
                check(std::abs(double_sigma0(zeta0, zetap) -
                               (winter_sigma0(zeta0) + winter_sigma0(zetap))) <= 1e-14,
                      "sigma0 additivity exceeded 1e-14");
                // (c) and of the leading decay rate
                const double combined =
                    leading_rate_from_sigma0(n, double_sigma0(zeta0, zetap));
                check(std::abs(combined - (gamma_leading(n, z0) + gamma_leading(n, zp))) <= 1e-12,
                      "leading-rate additivity exceeded 1e-12");
            }
        }
    }
}

void criterion_5_triple_factorization() {
    const ModelSpec split = TripleDeltaModel{Complex{0.1, 0.0}, Complex{}, Complex{0.15, 0.0}};
    const ModelSpec left = WinterModel{Complex{0.1, 0.0}};
    const ModelSpec right = WinterModel{Complex{0.15, 0.0}};

    std::vector<Complex> triple_poles;
    std::vector<Complex> winter_union;
    for (int n = 1; n <= 10; ++n) {
        for (Branch branch : {Branch::Plus, Branch::Minus}) {
            const RootResult root = exact_pole(split, n, branch, 1);
            check(root.converged, "three-barrier pole did not converge");
            triple_poles.push_back(root.w);
        }
        for (const ModelSpec* m : {&left, &right}) {
            const RootResult root = exact_pole(*m, n, Branch::None, 2);
            check(root.converged, "single-barrier pole did not converge");
            winter_union.push_back(root.w);
        }
    }
    const double worst = multiset_match_distance(triple_poles, winter_union);
    check(worst <= 1e-10,
          "pole multisets differ by " + std::to_string(worst) + " under minimal-distance pairing");
}

void criterion_6_pair_structure() {
    std::map<int, std::vector<Complex>> pairs;
    std::map<int, std::vector<double>> rel_errors;
    for (int n = 1; n <= 10; ++n) {
        for (Branch branch : {Branch::Plus, Branch::Minus}) {
            const ExpansionResult approx = generic_pole_approx(kTriple, n, branch, 1);
            const Complex k = momentum_from_w(approx.w_approx);
            check(k.real() > 0.0 && k.imag() < 0.0,
                  "pole at n=" + std::to_string(n) + " is not in the fourth quadrant");
            pairs[n].push_back(k);

            const RootResult root = newton_solve(kTriple, approx.w_approx);
            check(root.converged && root.residual_norm < 1e-12,
                  "refinement failed at n=" + std::to_string(n));
            rel_errors[n].push_back(std::abs(approx.w_approx - root.w) / std::abs(root.w));
        }
    }
    check(pairs.size() == 10, "expected 10 pole pairs");

    for (const auto& [n, members] : pairs) {
        const double intra = std::abs(members[0] - members[1]);
        double nearest_other = std::numeric_limits<double>::infinity();
        for (const auto& [m, other] : pairs) {
            if (m == n) continue;
            for (Complex a : members)
                for (Complex b : other) nearest_other = std::min(nearest_other, std::abs(a - b));
        }
        check(intra < nearest_other,
              "pair n=" + std::to_string(n) + " is wider than its distance to the next pair");
    }

    const double worst10 = std::max(rel_errors[10][0], rel_errors[10][1]);
    const double best1 = std::min(rel_errors[1][0], rel_errors[1][1]);
    check(worst10 < best1, "K=1 error at n=10 is not below the n=1 error");
}

void criterion_7_leading_rate_limits() {
    for (int n : {1, 2, 7, 30}) check(gamma_leading(n, 0.0) == 0.0, "rate at z=0 is not exactly 0");

    const double z = 1e-4;
    check(std::abs(gamma_leading(1, z) / (4.0 * pi * z * z) - 1.0) < 1e-5,
          "weak-coupling limit off by more than 1e-5");

    for (double zc : {-0.5, -0.2, -0.1, -0.05, 0.05, 0.1, 0.2, 0.5})
        for (int n = 1; n <= 50; ++n)
            check(gamma_leading(n, zc) > 0.0, "rate not positive at z=" + std::to_string(zc));
}

void criterion_8_wavefunction_matching() {
    const Complex z{-0.1, 0.0};
    for (int n = 1; n <= 10; ++n) {
        const RootResult root = exact_pole(kWinter, n, Branch::None, 2);
        check(root.converged, "pole did not converge");
        ResonanceRecord rec;
        rec.n = n;
        rec.w = root.w;
        rec.k = momentum_from_w(root.w);
        rec.E = rec.k * rec.k;
        rec.gamma = -2.0 * rec.E.imag();

        check(winter_wavefunction(0.0, 0.3, rec, z) == Complex{}, "hard-wall value not exactly 0");

        const Complex inside = winter_wavefunction(pi, 0.0, rec, z);
        const Complex outside = std::sqrt(2.0 / pi) * outside_amplitude(rec.k, z) *
                                std::exp(Complex{0.0, 1.0} * rec.k * pi);
        check(std::abs(inside - outside) < 1e-10,
              "wavefunction mismatch at the barrier for n=" + std::to_string(n));

        check(std::abs(winter_wavefunction(10.0 * pi, 0.0, rec, z)) >
                  std::abs(winter_wavefunction(2.0 * pi, 0.0, rec, z)),
              "no outward growth at n=" + std::to_string(n));
    }
}

void criterion_9_essential_barrier() {
    const Complex z{-0.1, 0.0};
    const int n_cr = 20;  // 2/|z|
    bool bare_fails_somewhere = false;
    for (int n = 1; n <= n_cr; ++n) {
        const RootResult root = exact_pole(kWinter, n, Branch::None, 2);
        check(root.converged, "pole did not converge");
        const double scale = std::abs(root.w);
        const double err_tower =
            std::abs(winter_pole_approx(n, z, 2).w_approx - root.w) / scale;
        const double err_bare = std::abs(winter_pole_z_order2(n, z) - root.w) / scale;
        check(err_tower < 1e-2,
              "K=2 tower error above 1% at n=" + std::to_string(n));
        if (err_bare > 0.1) bare_fails_somewhere = true;
    }
    check(bare_fails_somewhere, "bare-coupling truncation never exceeded 10% below n=20");
}

void criterion_10_determinism(const std::string& cli) {
    check(!cli.empty(), "CLI binary path not provided (argv[1])");

    const std::filesystem::path base = std::filesystem::temp_directory_path() / "resonance_accept";
    std::filesystem::remove_all(base);
    const std::filesystem::path dir_a = base / "a";
    const std::filesystem::path dir_b = base / "b";

    const std::string common =
        " solve --model triple --zm 0.1 --z0 -0.05 --zp 0.15 --n 1..10 --order 1"
        " --out csv,json,svg --path ";
    for (const auto& dir : {dir_a, dir_b}) {
        const std::string command =
            "'" + cli + "'" + common + "'" + dir.string() + "' > /dev/null 2>&1";
        check(std::system(command.c_str()) == 0, "CLI run failed: " + command);
    }
    for (const char* name : {"poles.csv", "poles.json", "poles.svg"}) {
        check(read_file(dir_a / name) == read_file(dir_b / name),
              std::string(name) + " differs between identical runs");
    }
    std::filesystem::remove_all(base);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    struct Criterion {
        int id;
        const char* summary;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "single-barrier K=2 accuracy bands at n=1 and n=5", criterion_1_winter_accuracy},
        {2, "oracle soundness: residual < 1e-12 and idempotence", criterion_2_oracle_soundness},
        {3, "series engine matches closed shift functions", criterion_3_series_engine_equivalence},
        {4, "two-barrier reductions and additivity", criterion_4_double_reductions},
        {5, "three-barrier factorization at z0 = 0", criterion_5_triple_factorization},
        {6, "reference pole-pair structure (20 poles, 10 pairs)", criterion_6_pair_structure},
        {7, "leading decay-rate limits", criterion_7_leading_rate_limits},
        {8, "wavefunction matching at the barrier", criterion_8_wavefunction_matching},
        {9, "fixed-order coupling series fails; 1/n tower holds", criterion_9_essential_barrier},
        {10, "byte-identical CSV/JSON/SVG across reruns", [&cli] { criterion_10_determinism(cli); }},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        try {
            c.run();
            std::cout << "PASS  criterion " << c.id << ": " << c.summary << '\n';
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL  criterion " << c.id << ": " << c.summary << " — " << e.what()
                      << '\n';
        }
    }

    if (failures == 0) {
        std::cout << "all 10 acceptance criteria passed\n";
        return 0;
    }
    std::cout << failures << " criterion(s) failed\n";
    return 1;
}
