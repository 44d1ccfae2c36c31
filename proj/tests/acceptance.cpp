// Acceptance suite: one line per criterion, exit code = number of failures.
// argv[1] = path to the qdspin CLI binary, argv[2] = path to the golden
// spectrum CSV (both wired in by CMake).

#include "qdspin/cavity.hpp"
#include "qdspin/protocol.hpp"

#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qdspin;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d: %s  [%s]\n", pass ? "PASS" : "FAIL", index,
                name.c_str(), detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<NodeConfig> equal_nodes(std::size_t n, double g) {
    const SpinState spin = make_spin_state({1, 0}, {1, 0});
    return std::vector<NodeConfig>(n, NodeConfig{CavityParams(g, 0.3), spin});
}

std::array<Complex, 2> linear_photon() {
    return {Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0}};
}

// Independent physical-chain evaluation on raw vectors: reflection amplitudes
// from the closed formulas, factors applied index-by-index.
struct OracleChain {
    double survival = 0.0;
    oracle::ProjectionRef deg0, deg90;
};

OracleChain oracle_physical_chain(double g, double gamma, double detuning,
                                  const std::vector<std::array<Complex, 2>>& spins) {
    const Complex x{gamma / 2.0, -detuning};
    const Complex y{0.5, -detuning};
    const Complex r = 1.0 - x / (x * y + g * g);
    const Complex r0 = (Complex{-0.5, -detuning}) / (Complex{0.5, -detuning});

    const int n = static_cast<int>(spins.size());
    auto amps = oracle::kron_photon_spins({Complex{kInvSqrt2, 0}, Complex{kInvSqrt2, 0}},
                                          spins);
    for (int k = 0; k < n; ++k)
        amps = oracle::apply_node_factors(std::move(amps), n, k, r, r0);

    OracleChain out;
    for (const Complex& a : amps) out.survival += std::norm(a);
    out.deg0 = oracle::project_ref(amps, n, {Complex{kInvSqrt2, 0}, Complex{-kInvSqrt2, 0}});
    out.deg90 = oracle::project_ref(amps, n, {Complex{kInvSqrt2, 0}, Complex{kInvSqrt2, 0}});
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";
    const std::string golden_path = argc > 2 ? argv[2] : "";

    const CavityParams fig2(5.0, 0.3);

    // 1. cold-cavity unitarity and resonance phase
    {
        double worst = 0.0;
        for (int i = 0; i < 10001; ++i) {
            const double d = -10.0 + 20.0 * i / 10000.0;
            worst = std::max(worst, std::abs(reflect_cold(fig2, d).modulus - 1.0));
        }
        const double phase0 = reflect_cold(fig2, 0.0).phase;
        const bool pass = worst < 1e-12 && std::abs(phase0 - kPi) < 1e-12;
        report(1, "cold-cavity unitarity and phase pi at resonance", pass,
               "max||r0|-1| = " + fmt(worst) + ", phase(0) = " + fmt(phase0));
    }

    // 2. hot cavity at resonance
    {
        const ReflectionSample s = reflect_hot(fig2, 0.0);
        const double want = 1.0 - 0.15 / 25.075;
        const bool pass =
            std::abs(s.phase) < 1e-9 && std::abs(s.modulus - want) < 1e-9;
        report(2, "hot-cavity resonance phase and modulus", pass,
               "|phase| = " + fmt(std::abs(s.phase)) +
                   ", modulus - expected = " + fmt(s.modulus - want));
    }

    // 3. g = 0 reduction to the cold cavity
    {
        const CavityParams uncoupled(0.0, 0.3);
        double worst = 0.0;
        for (int i = 0; i < 10001; ++i) {
            const double d = -10.0 + 20.0 * i / 10000.0;
            worst = std::max(worst,
                             std::abs(reflect_hot(uncoupled, d).r - reflect_cold(uncoupled, d).r));
        }
        report(3, "g = 0 reduces the hot to the cold reflection", worst < 1e-15,
               "max pointwise deviation = " + fmt(worst));
    }

    // 4. detuning solution for a pi/2 phase difference
    {
        bool pass = false;
        std::string detail;
        try {
            const double omega = solve_detuning(fig2, kPi / 2);
            const PhaseShifts ps = phase_shifts(fig2, omega);
            const double residual = ps.phi_0 - ps.phi_h - kPi / 2;
            pass = std::abs(omega - (-0.5)) < 0.05 && std::abs(residual) < 1e-9;
            detail = "root = " + fmt(omega) + ", residual = " + fmt(residual);
        } catch (const Error& e) {
            detail = e.what();
        }
        report(4, "solve_detuning lands near -kappa/2 with a tight residual", pass,
               detail);
    }

    // 5. Faraday angle range and antisymmetry over the sweep
    {
        const auto points = sweep_spectrum(fig2, -10.0, 10.0, 1001);
        bool pass = true;
        double worst_asym = 0.0;
        for (const SpectrumPoint& p : points) {
            if (p.theta_up < -kPi / 2 || p.theta_up > kPi / 2) pass = false;
            worst_asym = std::max(worst_asym, std::abs(p.theta_down + p.theta_up));
        }
        pass = pass && worst_asym < 1e-12;
        report(5, "Faraday angles bounded by pi/2 and antisymmetric", pass,
               "max|theta_down + theta_up| = " + fmt(worst_asym));
    }

    // 6. Bell-state generation and closed-form coefficients
    {
        const auto nodes = equal_nodes(2, 5.0);
        const ProtocolResult res = run_chain(nodes, ScatterMode::ideal(kPi / 2),
                                             linear_photon(), BasisPair::linear);
        bool pass = std::abs(res.outcomes[0].probability - 0.5) < 1e-10 &&
                    std::abs(res.outcomes[1].probability - 0.5) < 1e-10 &&
                    res.outcomes[0].concurrence && res.outcomes[1].concurrence &&
                    std::abs(*res.outcomes[0].concurrence - 1.0) < 1e-9 &&
                    std::abs(*res.outcomes[1].concurrence - 1.0) < 1e-9;

        std::mt19937 rng(20260809);
        double worst = 0.0;
        for (int trial = 0; trial < 100 && pass; ++trial) {
            const auto a1 = oracle::random_spin(rng);
            const auto a2 = oracle::random_spin(rng);
            const std::vector<NodeConfig> random_nodes{
                {CavityParams(5.0, 0.3), make_spin_state(a1[0], a1[1])},
                {CavityParams(5.0, 0.3), make_spin_state(a2[0], a2[1])}};
            const ProtocolResult r = run_chain(random_nodes, ScatterMode::ideal(kPi / 2),
                                               linear_photon(), BasisPair::linear);

            std::vector<Complex> phi{a1[0] * a2[0], {}, {}, -a1[1] * a2[1]};
            std::vector<Complex> psi{{}, a1[0] * a2[1], a2[0] * a1[1], {}};
            for (int which = 0; which < 2; ++which) {
                auto& want = which == 0 ? phi : psi;
                double n2 = 0.0;
                for (const Complex& w : want) n2 += std::norm(w);
                if (std::abs(r.outcomes[which].probability - n2) > 1e-10) pass = false;
                if (n2 > kProbabilityFloor && r.outcomes[which].post_spins) {
                    const double inv = 1.0 / std::sqrt(n2);
                    for (Complex& w : want) w *= inv;
                    const auto aligned = oracle::align_global_phase(
                        r.outcomes[which].post_spins->amps, want);
                    worst = std::max(worst, oracle::max_amp_distance(aligned, want));
                }
            }
        }
        pass = pass && worst < 1e-10;
        report(6, "two-node Bell generation matches the closed forms", pass,
               "worst amplitude deviation over 100 preparations = " + fmt(worst));
    }

    // 7. three-node GHZ-class state
    {
        const auto nodes = equal_nodes(3, 5.0);
        const ProtocolResult res = run_chain(nodes, ScatterMode::ideal(kPi / 2),
                                             linear_photon(), BasisPair::diagonal);
        const OutcomeReport& plus45 = res.outcomes[0];
        bool pass = plus45.post_spins.has_value();
        double worst_amp = 1.0, worst_entropy = 1.0;
        if (pass) {
            std::vector<Complex> want(8);
            want[0b000] = Complex{0.5, 0};
            want[0b110] = Complex{-0.5, 0};
            want[0b011] = Complex{-0.5, 0};
            want[0b101] = Complex{-0.5, 0};
            const auto aligned =
                oracle::align_global_phase(plus45.post_spins->amps, want);
            worst_amp = oracle::max_amp_distance(aligned, want);
            worst_entropy = 0.0;
            for (double h : plus45.entropy_bits)
                worst_entropy = std::max(worst_entropy, std::abs(h - 1.0));
            pass = worst_amp < 1e-10 && plus45.entropy_bits.size() == 3 &&
                   worst_entropy < 1e-9;
        }
        report(7, "three-node chain reproduces the GHZ-class projection", pass,
               "amplitude dev = " + fmt(worst_amp) +
                   ", entropy dev = " + fmt(worst_entropy) + " bits");
    }

    // 8. readout equals the polarization degree
    {
        std::mt19937 rng(777);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const auto s = oracle::random_spin(rng);
            const SpinState spin = make_spin_state(s[0], s[1]);
            const std::vector<WeightedSpin> ensemble{{1.0, spin}};
            const double want = std::norm(spin.alpha) - std::norm(spin.beta);
            worst = std::max(worst, std::abs(spin_readout(ensemble).p_f - want));
        }
        report(8, "readout reproduces |alpha|^2 - |beta|^2", worst < 1e-12,
               "worst deviation over 1000 states = " + fmt(worst));
    }

    // 9. physical-mode convergence toward the ideal Bell protocol
    {
        const std::vector<std::array<Complex, 2>> spins(
            2, std::array<Complex, 2>{Complex{kInvSqrt2, 0}, Complex{kInvSqrt2, 0}});
        bool pass = true;
        std::string values;
        double prev = 0.0;
        double at_g5 = 0.0;
        for (double g : {2.0, 5.0, 20.0, 100.0}) {
            const ProtocolResult res =
                run_chain(equal_nodes(2, g), ScatterMode::physical(0.5),
                          linear_photon(), BasisPair::linear);
            if (!res.outcomes[0].fidelity_vs_ideal) {
                pass = false;
                break;
            }
            const double f = *res.outcomes[0].fidelity_vs_ideal;

            // cross-check the post state against the independent chain
            const OracleChain ref = oracle_physical_chain(g, 0.3, 0.5, spins);
            std::vector<Complex> bell{Complex{kInvSqrt2, 0}, {}, {},
                                      Complex{-kInvSqrt2, 0}};
            const auto aligned = oracle::align_global_phase(ref.deg0.post, bell);
            Complex ov{};
            for (std::size_t i = 0; i < bell.size(); ++i)
                ov += std::conj(bell[i]) * aligned[i];
            const double f_oracle = std::norm(ov);
            if (std::abs(f - f_oracle) > 1e-10) pass = false;
            if (std::abs(res.survival_probability - ref.survival) > 1e-10) pass = false;

            if (f < prev - 1e-12) pass = false;
            prev = f;
            if (g == 5.0) at_g5 = f;
            values += (values.empty() ? "" : ", ") + fmt(f);
        }
        pass = pass && at_g5 > 0.99;
        report(9, "physical-mode Bell fidelity is monotone and > 0.99 at g = 5", pass,
               "fidelities vs g in {2,5,20,100}: " + values);
    }

    // 10. vacuum Rabi dips near +/- g
    {
        const auto points = sweep_spectrum(fig2, -10.0, 10.0, 1001);
        double at_minus = 0.0, at_plus = 0.0;
        bool near_minus = false, near_plus = false;
        for (std::size_t i = 1; i + 1 < points.size(); ++i) {
            if (points[i].hot.modulus < points[i - 1].hot.modulus &&
                points[i].hot.modulus < points[i + 1].hot.modulus) {
                if (std::abs(points[i].detuning + 5.0) <= 0.5) {
                    near_minus = true;
                    at_minus = points[i].detuning;
                }
                if (std::abs(points[i].detuning - 5.0) <= 0.5) {
                    near_plus = true;
                    at_plus = points[i].detuning;
                }
            }
        }
        report(10, "vacuum Rabi dips sit within 0.5 kappa of +/- g",
               near_minus && near_plus,
               "dips at " + fmt(at_minus) + " and " + fmt(at_plus));
    }

    // 11. CLI determinism against the golden spectrum
    {
        bool pass = false;
        std::string detail;
        if (cli_path.empty() || golden_path.empty()) {
            detail = "missing CLI or golden path argument";
        } else {
            const auto tmp_dir = std::filesystem::temp_directory_path();
            const std::string run1 = (tmp_dir / "qdspin_acc_run1.csv").string();
            const std::string run2 = (tmp_dir / "qdspin_acc_run2.csv").string();
            const std::string cmd1 =
                "\"" + cli_path + "\" spectrum --output \"" + run1 + "\"";
            const std::string cmd2 =
                "\"" + cli_path + "\" spectrum --output \"" + run2 + "\"";
            if (std::system(cmd1.c_str()) != 0 || std::system(cmd2.c_str()) != 0) {
                detail = "CLI invocation failed";
            } else {
                const std::string a = read_file(run1);
                const std::string b = read_file(run2);
                const std::string golden = read_file(golden_path);
                pass = !a.empty() && a == b && a == golden;
                detail = "bytes: run1 = " + std::to_string(a.size()) +
                         ", golden = " + std::to_string(golden.size()) +
                         (a == golden ? ", identical" : ", DIFFER");
            }
            std::error_code ec;
            std::filesystem::remove(run1, ec);
            std::filesystem::remove(run2, ec);
        }
        report(11, "default spectrum is byte-identical across runs and golden", pass,
               detail);
    }

    if (failures == 0) {
        std::printf("acceptance: all 11 criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    }
    return failures;
}
