#pragma once

#include <span>
#include <vector>

#include "qdspin/qstate.hpp"

namespace qdspin {

/// Rates and frequencies of one trion-cavity node. kappa is the reference
/// unit; the usual working point is g/kappa = 5, gamma/kappa = 0.3,
/// omega_x = omega_c.
struct CavityParams {
    CavityParams(double g, double gamma, double kappa = 1.0,
                 double omega_c = 0.0, double omega_x = 0.0);

    double g;        // trion-cavity coupling rate
    double gamma;    // dipole decay rate
    double kappa;    // cavity field decay rate (> 0)
    double omega_c;  // cavity mode frequency
    double omega_x;  // trion transition frequency
};

/// Complex reflection coefficient at one probe frequency, with its modulus
/// and principal-value phase in (-pi, pi].
struct ReflectionSample {
    double omega = 0.0;
    Complex r{0.0, 0.0};
    double modulus = 0.0;
    double phase = 0.0;
};

enum class Spin { up, down };

/// Steady-state reflection of the coupled (hot) cavity in the weak-excitation
/// limit:
///   r(w) = 1 - kappa * X / (X * Y + g^2),
/// with X = i(omega_x - w) + gamma/2 and Y = i(omega_c - w) + kappa/2.
ReflectionSample reflect_hot(const CavityParams& params, double omega);

/// Reflection of the empty (cold) cavity,
///   r0(w) = (i(omega_c - w) - kappa/2) / (i(omega_c - w) + kappa/2),
/// which is unit-modulus at every frequency.
ReflectionSample reflect_cold(const CavityParams& params, double omega);

struct PhaseShifts {
    double phi_h = 0.0;  // hot-cavity reflection phase
    double phi_0 = 0.0;  // cold-cavity reflection phase
};

PhaseShifts phase_shifts(const CavityParams& params, double omega);

/// Faraday rotation angle of linearly polarized light reflected off the node.
/// Spin up gives (phi_0 - phi_h)/2 reduced modulo pi into (-pi/2, pi/2];
/// spin down gives the negation.
double faraday_angle(const CavityParams& params, double omega, Spin spin);

struct SpectrumPoint {
    double detuning = 0.0;  // (omega - omega_c)/kappa
    ReflectionSample cold;
    ReflectionSample hot;
    double theta_up = 0.0;
    double theta_down = 0.0;
};

/// Uniform sweep of n_points samples over [detuning_min, detuning_max]
/// (in units of kappa, endpoints included). Throws BadRange on an empty
/// range or fewer than two points.
std::vector<SpectrumPoint> sweep_spectrum(const CavityParams& params,
                                          double detuning_min,
                                          double detuning_max,
                                          int n_points);

/// Finds the probe frequency in [omega_c - kappa, omega_c + kappa] where the
/// cold/hot phase difference phi_0 - phi_h equals `target` (radians, in
/// [-pi, pi]), by bisection on the branch running through resonance. The
/// residual at the returned frequency is below 1e-9 (modulo 2*pi).
///
/// Meaningful in the strong-coupling regime (g >= kappa); throws
/// NoSolutionInBracket when the bracket does not straddle the target.
/// Degenerate case: g = 0 makes the difference identically zero, so target 0
/// returns omega_c by convention and anything else throws.
double solve_detuning(const CavityParams& params, double target_phase_difference);

/// Removes 2*pi jumps from a sequence of principal-value phases, in place.
void unwrap_phases(std::span<double> phases);

}  // namespace qdspin
