#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qdspin/errors.hpp"

namespace qdspin {

using Complex = std::complex<double>;

// Practical cap on the number of spin qubits in one register.
inline constexpr int kMaxSpins = 12;

// Squared norms at or below this are treated as an impossible measurement
// outcome rather than double-precision roundoff.
inline constexpr double kProbabilityFloor = 1e-12;

/// Electron spin qubit alpha|up> + beta|down>. Always stored normalized;
/// build through make_spin_state.
struct SpinState {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
};

/// Rescales (alpha, beta) to unit norm.
/// Throws ZeroNormState when |alpha|^2 + |beta|^2 <= 1e-15 and
/// NonFiniteValue on NaN/Inf input.
SpinState make_spin_state(Complex alpha, Complex beta);

/// Photon (R, L) amplitudes tensored with n spin qubits.
///
/// Index layout: the photon bit is most significant (0 = R, 1 = L), followed
/// by one bit per spin in node order (0 = up, 1 = down). The amplitude vector
/// has length 2^(n_spins + 1) and unit norm.
struct JointState {
    int n_spins = 0;
    std::vector<Complex> amps;

    std::size_t dim() const { return amps.size(); }
};

/// Spin register left behind once the photon has been measured out.
/// Same bit layout as JointState minus the photon bit; length 2^n_spins.
struct SpinRegister {
    int n_spins = 0;
    std::vector<Complex> amps;

    std::size_t dim() const { return amps.size(); }
};

/// Photon measurement kets expressed in the circular (R, L) basis:
///   deg0    = (|R> - |L>)/sqrt(2)     deg90   = (|R> + |L>)/sqrt(2)
///   plus45  = (|R> - i|L>)/sqrt(2)    minus45 = (|R> + i|L>)/sqrt(2)
/// The labels name linear-polarizer settings; the kets are what the math uses.
enum class PhotonBasis { deg0, deg90, plus45, minus45 };

std::array<Complex, 2> photon_basis_ket(PhotonBasis basis);

/// The other member of the orthogonal pair (deg0 <-> deg90, plus45 <-> minus45).
PhotonBasis orthogonal_partner(PhotonBasis basis);

const char* to_string(PhotonBasis basis);

/// Product state photon (x) spin_0 (x) ... (x) spin_{n-1}.
/// The photon amplitudes are normalized first; spins are assumed normalized.
/// Throws TooManySpins above kMaxSpins, WrongArity for an empty spin list.
JointState tensor_photon_spins(std::span<const Complex, 2> photon,
                               std::span<const SpinState> spins);

struct Projection {
    double probability = 0.0;
    // Renormalized register; nullopt when probability <= kProbabilityFloor.
    std::optional<SpinRegister> post_state;
};

/// Projects the photon onto one basis ket and traces it out.
/// Probabilities over an orthogonal basis pair sum to the state's squared norm.
Projection project_photon(const JointState& state, PhotonBasis basis);

/// Pure-state concurrence 2|ad - bc| of a two-spin register (a, b, c, d).
/// 0 for product states, 1 for Bell states. Throws WrongArity unless the
/// register holds exactly two spins.
double concurrence(const SpinRegister& reg);

/// Von Neumann entropy, in bits, of the reduced state on the given subset of
/// spin indices. Throws BadPartition unless the subset is non-empty, proper,
/// and duplicate-free.
double entanglement_entropy(const SpinRegister& reg, std::span<const int> partition);

/// Squared overlap |<a|b>|^2; invariant under a global phase of either side.
double fidelity(const SpinRegister& a, const SpinRegister& b);

double norm_squared(std::span<const Complex> amps);

}  // namespace qdspin
