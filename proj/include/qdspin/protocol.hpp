#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qdspin/cavity.hpp"
#include "qdspin/qstate.hpp"

namespace qdspin {

/// One cavity node on the photonic bus: its parameters and the spin
/// preparation of its excess electron.
struct NodeConfig {
    CavityParams params;
    SpinState spin;
};

/// How one reflection is modeled.
///
/// Ideal: the conditional phase gate U(phi) = exp(i*phi*(|L><L| (x) |up><up|
/// + |R><R| (x) |down><down|)) acting on the photon and the node's spin.
/// Physical: the exact reflection amplitudes r(omega) / r0(omega) of the
/// node's cavity, hot sectors getting r and cold sectors r0.
struct ScatterMode {
    enum class Kind { ideal, physical };

    Kind kind = Kind::ideal;
    double value = 0.0;  // phi (radians) for ideal, probe omega for physical

    static ScatterMode ideal(double phi) { return {Kind::ideal, phi}; }
    static ScatterMode physical(double omega) { return {Kind::physical, omega}; }
};

struct ScatterOutcome {
    JointState state;
    // Squared norm before renormalization; 1 in ideal mode. Sub-unit hot
    // reflection shows up here instead of being silently absorbed.
    double survival = 1.0;
};

/// Reflects the photon off one node. (L, up) and (R, down) sectors of that
/// node pick up the hot amplitude, (R, up) and (L, down) the cold one; other
/// spins are untouched. Physical mode renormalizes and reports the lost norm
/// as survival. Throws BadNodeIndex for a node outside the register.
ScatterOutcome scatter(const JointState& state, int node_index,
                       const ScatterMode& mode, const CavityParams& params);

/// Which orthogonal photon measurement pair closes the protocol.
enum class BasisPair { linear, diagonal };  // {deg0, deg90} | {plus45, minus45}

struct OutcomeReport {
    PhotonBasis basis = PhotonBasis::deg0;
    // Unconditional outcome probability; over the basis pair these sum to the
    // chain survival probability (1 in ideal mode).
    double probability = 0.0;
    std::optional<SpinRegister> post_spins;
    std::optional<double> concurrence;  // two-node chains
    std::vector<double> entropy_bits;   // >= 3 nodes: one single-spin cut per node
    // Overlap with the same outcome of the canonical chain (ideal gates at
    // phi = pi/2); absent when either side has negligible probability.
    std::optional<double> fidelity_vs_ideal;
};

struct ProtocolResult {
    double survival_probability = 1.0;
    std::array<OutcomeReport, 2> outcomes;
};

/// Runs the single-photon bus: tensors the input photon with all node spins,
/// scatters off each node in order, then projects the photon onto both
/// outcomes of the chosen basis pair.
///
/// `modes` holds one entry per node or a single entry broadcast to all nodes;
/// physical entries must share one probe frequency.
ProtocolResult run_chain(std::span<const NodeConfig> nodes,
                         std::span<const ScatterMode> modes,
                         std::span<const Complex, 2> input_photon,
                         BasisPair basis_pair);

/// Convenience overload: one mode for every node.
ProtocolResult run_chain(std::span<const NodeConfig> nodes,
                         const ScatterMode& mode,
                         std::span<const Complex, 2> input_photon,
                         BasisPair basis_pair);

struct WeightedSpin {
    double weight = 1.0;
    SpinState spin;
};

struct ReadoutResult {
    double p_f = 0.0;     // polarization degree, i_plus - i_minus
    double i_plus = 0.0;  // ensemble-averaged |alpha|^2
    double i_minus = 0.0; // ensemble-averaged |beta|^2
};

/// Polarization-degree readout of a classical ensemble of pure spin states.
/// Weights must be non-negative and sum to 1 within 1e-9 (BadWeights).
ReadoutResult spin_readout(std::span<const WeightedSpin> ensemble);

struct FaradayOutcome {
    double theta_up = 0.0;    // rotation angle observed for spin up
    double theta_down = 0.0;  // = -theta_up
    double p_up = 0.0;        // probability of observing theta_up, |alpha|^2
    double p_down = 0.0;      // |beta|^2
};

/// Measurement statistics of a single-shot Faraday-rotation spin detection.
FaradayOutcome detect_faraday_outcome(const SpinState& spin,
                                      const CavityParams& params,
                                      double omega);

}  // namespace qdspin
