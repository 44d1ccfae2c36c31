#include "qdspin/protocol.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace qdspin {

namespace {

constexpr double kPi = std::numbers::pi;

void check_joint(const JointState& state) {
    if (state.n_spins < 1 || state.n_spins > kMaxSpins)
        throw TooManySpins("joint state spin count out of range");
    if (state.amps.size() != (std::size_t{1} << (state.n_spins + 1)))
        throw DimensionMismatch("joint state length is not 2^(n_spins+1)");
}

}  // namespace

ScatterOutcome scatter(const JointState& state, int node_index,
                       const ScatterMode& mode, const CavityParams& params) {
    check_joint(state);
    const int n = state.n_spins;
    if (node_index < 0 || node_index >= n)
        throw BadNodeIndex("node index outside the spin register");

    Complex hot, cold;
    if (mode.kind == ScatterMode::Kind::ideal) {
        hot = std::polar(1.0, mode.value);
        cold = Complex{1.0, 0.0};
    } else {
        hot = reflect_hot(params, mode.value).r;
        cold = reflect_cold(params, mode.value).r;
    }

    ScatterOutcome out{state, 1.0};
    const int spin_shift = n - 1 - node_index;
    for (std::size_t idx = 0; idx < out.state.amps.size(); ++idx) {
        const bool l_photon = (idx >> n) & 1;
        const bool down = (idx >> spin_shift) & 1;
        // L-light addresses |up>, R-light |down>: those sectors feel the hot cavity
        out.state.amps[idx] *= (l_photon != down) ? hot : cold;
    }

    if (mode.kind == ScatterMode::Kind::physical) {
        const double n2 = norm_squared(out.state.amps);
        if (n2 <= kProbabilityFloor)
            throw ZeroNormState("reflection extinguished the joint state");
        out.survival = n2;
        const double inv = 1.0 / std::sqrt(n2);
        for (Complex& a : out.state.amps) a *= inv;
    }
    return out;
}

ProtocolResult run_chain(std::span<const NodeConfig> nodes,
                         std::span<const ScatterMode> modes,
                         std::span<const Complex, 2> input_photon,
                         BasisPair basis_pair) {
    const int n = static_cast<int>(nodes.size());
    if (n < 1)
        throw WrongArity("run_chain needs at least one node");
    if (n > kMaxSpins)
        throw TooManySpins("node count exceeds the cap of 12");

    std::vector<ScatterMode> per_node;
    if (modes.size() == 1) {
        per_node.assign(static_cast<std::size_t>(n), modes[0]);
    } else if (std::ssize(modes) == n) {
        per_node.assign(modes.begin(), modes.end());
    } else {
        throw WrongArity("mode list must have one entry or one per node");
    }
    for (const ScatterMode& m : per_node) {
        if (m.kind != per_node[0].kind)
            throw InvalidParams("scatter modes must not mix ideal and physical");
        if (m.kind == ScatterMode::Kind::physical && m.value != per_node[0].value)
            throw InvalidParams("physical mode requires one shared probe frequency");
    }

    std::vector<SpinState> spins;
    spins.reserve(nodes.size());
    for (const NodeConfig& node : nodes) spins.push_back(node.spin);

    JointState state = tensor_photon_spins(input_photon, spins);
    double survival = 1.0;
    for (int k = 0; k < n; ++k) {
        ScatterOutcome res = scatter(state, k, per_node[k], nodes[k].params);
        state = std::move(res.state);
        survival *= res.survival;
    }

    // Reference for fidelity reporting: the same chain with ideal pi/2 gates.
    JointState reference = tensor_photon_spins(input_photon, spins);
    for (int k = 0; k < n; ++k)
        reference =
            scatter(reference, k, ScatterMode::ideal(kPi / 2.0), nodes[k].params).state;

    const PhotonBasis first = basis_pair == BasisPair::linear
                                  ? PhotonBasis::deg0
                                  : PhotonBasis::plus45;

    ProtocolResult result;
    result.survival_probability = survival;
    for (int which = 0; which < 2; ++which) {
        const PhotonBasis basis = which == 0 ? first : orthogonal_partner(first);
        Projection proj = project_photon(state, basis);
        const Projection ref_proj = project_photon(reference, basis);

        OutcomeReport report;
        report.basis = basis;
        report.probability = survival * proj.probability;
        report.post_spins = std::move(proj.post_state);
        if (report.post_spins) {
            if (n == 2) report.concurrence = concurrence(*report.post_spins);
            if (n >= 3) {
                report.entropy_bits.reserve(static_cast<std::size_t>(n));
                for (int k = 0; k < n; ++k) {
                    const int cut[] = {k};
                    report.entropy_bits.push_back(
                        entanglement_entropy(*report.post_spins, cut));
                }
            }
            if (ref_proj.post_state)
                report.fidelity_vs_ideal =
                    fidelity(*report.post_spins, *ref_proj.post_state);
        }
        result.outcomes[static_cast<std::size_t>(which)] = std::move(report);
    }
    return result;
}

ProtocolResult run_chain(std::span<const NodeConfig> nodes,
                         const ScatterMode& mode,
                         std::span<const Complex, 2> input_photon,
                         BasisPair basis_pair) {
    return run_chain(nodes, std::span<const ScatterMode>{&mode, 1}, input_photon,
                     basis_pair);
}

ReadoutResult spin_readout(std::span<const WeightedSpin> ensemble) {
    if (ensemble.empty())
        throw BadWeights("readout ensemble is empty");
    double total = 0.0;
    for (const WeightedSpin& ws : ensemble) {
        if (!std::isfinite(ws.weight) || ws.weight < 0.0)
            throw BadWeights("ensemble weights must be non-negative");
        total += ws.weight;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw BadWeights("ensemble weights must sum to 1");

    ReadoutResult out;
    for (const WeightedSpin& ws : ensemble) {
        out.i_plus += ws.weight * std::norm(ws.spin.alpha);
        out.i_minus += ws.weight * std::norm(ws.spin.beta);
    }
    out.p_f = out.i_plus - out.i_minus;
    return out;
}

FaradayOutcome detect_faraday_outcome(const SpinState& spin,
                                      const CavityParams& params,
                                      double omega) {
    const double up = faraday_angle(params, omega, Spin::up);
    return FaradayOutcome{up, -up, std::norm(spin.alpha), std::norm(spin.beta)};
}

}  // namespace qdspin
