#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdspin/protocol.hpp"

namespace qdspin::cli {

enum class Command { spectrum, faraday, readout, entangle };
enum class OutFormat { csv, json };
enum class GateMode { ideal, physical };

SpinState equal_superposition();

/// Cavity parameters and spin preparation of one node, in kappa units.
struct NodeSpec {
    double g = 5.0;
    double gamma = 0.3;
    double x_detuning = 0.0;  // (omega_x - omega_c)/kappa
    SpinState spin = equal_superposition();
};

struct SpectrumOptions {
    double min = -10.0;
    double max = 10.0;
    int points = 1001;
    bool unwrap_phase = false;
};

/// Fully resolved run configuration (defaults, then config file, then flags).
struct RunConfig {
    Command command = Command::spectrum;
    double kappa = 1.0;
    double detuning = -0.5;  // probe detuning (omega - omega_c)/kappa
    GateMode mode = GateMode::ideal;
    BasisPair basis = BasisPair::linear;
    OutFormat out = OutFormat::csv;
    std::string output_path;          // empty = standard output
    std::vector<double> phis;         // ideal gate phases; empty = pi/2 everywhere
    std::vector<NodeSpec> nodes;      // entangle nodes; nodes[0] also provides
                                      // the cavity for single-node commands
    SpinState probe_spin = equal_superposition();
    std::vector<WeightedSpin> ensemble;  // readout; empty = pure probe_spin
    SpectrumOptions spectrum;
};

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_faraday(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_readout(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_entangle(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, merges an optional JSON config file with flags (flags win),
/// and dispatches. Returns the process exit code: 0 success, 1 computation
/// error, 2 usage/config error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdspin::cli
