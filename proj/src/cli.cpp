#include "qdspin/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace qdspin::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

std::string fmt9(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of a negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

CavityParams to_params(const NodeSpec& node, double kappa) {
    return CavityParams(node.g * kappa, node.gamma * kappa, kappa,
                        /*omega_c=*/0.0, /*omega_x=*/node.x_detuning * kappa);
}

// ---- spec string parsing ------------------------------------------------

std::vector<double> parse_numbers(const std::string& text, std::size_t expected,
                                  const std::string& what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(token, &pos));
            if (pos != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw ConfigError("bad " + what + " value '" + token + "' in '" + text + "'");
        }
    }
    if (values.size() != expected)
        throw ConfigError("expected " + std::to_string(expected) + " comma-separated " +
                          what + " values in '" + text + "'");
    return values;
}

SpinState spin_from_numbers(const std::vector<double>& v, const std::string& source) {
    try {
        return make_spin_state(Complex{v[0], v[1]}, Complex{v[2], v[3]});
    } catch (const Error& e) {
        throw ConfigError("bad spin spec '" + source + "': " + e.what());
    }
}

// "re_a,im_a,re_b,im_b"
SpinState parse_spin_flat(const std::string& text) {
    return spin_from_numbers(parse_numbers(text, 4, "spin amplitude"), text);
}

// "i:re_a,im_a,re_b,im_b"
std::pair<int, SpinState> parse_spin_indexed(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("spin spec '" + text + "' must look like i:re_a,im_a,re_b,im_b");
    int index = -1;
    try {
        std::size_t pos = 0;
        index = std::stoi(text.substr(0, colon), &pos);
        if (pos != colon) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw ConfigError("bad node index in spin spec '" + text + "'");
    }
    return {index, parse_spin_flat(text.substr(colon + 1))};
}

// "weight:re_a,im_a,re_b,im_b"
WeightedSpin parse_ensemble_entry(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("ensemble spec '" + text + "' must look like w:re_a,im_a,re_b,im_b");
    double weight = 0.0;
    try {
        std::size_t pos = 0;
        weight = std::stod(text.substr(0, colon), &pos);
        if (pos != colon) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw ConfigError("bad weight in ensemble spec '" + text + "'");
    }
    return WeightedSpin{weight, parse_spin_flat(text.substr(colon + 1))};
}

GateMode parse_mode(const std::string& s) {
    if (s == "ideal") return GateMode::ideal;
    if (s == "physical") return GateMode::physical;
    throw ConfigError("mode must be 'ideal' or 'physical', got '" + s + "'");
}

BasisPair parse_basis(const std::string& s) {
    if (s == "linear") return BasisPair::linear;
    if (s == "diag" || s == "diagonal") return BasisPair::diagonal;
    throw ConfigError("basis must be 'linear' or 'diag', got '" + s + "'");
}

OutFormat parse_out(const std::string& s) {
    if (s == "csv") return OutFormat::csv;
    if (s == "json") return OutFormat::json;
    throw ConfigError("out must be 'csv' or 'json', got '" + s + "'");
}

// ---- config file --------------------------------------------------------

json load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file: " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) { known = true; break; }
        if (!known)
            throw ConfigError("unknown config key '" + item.key() + "' in " + where);
    }
}

std::optional<double> jnum(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number())
        throw ConfigError(std::string("config key '") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::optional<std::string> jstr(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_string())
        throw ConfigError(std::string("config key '") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

SpinState jspin(const json& value, const char* key) {
    if (!value.is_array() || value.size() != 4)
        throw ConfigError(std::string("config key '") + key +
                          "' must be an array [re_a, im_a, re_b, im_b]");
    std::vector<double> v;
    for (const auto& x : value) {
        if (!x.is_number())
            throw ConfigError(std::string("config key '") + key + "' must hold numbers");
        v.push_back(x.get<double>());
    }
    return spin_from_numbers(v, value.dump());
}

// ---- flag plumbing ------------------------------------------------------

struct Flags {
    double g = 5.0;
    double gamma = 0.3;
    double kappa = 1.0;
    double detuning = -0.5;
    std::string mode = "ideal";
    std::string basis = "linear";
    std::string out;
    std::string output;
    std::string config;
    // spectrum
    double min = -10.0;
    double max = 10.0;
    int points = 1001;
    bool unwrap = false;
    // faraday / readout
    std::string spin_flat;
    std::vector<std::string> ensemble_specs;
    // entangle
    int n_nodes = 2;
    std::vector<std::string> spin_specs;
    std::vector<double> phis;
};

bool given(const CLI::App& sub, const std::string& name) {
    const CLI::Option* opt = sub.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

RunConfig build_config(Command cmd, const Flags& fl, const CLI::App& sub) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.out = cmd == Command::spectrum ? OutFormat::csv : OutFormat::json;

    json file = json::object();
    if (given(sub, "--config")) file = load_config_file(fl.config);
    require_keys(file,
                 {"g", "gamma", "kappa", "detuning", "mode", "basis", "out", "output",
                  "phi", "spin", "nodes", "ensemble", "spectrum"},
                 "config file");

    // defaults, then file, then flags
    double g = 5.0, gamma = 0.3;
    if (auto v = jnum(file, "g")) g = *v;
    if (auto v = jnum(file, "gamma")) gamma = *v;
    if (auto v = jnum(file, "kappa")) cfg.kappa = *v;
    if (auto v = jnum(file, "detuning")) cfg.detuning = *v;
    if (auto v = jstr(file, "mode")) cfg.mode = parse_mode(*v);
    if (auto v = jstr(file, "basis")) cfg.basis = parse_basis(*v);
    if (auto v = jstr(file, "out")) cfg.out = parse_out(*v);
    if (auto v = jstr(file, "output")) cfg.output_path = *v;

    if (file.contains("phi")) {
        const json& p = file.at("phi");
        cfg.phis.clear();
        if (p.is_number()) {
            cfg.phis.push_back(p.get<double>());
        } else if (p.is_array()) {
            for (const auto& x : p) {
                if (!x.is_number()) throw ConfigError("config key 'phi' must hold numbers");
                cfg.phis.push_back(x.get<double>());
            }
        } else {
            throw ConfigError("config key 'phi' must be a number or array");
        }
    }
    if (file.contains("spin")) cfg.probe_spin = jspin(file.at("spin"), "spin");
    if (file.contains("ensemble")) {
        const json& ens = file.at("ensemble");
        if (!ens.is_array()) throw ConfigError("config key 'ensemble' must be an array");
        cfg.ensemble.clear();
        for (const auto& entry : ens) {
            require_keys(entry, {"weight", "spin"}, "ensemble entry");
            const auto w = jnum(entry, "weight");
            if (!w || !entry.contains("spin"))
                throw ConfigError("ensemble entries need 'weight' and 'spin'");
            cfg.ensemble.push_back(WeightedSpin{*w, jspin(entry.at("spin"), "spin")});
        }
    }
    if (file.contains("spectrum")) {
        const json& sp = file.at("spectrum");
        require_keys(sp, {"min", "max", "points", "unwrap_phase"}, "spectrum section");
        if (auto v = jnum(sp, "min")) cfg.spectrum.min = *v;
        if (auto v = jnum(sp, "max")) cfg.spectrum.max = *v;
        if (auto v = jnum(sp, "points")) cfg.spectrum.points = static_cast<int>(*v);
        if (sp.contains("unwrap_phase")) {
            if (!sp.at("unwrap_phase").is_boolean())
                throw ConfigError("config key 'unwrap_phase' must be a boolean");
            cfg.spectrum.unwrap_phase = sp.at("unwrap_phase").get<bool>();
        }
    }

    if (given(sub, "--kappa")) cfg.kappa = fl.kappa;
    if (given(sub, "--detuning")) cfg.detuning = fl.detuning;
    if (given(sub, "--mode")) cfg.mode = parse_mode(fl.mode);
    if (given(sub, "--out")) cfg.out = parse_out(fl.out);
    if (given(sub, "--output")) cfg.output_path = fl.output;
    if (cmd == Command::entangle && given(sub, "--basis"))
        cfg.basis = parse_basis(fl.basis);
    if (cmd == Command::spectrum) {
        if (given(sub, "--min")) cfg.spectrum.min = fl.min;
        if (given(sub, "--max")) cfg.spectrum.max = fl.max;
        if (given(sub, "--points")) cfg.spectrum.points = fl.points;
        if (given(sub, "--unwrap-phase")) cfg.spectrum.unwrap_phase = fl.unwrap;
    }
    if (given(sub, "--g")) g = fl.g;
    if (given(sub, "--gamma")) gamma = fl.gamma;

    // node list: flag count beats the file's node array, which beats the default
    const json* file_nodes = nullptr;
    if (file.contains("nodes")) {
        if (!file.at("nodes").is_array())
            throw ConfigError("config key 'nodes' must be an array");
        file_nodes = &file.at("nodes");
    }
    std::size_t count = 1;
    if (cmd == Command::entangle) {
        if (given(sub, "--nodes")) {
            if (fl.n_nodes < 2) throw ConfigError("entangle needs between 2 and 12 nodes");
            count = static_cast<std::size_t>(fl.n_nodes);
        } else if (file_nodes) {
            count = file_nodes->size();
        } else {
            count = 2;
        }
        if (count < 2 || count > static_cast<std::size_t>(kMaxSpins))
            throw ConfigError("entangle needs between 2 and 12 nodes");
    }
    for (std::size_t i = 0; i < count; ++i) {
        NodeSpec node;
        node.g = g;
        node.gamma = gamma;
        if (file_nodes && i < file_nodes->size()) {
            const json& fn = (*file_nodes)[i];
            require_keys(fn, {"g", "gamma", "x_detuning", "spin"}, "node entry");
            if (auto v = jnum(fn, "g")) node.g = *v;
            if (auto v = jnum(fn, "gamma")) node.gamma = *v;
            if (auto v = jnum(fn, "x_detuning")) node.x_detuning = *v;
            if (fn.contains("spin")) node.spin = jspin(fn.at("spin"), "spin");
            // a flag still wins over a per-node file value
            if (given(sub, "--g")) node.g = fl.g;
            if (given(sub, "--gamma")) node.gamma = fl.gamma;
        }
        cfg.nodes.push_back(node);
    }

    if (cmd == Command::entangle) {
        for (const std::string& spec : fl.spin_specs) {
            const auto [index, spin] = parse_spin_indexed(spec);
            if (index < 0 || static_cast<std::size_t>(index) >= cfg.nodes.size())
                throw ConfigError("spin spec '" + spec + "' addresses a node outside 0.." +
                                  std::to_string(cfg.nodes.size() - 1));
            cfg.nodes[static_cast<std::size_t>(index)].spin = spin;
        }
        if (given(sub, "--phi")) cfg.phis = fl.phis;
        if (!cfg.phis.empty() && cfg.phis.size() != 1 && cfg.phis.size() != cfg.nodes.size())
            throw ConfigError("phi needs one value or one per node");
        for (double phi : cfg.phis)
            if (!std::isfinite(phi)) throw ConfigError("phi must be finite");
    } else if (given(sub, "--spin")) {
        cfg.probe_spin = parse_spin_flat(fl.spin_flat);
    }
    if (cmd == Command::readout && !fl.ensemble_specs.empty()) {
        cfg.ensemble.clear();
        for (const std::string& spec : fl.ensemble_specs)
            cfg.ensemble.push_back(parse_ensemble_entry(spec));
    }

    if (cmd == Command::spectrum) {
        if (cfg.spectrum.points < 2) throw ConfigError("points must be >= 2");
        if (!std::isfinite(cfg.spectrum.min) || !std::isfinite(cfg.spectrum.max))
            throw ConfigError("spectrum range must be finite");
        if (!(cfg.spectrum.min < cfg.spectrum.max))
            throw ConfigError("spectrum range needs min < max");
    }
    if (!std::isfinite(cfg.detuning)) throw ConfigError("detuning must be finite");
    for (const NodeSpec& node : cfg.nodes) {
        try {
            to_params(node, cfg.kappa);
        } catch (const InvalidParams& e) {
            throw ConfigError(e.what());
        }
    }
    return cfg;
}

// ---- output plumbing ----------------------------------------------------

template <typename Body>
int write_report(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                 Body&& body) {
    if (cfg.output_path.empty()) {
        body(out);
        return 0;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) {
        err << "error: cannot open output file: " << cfg.output_path << "\n";
        return 1;
    }
    body(f);
    f.flush();
    if (!f) {
        err << "error: failed writing output file: " << cfg.output_path << "\n";
        return 1;
    }
    return 0;
}

int report_error(std::ostream& err, const std::exception& e, int code) {
    err << "error: " << e.what() << "\n";
    return code;
}

}  // namespace

SpinState equal_superposition() {
    const double s = 1.0 / std::sqrt(2.0);
    return SpinState{Complex{s, 0.0}, Complex{s, 0.0}};
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.spectrum.points < 2) throw ConfigError("points must be >= 2");
        if (!(cfg.spectrum.min < cfg.spectrum.max))
            throw ConfigError("spectrum range needs min < max");
        const CavityParams params = to_params(cfg.nodes.at(0), cfg.kappa);
        const auto points =
            sweep_spectrum(params, cfg.spectrum.min, cfg.spectrum.max, cfg.spectrum.points);

        std::vector<double> cold_phase(points.size()), hot_phase(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            cold_phase[i] = points[i].cold.phase;
            hot_phase[i] = points[i].hot.phase;
        }
        if (cfg.spectrum.unwrap_phase) {
            unwrap_phases(cold_phase);
            unwrap_phases(hot_phase);
        }

        return write_report(cfg, out, err, [&](std::ostream& os) {
            if (cfg.out == OutFormat::csv) {
                os << "detuning,cold_modulus,cold_phase,hot_modulus,hot_phase,"
                      "theta_up,theta_down\n";
                for (std::size_t i = 0; i < points.size(); ++i) {
                    const SpectrumPoint& p = points[i];
                    os << fmt9(p.detuning) << ',' << fmt9(p.cold.modulus) << ','
                       << fmt9(cold_phase[i]) << ',' << fmt9(p.hot.modulus) << ','
                       << fmt9(hot_phase[i]) << ',' << fmt9(p.theta_up) << ','
                       << fmt9(p.theta_down) << '\n';
                }
            } else {
                json rows = json::array();
                for (std::size_t i = 0; i < points.size(); ++i) {
                    const SpectrumPoint& p = points[i];
                    rows.push_back({{"detuning", p.detuning},
                                    {"cold_modulus", p.cold.modulus},
                                    {"cold_phase", cold_phase[i]},
                                    {"hot_modulus", p.hot.modulus},
                                    {"hot_phase", hot_phase[i]},
                                    {"theta_up", p.theta_up},
                                    {"theta_down", p.theta_down}});
                }
                os << json{{"rows", rows}}.dump(2) << "\n";
            }
        });
    } catch (const ConfigError& e) {
        return report_error(err, e, 2);
    } catch (const Error& e) {
        return report_error(err, e, 1);
    }
}

int cmd_faraday(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const CavityParams params = to_params(cfg.nodes.at(0), cfg.kappa);
        const double omega = params.omega_c + cfg.detuning * cfg.kappa;
        const PhaseShifts ps = phase_shifts(params, omega);
        const FaradayOutcome outcome =
            detect_faraday_outcome(cfg.probe_spin, params, omega);
        if (params.g == 0.0)
            err << "warning: g = 0, hot and cold phases coincide and no rotation occurs\n";

        return write_report(cfg, out, err, [&](std::ostream& os) {
            if (cfg.out == OutFormat::csv) {
                os << "detuning,theta_up,theta_down,phi_0,phi_h,p_plus,p_minus\n"
                   << fmt9(cfg.detuning) << ',' << fmt9(outcome.theta_up) << ','
                   << fmt9(outcome.theta_down) << ',' << fmt9(ps.phi_0) << ','
                   << fmt9(ps.phi_h) << ',' << fmt9(outcome.p_up) << ','
                   << fmt9(outcome.p_down) << '\n';
            } else {
                const json j = {{"detuning", cfg.detuning},
                                {"theta_up", outcome.theta_up},
                                {"theta_down", outcome.theta_down},
                                {"phi_0", ps.phi_0},
                                {"phi_h", ps.phi_h},
                                {"p_plus", outcome.p_up},
                                {"p_minus", outcome.p_down}};
                os << j.dump(2) << "\n";
            }
        });
    } catch (const ConfigError& e) {
        return report_error(err, e, 2);
    } catch (const Error& e) {
        return report_error(err, e, 1);
    }
}

int cmd_readout(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        std::vector<WeightedSpin> ensemble = cfg.ensemble;
        if (ensemble.empty()) ensemble.push_back(WeightedSpin{1.0, cfg.probe_spin});
        ReadoutResult result;
        try {
            result = spin_readout(ensemble);
        } catch (const BadWeights& e) {
            return report_error(err, e, 2);
        }

        return write_report(cfg, out, err, [&](std::ostream& os) {
            if (cfg.out == OutFormat::csv) {
                os << "p_f,i_plus,i_minus\n"
                   << fmt9(result.p_f) << ',' << fmt9(result.i_plus) << ','
                   << fmt9(result.i_minus) << '\n';
            } else {
                const json j = {{"p_f", result.p_f},
                                {"i_plus", result.i_plus},
                                {"i_minus", result.i_minus}};
                os << j.dump(2) << "\n";
            }
        });
    } catch (const ConfigError& e) {
        return report_error(err, e, 2);
    } catch (const Error& e) {
        return report_error(err, e, 1);
    }
}

int cmd_entangle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.out == OutFormat::csv)
            throw ConfigError("entangle emits JSON only; drop --out csv");
        const std::size_t n = cfg.nodes.size();
        if (n < 2 || n > static_cast<std::size_t>(kMaxSpins))
            throw ConfigError("entangle needs between 2 and 12 nodes");

        std::vector<NodeConfig> nodes;
        nodes.reserve(n);
        for (const NodeSpec& spec : cfg.nodes)
            nodes.push_back(NodeConfig{to_params(spec, cfg.kappa), spec.spin});

        std::vector<double> phis = cfg.phis;
        if (phis.empty()) phis.assign(1, kPi / 2.0);
        if (phis.size() == 1) phis.assign(n, phis[0]);
        if (phis.size() != n) throw ConfigError("phi needs one value or one per node");

        std::vector<ScatterMode> modes;
        if (cfg.mode == GateMode::ideal) {
            for (double phi : phis) modes.push_back(ScatterMode::ideal(phi));
        } else {
            modes.assign(n, ScatterMode::physical(cfg.detuning * cfg.kappa));
        }

        const double s = 1.0 / std::sqrt(2.0);
        const std::array<Complex, 2> photon{Complex{s, 0.0}, Complex{s, 0.0}};
        const ProtocolResult result = run_chain(nodes, modes, photon, cfg.basis);

        json outcomes = json::object();
        for (const OutcomeReport& report : result.outcomes) {
            json o;
            o["probability"] = report.probability;
            if (report.post_spins) {
                json amps = json::array();
                for (const Complex& a : report.post_spins->amps)
                    amps.push_back({a.real(), a.imag()});
                o["post_state"] = amps;
            } else {
                o["post_state"] = nullptr;
            }
            if (n == 2)
                o["concurrence"] =
                    report.concurrence ? json(*report.concurrence) : json(nullptr);
            if (n >= 3) {
                if (report.post_spins) {
                    o["entropy_bits"] = report.entropy_bits;
                } else {
                    o["entropy_bits"] = nullptr;
                }
            }
            o["fidelity_vs_ideal"] = report.fidelity_vs_ideal
                                         ? json(*report.fidelity_vs_ideal)
                                         : json(nullptr);
            outcomes[to_string(report.basis)] = std::move(o);
        }

        json j;
        j["mode"] = cfg.mode == GateMode::ideal ? "ideal" : "physical";
        j["basis_pair"] = cfg.basis == BasisPair::linear ? "linear" : "diag";
        j["n_nodes"] = n;
        if (cfg.mode == GateMode::ideal) {
            j["phi"] = phis;
        } else {
            j["detuning"] = cfg.detuning;
        }
        j["survival_probability"] = result.survival_probability;
        j["outcomes"] = std::move(outcomes);

        return write_report(cfg, out, err,
                            [&](std::ostream& os) { os << j.dump(2) << "\n"; });
    } catch (const ConfigError& e) {
        return report_error(err, e, 2);
    } catch (const Error& e) {
        return report_error(err, e, 1);
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spin-dependent cavity reflection, giant Faraday rotation, and "
                 "single-photon remote spin entanglement"};
    app.name("qdspin");
    app.require_subcommand(1);

    Flags fl;
    const auto add_common = [&fl](CLI::App* sub) {
        sub->add_option("--g", fl.g, "coupling rate g in units of kappa");
        sub->add_option("--gamma", fl.gamma, "dipole decay rate in units of kappa");
        sub->add_option("--kappa", fl.kappa, "cavity decay rate (the frequency unit)");
        sub->add_option("--detuning", fl.detuning,
                        "probe detuning (omega - omega_c)/kappa");
        sub->add_option("--mode", fl.mode, "gate model: ideal | physical");
        sub->add_option("--out", fl.out, "report format: csv | json");
        sub->add_option("--output", fl.output, "write the report to PATH");
        sub->add_option("--config", fl.config, "JSON config file (flags override it)");
    };

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "Sweep reflection moduli, phases, and Faraday "
                                       "angles over probe detuning");
    add_common(spectrum);
    spectrum->add_option("--min", fl.min, "sweep start in units of kappa");
    spectrum->add_option("--max", fl.max, "sweep end in units of kappa");
    spectrum->add_option("--points", fl.points, "number of samples (>= 2)");
    spectrum->add_flag("--unwrap-phase", fl.unwrap,
                       "emit continuous phases instead of principal values");

    CLI::App* faraday =
        app.add_subcommand("faraday", "Phase shifts, rotation angles, and outcome "
                                      "probabilities at one detuning");
    add_common(faraday);
    faraday->add_option("--spin", fl.spin_flat, "probe spin re_a,im_a,re_b,im_b");

    CLI::App* readout = app.add_subcommand(
        "readout", "Polarization-degree readout of a spin or spin ensemble");
    add_common(readout);
    readout->add_option("--spin", fl.spin_flat, "pure spin re_a,im_a,re_b,im_b");
    readout->add_option("--ensemble", fl.ensemble_specs,
                        "ensemble member w:re_a,im_a,re_b,im_b (repeatable)");

    CLI::App* entangle = app.add_subcommand(
        "entangle", "Run the single-photon chain and report the projected spins");
    add_common(entangle);
    entangle->add_option("--nodes", fl.n_nodes, "number of nodes (2..12)");
    entangle->add_option("--spin", fl.spin_specs,
                         "node spin i:re_a,im_a,re_b,im_b (repeatable)");
    entangle->add_option("--basis", fl.basis, "measurement pair: linear | diag");
    entangle->add_option("--phi", fl.phis,
                         "ideal gate phase per node in radians (default pi/2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Command cmd = Command::spectrum;
    const CLI::App* sub = spectrum;
    if (faraday->parsed()) {
        cmd = Command::faraday;
        sub = faraday;
    } else if (readout->parsed()) {
        cmd = Command::readout;
        sub = readout;
    } else if (entangle->parsed()) {
        cmd = Command::entangle;
        sub = entangle;
    }

    RunConfig cfg;
    try {
        cfg = build_config(cmd, fl, *sub);
    } catch (const Error& e) {
        // anything rejected while assembling the config is a usage error
        return report_error(err, e, 2);
    }

    switch (cmd) {
        case Command::spectrum: return cmd_spectrum(cfg, out, err);
        case Command::faraday: return cmd_faraday(cfg, out, err);
        case Command::readout: return cmd_readout(cfg, out, err);
        case Command::entangle: return cmd_entangle(cfg, out, err);
    }
    return 1;
}

}  // namespace qdspin::cli
