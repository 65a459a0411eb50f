#include "magrev/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>

#include "magrev/errors.hpp"
#include "magrev/io.hpp"
#include "magrev/protocol.hpp"
#include "magrev/sweep.hpp"

namespace magrev::cli {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open output file '" + path.string() + "'");
    return os;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    auto os = open_output(path);
    os << j.dump(2) << '\n';
}

fs::path sidecar_path(const std::string& out) {
    return fs::path(out).replace_extension(".json");
}

// Settings shared by every leaf command.
struct Common {
    std::string config;
    std::string out;
    int steps = 20000;
    bool seedless = false;
    bool print_config = false;
};

Common& add_common(CLI::App* cmd, std::map<std::string, Common>& commons,
                   const std::string& default_out) {
    Common& c = commons[cmd->get_name()];
    c.out = default_out;
    cmd->add_option("--config", c.config, "flat key = value file; flags take precedence");
    cmd->add_option("--out", c.out, "output path");
    cmd->add_option("--steps", c.steps, "RK4 steps per pulse (>= 1000)");
    cmd->add_flag("--seedless", c.seedless, "reserved; the simulator has no randomness");
    cmd->add_flag("--print-config", c.print_config, "print the resolved configuration and exit");
    return c;
}

IntegratorConfig integrator_for(const Common& c) {
    IntegratorConfig cfg;
    cfg.steps = c.steps;
    cfg.validate();
    return cfg;
}

void print_config(const CLI::App* cmd, std::ostream& out) {
    for (const CLI::Option* opt : cmd->get_options()) {
        const std::string name = opt->get_lnames().empty() ? "" : opt->get_lnames().front();
        if (name.empty() || name == "help" || name == "config" || name == "print-config") continue;
        std::string value;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
        } else {
            value = opt->get_default_str();
            if (value.empty() && opt->get_expected_max() == 0) value = "false";
        }
        out << name << " = " << value << '\n';
    }
}

const CLI::App* leaf_command(const CLI::App& app) {
    const CLI::App* cur = &app;
    for (;;) {
        const auto subs = cur->get_subcommands();
        if (subs.empty()) return cur;
        cur = subs.front();
    }
}

void parse_reversed(CLI::App& app, std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    app.parse(args);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto text = trim(line.substr(0, line.find('#')));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        auto key = trim(text.substr(0, eq));
        auto value = trim(text.substr(eq + 1));
        if (key.empty()) throw ValidationError(path + ":" + std::to_string(lineno) + ": empty key");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Magnetization reversal by inverse-engineered chirped and composite pulses",
                 "magrev"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default()->multi_option_policy(
        CLI::MultiOptionPolicy::TakeLast);

    std::map<std::string, Common> commons;
    std::function<void()> action;

    // design
    double design_h = 0.08, design_tf = 100.0;
    int samples = 1001;
    auto* design = app.add_subcommand("design", "synthesize the chirp of one reversal pulse");
    design->add_option("--h", design_h, "drive amplitude, units h_0");
    design->add_option("--tf", design_tf, "pulse duration, units t_0");
    design->add_option("--samples", samples, "chirp samples including both endpoints");
    Common& design_common = add_common(design, commons, "chirp.csv");
    design->callback([&] {
        action = [&] {
            if (samples < 2) throw ValidationError("--samples must be >= 2");
            const auto pulse = PulseDesign::design(design_h, design_tf);
            auto os = open_output(design_common.out);
            write_chirp_csv(os, pulse, samples);
            write_json(sidecar_path(design_common.out), design_to_json(pulse));
        };
    });

    // simulate
    ExperimentSpec sim;
    std::string traj_path;
    std::optional<double> feedforward;
    auto* simulate = app.add_subcommand("simulate", "run one reversal protocol");
    simulate->add_option("--h", sim.params.h, "drive amplitude, units h_0");
    simulate->add_option("--tf", sim.params.tf, "duration of each pulse, units t_0");
    simulate->add_option("--d", sim.params.d, "anisotropy field, units h_0");
    simulate->add_option("--alpha", sim.params.alpha, "Gilbert damping");
    simulate->add_option("--N", sim.n_pulses, "composite sequence length (odd)");
    simulate->add_option("--traj", traj_path, "trajectory CSV output");
    simulate->add_option("--feedforward", feedforward,
                         "add coefficient * d * cos(theta_ref) to the chirp");
    Common& simulate_common = add_common(simulate, commons, "result.json");
    simulate->callback([&] {
        action = [&] {
            sim.integrator = integrator_for(simulate_common);
            sim.record_trajectory = !traj_path.empty();
            sim.feedforward = feedforward;
            const auto result = run_experiment(sim);
            write_json(simulate_common.out, result_to_json(result));
            if (result.trajectory) {
                auto os = open_output(traj_path);
                write_trajectory_csv(os, *result.trajectory);
            }
            out << "P = " << format_double(result.probability) << '\n';
        };
    });

    // sweeps
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter scans");
    sweep_cmd->require_subcommand(1);
    int threads = 0;

    struct CurveArgs {
        double lo, hi;
        int points;
        double h, d, alpha, tf;
        std::vector<int> pulse_counts;
    };
    auto curves_action = [&](SweepParam param, const CurveArgs& a, Common& common) {
        return [param, &a = a, &common = common, &threads] {
            SweepSpec spec;
            spec.base.params = {a.h, a.d, a.alpha, a.tf};
            spec.base.integrator = integrator_for(common);
            spec.axes.push_back(SweepAxis::linspace(param, a.lo, a.hi, a.points));
            if (a.pulse_counts.empty()) throw ValidationError("--N needs at least one value");
            for (int n : a.pulse_counts) composite_phases(n);
            spec.base.n_pulses = a.pulse_counts.front();
            spec.validate();
            const auto table = compare_n(spec, a.pulse_counts, threads);
            auto os = open_output(common.out);
            write_curves_csv(os, table);
            auto side = sweep_spec_to_json(spec);
            side["N_list"] = a.pulse_counts;
            write_json(sidecar_path(common.out), side);
        };
    };

    CurveArgs amp{0.05, 0.15, 101, 0.08, 0.0, 0.0, 100.0, {1}};
    auto* amplitude = sweep_cmd->add_subcommand("amplitude", "P versus h, one curve per N");
    amplitude->add_option("--h-min", amp.lo);
    amplitude->add_option("--h-max", amp.hi);
    amplitude->add_option("--points", amp.points);
    amplitude->add_option("--tf", amp.tf);
    amplitude->add_option("--d", amp.d);
    amplitude->add_option("--alpha", amp.alpha);
    amplitude->add_option("--N", amp.pulse_counts)->delimiter(',');
    amplitude->add_option("--threads", threads, "0 = OpenMP default");
    Common& amplitude_common = add_common(amplitude, commons, "sweep_amplitude.csv");
    amplitude->callback([&] { action = curves_action(SweepParam::h, amp, amplitude_common); });

    double nd_h = 0.05, nd_tf = 100.0, nd_alpha = 0.0, d_min = 0.0, d_max = 0.05;
    int nd_points = 101, n_min = 1, n_max = 21;
    auto* nd = sweep_cmd->add_subcommand("nd", "P over the (N, d) grid");
    nd->add_option("--d-min", d_min);
    nd->add_option("--d-max", d_max);
    nd->add_option("--points", nd_points, "points on the d axis");
    nd->add_option("--n-min", n_min);
    nd->add_option("--n-max", n_max);
    nd->add_option("--h", nd_h);
    nd->add_option("--tf", nd_tf);
    nd->add_option("--alpha", nd_alpha);
    nd->add_option("--threads", threads, "0 = OpenMP default");
    Common& nd_common = add_common(nd, commons, "sweep_nd.csv");
    nd->callback([&] {
        action = [&] {
            SweepSpec spec;
            spec.base.params = {nd_h, 0.0, nd_alpha, nd_tf};
            spec.base.integrator = integrator_for(nd_common);
            spec.axes.push_back(SweepAxis::odd_pulses(n_min, n_max));
            spec.axes.push_back(SweepAxis::linspace(SweepParam::d, d_min, d_max, nd_points));
            const auto result = sweep(spec, threads);
            auto os = open_output(nd_common.out);
            write_sweep_csv(os, result);
            write_json(sidecar_path(nd_common.out), sweep_spec_to_json(spec));
        };
    });

    CurveArgs damp{0.0, 0.01, 101, 0.05, 0.005, 0.0, 100.0, {1, 3, 5}};
    auto* damping = sweep_cmd->add_subcommand("alpha", "P versus damping, one curve per N");
    damping->add_option("--alpha-min", damp.lo);
    damping->add_option("--alpha-max", damp.hi);
    damping->add_option("--points", damp.points);
    damping->add_option("--h", damp.h);
    damping->add_option("--d", damp.d);
    damping->add_option("--tf", damp.tf);
    damping->add_option("--N", damp.pulse_counts)->delimiter(',');
    damping->add_option("--threads", threads, "0 = OpenMP default");
    Common& damping_common = add_common(damping, commons, "sweep_alpha.csv");
    damping->callback([&] { action = curves_action(SweepParam::alpha, damp, damping_common); });

    try {
        parse_reversed(app, args);
        const CLI::App* leaf = leaf_command(app);
        Common& common = commons.at(leaf->get_name());
        if (!common.config.empty()) {
            std::vector<std::string> full = args;
            for (const auto& [key, value] : read_config_file(common.config)) {
                const CLI::Option* opt = leaf->get_option_no_throw("--" + key);
                if (opt == nullptr || key == "config") {
                    throw ValidationError("unknown config key '" + key + "' for command '" +
                                          leaf->get_name() + "'");
                }
                if (opt->count() == 0) full.push_back("--" + key + "=" + value);
            }
            app.clear();
            parse_reversed(app, full);
        }
        if (common.seedless) {
            throw ValidationError("--seedless is reserved: the simulator is deterministic");
        }
        if (common.print_config) {
            print_config(leaf_command(app), out);
            return kOk;
        }
        action();
        return kOk;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    } catch (const FeasibilityError& e) {
        err << "infeasible design: " << e.what() << '\n';
        return kInfeasible;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace magrev::cli
