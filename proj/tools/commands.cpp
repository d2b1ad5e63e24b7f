#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <random>

#include "lrqt/dipolar.hpp"
#include "lrqt/error.hpp"
#include "lrqt/mera.hpp"
#include "lrqt/protocol.hpp"
#include "lrqt/reliability.hpp"
#include "lrqt/report.hpp"
#include "lrqt/schedule.hpp"

#ifndef LRQT_VERSION
#define LRQT_VERSION "0.0.0"
#endif

namespace lrqt::cli {

using json = nlohmann::ordered_json;

double parse_seconds(const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse time '" + text + "'");
    }
    std::string unit = text.substr(used);
    while (!unit.empty() && unit.front() == ' ') unit.erase(0, 1);
    double scale = 1.0;
    if (unit.empty() || unit == "s") scale = 1.0;
    else if (unit == "ms") scale = 1e-3;
    else if (unit == "us" || unit == "\xC2\xB5s" || unit == "\xCE\xBCs") scale = 1e-6;
    else if (unit == "ns") scale = 1e-9;
    else throw InvalidArgument("unknown time unit '" + unit + "' in '" + text + "'");
    if (!std::isfinite(value)) throw InvalidArgument("time must be finite");
    return value * scale;
}

namespace {

struct Common {
    std::string out_path;
    std::string format = "csv";
    bool smoke = false;
    std::uint64_t seed = 20240601;
};

// Result of a subcommand: the rendered CSV table or JSON document.
struct Output {
    std::optional<CsvTable> table;
    json document;
};

std::string fmt(double v) { return format_double(v); }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string join(const std::vector<double>& values, char sep = ';') {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? std::string(1, sep) : "") + fmt(values[i]);
    return s;
}

// Resolved value of every option of `sub`, defaults included.
std::string stamp_for(const CLI::App& sub) {
    std::vector<std::string> parts{sub.get_name()};
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->get_name() == "--help" || opt->get_name() == "-h,--help") continue;
        std::string value;
        if (opt->count() > 0) {
            const auto& results = opt->results();
            for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
        } else {
            value = opt->get_default_str();
        }
        if (value.empty()) value = opt->get_expected_max() == 0 ? "false" : "-";
        parts.push_back(opt->get_name() + "=" + value);
    }
    return reproducibility_stamp(LRQT_VERSION, parts);
}

Output table_output(CsvTable table, json document) {
    Output o;
    o.table = std::move(table);
    o.document = std::move(document);
    return o;
}

// ---------------------------------------------------------------- schedule

struct ScheduleCfg {
    int d = 1;
    double alpha = 3.0;
    int L = 10;
    std::string mode = "hypercube";
};

Output cmd_schedule(const ScheduleCfg& cfg, const Common& common) {
    if (cfg.L < 1) throw InvalidArgument("L must be >= 1");
    if (cfg.d < 1) throw InvalidArgument("d must be >= 1");
    const ScheduleMode mode = parse_schedule_mode(cfg.mode);
    const int L = common.smoke ? std::min(cfg.L, 64) : cfg.L;

    if (mode == ScheduleMode::hypercube) {
        const ScheduleResult res = solve_hypercube_times(L, cfg.d, cfg.alpha);
        CsvTable table({"q", "t_q", "cumulative", "residual", "scaling_bound"});
        json rows = json::array();
        for (int q = 1; q <= L; ++q) {
            const auto i = static_cast<std::size_t>(q - 1);
            const double bound = cfg.alpha > 0.0 ? tq_scaling_bound(q, cfg.d, cfg.alpha) : 1.0;
            table.add_row({std::to_string(q), fmt(res.times[i]), fmt(res.cumulative[i]), fmt(res.residuals[i]), fmt(bound)});
            rows.push_back({{"q", q}, {"t_q", res.times[i]}, {"cumulative", res.cumulative[i]}, {"residual", res.residuals[i]}});
        }
        const TransferTime tt = total_transfer_time(res);
        json doc{{"mode", "hypercube"}, {"d", cfg.d}, {"alpha", cfg.alpha}, {"L", L},
                 {"one_way_time", tt.one_way}, {"transfer_time", tt.transfer}, {"max_residual", res.max_residual()},
                 {"rows", rows}};
        return table_output(std::move(table), std::move(doc));
    }

    const LatticeSpec lattice = LatticeSpec::cube(cfg.d, L + 1, cfg.alpha);
    const GreedyEventLog log = greedy_schedule(lattice);
    CsvTable table({"event", "time", "promoted", "controls"});
    json events = json::array();
    std::size_t controls = 0;
    for (std::size_t e = 0; e < log.events.size(); ++e) {
        controls += log.events[e].sites.size();
        table.add_row({std::to_string(e), fmt(log.events[e].time), std::to_string(log.events[e].sites.size()),
                       std::to_string(controls)});
        events.push_back({{"time", log.events[e].time}, {"sites", log.events[e].sites}});
    }
    json doc{{"mode", "greedy"}, {"d", cfg.d}, {"alpha", cfg.alpha}, {"sites_per_edge", L + 1},
             {"total_time", log.total_time}, {"destination_time", log.destination_time}, {"events", events}};
    return table_output(std::move(table), std::move(doc));
}

// -------------------------------------------------------------------- fig3

struct Fig3Cfg {
    int d = 2;
    std::vector<double> alphas;
    int L_max = 1000;
    double window = 0.9;
};

double predicted_beta(double alpha, int d) { return std::clamp(alpha - d, 0.0, 1.0); }

Output cmd_fig3(Fig3Cfg cfg, const Common& common) {
    if (cfg.alphas.empty()) {
        for (int k = 0; k <= 12; ++k) cfg.alphas.push_back(1.0 + 0.25 * k);
    }
    if (common.smoke) cfg.L_max = std::min(cfg.L_max, 200);
    CsvTable table({"alpha", "d", "L_min", "L_max", "beta", "model", "r_squared", "predicted_beta", "log_coefficient",
                    "log_intercept", "log_r_squared"});
    json rows = json::array();
    for (double alpha : cfg.alphas) {
        const ScalingFitReport rep = fit_scaling(cfg.d, alpha, cfg.L_max, cfg.window);
        const auto& p = rep.power_law;
        std::string model = to_string(FitModel::power_law);
        std::string lc, li, lr;
        json row{{"alpha", alpha}, {"beta", p.beta}, {"r_squared", p.r_squared}, {"predicted_beta", predicted_beta(alpha, cfg.d)},
                 {"L_min", p.L_min}, {"L_max", p.L_max}};
        if (rep.logarithmic) {
            model += "|" + to_string(FitModel::logarithmic);
            lc = fmt(rep.logarithmic->beta);
            li = fmt(rep.logarithmic->intercept);
            lr = fmt(rep.logarithmic->r_squared);
            row["logarithmic"] = {{"coefficient", rep.logarithmic->beta},
                                  {"intercept", rep.logarithmic->intercept},
                                  {"r_squared", rep.logarithmic->r_squared}};
        }
        row["model"] = model;
        table.add_row({fmt(alpha), std::to_string(cfg.d), std::to_string(p.L_min), std::to_string(p.L_max), fmt(p.beta), model,
                       fmt(p.r_squared), fmt(predicted_beta(alpha, cfg.d)), lc, li, lr});
        rows.push_back(std::move(row));
    }
    json doc{{"d", cfg.d}, {"L_max", cfg.L_max}, {"window", cfg.window}, {"fits", rows}};
    return table_output(std::move(table), std::move(doc));
}

// ---------------------------------------------------------------- simulate

struct SimulateCfg {
    int d = 1;
    int L = 3;
    double alpha = 3.0;
    std::optional<double> a;
    std::optional<double> b;
    std::string mode = "greedy";
    std::string phase = "full_transfer";
};

Output cmd_simulate(const SimulateCfg& cfg, const Common& common) {
    const ScheduleMode mode = parse_schedule_mode(cfg.mode);
    const ProtocolPhase phase = parse_protocol_phase(cfg.phase);
    const LatticeSpec lattice = LatticeSpec::cube(cfg.d, cfg.L, cfg.alpha);
    lattice.validate();
    if (common.smoke && lattice.site_count() > 12) throw InvalidArgument("smoke preset caps the lattice at 12 sites");

    Complex a, b;
    if (cfg.a && cfg.b) {
        a = *cfg.a;
        b = *cfg.b;
    } else if (cfg.a || cfg.b) {
        const double given = cfg.a ? *cfg.a : *cfg.b;
        if (std::abs(given) > 1.0) throw InvalidArgument("amplitude magnitude must be <= 1");
        const double other = std::sqrt(1.0 - given * given);
        a = cfg.a ? given : other;
        b = cfg.a ? other : given;
    } else {
        std::mt19937_64 rng(common.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double theta = 0.5 * std::numbers::pi * u(rng);
        const double phi = 2.0 * std::numbers::pi * u(rng);
        a = std::cos(theta);
        b = std::polar(std::sin(theta), phi);
    }

    const TransferReport rep = run_protocol(lattice, a, b, mode, phase);
    const int n = static_cast<int>(lattice.site_count());
    Complex expected{1.0, 0.0};
    for (int k = 1; k < n; ++k) expected *= Complex{0.0, -1.0};

    json doc{{"d", cfg.d}, {"L", cfg.L}, {"alpha", cfg.alpha}, {"sites", n},
             {"mode", to_string(mode)}, {"phase", to_string(phase)},
             {"a", complex_json(a)}, {"b", complex_json(b)},
             {"fidelity", rep.fidelity}, {"elapsed", rep.elapsed},
             {"ghz_phase", complex_json(rep.ghz_phase)}, {"expected_ghz_phase", complex_json(expected)}};
    if (rep.final_state.dimension() <= 1024) {
        json amps = json::array();
        for (Complex z : rep.final_state.amplitudes()) amps.push_back(complex_json(z));
        doc["final_state"] = amps;
    }
    CsvTable table({"quantity", "value"});
    table.add_row({"sites", std::to_string(n)});
    table.add_row({"fidelity", fmt(rep.fidelity)});
    table.add_row({"elapsed", fmt(rep.elapsed)});
    table.add_row({"ghz_phase_re", fmt(rep.ghz_phase.real())});
    table.add_row({"ghz_phase_im", fmt(rep.ghz_phase.imag())});
    return table_output(std::move(table), std::move(doc));
}

// ----------------------------------------------------------------- dipolar

struct DipolarCfg {
    std::string task = "dilation";
    std::vector<double> prism{1.0, 1.0, 1.0};
    std::vector<double> point{1.0, 0.0, 0.0};
    double tol = 1e-8;
    double edge = 1.0;
    double factor = 2.0;
    int steps = 5;
    double alpha = 3.0;
    int d = 3;
    std::string kernel = "dipolar";
    int face_grid = 32;
};

Point3 to_point(const std::vector<double>& v, const char* what) {
    if (v.size() != 3) throw InvalidArgument(std::string(what) + " needs three comma-separated values");
    return {v[0], v[1], v[2]};
}

Output cmd_dipolar(DipolarCfg cfg, const Common& common) {
    if (cfg.task == "interaction" || cfg.task == "dvdx") {
        const Point3 ext = to_point(cfg.prism, "--prism");
        const Point3 p = to_point(cfg.point, "--point");
        const ControlPrism prism = ControlPrism::anchored(ext[0], ext[1], ext[2]);
        CsvTable table({"quantity", "value"});
        json doc{{"task", cfg.task}, {"prism", cfg.prism}, {"point", cfg.point}, {"tolerance", cfg.tol}};
        if (cfg.task == "interaction") {
            const double v = prism_interaction(prism, p, cfg.tol);
            const double lattice = prism_lattice_sum(prism, p);
            table.add_row({"continuum", fmt(v)});
            table.add_row({"lattice_sum", fmt(lattice)});
            doc["continuum"] = v;
            doc["lattice_sum"] = lattice;
        } else {
            const double analytic = dVdx_analytic(prism, p);
            const double h = 1e-3 * std::max(p[0], 1e-2);
            const double fd = (face_frame_interaction(prism, {p[0] + h, p[1], p[2]}, cfg.tol) -
                               face_frame_interaction(prism, {p[0] - h, p[1], p[2]}, cfg.tol)) /
                              (2.0 * h);
            table.add_row({"dVdx_analytic", fmt(analytic)});
            table.add_row({"dVdx_finite_difference", fmt(fd)});
            doc["dVdx_analytic"] = analytic;
            doc["dVdx_finite_difference"] = fd;
        }
        return table_output(std::move(table), std::move(doc));
    }
    if (cfg.task != "dilation") throw InvalidArgument("unknown dipolar task '" + cfg.task + "'");

    DilationPlan plan;
    plan.initial_edge = cfg.edge;
    plan.factor = cfg.factor;
    plan.steps = common.smoke ? std::min(cfg.steps, 2) : cfg.steps;
    plan.alpha = cfg.alpha;
    plan.d = cfg.d;
    if (cfg.kernel == "dipolar") plan.kernel = DilationKernel::dipolar;
    else if (cfg.kernel == "isotropic") plan.kernel = DilationKernel::isotropic;
    else throw InvalidArgument("unknown kernel '" + cfg.kernel + "'");
    SlabSampling sampling;
    sampling.face_grid = common.smoke ? std::min(cfg.face_grid, 8) : cfg.face_grid;
    plan = dilation_schedule(plan, cfg.tol, sampling);

    CsvTable table({"step", "edge", "time", "ratio_to_first", "predicted_ratio", "substep_times", "min_coupling"});
    json steps = json::array();
    const double first = plan.schedule.front().time;
    for (std::size_t n = 0; n < plan.schedule.size(); ++n) {
        const DilationStep& s = plan.schedule[n];
        const double predicted = std::pow(plan.factor, static_cast<double>(n) * (plan.alpha - plan.d));
        table.add_row({std::to_string(n), fmt(s.edge), fmt(s.time), fmt(s.time / first), fmt(predicted),
                       join(s.substep_times), join(s.min_coupling)});
        steps.push_back({{"edge", s.edge}, {"time", s.time}, {"substep_times", s.substep_times},
                         {"min_coupling", s.min_coupling}, {"predicted_ratio", predicted}});
    }
    json doc{{"task", "dilation"}, {"kernel", to_string(plan.kernel)}, {"d", plan.d}, {"alpha", plan.alpha},
             {"factor", plan.factor}, {"initial_edge", plan.initial_edge}, {"tolerance", cfg.tol},
             {"total_time", plan.total_time}, {"steps", steps}};
    return table_output(std::move(table), std::move(doc));
}

// ------------------------------------------------------------- reliability

struct ReliabilityCfg {
    bool paper_defaults = false;
    std::string lifetime = "340us";
    std::string dt = "5ns";
    double lam = 2.0;
    double eps = 0.5;
    double c = 4.0;
    double P = 1.0 - 1e-4;
};

std::string nanoseconds(double seconds) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g ns", seconds * 1e9);
    return buf;
}

std::string general(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

Output cmd_reliability(const ReliabilityCfg& cfg, const Common&) {
    ReliabilityParams params = ReliabilityParams::paper_defaults();
    if (!cfg.paper_defaults) {
        const double lifetime = parse_seconds(cfg.lifetime);
        if (!(lifetime > 0.0)) throw InvalidArgument("lifetime must be > 0");
        params.gamma = 1.0 / lifetime;
        params.dt = parse_seconds(cfg.dt);
        params.lam = cfg.lam;
        params.eps = cfg.eps;
        params.c = cfg.c;
        params.P = cfg.P;
    }
    params.validate();

    const double n_lr = max_qubits_longrange(params);
    CsvTable table({"quantity", "value", "unit", "display"});
    json doc;
    auto row = [&](const std::string& name, double value, const std::string& unit, const std::string& display) {
        table.add_row({name, fmt(value), unit, display});
        doc[name] = value;
    };
    row("budget", params.budget(), "qubit_steps", general(params.budget()));
    row("max_qubits_longrange", n_lr, "qubits", general(n_lr));
    row("max_qubits_nn_bound", max_qubits_nn(params, NnMode::bound), "qubits", general(max_qubits_nn(params, NnMode::bound)));
    row("max_qubits_nn_exact", max_qubits_nn(params, NnMode::exact), "qubits", general(max_qubits_nn(params, NnMode::exact)));
    if (params.lam == 2.0) {
        const double r = advantage_ratio(params, NnMode::bound);
        row("advantage_ratio_bound", r, "", general(r));
    }
    const double r_exact = advantage_ratio(params, NnMode::exact);
    row("advantage_ratio_exact", r_exact, "", general(r_exact));
    const double gate = max_qubits_gate_fidelity(params);
    row("max_qubits_gate_fidelity", gate, "qubits", general(gate));
    const double wall_c = protocol_wall_time(params, n_lr, StepCounting::continuous);
    const double wall_d = protocol_wall_time(params, n_lr, StepCounting::discrete);
    row("wall_time_continuous", wall_c, "s", nanoseconds(wall_c));
    row("wall_time_discrete", wall_d, "s", nanoseconds(wall_d));
    row("expansion_steps", expansion_steps(n_lr, params.lam), "steps", std::to_string(expansion_steps(n_lr, params.lam)));
    const double life = ghz_lifetime(params, n_lr);
    row("ghz_lifetime", life, "s", nanoseconds(life));
    const double p = p_success(params, n_lr, StepCounting::continuous);
    row("p_success_at_max", p, "", general(p));
    return table_output(std::move(table), std::move(doc));
}

// -------------------------------------------------------------------- mera

struct MeraCfg {
    bool bound = false;
    int phi = 2;
    int d = 1;
    double alpha = 3.0;
    std::vector<long long> L{8};
    std::string mode = "hypercube";
    double gate_time = 0.0;
    std::string replay;
};

constexpr int kMaxConcreteMera = 256;

Output cmd_mera(const MeraCfg& cfg, const Common& common) {
    if (cfg.bound) {
        CsvTable table({"L", "phi", "alpha", "d", "regime", "value", "layers"});
        json rows = json::array();
        for (long long L : cfg.L) {
            const MeraPlan plan = mera_time_bound(L, cfg.phi, cfg.alpha, cfg.d);
            table.add_row({std::to_string(L), std::to_string(cfg.phi), fmt(cfg.alpha), std::to_string(cfg.d), plan.regime,
                           fmt(plan.total_time), std::to_string(plan.layers.size())});
            json layers = json::array();
            for (const auto& l : plan.layers) layers.push_back({{"tau", l.tau}, {"length_scale", l.length_scale}, {"term", l.term}});
            rows.push_back({{"L", L}, {"phi", cfg.phi}, {"alpha", cfg.alpha}, {"d", cfg.d}, {"regime", plan.regime},
                            {"value", plan.total_time}, {"layers", layers}});
        }
        return table_output(std::move(table), json{{"bounds", rows}});
    }

    if (cfg.d != 1 || cfg.phi != 2) throw InvalidArgument("concrete schedules are built for d=1, phi=2 only");
    if (cfg.L.size() != 1) throw InvalidArgument("concrete schedules take a single L");
    const long long L = cfg.L.front();
    const long long cap = common.smoke ? 8 : kMaxConcreteMera;
    if (L > cap) throw InvalidArgument("concrete schedules cap L at " + std::to_string(cap));
    const ScheduleMode mode = parse_schedule_mode(cfg.mode);
    const MeraSchedule sched = build_mera_schedule(static_cast<int>(L), cfg.alpha, mode, cfg.gate_time);

    CsvTable table({"tau", "length_scale", "isometries", "disentanglers", "gate_time", "layer_time"});
    json layers = json::array();
    auto gates_json = [](const std::vector<MeraGate>& gates) {
        json arr = json::array();
        for (const auto& g : gates) {
            arr.push_back({{"pair", {g.first, g.second}}, {"transfer_steps", g.transfer.steps().size()},
                           {"transfer_time", g.transfer.elapsed()}, {"gate_time", g.time}});
        }
        return arr;
    };
    for (const auto& layer : sched.layers) {
        const double gate_time = layer.isometries.empty() ? 0.0 : layer.isometries.front().time;
        table.add_row({std::to_string(layer.tau), std::to_string(layer.length_scale), std::to_string(layer.isometries.size()),
                       std::to_string(layer.disentanglers.size()), fmt(gate_time), fmt(layer.time)});
        layers.push_back({{"tau", layer.tau}, {"length_scale", layer.length_scale}, {"time", layer.time},
                          {"isometries", gates_json(layer.isometries)}, {"disentanglers", gates_json(layer.disentanglers)}});
    }
    json doc{{"L", L}, {"alpha", cfg.alpha}, {"mode", to_string(mode)}, {"local_gate_time", cfg.gate_time},
             {"total_time", sched.total_time}, {"layers", layers}};
    if (!cfg.replay.empty()) {
        if (L > kMaxQubits) throw InvalidArgument("replay caps L at " + std::to_string(kMaxQubits));
        const MeraGateChoice choice = parse_mera_gate_choice(cfg.replay);
        const PureState lowered = replay_mera(sched, choice);
        const PureState direct = apply_mera_direct(sched, choice);
        doc["replay"] = {{"gates", to_string(choice)}, {"distance_to_direct", distance_up_to_phase(direct, lowered)},
                         {"norm", lowered.norm()}};
    }
    return table_output(std::move(table), std::move(doc));
}

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--out,-o", common.out_path, "Output file (default: standard output)");
    sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--smoke", common.smoke, "Cap problem sizes for quick runs");
    sub->add_option("--seed", common.seed, "Seed for randomised inputs");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Long-range quantum state transfer laboratory", "lrqt"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.set_version_flag("--version", LRQT_VERSION);

    Common common;
    std::function<Output()> action;

    ScheduleCfg schedule_cfg;
    auto* schedule = app.add_subcommand("schedule", "Shell times of the hypercube or greedy protocol");
    schedule->add_option("--d", schedule_cfg.d, "Lattice dimension");
    schedule->add_option("--alpha", schedule_cfg.alpha, "Coupling exponent");
    schedule->add_option("--L", schedule_cfg.L, "Number of shells (the lattice has L+1 sites per edge)");
    schedule->add_option("--mode", schedule_cfg.mode, "hypercube or greedy");
    add_common(schedule, common);
    schedule->callback([&] { action = [&] { return cmd_schedule(schedule_cfg, common); }; });

    Fig3Cfg fig3_cfg;
    auto* fig3 = app.add_subcommand("fig3", "Scaling exponents of the total transfer time");
    fig3->add_option("--d", fig3_cfg.d, "Lattice dimension");
    fig3->add_option("--alpha", fig3_cfg.alphas, "Comma-separated exponents (default 1.0..4.0 step 0.25)")->delimiter(',');
    fig3->add_option("--L-max", fig3_cfg.L_max, "Largest linear size");
    fig3->add_option("--window", fig3_cfg.window, "Fit window starts at ceil(window * L_max)");
    add_common(fig3, common);
    fig3->callback([&] { action = [&] { return cmd_fig3(fig3_cfg, common); }; });

    SimulateCfg sim_cfg;
    auto* simulate = app.add_subcommand("simulate", "State-vector run of the GHZ or transfer protocol");
    simulate->add_option("--d", sim_cfg.d, "Lattice dimension");
    simulate->add_option("--L", sim_cfg.L, "Sites per edge");
    simulate->add_option("--alpha", sim_cfg.alpha, "Coupling exponent");
    simulate->add_option("--a", sim_cfg.a, "Amplitude of |0> on the source");
    simulate->add_option("--b", sim_cfg.b, "Amplitude of |1> on the source");
    simulate->add_option("--mode", sim_cfg.mode, "hypercube or greedy");
    simulate->add_option("--phase", sim_cfg.phase, "ghz_only or full_transfer");
    add_common(simulate, common);
    simulate->callback([&] { action = [&] { return cmd_simulate(sim_cfg, common); }; });

    DipolarCfg dip_cfg;
    auto* dipolar = app.add_subcommand("dipolar", "Dipolar prism integrals and dilation schedules");
    dipolar->add_option("--task", dip_cfg.task, "interaction, dvdx or dilation")
        ->check(CLI::IsMember({"interaction", "dvdx", "dilation"}));
    dipolar->add_option("--prism", dip_cfg.prism, "Prism extents lx,ly,lz")->delimiter(',');
    dipolar->add_option("--point", dip_cfg.point, "Target point x,y,z")->delimiter(',');
    dipolar->add_option("--tol", dip_cfg.tol, "Quadrature tolerance (relative for dilation, absolute otherwise)");
    dipolar->add_option("--edge", dip_cfg.edge, "Initial cube edge");
    dipolar->add_option("--lambda", dip_cfg.factor, "Dilation factor");
    dipolar->add_option("--steps", dip_cfg.steps, "Dilation steps");
    dipolar->add_option("--alpha", dip_cfg.alpha, "Radial exponent");
    dipolar->add_option("--d", dip_cfg.d, "Dimension");
    dipolar->add_option("--kernel", dip_cfg.kernel, "dipolar or isotropic");
    dipolar->add_option("--face-grid", dip_cfg.face_grid, "Samples per face axis in the slab search");
    add_common(dipolar, common);
    dipolar->callback([&] { action = [&] { return cmd_dipolar(dip_cfg, common); }; });

    ReliabilityCfg rel_cfg;
    auto* reliability = app.add_subcommand("reliability", "Decay-limited qubit counts and timings");
    auto* defaults = reliability->add_flag("--paper-defaults", rel_cfg.paper_defaults,
                                           "dt=5ns, eps=1/2, lifetime=340us, lambda=2, c=4, P=1-1e-4");
    std::vector<CLI::Option*> overrides{
        reliability->add_option("--lifetime", rel_cfg.lifetime, "Qubit lifetime 1/gamma (s, ms, us, ns suffixes)"),
        reliability->add_option("--dt", rel_cfg.dt, "Time per expansion step"),
        reliability->add_option("--lambda", rel_cfg.lam, "Dilation factor"),
        reliability->add_option("--eps", rel_cfg.eps, "Required success probability"),
        reliability->add_option("--c", rel_cfg.c, "Single-qubit gates per qubit per step"),
        reliability->add_option("--P", rel_cfg.P, "Single-qubit gate success probability")};
    for (auto* o : overrides) defaults->excludes(o);
    add_common(reliability, common);
    reliability->callback([&] { action = [&] { return cmd_reliability(rel_cfg, common); }; });

    MeraCfg mera_cfg;
    auto* mera = app.add_subcommand("mera", "MERA construction-time bounds and lowered schedules");
    mera->add_flag("--bound", mera_cfg.bound, "Evaluate the construction-time bound only");
    mera->add_option("--phi", mera_cfg.phi, "Branching factor");
    mera->add_option("--d", mera_cfg.d, "Dimension");
    mera->add_option("--alpha", mera_cfg.alpha, "Coupling exponent");
    mera->add_option("--L", mera_cfg.L, "Linear size (a power of phi); comma-separated list for --bound")->delimiter(',');
    mera->add_option("--mode", mera_cfg.mode, "Transfer schedule: hypercube or greedy");
    mera->add_option("--gate-time", mera_cfg.gate_time, "Duration of the local two-qubit gate");
    mera->add_option("--replay", mera_cfg.replay, "Replay on the simulator with identity or fixed_entangler gates");
    add_common(mera, common);
    mera->callback([&] { action = [&] { return cmd_mera(mera_cfg, common); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(e.what()) + "\n" : app.help());
            return ok;
        }
        err << "error: " << e.what() << "\n";
        return invalid_arguments;
    }

    const CLI::App* sub = app.get_subcommands().front();
    try {
        const Output result = action();
        const std::string stamp = stamp_for(*sub);
        std::string content;
        if (common.format == "json") {
            json doc;
            doc["generator"] = stamp.substr(2);
            for (const auto& [k, v] : result.document.items()) doc[k] = v;
            content = doc.dump(2) + "\n";
        } else {
            content = result.table->render(stamp);
        }
        if (common.out_path.empty()) out << content;
        else write_file_atomic(common.out_path, content);
        return ok;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return invalid_arguments;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return computation_failed;
    }
}

}  // namespace lrqt::cli
