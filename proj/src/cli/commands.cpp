// commands.cpp

#include "dirnet/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <utility>

#include "dirnet/cli/csv.hpp"
#include "dirnet/cli/params.hpp"
#include "dirnet/cli/sweep.hpp"
#include "dirnet/dir.hpp"
#include "dirnet/entangle.hpp"
#include "dirnet/errors.hpp"
#include "dirnet/validity.hpp"

namespace dirnet::cli {
namespace {

struct ParamFlag {
    const char* flag;
    const char* help;
};

const ParamFlag kParamFlags[] = {
    {"n", "nanoparticles per arm (>= 2)"},
    {"g-inout", "tip coupling g_inout / g_np"},
    {"gamma0", "metal loss rate Gamma0 / g_np"},
    {"j", "QD-nanoparticle coupling J / g_np"},
    {"gamma-qd", "QD decay rate gamma / g_np"},
    {"delta0", "mean QD detuning"},
    {"ddelta", "QD detuning split: QD1 at delta0+ddelta, QD2 at delta0-ddelta"},
    {"alpha", "coherent amplitude at source 1: re,im or a single value"},
    {"kappa", "lumped detection efficiency in (0, 1]"},
    {"init", "initial amplitudes c_g1,c_m1,c_g2,c_m2"},
    {"dw", "drive detuning start:stop:steps"},
    {"qd1", "QD1 state g or m (spectrum and dir)"},
    {"qd2", "QD2 state g or m (spectrum)"},
    {"insertion", "power transmission of the source coupling in (0, 1]"},
    {"omega0", "plasmon frequency omega0 / g_np (enables the weak-coupling check)"},
    {"n-bar", "mean photon number per pulse"},
    {"dtau", "pulse duration in units of 1/g_np"},
};

// Per-subcommand flag storage; values are applied after the config file.
struct Invocation {
    explicit Invocation(CLI::App* sub) : app(sub) {}

    CLI::App* app{nullptr};
    std::vector<std::pair<std::string, CLI::Option*>> params;
    std::vector<std::string> storage = std::vector<std::string>(std::size(kParamFlags));
    std::string config;
    std::string out_path;

    Params resolve(bool two_arm = true) const {
        Params p;
        if (!config.empty()) load_config_file(config, p);
        for (const auto& [key, opt] : params)
            if (opt->count() > 0) apply_setting(p, key, opt->as<std::string>());
        if (two_arm) validate(p.network());
        return p;
    }
};

void add_common(Invocation& inv) {
    for (std::size_t k = 0; k < std::size(kParamFlags); ++k) {
        auto* opt = inv.app->add_option(std::string("--") + kParamFlags[k].flag, inv.storage[k], kParamFlags[k].help);
        inv.params.emplace_back(kParamFlags[k].flag, opt);
    }
    inv.app->add_option("--config", inv.config, "flat key = value parameter file; flags win");
    inv.app->add_option("--out", inv.out_path, "write output to this file instead of stdout");
}

// Runs `body` against the --out file or the normal output stream.
void with_output(const Invocation& inv, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (inv.out_path.empty()) {
        body(out);
        return;
    }
    std::ofstream file(inv.out_path);
    if (!file) throw UsageError("cannot open output file '" + inv.out_path + "'");
    body(file);
    if (!file) throw UsageError("failed writing '" + inv.out_path + "'");
}

// Weak-coupling advisory for compute commands; only active with --omega0.
int coupling_advisory(const Params& p, std::ostream& err) {
    if (!p.omega0) return kExitOk;
    const auto report = weak_coupling_check(p.network());
    if (report.status != CheckStatus::fail) return kExitOk;
    for (const auto& c : report.checks)
        if (c.status == CheckStatus::fail)
            err << "warning: " << c.name << " = " << format_number(c.value) << " exceeds 0.1 omega0 = "
                << format_number(c.bound) << "\n";
    return kExitWarning;
}

void report_no_detection(std::size_t rows, std::ostream& err) {
    if (rows > 0)
        err << "warning: " << rows
            << " grid point(s) have zero drain-1 click probability; protocol metrics there are nan\n";
}

std::vector<Branch> parse_branch_list(std::string_view text) {
    if (trim(text) == "all") return {kBranches.begin(), kBranches.end()};
    std::vector<Branch> out;
    for (auto part : split(text, ',')) {
        const auto b = parse_branch(part);
        if (!b) throw UsageError("unknown branch '" + std::string(part) + "' (use gg, gm, mg, mm or all)");
        out.push_back(*b);
    }
    return out;
}

std::string complex_text(cplx z) { return format_number(z.real()) + "," + format_number(z.imag()); }

void write_report(std::ostream& os, const ProtocolResult& r) {
    os << "beta = " << complex_text(r.beta) << "\n";
    os << "fidelity = " << format_number(r.fidelity) << "\n";
    os << "efficiency = " << format_number(r.efficiency) << "\n";
    os << "concurrence_lb = " << format_number(r.concurrence_lb) << "\n";
    for (Branch p : kBranches)
        for (Branch q : kBranches)
            os << "rho" << index(p) + 1 << index(q) + 1 << " = " << complex_text(r.rho(p, q)) << "\n";
}

struct WeakExcitationLine {
    std::string name;
    CheckStatus status;
    double ratio;
    double n_bar;
};

int run_validate(const Params& p, std::ostream& os) {
    bool all_pass = true;
    const auto coupling = weak_coupling_check(p.network());
    all_pass = all_pass && coupling.status == CheckStatus::pass;
    os << "weak_coupling = " << to_string(coupling.status);
    if (p.omega0) os << " (omega0 = " << format_number(*p.omega0) << ")";
    os << "\n";
    for (const auto& c : coupling.checks)
        os << "  " << c.name << " value=" << format_number(c.value) << " bound=" << format_number(c.bound)
           << " margin=" << format_number(c.margin) << " " << to_string(c.status) << "\n";

    // Photon number at source 2 follows the matched amplitude.
    const double n_bar1 = p.n_bar.value_or(std::norm(p.alpha));
    double beta_scale = 1.0;
    if (std::abs(p.alpha) > 0.0) {
        try {
            const auto net = build_network(p.network());
            const auto s_mm = solve_scattering(net, Branch::mm, p.single_dw());
            beta_scale = std::norm(matching_beta(p.alpha, s_mm) / p.alpha);
        } catch (const Error&) {
            beta_scale = 1.0;
        }
    }
    const auto cfg = p.network();
    const std::pair<const char*, std::pair<const QDConfig*, double>> qds[] = {
        {"qd1", {&cfg.qd1, n_bar1}}, {"qd2", {&cfg.qd2, n_bar1 * beta_scale}}};
    for (const auto& [name, entry] : qds) {
        const auto& [qd, n_bar] = entry;
        os << "weak_excitation." << name << " = ";
        if (!p.dtau) {
            all_pass = false;
            os << "unchecked (no --dtau) n_bar=" << format_number(n_bar) << "\n";
            continue;
        }
        try {
            const double ratio = weak_excitation_margin(qd->J, cfg.g_inout, cfg.gamma0, qd->delta, n_bar, *p.dtau);
            const bool ok = weak_excitation_ok(ratio);
            all_pass = all_pass && ok;
            os << (ok ? "pass" : "fail") << " ratio=" << format_number(ratio)
               << " threshold=" << format_number(kWeakExcitationThreshold) << " n_bar=" << format_number(n_bar)
               << " dtau=" << format_number(*p.dtau) << "\n";
        } catch (const InvalidPulse& e) {
            all_pass = false;
            os << "unchecked (" << e.what() << ")\n";
        }
    }
    os << "status = " << (all_pass ? "pass" : "warn") << "\n";
    return all_pass ? kExitOk : kExitWarning;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Plasmonic nanowire network: scattering spectra and heralded QD entanglement"};
    app.name("dirnet");
    app.require_subcommand(1);

    Invocation spectrum{app.add_subcommand("spectrum", "branch-resolved |t|^2 spectra of the two-arm network")};
    Invocation dir{app.add_subcommand("dir", "single-arm transmission/reflection (dipole-induced reflection)")};
    Invocation entangle{app.add_subcommand("entangle", "run the postselection protocol")};
    Invocation sweep{app.add_subcommand("sweep", "metric grid over one or two parameters")};
    Invocation validity{app.add_subcommand("validate", "weak-coupling and weak-excitation checks")};
    for (Invocation* inv : {&spectrum, &dir, &entangle, &sweep, &validity}) add_common(*inv);

    std::string branches;
    bool source2 = false;
    spectrum.app->add_option("--branches", branches, "comma list of gg,gm,mg,mm or 'all' (default: --qd1/--qd2)");
    spectrum.app->add_flag("--source2", source2, "also report injection at source 2");

    std::vector<std::string> entangle_sweeps;
    std::string entangle_metrics = "fidelity,efficiency,concurrence_lb";
    entangle.app->add_option("--sweep", entangle_sweeps, "name=start:stop:steps (repeatable, at most 2)");
    entangle.app->add_option("--metrics", entangle_metrics, "metric columns for --sweep output");

    std::vector<std::string> axes;
    std::string sweep_metrics = "fidelity,efficiency";
    sweep.app->add_option("--axis", axes, "name=start:stop:steps (repeatable, at most 2)")->required();
    sweep.app->add_option("--metrics", sweep_metrics, "comma-separated metric columns");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*spectrum.app) {
            const Params p = spectrum.resolve();
            const auto list = branches.empty() ? std::vector<Branch>{make_branch(p.qd1, p.qd2)}
                                               : parse_branch_list(branches);
            SweepSpec spec;
            spec.axes.push_back({"dw", p.dw_or({-3.0, 3.0, 601})});
            for (std::string src : {"s1", "s2"}) {
                if (src == "s2" && !source2) continue;
                for (Branch b : list)
                    for (const char* dst : {"s1", "s2", "d1", "d2"})
                        spec.metrics.push_back("T_" + src + dst + "_" + std::string(to_string(b)));
            }
            const auto result = run_sweep(p, spec);
            with_output(spectrum, out, [&](std::ostream& os) { write_csv(os, result.table); });
            return coupling_advisory(p, err);
        }
        if (*dir.app) {
            const Params p = dir.resolve(false);
            const auto grid = p.dw_or({-3.0, 3.0, 601}).values();
            Table table;
            table.header = {"dw", "T", "R", "A", "dipole_loss"};
            for (const auto& pt : arm_spectrum(p.arm(), grid)) table.rows.push_back({pt.dw, pt.T, pt.R, pt.A, pt.dipole_loss});
            with_output(dir, out, [&](std::ostream& os) { write_csv(os, table); });
            return coupling_advisory(p, err);
        }
        if (*entangle.app) {
            const Params p = entangle.resolve();
            if (!entangle_sweeps.empty()) {
                SweepSpec spec;
                for (const auto& s : entangle_sweeps) spec.axes.push_back(parse_axis(s));
                spec.metrics = parse_metric_list(entangle_metrics);
                const auto result = run_sweep(p, spec);
                with_output(entangle, out, [&](std::ostream& os) { write_csv(os, result.table); });
                report_no_detection(result.no_detection_rows, err);
                return coupling_advisory(p, err);
            }
            ProtocolResult r;
            try {
                r = run_protocol(p.network(), p.alpha, p.init, p.kappa, p.single_dw());
            } catch (const NoDetectionProbability& e) {
                err << "error: " << e.what()
                    << "\n  no initial branch can reach drain 1 with these amplitudes; a herald needs weight on"
                       " |gm> or |mg> (or a non-ideal reflection)\n";
                return kExitError;
            }
            with_output(entangle, out, [&](std::ostream& os) { write_report(os, r); });
            return coupling_advisory(p, err);
        }
        if (*sweep.app) {
            const Params p = sweep.resolve();
            SweepSpec spec;
            for (const auto& a : axes) spec.axes.push_back(parse_axis(a));
            spec.metrics = parse_metric_list(sweep_metrics);
            const auto result = run_sweep(p, spec);
            with_output(sweep, out, [&](std::ostream& os) { write_csv(os, result.table); });
            report_no_detection(result.no_detection_rows, err);
            return coupling_advisory(p, err);
        }
        if (*validity.app) {
            const Params p = validity.resolve();
            int code = kExitOk;
            with_output(validity, out, [&](std::ostream& os) { code = run_validate(p, os); });
            return code;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace dirnet::cli
