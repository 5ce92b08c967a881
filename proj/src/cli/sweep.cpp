// sweep.cpp

#include "dirnet/cli/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <thread>

#include "dirnet/dir.hpp"
#include "dirnet/entangle.hpp"
#include "dirnet/errors.hpp"
#include "dirnet/scattering.hpp"

namespace dirnet::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string_view> kAxes{"alpha", "g_inout", "gamma0", "n",  "delta0",
                                          "ddelta", "kappa",   "dw",     "j",  "gamma_qd"};

// Parsed metric name.
struct Metric {
    enum class Kind { fidelity, efficiency, concurrence, beta, rho, t_abs2, t_amp, coherent, arm };
    Metric(Kind k, bool is_complex = false, int first = 0, int second = 0)
        : kind(k), complex(is_complex), a(first), b(second) {}

    Kind kind;
    bool complex{false};
    // rho: row/col; t: source, target (0..3 = s1,s2,d1,d2), branch; coherent: which, branch
    int a{0}, b{0};
    Branch branch{Branch::gg};
    std::string arm_field;
    bool arm_qd_g{true};
};

std::optional<int> port_index(std::string_view p) {
    if (p == "s1") return 0;
    if (p == "s2") return 1;
    if (p == "d1") return 2;
    if (p == "d2") return 3;
    return std::nullopt;
}

Metric parse_metric(const std::string& name) {
    using K = Metric::Kind;
    if (name == "fidelity") return {K::fidelity};
    if (name == "efficiency") return {K::efficiency};
    if (name == "concurrence_lb") return {K::concurrence};
    if (name == "beta") return {K::beta, true};
    if (name.size() == 5 && name.starts_with("rho")) {
        const int p = name[3] - '1', q = name[4] - '1';
        if (p >= 0 && p < 4 && q >= 0 && q < 4) return {K::rho, true, p, q};
    }
    if ((name.starts_with("T_") || name.starts_with("t_")) && name.size() == 9 && name[6] == '_') {
        const auto src = port_index(std::string_view(name).substr(2, 2));
        const auto dst = port_index(std::string_view(name).substr(4, 2));
        const auto br = parse_branch(std::string_view(name).substr(7));
        if (src && *src < 2 && dst && br) {
            Metric m{name[0] == 'T' ? K::t_abs2 : K::t_amp, name[0] == 't', *src, *dst};
            m.branch = *br;
            return m;
        }
    }
    for (int which = 0; which < 4; ++which) {
        static const char* const prefixes[] = {"xi1_", "xi2_", "mu1_", "mu2_"};
        const std::string_view prefix = prefixes[which];
        if (name.starts_with(prefix)) {
            if (const auto br = parse_branch(std::string_view(name).substr(prefix.size()))) {
                Metric m{K::coherent, true, which};
                m.branch = *br;
                return m;
            }
        }
    }
    if (name.starts_with("arm_") && name.size() > 6) {
        const std::string_view body = std::string_view(name).substr(4);
        const std::string_view field = body.substr(0, body.size() - 2);
        const std::string_view suffix = body.substr(body.size() - 2);
        if ((field == "T" || field == "R" || field == "A" || field == "loss") && (suffix == "_g" || suffix == "_m")) {
            Metric m{K::arm};
            m.arm_field = std::string(field);
            m.arm_qd_g = suffix == "_g";
            return m;
        }
    }
    throw UsageError("unknown metric '" + name + "'");
}

bool needs_protocol(const Metric& m) {
    using K = Metric::Kind;
    return m.kind == K::fidelity || m.kind == K::efficiency || m.kind == K::concurrence || m.kind == K::beta ||
           m.kind == K::rho || m.kind == K::coherent;
}

cplx pick_t(const ScatteringSet& s, int src, int dst) {
    const auto source = static_cast<std::size_t>(src);
    return dst < 2 ? s.t_source(source, static_cast<std::size_t>(dst))
                   : s.t_drain(source, static_cast<std::size_t>(dst - 2));
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw UsageError("axis must be name=start:stop:steps");
    SweepAxis axis{normalise_key(text.substr(0, eq)), parse_range(text.substr(eq + 1))};
    bool known = false;
    for (auto a : kAxes) known = known || a == axis.name;
    if (!known) throw UsageError("unknown sweep parameter '" + axis.name + "'");
    return axis;
}

std::vector<std::string> parse_metric_list(std::string_view text) {
    std::vector<std::string> out;
    for (auto part : split(text, ',')) {
        if (part.empty()) continue;
        out.emplace_back(part);
        parse_metric(out.back());
    }
    if (out.empty()) throw UsageError("no metrics requested");
    return out;
}

void set_axis_value(Params& p, std::string_view axis, double v) {
    const std::string key = normalise_key(axis);
    if (key == "alpha") p.alpha = {v, 0.0};
    else if (key == "g_inout") p.g_inout = v;
    else if (key == "gamma0") p.gamma0 = v;
    else if (key == "n") {
        if (v != std::floor(v)) throw UsageError("n axis values must be integers");
        p.n = static_cast<int>(v);
    } else if (key == "delta0") p.delta0 = v;
    else if (key == "ddelta") p.ddelta = v;
    else if (key == "kappa") p.kappa = v;
    else if (key == "dw") p.dw = Range{v, v, 1};
    else if (key == "j") p.j = v;
    else if (key == "gamma_qd") p.gamma_qd = v;
    else throw UsageError("unknown sweep parameter '" + std::string(axis) + "'");
}

std::vector<std::string> metric_columns(const std::string& metric) {
    if (parse_metric(metric).complex) return {metric + "_re", metric + "_im"};
    return {metric};
}

void check_spec(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2) throw UsageError("a sweep takes one or two axes");
    if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name)
        throw UsageError("the two sweep axes must differ");
    if (spec.metrics.empty()) throw UsageError("no metrics requested");
    for (const auto& m : spec.metrics) parse_metric(m);
}

std::vector<double> evaluate_metrics(const Params& params, const std::vector<std::string>& names,
                                     bool* no_detection) {
    std::vector<Metric> metrics;
    for (const auto& n : names) metrics.push_back(parse_metric(n));

    const double dw = params.single_dw();
    std::optional<ProtocolResult> protocol;
    bool protocol_failed = false;
    bool want_protocol = false;
    for (const auto& m : metrics) want_protocol = want_protocol || needs_protocol(m);
    if (want_protocol) {
        try {
            protocol = run_protocol(params.network(), params.alpha, params.init, params.kappa, dw);
        } catch (const NoDetectionProbability&) {
            protocol_failed = true;
        }
    }
    if (no_detection) *no_detection = protocol_failed;

    std::optional<CoupledModeNetwork> net;
    std::array<std::optional<ScatteringSet>, 4> scattering;
    auto branch_set = [&](Branch b) -> const ScatteringSet& {
        auto& slot = scattering[index(b)];
        if (!slot) {
            if (protocol) {
                slot = protocol->scattering[index(b)];
            } else {
                if (!net) net = build_network(params.network());
                slot = solve_scattering(*net, b, dw);
            }
        }
        return *slot;
    };

    std::vector<double> row;
    auto push_complex = [&row](cplx z) {
        row.push_back(z.real());
        row.push_back(z.imag());
    };
    using K = Metric::Kind;
    for (const auto& m : metrics) {
        if (needs_protocol(m) && !protocol) {
            row.push_back(kNaN);
            if (m.complex) row.push_back(kNaN);
            continue;
        }
        switch (m.kind) {
            case K::fidelity: row.push_back(protocol->fidelity); break;
            case K::efficiency: row.push_back(protocol->efficiency); break;
            case K::concurrence: row.push_back(protocol->concurrence_lb); break;
            case K::beta: push_complex(protocol->beta); break;
            case K::rho: push_complex(protocol->rho.m(m.a, m.b)); break;
            case K::t_abs2: row.push_back(std::norm(pick_t(branch_set(m.branch), m.a, m.b))); break;
            case K::t_amp: push_complex(pick_t(branch_set(m.branch), m.a, m.b)); break;
            case K::coherent: {
                const auto& o = protocol->outputs[index(m.branch)];
                const cplx values[] = {o.xi1, o.xi2, o.mu1, o.mu2};
                push_complex(values[m.a]);
                break;
            }
            case K::arm: {
                Params arm_params = params;
                arm_params.qd1 = m.arm_qd_g ? QDState::g : QDState::m;
                const auto pt = arm_point(arm_params.arm(), dw);
                if (m.arm_field == "T") row.push_back(pt.T);
                else if (m.arm_field == "R") row.push_back(pt.R);
                else if (m.arm_field == "A") row.push_back(pt.A);
                else row.push_back(pt.dipole_loss);
                break;
            }
        }
    }
    return row;
}

std::size_t worker_count() {
    if (const char* env = std::getenv("DIRNET_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

SweepResult run_sweep(const Params& base, const SweepSpec& spec, std::size_t workers) {
    check_spec(spec);
    std::vector<std::vector<double>> axis_values;
    for (const auto& axis : spec.axes) axis_values.push_back(axis.range.values());

    SweepResult result;
    for (const auto& axis : spec.axes) result.table.header.push_back(axis.name);
    for (const auto& m : spec.metrics)
        for (auto& c : metric_columns(m)) result.table.header.push_back(std::move(c));

    std::size_t total = 1;
    for (const auto& v : axis_values) total *= v.size();
    result.table.rows.resize(total);
    std::vector<char> missing(total, 0);
    std::vector<std::exception_ptr> errors(total);

    auto point = [&](std::size_t k) {
        std::vector<double> coords(spec.axes.size());
        std::size_t rest = k;
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            coords[a] = axis_values[a][rest % axis_values[a].size()];
            rest /= axis_values[a].size();
        }
        Params p = base;
        for (std::size_t a = 0; a < coords.size(); ++a) set_axis_value(p, spec.axes[a].name, coords[a]);
        bool no_detection = false;
        auto row = evaluate_metrics(p, spec.metrics, &no_detection);
        row.insert(row.begin(), coords.begin(), coords.end());
        result.table.rows[k] = std::move(row);
        missing[k] = no_detection ? 1 : 0;
    };

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            try {
                point(k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    workers = std::max<std::size_t>(1, std::min(workers, total));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (char m : missing) result.no_detection_rows += static_cast<std::size_t>(m);
    return result;
}

}  // namespace dirnet::cli
