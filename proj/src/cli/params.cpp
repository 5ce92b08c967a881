// params.cpp

#include "dirnet/cli/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>

#include "dirnet/errors.hpp"

namespace dirnet::cli {

NetworkConfig Params::network() const {
    NetworkConfig c;
    c.n = n;
    c.g_inout = g_inout;
    c.gamma0 = gamma0;
    c.qd1 = {j, gamma_qd, delta0 + ddelta, true};
    c.qd2 = {j, gamma_qd, delta0 - ddelta, true};
    c.omega0_over_gnp = omega0;
    c.insertion_transmission = insertion;
    return c;
}

ArmConfig Params::arm() const {
    ArmConfig a;
    a.n = n;
    a.g_inout = g_inout;
    a.gamma0 = gamma0;
    a.qd = {j, gamma_qd, delta0 + ddelta, qd1 == QDState::g};
    return a;
}

double Params::single_dw() const {
    if (!dw) return 0.0;
    if (dw->steps != 1) throw UsageError("this command takes a single --dw value");
    return dw->start;
}

std::string normalise_key(std::string_view key) {
    std::string out(trim(key));
    while (!out.empty() && out.front() == '-') out.erase(out.begin());
    std::replace(out.begin(), out.end(), '-', '_');
    return out;
}

QDState parse_qd_state(std::string_view text) {
    text = trim(text);
    if (text == "g") return QDState::g;
    if (text == "m") return QDState::m;
    throw UsageError("QD state must be 'g' or 'm', got '" + std::string(text) + "'");
}

void apply_setting(Params& p, std::string_view raw_key, std::string_view value) {
    const std::string key = normalise_key(raw_key);
    if (key == "n") {
        const double v = parse_real(value);
        if (v != std::floor(v)) throw UsageError("n must be an integer");
        p.n = static_cast<int>(v);
    } else if (key == "g_inout") {
        p.g_inout = parse_real(value);
    } else if (key == "gamma0") {
        p.gamma0 = parse_real(value);
    } else if (key == "j") {
        p.j = parse_real(value);
    } else if (key == "gamma_qd") {
        p.gamma_qd = parse_real(value);
    } else if (key == "delta0") {
        p.delta0 = parse_real(value);
    } else if (key == "ddelta") {
        p.ddelta = parse_real(value);
    } else if (key == "alpha") {
        p.alpha = parse_alpha(value);
    } else if (key == "kappa") {
        p.kappa = parse_real(value);
    } else if (key == "init") {
        p.init = parse_init(value);
    } else if (key == "dw") {
        p.dw = parse_range(value);
    } else if (key == "qd1") {
        p.qd1 = parse_qd_state(value);
    } else if (key == "qd2") {
        p.qd2 = parse_qd_state(value);
    } else if (key == "insertion") {
        p.insertion = parse_real(value);
    } else if (key == "omega0") {
        p.omega0 = parse_real(value);
    } else if (key == "n_bar") {
        p.n_bar = parse_real(value);
    } else if (key == "dtau") {
        p.dtau = parse_real(value);
    } else {
        throw UsageError("unknown parameter '" + std::string(raw_key) + "'");
    }
}

void load_config(std::istream& in, Params& params) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw UsageError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        try {
            apply_setting(params, view.substr(0, eq), view.substr(eq + 1));
        } catch (const UsageError& e) {
            throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void load_config_file(const std::string& path, Params& params) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    load_config(in, params);
}

}  // namespace dirnet::cli
