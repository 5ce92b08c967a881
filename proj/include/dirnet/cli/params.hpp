// params.hpp: flat parameter set behind every subcommand
//
// Values come from defaults (g_inout 0.5, gamma0 0.1, J 0.3, gamma 0.001), then an optional
// `key = value` config file, then command-line flags. Keys are the long flag
// names; '-' and '_' are interchangeable.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "dirnet/cli/range.hpp"
#include "dirnet/dir.hpp"
#include "dirnet/entangle.hpp"
#include "dirnet/model.hpp"

namespace dirnet::cli {

struct Params {
    int n{2};
    double g_inout{0.5};
    double gamma0{0.1};
    double j{0.3};
    double gamma_qd{0.001};
    double delta0{0.0};
    double ddelta{0.0};
    cplx alpha{0.5, 0.0};
    double kappa{1.0};
    InitAmplitudes init{};
    std::optional<Range> dw;
    QDState qd1{QDState::g};
    QDState qd2{QDState::g};
    double insertion{1.0};
    std::optional<double> omega0;
    std::optional<double> n_bar;
    std::optional<double> dtau;

    // QD1 detuning delta0 + ddelta, QD2 detuning delta0 - ddelta.
    NetworkConfig network() const;
    // Single arm with QD1's parameters; qd1 selects |g> or |m>.
    ArmConfig arm() const;
    // The unique frequency when dw is a one-point range (0 when unset).
    double single_dw() const;
    Range dw_or(Range fallback) const { return dw.value_or(fallback); }
};

std::string normalise_key(std::string_view key);

// Throws UsageError for unknown keys or malformed values.
void apply_setting(Params& params, std::string_view key, std::string_view value);

void load_config(std::istream& in, Params& params);
void load_config_file(const std::string& path, Params& params);

QDState parse_qd_state(std::string_view text);

}  // namespace dirnet::cli
