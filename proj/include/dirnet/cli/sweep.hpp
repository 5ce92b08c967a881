// sweep.hpp: grid evaluation of protocol and scattering metrics

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dirnet/cli/csv.hpp"
#include "dirnet/cli/params.hpp"

namespace dirnet::cli {

struct SweepAxis {
    std::string name;
    Range range;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  // at most two; the last one varies fastest
    std::vector<std::string> metrics;
};

// "name=start:stop:steps"
SweepAxis parse_axis(std::string_view text);
std::vector<std::string> parse_metric_list(std::string_view text);

void set_axis_value(Params& params, std::string_view axis, double value);

// Header cells for one metric; complex metrics expand to _re/_im pairs.
std::vector<std::string> metric_columns(const std::string& metric);
void check_spec(const SweepSpec& spec);

// Metric values at one parameter point, in metric_columns order. Protocol
// metrics become NaN when no detection is possible; `no_detection` is set.
std::vector<double> evaluate_metrics(const Params& params, const std::vector<std::string>& metrics,
                                     bool* no_detection = nullptr);

struct SweepResult {
    Table table;
    std::size_t no_detection_rows{0};
};

// DIRNET_THREADS overrides the worker count; rows keep row-major order.
std::size_t worker_count();
SweepResult run_sweep(const Params& base, const SweepSpec& spec, std::size_t workers = worker_count());

}  // namespace dirnet::cli
