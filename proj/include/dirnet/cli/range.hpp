// range.hpp: value grammars shared by flags and config files

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "dirnet/entangle.hpp"

namespace dirnet::cli {

// start:stop:steps with inclusive endpoints; a bare number is a one-point range.
struct Range {
    double start{0.0};
    double stop{0.0};
    std::size_t steps{1};

    std::vector<double> values() const;
};

Range parse_range(std::string_view text);

double parse_real(std::string_view text);

// "1.5", "-0.2i", "0.3+0.4i", "0.3-4e-2i"
cplx parse_complex_token(std::string_view text);

// Alpha: "re,im" or a single (possibly complex) token.
cplx parse_alpha(std::string_view text);

// c_g1,c_m1,c_g2,c_m2: each qubit pair is rescaled to unit norm.
InitAmplitudes parse_init(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace dirnet::cli
