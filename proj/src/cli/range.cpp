// range.cpp

#include "dirnet/cli/range.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "dirnet/errors.hpp"
#include "dirnet/grid.hpp"

namespace dirnet::cli {

std::vector<double> Range::values() const { return linear_grid(start, stop, steps); }

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(sep, pos);
        parts.push_back(trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

double parse_real(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value))
        throw UsageError("expected a number, got '" + std::string(text) + "'");
    return value;
}

Range parse_range(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        const double x = parse_real(parts[0]);
        return {x, x, 1};
    }
    if (parts.size() != 3) throw UsageError("range must be start:stop:steps, got '" + std::string(text) + "'");
    Range r;
    r.start = parse_real(parts[0]);
    r.stop = parse_real(parts[1]);
    const double steps = parse_real(parts[2]);
    if (steps < 1.0 || steps != std::floor(steps))
        throw UsageError("range step count must be a positive integer, got '" + std::string(parts[2]) + "'");
    r.steps = static_cast<std::size_t>(steps);
    if (r.steps == 1 && r.start != r.stop)
        throw UsageError("a one-step range needs start == stop");
    return r;
}

cplx parse_complex_token(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw UsageError("empty complex value");
    if (text.back() != 'i') return {parse_real(text), 0.0};

    const std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not part of an exponent and not leading.
    std::size_t cut = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    auto imag_of = [](std::string_view s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_real(s);
    };
    if (cut == std::string_view::npos) return {0.0, imag_of(body)};
    return {parse_real(body.substr(0, cut)), imag_of(body.substr(cut))};
}

cplx parse_alpha(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() == 1) return parse_complex_token(parts[0]);
    if (parts.size() == 2) return {parse_real(parts[0]), parse_real(parts[1])};
    throw UsageError("alpha must be 're,im' or a single value, got '" + std::string(text) + "'");
}

InitAmplitudes parse_init(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw UsageError("--init expects c_g1,c_m1,c_g2,c_m2");
    cplx c[4];
    for (int k = 0; k < 4; ++k) c[k] = parse_complex_token(parts[static_cast<std::size_t>(k)]);
    auto normalise = [](cplx& g, cplx& m) {
        const double norm = std::sqrt(std::norm(g) + std::norm(m));
        if (!(norm > 0.0)) throw UsageError("a QD initial state cannot be the zero vector");
        g /= norm;
        m /= norm;
    };
    normalise(c[0], c[1]);
    normalise(c[2], c[3]);
    InitAmplitudes init{c[0], c[1], c[2], c[3]};
    init.validate();
    return init;
}

}  // namespace dirnet::cli
