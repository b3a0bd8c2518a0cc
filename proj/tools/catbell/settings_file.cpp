#include "catbell/settings_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

namespace catbell::cli {

namespace {

constexpr double kUnitSlack = 1e-6;
constexpr double kPhaseSlack = 1e-9;

std::optional<double> to_number(const std::string& token) {
    double v = 0.0;
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<HomodynePhase> to_phase(const std::string& token) {
    if (token == "pi/2") {
        return HomodynePhase::momentum();
    }
    const auto v = to_number(token);
    if (!v) {
        return std::nullopt;
    }
    if (std::abs(*v) <= kPhaseSlack) {
        return HomodynePhase::position();
    }
    if (std::abs(*v - kHalfPi) <= kPhaseSlack) {
        return HomodynePhase::momentum();
    }
    return std::nullopt;
}

bool same_direction(const SpinDirection& a, const SpinDirection& b) {
    return std::abs(a.x() - b.x()) <= kUnitSlack && std::abs(a.y() - b.y()) <= kUnitSlack &&
           std::abs(a.z() - b.z()) <= kUnitSlack;
}

struct Entry {
    int line;
    SpinDirection spin;
    HomodynePhase phase;
};

}  // namespace

SettingsFileError::SettingsFileError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

BellSettings parse_settings(std::istream& in, const std::string& source) {
    std::vector<Entry> entries;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream fields(raw);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) {
            tokens.push_back(t);
        }
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 4) {
            throw SettingsFileError(source, line_no,
                                    "expected 4 fields `ax ay az theta`, found " + std::to_string(tokens.size()));
        }
        std::array<double, 3> a{};
        for (int k = 0; k < 3; ++k) {
            const auto v = to_number(tokens[k]);
            if (!v) {
                throw SettingsFileError(source, line_no, "not a number: `" + tokens[k] + "`");
            }
            a[k] = *v;
        }
        const auto phase = to_phase(tokens[3]);
        if (!phase) {
            throw SettingsFileError(source, line_no, "theta must be 0 or pi/2, got `" + tokens[3] + "`");
        }
        const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        if (std::abs(norm - 1.0) > kUnitSlack) {
            throw SettingsFileError(source, line_no, "spin direction is not a unit vector");
        }
        if (entries.size() == 4) {
            throw SettingsFileError(source, line_no, "more than 4 settings");
        }
        const HomodynePhase expected = entries.size() % 2 == 0 ? HomodynePhase::position() : HomodynePhase::momentum();
        if (!(*phase == expected)) {
            throw SettingsFileError(source, line_no, "settings must alternate theta = 0, pi/2, 0, pi/2");
        }
        const SpinDirection spin = SpinDirection::normalized(a[0], a[1], a[2]);
        if (entries.size() % 2 == 1 && !same_direction(spin, entries.back().spin)) {
            throw SettingsFileError(source, line_no,
                                    "direction differs from line " + std::to_string(entries.back().line) +
                                        "; each direction is measured at both phases");
        }
        entries.push_back({line_no, spin, *phase});
    }
    if (entries.size() != 4) {
        throw SettingsFileError(source, line_no + 1,
                                "expected 4 settings, found " + std::to_string(entries.size()));
    }
    return bell_settings(entries[0].spin, entries[2].spin);
}

}  // namespace catbell::cli
