#pragma once

// Measurement settings for `catbell mc`.
//
// One setting per line, `ax ay az theta`, whitespace separated; `#` starts
// a comment. theta is 0 or pi/2, written as a number or as `pi/2`. The
// four lines are (a,0), (a,pi/2), (a',0), (a',pi/2); directions within
// 1e-6 of unit length are renormalized.

#include "catbell/experiment.hpp"

#include <istream>
#include <stdexcept>
#include <string>

namespace catbell::cli {

class SettingsFileError : public std::runtime_error {
public:
    SettingsFileError(const std::string& source, int line, const std::string& message);

    int line() const noexcept { return line_; }

private:
    int line_;
};

BellSettings parse_settings(std::istream& in, const std::string& source);

}  // namespace catbell::cli
