// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace svabf {

/// A numeric parameter is outside its admissible range (alpha outside
/// [0, 1/2], N not a multiple of M, ...).
class ConstraintError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Sizes of two operands disagree, or a transform is asked for fewer
/// points than its input has.
class SizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A run configuration could not be parsed or names an invalid value.
/// `field()` carries the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace svabf
