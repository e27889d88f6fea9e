// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

#include <stdexcept>
#include <string>

namespace tvisi {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The tap centres have a spectral null, so J and the water levels diverge.
class SpectrumSingular : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

/// The radii are too large for the lower-bound formulas (a log argument is <= 0).
class BoundInapplicable : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

class CodebookTooLarge : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace tvisi
