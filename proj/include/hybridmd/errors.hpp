// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <stdexcept>
#include <string>

namespace hybridmd {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rejected user-facing configuration: qubit counts out of range, zero
/// shots, dimension caps, unknown variants, missing files.
struct ConfigError : Error {
    using Error::Error;
};

/// Malformed text input (trajectory file, config file, flag grammar).
/// Messages carry line or token context.
struct ParseError : Error {
    using Error::Error;
};

/// Classical data that cannot be turned into a quantum state,
/// e.g. a zero-norm coordinate vector.
struct EncodingError : Error {
    using Error::Error;
};

/// Operation applied to operands it is not defined on (initialize on a
/// non-fresh register, operand index clashes, shape mismatches).
struct InvalidOperationError : Error {
    using Error::Error;
};

/// Numerical failure: singular calibration matrix, non-normalized
/// distribution, eigensolver non-convergence.
struct NumericError : Error {
    using Error::Error;
};

/// Reraises library errors with a location prefix, keeping the dynamic
/// type so callers can still map them to exit codes.
template <typename Fn>
auto with_context(const std::string& context, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError(context + e.what());
    } catch (const ParseError& e) {
        throw ParseError(context + e.what());
    } catch (const EncodingError& e) {
        throw EncodingError(context + e.what());
    } catch (const InvalidOperationError& e) {
        throw InvalidOperationError(context + e.what());
    } catch (const NumericError& e) {
        throw NumericError(context + e.what());
    } catch (const Error& e) {
        throw Error(context + e.what());
    }
}

} // namespace hybridmd
