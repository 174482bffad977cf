// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace helinear {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Mismatched lengths, moduli, or task dimensions.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Invalid parameter values (non-power-of-two spans, bad moduli, bad noise ordering).
class ParameterError : public Error {
  public:
    using Error::Error;
};

/// Raised by decrypt when the accumulated noise reaches the budget.
class NoiseOverflowError : public Error {
  public:
    NoiseOverflowError(double noise, double budget)
        : Error("noise overflow: noise " + std::to_string(noise) + " >= budget " + std::to_string(budget)),
          noise_(noise), budget_(budget) {}

    double noise() const { return noise_; }
    double budget() const { return budget_; }

  private:
    double noise_;
    double budget_;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

}  // namespace helinear
