#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edgeauction {

/// Invalid model/network/training bounds, or a malformed configuration file.
class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Caller broke a precondition: index out of range, shape mismatch, empty input.
class UsageError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A non-finite value appeared in a computation.
class NumericError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Training produced a non-finite loss.
class TrainingError : public NumericError
{
public:
  TrainingError(std::size_t iteration, const std::string &what)
    : NumericError(what)
    , iteration_(iteration)
  {}

  std::size_t iteration() const noexcept
  {
    return iteration_;
  }

private:
  std::size_t iteration_;
};

/// A checkpoint, dataset or trace file did not parse.
class FormatError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace edgeauction
