#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace edgealloc {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// The deadline budget is consumed by transfers before execution can start.
class ModeInfeasible : public Error
{
public:
  using Error::Error;
};

class InvalidScenario : public Error
{
public:
  using Error::Error;
};

/// A decision violates the mode/location coupling of (14c)-(14f).
class InfeasibleDecision : public Error
{
public:
  using Error::Error;
};

class InvalidConfig : public Error
{
public:
  using Error::Error;
};

class IOError : public Error
{
public:
  using Error::Error;
};

class SchemaError : public Error
{
public:
  SchemaError(std::string path, std::string const &what)
    : Error(path + ": " + what)
    , path_(std::move(path))
  {}

  std::string const &path() const noexcept
  {
    return path_;
  }

private:
  std::string path_;
};

}  // namespace edgealloc
