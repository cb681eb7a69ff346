#pragma once

#include <stdexcept>
#include <string>

namespace boundary {

/// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The NCD compressor backend failed. Signals misconfiguration, never bad input.
class CompressorError : public Error {
 public:
  using Error::Error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

class SerializationError : public Error {
 public:
  using Error::Error;
};

/// Step 1 produced only duplicates for `stall_limit` consecutive selections.
class GenerationStall : public Error {
 public:
  using Error::Error;
};

/// An oracle could not be run at all (e.g. the SUT command cannot be launched).
/// Distinct from an input being invalid.
class OracleError : public Error {
 public:
  using Error::Error;
};

class MissingRowError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace boundary
