// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_ERRORS_HPP
#define METAGOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace metagov {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input: hex strings, signatures, CSV rows.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A requested block range or data class is not covered by the data source.
class DataUnavailableError : public Error {
 public:
  using Error::Error;
};

/// Replay mode was asked for something the fixture never recorded.
/// Always fatal: it means a test or offline run would silently depend on
/// data that only a live provider could supply.
class ReplayMissError : public Error {
 public:
  using Error::Error;
};

/// ABI document or encoded payload could not be interpreted.
class AbiError : public Error {
 public:
  using Error::Error;
};

/// Transport-level failure talking to a live provider (after retries).
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Off-chain source (space/vote dump or API) missing or unreadable.
class SourceUnavailableError : public Error {
 public:
  using Error::Error;
};

}  // namespace metagov

#endif  // METAGOV_ERRORS_HPP
