#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mqga {

// Bad user input: config files, CLI values, unknown problem ids.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Caller broke an API contract (mismatched genome shapes, unevaluated member).
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Fitness function applied to the wrong genome kind.
class TypeError : public InternalError {
  public:
    using InternalError::InternalError;
};

// Violation of the wire/broker protocol. `fatal()` decides whether the broker
// answers ERR and closes the connection or just answers ERR.
class ProtocolError : public std::runtime_error {
  public:
    ProtocolError(std::string code, const std::string& what, bool fatal = true)
        : std::runtime_error(what), code_(std::move(code)), fatal_(fatal) {}

    const std::string& code() const noexcept { return code_; }
    bool fatal() const noexcept { return fatal_; }

  private:
    std::string code_;
    bool fatal_;
};

// Socket-level failures: connect refused, peer gone, listener closed.
class TransportError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A GA run that cannot make progress (evaluation stalled, broker lost).
class RunError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace mqga
