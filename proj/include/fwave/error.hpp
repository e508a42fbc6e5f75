#pragma once

#include <stdexcept>
#include <string>

namespace fwave {

// Error categories drive the CLI exit codes: Config -> 2, Domain and
// Numerical -> 3 (exit 4 is reserved for failed acceptance checks, which
// are reports rather than exceptions). Messages start with a stable token
// (e.g. "StraddlesZero:") so callers and tests can tell failures apart
// without more exception types.
enum class ErrKind {
  Config,
  Domain,
  Numerical,
};

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail_config(const std::string& msg) {
  throw Error(ErrKind::Config, msg);
}
[[noreturn]] inline void fail_domain(const std::string& msg) {
  throw Error(ErrKind::Domain, msg);
}
[[noreturn]] inline void fail_numerical(const std::string& msg) {
  throw Error(ErrKind::Numerical, msg);
}

}  // namespace fwave
