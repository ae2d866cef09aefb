#pragma once

#include <stdexcept>
#include <string>

namespace expara {

enum class ErrorKind { config, overflow, unsupported, domain };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::config, w) {}
};
struct OverflowError : Error {
  explicit OverflowError(const std::string& w) : Error(ErrorKind::overflow, w) {}
};
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& w)
      : Error(ErrorKind::unsupported, w) {}
};
// Precondition violations on library calls.
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};

const char* kind_name(ErrorKind k);

}  // namespace expara
