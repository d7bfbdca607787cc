#pragma once

#include <stdexcept>
#include <string>

namespace geodubins {

enum class ErrorKind { InvalidInput, Infeasible, Resolution, Contract, Parse, LongitudeUndefined };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::LongitudeUndefined: return "longitude-undefined";
  }
  return "unknown";
}

}  // namespace geodubins
