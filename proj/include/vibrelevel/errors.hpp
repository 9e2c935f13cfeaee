#pragma once

#include <stdexcept>
#include <string>

namespace vibrelevel {

enum class errc {
  domain_error,         // precondition / argument outside validity range
  format_error,         // malformed input file or data
  tail_mismatch,        // tabulated data inconsistent with declared tail
  integration_failure,  // propagation produced non-finite values
  saturation_failure,   // no log-derivative plateau before the domain edge
  solver_failure,       // eigenvalue search failed (lost bracket, gap, ...)
  fit_degenerate,       // regression has no usable slope
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::domain_error: return "domain_error";
    case errc::format_error: return "format_error";
    case errc::tail_mismatch: return "tail_mismatch";
    case errc::integration_failure: return "integration_failure";
    case errc::saturation_failure: return "saturation_failure";
    case errc::solver_failure: return "solver_failure";
    case errc::fit_degenerate: return "fit_degenerate";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

}  // namespace vibrelevel
