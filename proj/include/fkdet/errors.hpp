#pragma once

#include <stdexcept>
#include <string>

namespace fkdet {

// Failure kinds raised by the library. The CLI maps config/usage kinds to
// exit code 2 and numeric kinds to exit code 3.
enum class errc {
  not_hermitian,
  no_convergence,
  domain_error,
  singular,
  not_unitary,
  pair_mismatch,
  out_of_range,
  shape_mismatch,
  not_idempotent,
  support_violation,
  not_a_loop,
  quadrature_failure,
  invalid_argument,
  parse_error,
  usage_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace fkdet
