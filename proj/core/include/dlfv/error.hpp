#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dlfv {

enum class Errc {
  zero_inverse,
  bad_factorization,
  duplicate_x,
  wrong_count,
  signature_mismatch,
  malformed_frame,
  bad_length,
  message_too_large,
  locking_set_too_small,
  invalid_locking_set,
  chaff_space_exhausted,
  not_enough_matches,
  decode_failed,
  key_mismatch,
  malformed_file,
  not_in_group,
  bad_arguments,
  division_by_zero,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace dlfv
