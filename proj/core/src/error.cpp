#include "dlfv/error.hpp"

namespace dlfv {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::zero_inverse: return "ZeroInverse";
    case Errc::bad_factorization: return "BadFactorization";
    case Errc::duplicate_x: return "DuplicateX";
    case Errc::wrong_count: return "WrongCount";
    case Errc::signature_mismatch: return "SignatureMismatch";
    case Errc::malformed_frame: return "MalformedFrame";
    case Errc::bad_length: return "BadLength";
    case Errc::message_too_large: return "MessageTooLarge";
    case Errc::locking_set_too_small: return "LockingSetTooSmall";
    case Errc::invalid_locking_set: return "InvalidLockingSet";
    case Errc::chaff_space_exhausted: return "ChaffSpaceExhausted";
    case Errc::not_enough_matches: return "NotEnoughMatches";
    case Errc::decode_failed: return "DecodeFailed";
    case Errc::key_mismatch: return "KeyMismatch";
    case Errc::malformed_file: return "MalformedFile";
    case Errc::not_in_group: return "NotInGroup";
    case Errc::bad_arguments: return "BadArguments";
    case Errc::division_by_zero: return "DivisionByZero";
  }
  return "Unknown";
}

void fail(Errc code, const std::string& what) {
  throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace dlfv
