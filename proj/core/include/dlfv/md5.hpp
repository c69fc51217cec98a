#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "dlfv/bytes.hpp"

namespace dlfv {

using Md5Digest = std::array<std::uint8_t, 16>;

// RFC 1321 message digest.
Md5Digest md5(ByteView data);
Md5Digest md5(std::string_view text);

}  // namespace dlfv
