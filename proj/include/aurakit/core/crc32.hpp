#pragma once

#include <cstdint>
#include <cstddef>

namespace aurakit {

// CRC-32 (IEEE 802.3, as used by ZIP). Pass the previous value to chain.
std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t crc = 0);

}  // namespace aurakit
