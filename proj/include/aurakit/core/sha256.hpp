#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace aurakit {

// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
public:
    Sha256();

    void update(const void* data, std::size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }

    // Finalizes and returns the 32-byte digest. The object must not be
    // updated afterwards.
    std::array<std::uint8_t, 32> finish();

private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::size_t buffered_ = 0;
    std::uint64_t total_len_ = 0;
};

// One-shot digest as 64 lowercase hex characters.
std::string sha256_hex(std::string_view data);

std::string to_hex(const std::uint8_t* data, std::size_t len);

}  // namespace aurakit
