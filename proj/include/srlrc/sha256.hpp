#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace srlrc {

std::array<uint8_t, 32> sha256(std::span<const uint8_t> data);
std::string sha256_hex(std::span<const uint8_t> data);
std::string sha256_hex(const std::string& data);

}  // namespace srlrc
