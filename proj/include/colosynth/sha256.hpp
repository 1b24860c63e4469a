#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace colosynth {

std::string sha256_hex(const uint8_t* data, size_t len);
std::string sha256_hex(const std::vector<uint8_t>& data);
std::string sha256_file_hex(const std::string& path);

}  // namespace colosynth
