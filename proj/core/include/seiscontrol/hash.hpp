#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace seiscontrol {

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Digest of a file's contents; throws IoError if it cannot be read.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace seiscontrol
