#pragma once

#include <string>
#include <string_view>

namespace persim {

// SHA-256 of a byte string, lowercase hex. Used for the artifact manifest.
std::string sha256_hex(std::string_view data);

// SHA-256 of a file's contents. Throws Error(Errc::io) if unreadable.
std::string sha256_file(const std::string& path);

}  // namespace persim
