#pragma once

#include <string>
#include <string_view>

namespace epistemo {

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// Tool version string embedded in every output file.
std::string_view tool_version() noexcept;

}  // namespace epistemo
