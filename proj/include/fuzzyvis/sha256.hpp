#pragma once

#include <cstddef>
#include <string>

namespace fuzzyvis {

// SHA-256 digest as a lowercase hex string. Used for content hashes in run
// manifests and for pair-cache keys; not a security boundary.
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& data);

}  // namespace fuzzyvis
