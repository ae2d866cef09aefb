#pragma once

#include <cstdint>
#include <string>

namespace expara {

// Shortest round-trip decimal form; stable across runs.
std::string fmt_double(double v);

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

}  // namespace expara
