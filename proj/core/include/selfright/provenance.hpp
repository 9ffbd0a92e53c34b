#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace selfright {

// Stamped into every emitted file.
struct Provenance {
  std::string config_json;  // canonical (sorted-key) serialisation
  std::string config_hash;  // 16 hex digits
  std::uint64_t seed = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

Provenance make_provenance(std::string config_json, std::uint64_t seed);

// 17 significant digits, '.' decimal point regardless of locale.
std::string format_double(double value);

}  // namespace selfright
