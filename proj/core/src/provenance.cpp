#include "selfright/provenance.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace selfright {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, value >>= 4) out[i] = kDigits[value & 0xf];
  return out;
}

Provenance make_provenance(std::string config_json, std::uint64_t seed) {
  Provenance p;
  p.config_hash = hex64(fnv1a64(config_json));
  p.config_json = std::move(config_json);
  p.seed = seed;
  return p;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                std::chars_format::general, 17);
  return std::string(buf.data(), end);
}

}  // namespace selfright
