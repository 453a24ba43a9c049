#pragma once

#include <cstdint>
#include <vector>

namespace permgram {

struct FormHash {
  std::size_t operator()(const std::vector<std::uint32_t>& f) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ f.size();
    for (std::uint32_t x : f) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace permgram
