#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace ontosearch {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

/// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::uint64_t fnv1a64(std::span<const std::byte> bytes,
                      std::uint64_t state = kFnvOffsetBasis) noexcept;

/// Lower-case, zero-padded, 16 hex digits.
std::string to_hex(std::uint64_t value);

}  // namespace ontosearch
