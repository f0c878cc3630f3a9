#pragma once

// Little-endian fixed-width container helpers for model and index files.

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontosearch/error.hpp"

namespace ontosearch::detail {

static_assert(std::endian::native == std::endian::little,
              "container formats assume a little-endian host");

class BinaryWriter {
 public:
  void magic(std::string_view tag) { buf_.append(tag); }

  template <typename T>
  void pod(const T& value) {
    static_assert(std::is_trivially_copyable_v<T>);
    buf_.append(reinterpret_cast<const char*>(&value), sizeof(T));
  }
  void u32(std::uint32_t v) { pod(v); }
  void u64(std::uint64_t v) { pod(v); }
  void f64(double v) { pod(v); }

  void str(std::string_view s) {
    u64(s.size());
    buf_.append(s);
  }
  void f64s(std::span<const double> values) {
    u64(values.size());
    buf_.append(reinterpret_cast<const char*>(values.data()), values.size_bytes());
  }

  const std::string& bytes() const noexcept { return buf_; }

 private:
  std::string buf_;
};

class BinaryReader {
 public:
  BinaryReader(std::string_view bytes, ErrorCode code, std::string what)
      : bytes_(bytes), code_(code), what_(std::move(what)) {}

  void expect_magic(std::string_view tag) {
    if (take(tag.size()) != tag) fail("bad magic");
  }

  template <typename T>
  T pod() {
    T value;
    auto raw = take(sizeof(T));
    std::memcpy(&value, raw.data(), sizeof(T));
    return value;
  }
  std::uint32_t u32() { return pod<std::uint32_t>(); }
  std::uint64_t u64() { return pod<std::uint64_t>(); }
  double f64() { return pod<double>(); }

  std::string str() {
    auto n = u64();
    if (n > remaining()) fail("truncated string");
    return std::string(take(static_cast<std::size_t>(n)));
  }
  std::vector<double> f64s() {
    auto n = u64();
    if (n > remaining() / sizeof(double)) fail("truncated array");
    std::vector<double> out(static_cast<std::size_t>(n));
    auto raw = take(out.size() * sizeof(double));
    if (!out.empty()) std::memcpy(out.data(), raw.data(), raw.size());
    return out;
  }

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  void expect_end() {
    if (remaining() != 0) fail("trailing bytes");
  }

  [[noreturn]] void fail(const std::string& why) const { throw Error(code_, what_ + ": " + why); }

 private:
  std::string_view take(std::size_t n) {
    if (n > remaining()) fail("truncated");
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
  ErrorCode code_;
  std::string what_;
};

}  // namespace ontosearch::detail
