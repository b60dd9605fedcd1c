#pragma once

#include <span>
#include <string>
#include <string_view>

namespace lrtbench {

/// Incremental SHA-256, hex-encoded on finish.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::span<const unsigned char> bytes);
  void update(std::string_view text);
  template <typename T>
  void update_pod(const T& value) {
    update(std::span(reinterpret_cast<const unsigned char*>(&value), sizeof(T)));
  }
  std::string hex_digest();

 private:
  void* context_;
};

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::string& path);

}  // namespace lrtbench
