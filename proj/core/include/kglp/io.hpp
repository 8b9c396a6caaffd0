#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "kglp/error.hpp"

namespace kglp {

/// Little-endian binary writer for persisted artifacts. Output bytes are a
/// pure function of the written values, so identical state serializes to
/// identical files.
class BinaryWriter {
 public:
  explicit BinaryWriter(const std::filesystem::path& path);

  void u8(std::uint8_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void str(std::string_view s);  // u32 length + raw bytes

  void close();

 private:
  std::ofstream out_;
  std::string path_;
};

class BinaryReader {
 public:
  explicit BinaryReader(const std::filesystem::path& path);

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  std::string str();

  const std::string& path() const { return path_; }

 private:
  void read_bytes(void* dst, std::size_t n);

  std::ifstream in_;
  std::string path_;
};

/// 8-byte magic + u32 format version. Loaders reject a wrong magic or a
/// version they do not understand instead of reinterpreting the bytes.
void write_artifact_header(BinaryWriter& w, std::string_view magic,
                           std::uint32_t version);
void expect_artifact_header(BinaryReader& r, std::string_view magic,
                            std::uint32_t version);

}  // namespace kglp
