#include "kglp/io.hpp"

#include <bit>
#include <cstring>

namespace kglp {

BinaryWriter::BinaryWriter(const std::filesystem::path& path)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path.string()) {
  if (!out_) throw Error("cannot open for writing: " + path_);
}

void BinaryWriter::u8(std::uint8_t v) {
  out_.put(static_cast<char>(v));
}

void BinaryWriter::u32(std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out_.write(b, 4);
}

void BinaryWriter::u64(std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out_.write(b, 8);
}

void BinaryWriter::f64(double v) {
  u64(std::bit_cast<std::uint64_t>(v));
}

void BinaryWriter::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  out_.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void BinaryWriter::close() {
  out_.close();
  if (!out_) throw Error("write failed: " + path_);
}

BinaryReader::BinaryReader(const std::filesystem::path& path)
    : in_(path, std::ios::binary), path_(path.string()) {
  if (!in_) throw MissingArtifactError(path_);
}

void BinaryReader::read_bytes(void* dst, std::size_t n) {
  in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in_.gcount()) != n) {
    throw DataError("truncated artifact: " + path_);
  }
}

std::uint8_t BinaryReader::u8() {
  std::uint8_t v;
  read_bytes(&v, 1);
  return v;
}

std::uint32_t BinaryReader::u32() {
  unsigned char b[4];
  read_bytes(b, 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t BinaryReader::u64() {
  unsigned char b[8];
  read_bytes(b, 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double BinaryReader::f64() {
  return std::bit_cast<double>(u64());
}

std::string BinaryReader::str() {
  std::uint32_t n = u32();
  std::string s(n, '\0');
  if (n > 0) read_bytes(s.data(), n);
  return s;
}

void write_artifact_header(BinaryWriter& w, std::string_view magic,
                           std::uint32_t version) {
  std::string m(magic);
  m.resize(8, '\0');
  for (char c : m) w.u8(static_cast<std::uint8_t>(c));
  w.u32(version);
}

void expect_artifact_header(BinaryReader& r, std::string_view magic,
                            std::uint32_t version) {
  std::string m(magic);
  m.resize(8, '\0');
  std::string got(8, '\0');
  for (char& c : got) c = static_cast<char>(r.u8());
  if (got != m) {
    throw ArtifactVersionError("not a " + std::string(magic) +
                               " artifact: " + r.path());
  }
  std::uint32_t got_version = r.u32();
  if (got_version != version) {
    throw ArtifactVersionError(r.path() + ": format version " +
                               std::to_string(got_version) + ", expected " +
                               std::to_string(version));
  }
}

}  // namespace kglp
