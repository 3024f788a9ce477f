#ifndef HTMDOC_SERIALIZE_HPP
#define HTMDOC_SERIALIZE_HPP

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "htmdoc/error.hpp"

namespace htmdoc::detail {

// Little-endian byte buffer used to assemble model-bundle sections.
class ByteWriter {
public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u32(uint32_t v);
  void u64(uint64_t v);
  void f32(float v);
  void f64(double v);
  void str(const std::string& s);  // u32 length + bytes
  void bytes(const void* data, size_t n);

  const std::vector<uint8_t>& data() const { return buf_; }

private:
  std::vector<uint8_t> buf_;
};

class ByteReader {
public:
  ByteReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  uint8_t u8();
  uint32_t u32();
  uint64_t u64();
  float f32();
  double f64();
  std::string str();
  void bytes(void* out, size_t n);
  size_t remaining() const { return size_ - pos_; }

private:
  void need(size_t n) const {
    if (pos_ + n > size_) throw TruncatedError("model bundle: section truncated");
  }
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

uint32_t crc32_of(const std::vector<uint8_t>& data);

// Sectioned container: magic, format version, then named sections each
// carrying a length and a CRC-32 of its payload.
struct Section {
  std::string name;
  std::vector<uint8_t> payload;
};

void write_bundle_file(const std::string& path, uint32_t format_version,
                       const std::vector<Section>& sections);

// Verifies magic, version and every section checksum. Throws VersionError,
// ChecksumError (naming the section) or TruncatedError.
std::vector<Section> read_bundle_file(const std::string& path,
                                      uint32_t expected_version);

}  // namespace htmdoc::detail

#endif
