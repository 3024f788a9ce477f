#include "htmdoc/serialize.hpp"

#include <zlib.h>

#include <fstream>

namespace htmdoc::detail {

namespace {
constexpr char kMagic[8] = {'H', 'T', 'M', 'D', 'O', 'C', 'M', 'B'};
}

void ByteWriter::u32(uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::f32(float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  u32(bits);
}

void ByteWriter::f64(double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  u64(bits);
}

void ByteWriter::str(const std::string& s) {
  u32(static_cast<uint32_t>(s.size()));
  bytes(s.data(), s.size());
}

void ByteWriter::bytes(const void* data, size_t n) {
  const auto* p = static_cast<const uint8_t*>(data);
  buf_.insert(buf_.end(), p, p + n);
}

uint8_t ByteReader::u8() {
  need(1);
  return data_[pos_++];
}

uint32_t ByteReader::u32() {
  need(4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(data_[pos_++]) << (8 * i);
  return v;
}

uint64_t ByteReader::u64() {
  need(8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data_[pos_++]) << (8 * i);
  return v;
}

float ByteReader::f32() {
  uint32_t bits = u32();
  float v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

double ByteReader::f64() {
  uint64_t bits = u64();
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

std::string ByteReader::str() {
  uint32_t n = u32();
  need(n);
  std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
  pos_ += n;
  return s;
}

void ByteReader::bytes(void* out, size_t n) {
  need(n);
  std::memcpy(out, data_ + pos_, n);
  pos_ += n;
}

uint32_t crc32_of(const std::vector<uint8_t>& data) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  return static_cast<uint32_t>(
      ::crc32(crc, data.data(), static_cast<uInt>(data.size())));
}

void write_bundle_file(const std::string& path, uint32_t format_version,
                       const std::vector<Section>& sections) {
  ByteWriter header;
  header.bytes(kMagic, sizeof(kMagic));
  header.u32(format_version);
  header.u32(static_cast<uint32_t>(sections.size()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SerializeError("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(header.data().data()),
            static_cast<std::streamsize>(header.data().size()));
  for (const auto& section : sections) {
    ByteWriter sec;
    sec.str(section.name);
    sec.u64(section.payload.size());
    sec.u32(crc32_of(section.payload));
    sec.bytes(section.payload.data(), section.payload.size());
    out.write(reinterpret_cast<const char*>(sec.data().data()),
              static_cast<std::streamsize>(sec.data().size()));
  }
  if (!out) throw SerializeError("write failure: " + path);
}

std::vector<Section> read_bundle_file(const std::string& path,
                                      uint32_t expected_version) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SerializeError("cannot open model bundle: " + path);
  std::vector<uint8_t> raw((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
  ByteReader reader(raw.data(), raw.size());

  char magic[8];
  reader.bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw SerializeError("not a model bundle: " + path);
  const uint32_t version = reader.u32();
  if (version != expected_version)
    throw VersionError("model bundle format version " +
                       std::to_string(version) + ", expected " +
                       std::to_string(expected_version));
  const uint32_t count = reader.u32();
  std::vector<Section> sections;
  sections.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    Section section;
    section.name = reader.str();
    const uint64_t size = reader.u64();
    const uint32_t crc = reader.u32();
    if (reader.remaining() < size)
      throw TruncatedError("model bundle truncated in section: " +
                           section.name);
    section.payload.resize(size);
    reader.bytes(section.payload.data(), size);
    if (crc32_of(section.payload) != crc)
      throw ChecksumError("checksum mismatch in section: " + section.name);
    sections.push_back(std::move(section));
  }
  return sections;
}

}  // namespace htmdoc::detail
