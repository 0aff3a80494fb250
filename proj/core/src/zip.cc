// Copyright 2026 The bineq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bineq/zip.h"

#include <zlib.h>

#include <algorithm>

namespace bineq {
namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;
constexpr std::uint16_t kDosTime = 0;
constexpr std::uint16_t kDosDate = (1 << 5) | 1;  // 1980-01-01

std::uint32_t Le4(ByteView d, std::size_t at) {
  if (at + 4 > d.size()) throw ArchiveUnreadable("zip structure runs past end of file");
  return d[at] | d[at + 1] << 8 | d[at + 2] << 16 | static_cast<std::uint32_t>(d[at + 3]) << 24;
}

std::uint16_t Le2(ByteView d, std::size_t at) {
  if (at + 2 > d.size()) throw ArchiveUnreadable("zip structure runs past end of file");
  return static_cast<std::uint16_t>(d[at] | d[at + 1] << 8);
}

void Put2(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void Put4(Bytes& out, std::uint32_t v) {
  Put2(out, v & 0xffff);
  Put2(out, v >> 16);
}

std::uint32_t Crc(ByteView d) {
  return static_cast<std::uint32_t>(crc32(0, d.data(), static_cast<uInt>(d.size())));
}

Bytes Inflate(ByteView in, std::size_t expected, const std::string& name) {
  Bytes out(expected);
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw ArchiveUnreadable("zlib init failed");
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  std::size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) {
    throw ArchiveUnreadable("cannot inflate entry " + name);
  }
  return out;
}

Bytes Deflate(ByteView in) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) !=
      Z_OK) {
    throw Error("zlib init failed");
  }
  Bytes out(deflateBound(&zs, static_cast<uLong>(in.size())));
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

}  // namespace

std::vector<ZipEntry> ReadZip(ByteView d) {
  if (d.size() < 22) throw ArchiveUnreadable("file too small to be a zip archive");
  std::size_t eocd = d.size();
  std::size_t lowest = d.size() > 22 + 0xffff ? d.size() - 22 - 0xffff : 0;
  for (std::size_t p = d.size() - 22 + 1; p-- > lowest;) {
    if (Le4(d, p) == kEndSig) {
      eocd = p;
      break;
    }
  }
  if (eocd == d.size()) throw ArchiveUnreadable("end of central directory not found");
  const std::uint16_t count = Le2(d, eocd + 10);
  const std::uint32_t cd_offset = Le4(d, eocd + 16);
  if (count == 0xffff || cd_offset == 0xffffffff) {
    throw ArchiveUnreadable("zip64 archives are not supported");
  }

  std::vector<ZipEntry> entries;
  entries.reserve(count);
  std::size_t p = cd_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (Le4(d, p) != kCentralSig) throw ArchiveUnreadable("bad central directory entry");
    const std::uint16_t flags = Le2(d, p + 8);
    const std::uint16_t method = Le2(d, p + 10);
    const std::uint32_t crc = Le4(d, p + 16);
    const std::uint32_t csize = Le4(d, p + 20);
    const std::uint32_t usize = Le4(d, p + 24);
    const std::uint16_t name_len = Le2(d, p + 28);
    const std::uint16_t extra_len = Le2(d, p + 30);
    const std::uint16_t comment_len = Le2(d, p + 32);
    const std::uint32_t local = Le4(d, p + 42);
    if (p + 46 + name_len > d.size()) throw ArchiveUnreadable("truncated entry name");
    ZipEntry e;
    e.name.assign(reinterpret_cast<const char*>(d.data() + p + 46), name_len);
    p += 46 + name_len + extra_len + comment_len;

    if (flags & 1) throw ArchiveUnreadable("encrypted entry " + e.name);
    if (Le4(d, local) != kLocalSig) throw ArchiveUnreadable("bad local header for " + e.name);
    std::size_t data_at = local + 30 + Le2(d, local + 26) + Le2(d, local + 28);
    if (data_at > d.size() || d.size() - data_at < csize) {
      throw ArchiveUnreadable("entry data runs past end of file: " + e.name);
    }
    ByteView raw = d.subspan(data_at, csize);
    if (method == 0) {
      if (csize != usize) throw ArchiveUnreadable("stored entry size mismatch: " + e.name);
      e.data.assign(raw.begin(), raw.end());
    } else if (method == 8) {
      e.data = Inflate(raw, usize, e.name);
    } else {
      throw ArchiveUnreadable("unsupported compression method for " + e.name);
    }
    if (Crc(e.data) != crc) throw ArchiveUnreadable("CRC mismatch in " + e.name);
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<ZipEntry> ReadZipFile(const std::string& path) {
  Bytes data;
  try {
    data = ReadFile(path);
  } catch (const std::exception& e) {
    throw ArchiveUnreadable(e.what());
  }
  return ReadZip(data);
}

Bytes WriteZip(const std::vector<ZipEntry>& entries, bool deflate) {
  Bytes out, central;
  for (const auto& e : entries) {
    const std::uint32_t offset = static_cast<std::uint32_t>(out.size());
    const std::uint32_t crc = Crc(e.data);
    Bytes packed;
    std::uint16_t method = 0;
    if (deflate && !e.data.empty()) {
      packed = Deflate(e.data);
      method = 8;
    }
    const Bytes& body = method == 8 ? packed : e.data;

    auto header = [&](Bytes& b, bool is_central) {
      Put4(b, is_central ? kCentralSig : kLocalSig);
      if (is_central) Put2(b, 20);
      Put2(b, 20);
      Put2(b, 0x0800);  // UTF-8 names
      Put2(b, method);
      Put2(b, kDosTime);
      Put2(b, kDosDate);
      Put4(b, crc);
      Put4(b, static_cast<std::uint32_t>(body.size()));
      Put4(b, static_cast<std::uint32_t>(e.data.size()));
      Put2(b, static_cast<std::uint32_t>(e.name.size()));
      Put2(b, 0);
      if (is_central) {
        Put2(b, 0);
        Put2(b, 0);
        Put2(b, 0);
        Put4(b, 0);
        Put4(b, offset);
      }
      b.insert(b.end(), e.name.begin(), e.name.end());
    };
    header(out, false);
    out.insert(out.end(), body.begin(), body.end());
    header(central, true);
  }
  const std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
  out.insert(out.end(), central.begin(), central.end());
  Put4(out, kEndSig);
  Put2(out, 0);
  Put2(out, 0);
  Put2(out, static_cast<std::uint32_t>(entries.size()));
  Put2(out, static_cast<std::uint32_t>(entries.size()));
  Put4(out, static_cast<std::uint32_t>(central.size()));
  Put4(out, cd_offset);
  Put2(out, 0);
  return out;
}

}  // namespace bineq
