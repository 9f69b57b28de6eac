// Copyright 2026 Motion Annotation Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "annot/store/zip.h"

#include <zlib.h>

#include <cstdint>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace annot {
namespace store {
namespace {

constexpr uint32_t kLocalHeaderSig = 0x04034b50;
constexpr uint32_t kCentralHeaderSig = 0x02014b50;
constexpr uint32_t kEndOfCentralSig = 0x06054b50;
constexpr uint16_t kVersion = 20;
constexpr uint16_t kUtf8Flag = 1 << 11;
constexpr uint16_t kDeflate = 8;
constexpr uint16_t kStored = 0;
constexpr uint16_t kDosTime = 0;
constexpr uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;  // 1980-01-01

void Put16(std::string& out, uint16_t v) {
  out += static_cast<char>(v & 0xff);
  out += static_cast<char>(v >> 8);
}
void Put32(std::string& out, uint32_t v) {
  Put16(out, v & 0xffff);
  Put16(out, v >> 16);
}

uint16_t Get16(std::string_view in, size_t at) {
  return static_cast<uint16_t>(static_cast<uint8_t>(in[at]) |
                               (static_cast<uint8_t>(in[at + 1]) << 8));
}
uint32_t Get32(std::string_view in, size_t at) {
  return Get16(in, at) | (static_cast<uint32_t>(Get16(in, at + 2)) << 16);
}

uint32_t Crc32(std::string_view data) {
  return static_cast<uint32_t>(
      crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(data.data()),
            static_cast<uInt>(data.size())));
}

absl::StatusOr<std::string> Deflate(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    return absl::InternalError("deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, data.size()), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) return absl::InternalError("deflate failed");
  return out;
}

absl::StatusOr<std::string> Inflate(std::string_view data, size_t size) {
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
    return absl::InternalError("inflateInit2 failed");
  }
  std::string out(size, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != size) {
    return absl::DataLossError("deflate stream is corrupt");
  }
  return out;
}

}  // namespace

absl::StatusOr<std::string> WriteZip(std::span<const ZipMember> members) {
  std::string out;
  std::string central;
  for (const ZipMember& m : members) {
    if (m.name.empty() || m.name.size() > 0xffff) {
      return absl::InvalidArgumentError("bad member name");
    }
    auto packed = Deflate(m.data);
    if (!packed.ok()) return packed.status();
    if (out.size() > 0xffffffffu || packed->size() > 0xffffffffu ||
        m.data.size() > 0xffffffffu) {
      return absl::ResourceExhaustedError("archive exceeds ZIP32 limits");
    }
    const uint32_t crc = Crc32(m.data);
    const uint32_t offset = static_cast<uint32_t>(out.size());

    Put32(out, kLocalHeaderSig);
    Put16(out, kVersion);
    Put16(out, kUtf8Flag);
    Put16(out, kDeflate);
    Put16(out, kDosTime);
    Put16(out, kDosDate);
    Put32(out, crc);
    Put32(out, static_cast<uint32_t>(packed->size()));
    Put32(out, static_cast<uint32_t>(m.data.size()));
    Put16(out, static_cast<uint16_t>(m.name.size()));
    Put16(out, 0);
    out += m.name;
    out += *packed;

    Put32(central, kCentralHeaderSig);
    Put16(central, kVersion);
    Put16(central, kVersion);
    Put16(central, kUtf8Flag);
    Put16(central, kDeflate);
    Put16(central, kDosTime);
    Put16(central, kDosDate);
    Put32(central, crc);
    Put32(central, static_cast<uint32_t>(packed->size()));
    Put32(central, static_cast<uint32_t>(m.data.size()));
    Put16(central, static_cast<uint16_t>(m.name.size()));
    Put16(central, 0);  // extra
    Put16(central, 0);  // comment
    Put16(central, 0);  // disk
    Put16(central, 0);  // internal attributes
    Put32(central, 0);  // external attributes
    Put32(central, offset);
    central += m.name;
  }
  if (members.size() > 0xffff) {
    return absl::ResourceExhaustedError("too many members for ZIP32");
  }
  const uint32_t central_offset = static_cast<uint32_t>(out.size());
  out += central;
  Put32(out, kEndOfCentralSig);
  Put16(out, 0);
  Put16(out, 0);
  Put16(out, static_cast<uint16_t>(members.size()));
  Put16(out, static_cast<uint16_t>(members.size()));
  Put32(out, static_cast<uint32_t>(central.size()));
  Put32(out, central_offset);
  Put16(out, 0);
  return out;
}

absl::StatusOr<std::vector<ZipMember>> ReadZip(std::string_view in) {
  constexpr size_t kEndSize = 22;
  if (in.size() < kEndSize) return absl::InvalidArgumentError("not a ZIP archive");
  size_t end = std::string_view::npos;
  const size_t lowest = in.size() >= kEndSize + 0xffff ? in.size() - kEndSize - 0xffff : 0;
  for (size_t at = in.size() - kEndSize + 1; at-- > lowest;) {
    if (Get32(in, at) == kEndOfCentralSig) {
      end = at;
      break;
    }
  }
  if (end == std::string_view::npos) {
    return absl::InvalidArgumentError("not a ZIP archive: no end-of-central-directory record");
  }
  const size_t count = Get16(in, end + 10);
  size_t at = Get32(in, end + 16);

  std::vector<ZipMember> members;
  for (size_t i = 0; i < count; ++i) {
    if (at + 46 > in.size() || Get32(in, at) != kCentralHeaderSig) {
      return absl::InvalidArgumentError("central directory is corrupt");
    }
    const uint16_t method = Get16(in, at + 10);
    const uint32_t crc = Get32(in, at + 16);
    const uint32_t packed_size = Get32(in, at + 20);
    const uint32_t size = Get32(in, at + 24);
    const size_t name_len = Get16(in, at + 28);
    const size_t extra_len = Get16(in, at + 30);
    const size_t comment_len = Get16(in, at + 32);
    const size_t local = Get32(in, at + 42);
    if (at + 46 + name_len > in.size()) {
      return absl::InvalidArgumentError("central directory is corrupt");
    }
    ZipMember member;
    member.name = std::string(in.substr(at + 46, name_len));
    at += 46 + name_len + extra_len + comment_len;

    auto corrupt = [&](absl::string_view why) {
      return absl::DataLossError(
          absl::StrCat("archive member ", member.name, " is corrupt: ", why));
    };
    if (local + 30 > in.size() || Get32(in, local) != kLocalHeaderSig) {
      return corrupt("bad local header");
    }
    const size_t data_at = local + 30 + Get16(in, local + 26) + Get16(in, local + 28);
    if (data_at + packed_size > in.size()) return corrupt("data truncated");
    const std::string_view packed = in.substr(data_at, packed_size);
    if (method == kStored) {
      if (packed_size != size) return corrupt("size mismatch");
      member.data = std::string(packed);
    } else if (method == kDeflate) {
      auto data = Inflate(packed, size);
      if (!data.ok()) return corrupt(data.status().message());
      member.data = *std::move(data);
    } else {
      return absl::UnimplementedError(absl::StrCat(
          "archive member ", member.name, " uses compression method ", method));
    }
    if (Crc32(member.data) != crc) return corrupt("CRC-32 mismatch");
    members.push_back(std::move(member));
  }
  return members;
}

}  // namespace store
}  // namespace annot
