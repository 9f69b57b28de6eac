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

#include "annot/ingest/c3d.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace annot {
namespace ingest {
namespace {

constexpr size_t kBlockSize = 512;
constexpr uint8_t kParameterKey = 0x50;
constexpr uint8_t kProcessorIntel = 84;
constexpr uint8_t kProcessorDec = 85;
constexpr uint8_t kProcessorMips = 86;

absl::Status Malformed(absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("malformed C3D: ", what));
}

// Little-endian reads with bounds checks left to the caller.
uint16_t U16(std::span<const uint8_t> b, size_t at) {
  return static_cast<uint16_t>(b[at] | (b[at + 1] << 8));
}
int16_t I16(std::span<const uint8_t> b, size_t at) {
  return static_cast<int16_t>(U16(b, at));
}
float F32(std::span<const uint8_t> b, size_t at) {
  const uint32_t bits = static_cast<uint32_t>(b[at]) |
                        (static_cast<uint32_t>(b[at + 1]) << 8) |
                        (static_cast<uint32_t>(b[at + 2]) << 16) |
                        (static_cast<uint32_t>(b[at + 3]) << 24);
  return std::bit_cast<float>(bits);
}

struct Parameter {
  int type = 0;  // -1 char, 1 byte, 2 int16, 4 float
  std::vector<int> dims;
  std::span<const uint8_t> data;

  size_t ElementCount() const {
    size_t n = 1;
    for (int d : dims) n *= d;
    return n;
  }
  std::optional<double> Number() const {
    if (ElementCount() < 1) return std::nullopt;
    switch (type) {
      case 1:
        return data[0];
      case 2:
        return U16(data, 0);
      case 4:
        return F32(data, 0);
      default:
        return std::nullopt;
    }
  }
};

using ParameterMap = std::map<std::string, Parameter>;

absl::StatusOr<ParameterMap> ParseParameters(std::span<const uint8_t> bytes,
                                             size_t start, size_t end) {
  std::map<int, std::string> groups;
  std::vector<std::pair<int, std::pair<std::string, Parameter>>> params;
  size_t pos = start;
  while (pos + 2 <= end) {
    const int name_length = std::abs(static_cast<int8_t>(bytes[pos]));
    if (name_length == 0) break;
    const int id = static_cast<int8_t>(bytes[pos + 1]);
    const size_t offset_at = pos + 2 + name_length;
    if (offset_at + 2 > end) return Malformed("parameter section overruns its blocks");
    std::string name(reinterpret_cast<const char*>(bytes.data() + pos + 2),
                     name_length);
    name = absl::AsciiStrToUpper(name);
    const int next = I16(bytes, offset_at);

    if (id < 0) {
      groups[-id] = name;
    } else if (id > 0) {
      size_t at = offset_at + 2;
      if (at + 2 > end) return Malformed(absl::StrCat("parameter ", name, " is truncated"));
      Parameter p;
      p.type = static_cast<int8_t>(bytes[at]);
      const int ndims = bytes[at + 1];
      at += 2;
      if (at + ndims > end) return Malformed(absl::StrCat("parameter ", name, " is truncated"));
      for (int d = 0; d < ndims; ++d) p.dims.push_back(bytes[at + d]);
      at += ndims;
      const size_t size = p.ElementCount() * std::abs(p.type);
      if (at + size > end) return Malformed(absl::StrCat("parameter ", name, " is truncated"));
      p.data = bytes.subspan(at, size);
      params.push_back({id, {name, p}});
    }
    if (next == 0) break;
    if (next < 0) return Malformed("negative parameter offset");
    pos = offset_at + next;
  }

  ParameterMap out;
  for (auto& [group_id, entry] : params) {
    auto group = groups.find(group_id);
    if (group == groups.end()) continue;
    out[absl::StrCat(group->second, ":", entry.first)] = entry.second;
  }
  return out;
}

absl::StatusOr<std::vector<std::string>> ParseLabels(const Parameter& p,
                                                     size_t count) {
  if (p.type != -1 || p.dims.size() != 2) {
    return Malformed("POINT:LABELS is not a two-dimensional character array");
  }
  const size_t width = p.dims[0];
  const size_t n = p.dims[1];
  if (n < count) {
    return Malformed(absl::StrCat("POINT:LABELS holds ", n, " labels for ",
                                  count, " points"));
  }
  std::vector<std::string> labels;
  for (size_t i = 0; i < count; ++i) {
    std::string label(reinterpret_cast<const char*>(p.data.data() + i * width),
                      width);
    labels.push_back(std::string(absl::StripTrailingAsciiWhitespace(label)));
  }
  return labels;
}

MarkerPoint DecodeResidual(MarkerPoint point, int word, double scale) {
  if (word < 0) {
    point.valid = false;
    point.residual = 0.0;
    point.camera_mask = 0;
    return point;
  }
  point.valid = true;
  point.residual = (word & 0xff) * std::abs(scale);
  point.camera_mask = static_cast<uint8_t>((word >> 8) & 0x7f);
  return point;
}

int EncodeResidual(const MarkerPoint& point, double scale) {
  if (!point.valid) return -1;
  const long residual = std::lround(point.residual / std::abs(scale));
  return ((point.camera_mask & 0x7f) << 8) |
         static_cast<int>(std::clamp(residual, 0L, 255L));
}

class ByteWriter {
 public:
  void U8(uint8_t v) { bytes_.push_back(static_cast<char>(v)); }
  void I8(int8_t v) { U8(static_cast<uint8_t>(v)); }
  void U16(uint16_t v) {
    U8(v & 0xff);
    U8(v >> 8);
  }
  void I16(int16_t v) { U16(static_cast<uint16_t>(v)); }
  void F32(float v) {
    const uint32_t bits = std::bit_cast<uint32_t>(v);
    for (int i = 0; i < 4; ++i) U8((bits >> (8 * i)) & 0xff);
  }
  void Bytes(std::string_view s) { bytes_.append(s.data(), s.size()); }
  void PadTo(size_t multiple) {
    while (bytes_.size() % multiple != 0) U8(0);
  }
  size_t size() const { return bytes_.size(); }
  std::string& bytes() { return bytes_; }

 private:
  std::string bytes_;
};

struct ParameterSpec {
  std::string name;
  int type;
  std::vector<int> dims;
  std::string data;
};

std::string Int16Data(int16_t v) {
  ByteWriter w;
  w.I16(v);
  return w.bytes();
}
std::string FloatData(float v) {
  ByteWriter w;
  w.F32(v);
  return w.bytes();
}

void WriteGroup(ByteWriter& w, int id, std::string_view name,
                const std::vector<ParameterSpec>& params, bool last_group) {
  w.I8(static_cast<int8_t>(name.size()));
  w.I8(static_cast<int8_t>(-id));
  w.Bytes(name);
  w.I16(3);  // offset field (2) + empty description (1)
  w.U8(0);
  for (size_t i = 0; i < params.size(); ++i) {
    const ParameterSpec& p = params[i];
    const bool last = last_group && i + 1 == params.size();
    w.I8(static_cast<int8_t>(p.name.size()));
    w.I8(static_cast<int8_t>(id));
    w.Bytes(p.name);
    const size_t next = 2 + 2 + p.dims.size() + p.data.size() + 1;
    w.I16(last ? 0 : static_cast<int16_t>(next));
    w.I8(static_cast<int8_t>(p.type));
    w.U8(static_cast<uint8_t>(p.dims.size()));
    for (int d : p.dims) w.U8(static_cast<uint8_t>(d));
    w.Bytes(p.data);
    w.U8(0);
  }
}

}  // namespace

absl::StatusOr<C3dDocument> ParseC3d(std::span<const uint8_t> bytes) {
  if (bytes.size() < kBlockSize) {
    return Malformed(absl::StrCat("file has ", bytes.size(),
                                  " bytes, less than one 512-byte block"));
  }
  if (bytes[1] != kParameterKey) return Malformed("header key byte is not 0x50");
  const size_t parameter_block = bytes[0];
  if (parameter_block < 2) return Malformed("parameter block pointer < 2");
  const size_t parameter_start = (parameter_block - 1) * kBlockSize;
  if (parameter_start + 4 > bytes.size()) {
    return Malformed("parameter section lies beyond the end of the file");
  }

  const uint8_t processor = bytes[parameter_start + 3];
  if (processor == kProcessorDec || processor == kProcessorMips) {
    return absl::UnimplementedError(absl::StrCat(
        "unsupported C3D processor type ",
        processor == kProcessorDec ? "DEC" : "MIPS",
        "; only Intel (little-endian) files are supported"));
  }
  if (processor != kProcessorIntel) {
    return Malformed(absl::StrCat("unknown processor type ", processor));
  }

  const size_t point_count = U16(bytes, 2);
  const size_t analog_per_frame = U16(bytes, 4);
  const int first_frame = U16(bytes, 6);
  const int last_frame = U16(bytes, 8);
  const double header_scale = F32(bytes, 12);
  const size_t data_block = U16(bytes, 16);
  const double header_rate = F32(bytes, 20);

  const size_t parameter_blocks = bytes[parameter_start + 2];
  const size_t parameter_end = std::min(
      bytes.size(), parameter_start + std::max<size_t>(1, parameter_blocks) * kBlockSize);
  auto params = ParseParameters(bytes, parameter_start + 4, parameter_end);
  if (!params.ok()) return params.status();
  auto find = [&](const char* key) -> const Parameter* {
    auto it = params->find(key);
    return it == params->end() ? nullptr : &it->second;
  };

  C3dDocument doc;
  doc.first_frame = first_frame;

  if (const Parameter* used = find("POINT:USED")) {
    auto n = used->Number();
    if (!n || static_cast<size_t>(*n) != point_count) {
      return Malformed(absl::StrCat("POINT:USED disagrees with the header (",
                                    point_count, " points)"));
    }
  }
  if (point_count > 0) {
    const Parameter* labels = find("POINT:LABELS");
    if (labels == nullptr) return Malformed("POINT:LABELS is missing");
    auto parsed = ParseLabels(*labels, point_count);
    if (!parsed.ok()) return parsed.status();
    doc.marker_labels = *std::move(parsed);
  }

  doc.sample_rate = header_rate;
  if (const Parameter* rate = find("POINT:RATE")) {
    if (auto v = rate->Number()) doc.sample_rate = *v;
  }
  if (!(doc.sample_rate > 0.0) || !std::isfinite(doc.sample_rate)) {
    return Malformed("sample rate must be positive");
  }

  doc.scale = header_scale;
  if (const Parameter* scale = find("POINT:SCALE")) {
    if (auto v = scale->Number()) doc.scale = *v;
  }
  if (doc.scale == 0.0 || !std::isfinite(doc.scale)) {
    return Malformed("POINT:SCALE must be nonzero");
  }

  if (last_frame < first_frame) return Malformed("last frame precedes first frame");
  size_t frame_count = static_cast<size_t>(last_frame - first_frame + 1);
  if (const Parameter* frames = find("POINT:FRAMES")) {
    if (auto v = frames->Number()) {
      if (last_frame == 0xffff) {
        frame_count = static_cast<size_t>(*v);
      } else if (static_cast<size_t>(*v) != frame_count) {
        return Malformed(absl::StrCat("POINT:FRAMES (", *v,
                                      ") disagrees with the header (",
                                      frame_count, ")"));
      }
    }
  }

  if (data_block < 2) return Malformed("data block pointer < 2");
  const bool is_float = doc.scale < 0.0;
  const size_t word_size = is_float ? 4 : 2;
  const size_t frame_bytes = (point_count * 4 + analog_per_frame) * word_size;
  const size_t data_start = (data_block - 1) * kBlockSize;
  if (data_start + frame_count * frame_bytes > bytes.size()) {
    return Malformed(absl::StrCat("point data truncated: need ",
                                  data_start + frame_count * frame_bytes,
                                  " bytes, file has ", bytes.size()));
  }

  doc.frames.resize(frame_count);
  for (size_t f = 0; f < frame_count; ++f) {
    size_t at = data_start + f * frame_bytes;
    auto& frame = doc.frames[f];
    frame.reserve(point_count);
    for (size_t m = 0; m < point_count; ++m) {
      MarkerPoint point;
      int residual_word;
      if (is_float) {
        point.x = F32(bytes, at);
        point.y = F32(bytes, at + 4);
        point.z = F32(bytes, at + 8);
        const float word = F32(bytes, at + 12);
        residual_word = std::isfinite(word)
                            ? static_cast<int>(std::clamp(word, -32768.0f, 32767.0f))
                            : -1;
        at += 16;
      } else {
        point.x = I16(bytes, at) * doc.scale;
        point.y = I16(bytes, at + 2) * doc.scale;
        point.z = I16(bytes, at + 4) * doc.scale;
        residual_word = I16(bytes, at + 6);
        at += 8;
      }
      frame.push_back(DecodeResidual(point, residual_word, doc.scale));
    }
  }
  return doc;
}

absl::StatusOr<C3dDocument> ParseC3d(const std::string& bytes) {
  return ParseC3d(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size()));
}

absl::StatusOr<std::string> SerializeC3d(const C3dDocument& doc) {
  const size_t points = doc.marker_labels.size();
  if (points > 255) {
    return absl::UnimplementedError("writer supports at most 255 markers");
  }
  if (doc.frames.size() > 0xfffe || doc.first_frame < 1 ||
      doc.first_frame + doc.frames.size() - 1 > 0xfffe) {
    return absl::InvalidArgumentError("frame range does not fit the header");
  }
  if (!(doc.sample_rate > 0.0) || doc.scale == 0.0) {
    return absl::InvalidArgumentError("sample rate and scale must be set");
  }
  for (const auto& frame : doc.frames) {
    if (frame.size() != points) {
      return absl::InvalidArgumentError(
          "every frame needs one point per marker label");
    }
  }

  size_t width = 1;
  for (const auto& label : doc.marker_labels) {
    width = std::max(width, label.size());
  }
  if (width > 255) return absl::InvalidArgumentError("marker label too long");
  std::string labels;
  for (const auto& label : doc.marker_labels) {
    labels += label;
    labels.append(width - label.size(), ' ');
  }

  const int16_t frames = static_cast<int16_t>(doc.frames.size());
  std::vector<ParameterSpec> point_params = {
      {"USED", 2, {}, Int16Data(static_cast<int16_t>(points))},
      {"SCALE", 4, {}, FloatData(static_cast<float>(doc.scale))},
      {"RATE", 4, {}, FloatData(static_cast<float>(doc.sample_rate))},
      {"FRAMES", 2, {}, Int16Data(frames)},
      {"LABELS", -1, {static_cast<int>(width), static_cast<int>(points)}, labels},
  };
  std::vector<ParameterSpec> analog_params = {{"USED", 2, {}, Int16Data(0)}};

  ByteWriter section;
  WriteGroup(section, 1, "POINT", point_params, /*last_group=*/false);
  WriteGroup(section, 2, "ANALOG", analog_params, /*last_group=*/true);
  const size_t parameter_blocks =
      (4 + section.size() + kBlockSize - 1) / kBlockSize;
  const size_t data_block = 2 + parameter_blocks;

  ByteWriter out;
  out.U8(2);
  out.U8(kParameterKey);
  out.U16(static_cast<uint16_t>(points));
  out.U16(0);
  out.U16(static_cast<uint16_t>(doc.first_frame));
  out.U16(static_cast<uint16_t>(doc.first_frame + doc.frames.size() - 1));
  out.U16(0);
  out.F32(static_cast<float>(doc.scale));
  out.U16(static_cast<uint16_t>(data_block));
  out.U16(0);
  out.F32(static_cast<float>(doc.sample_rate));
  out.PadTo(kBlockSize);

  out.U8(1);
  out.U8(kParameterKey);
  out.U8(static_cast<uint8_t>(parameter_blocks));
  out.U8(kProcessorIntel);
  out.Bytes(section.bytes());
  out.PadTo(kBlockSize);

  const bool is_float = doc.scale < 0.0;
  for (const auto& frame : doc.frames) {
    for (const MarkerPoint& p : frame) {
      const int residual = EncodeResidual(p, doc.scale);
      if (is_float) {
        out.F32(static_cast<float>(p.x));
        out.F32(static_cast<float>(p.y));
        out.F32(static_cast<float>(p.z));
        out.F32(static_cast<float>(residual));
      } else {
        for (double v : {p.x, p.y, p.z}) {
          const long q = std::lround(v / doc.scale);
          out.I16(static_cast<int16_t>(std::clamp(q, -32768L, 32767L)));
        }
        out.I16(static_cast<int16_t>(residual));
      }
    }
  }
  out.PadTo(kBlockSize);
  return std::move(out.bytes());
}

}  // namespace ingest
}  // namespace annot
