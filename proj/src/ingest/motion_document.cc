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

#include "annot/ingest/motion_document.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace annot {
namespace ingest {
namespace {

using boost::property_tree::ptree;

absl::Status SchemaError(const std::string& path, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat(path, ": ", what));
}

absl::StatusOr<std::vector<double>> ParseNumbers(const std::string& text,
                                                 const std::string& path) {
  std::vector<double> out;
  for (absl::string_view piece :
       absl::StrSplit(text, absl::ByAnyChar(" \t\r\n"), absl::SkipEmpty())) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || end != piece.data() + piece.size() || !std::isfinite(v)) {
      return SchemaError(path, absl::StrCat("not a finite number: '", piece, "'"));
    }
    out.push_back(v);
  }
  return out;
}

absl::StatusOr<std::vector<double>> NumbersAt(const ptree& frame,
                                              const char* child,
                                              size_t expected,
                                              const std::string& frame_path) {
  const std::string path = absl::StrCat(frame_path, "/", child);
  auto node = frame.get_child_optional(child);
  if (!node) return SchemaError(path, "missing element");
  auto values = ParseNumbers(node->data(), path);
  if (!values.ok()) return values.status();
  if (values->size() != expected) {
    return SchemaError(path, absl::StrCat("expected ", expected,
                                          " values, found ", values->size()));
  }
  return values;
}

void AppendNumber(std::string& out, double v) {
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  out.append(buffer, end);
}

void AppendNumbers(std::string& out, const double* begin, const double* end) {
  for (const double* v = begin; v != end; ++v) {
    if (v != begin) out += ' ';
    AppendNumber(out, *v);
  }
}

std::string EscapeXml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& ReferenceBodyJoints() {
  static const std::vector<std::string>* joints = [] {
    auto* out = new std::vector<std::string>;
    for (const char* j : {"BLNx", "BLNy", "BLNz", "BPx", "BPy", "BPz", "BTx",
                          "BTy", "BTz", "BUNx", "BUNy", "BUNz"}) {
      out->push_back(absl::StrCat(j, "_joint"));
    }
    for (const char* side : {"L", "R"}) {
      for (const char* j : {"Ax", "Ay", "Az", "Ex", "Ez", "Hx", "Hy", "Hz",
                            "Kx", "Sx", "Sy", "Sz", "Wx", "Wy", "Fx", "Mrot"}) {
        out->push_back(absl::StrCat(side, j, "_joint"));
      }
    }
    return out;
  }();
  return *joints;
}

absl::Status ValidateMotionDocument(const MotionDocument& doc) {
  if (doc.dof_names.size() < kRootDofNames.size()) {
    return absl::InvalidArgumentError("dof names must start with the root pose");
  }
  for (size_t i = 0; i < kRootDofNames.size(); ++i) {
    if (doc.dof_names[i] != kRootDofNames[i]) {
      return absl::InvalidArgumentError(
          absl::StrCat("dof ", i, " must be ", std::string(kRootDofNames[i])));
    }
  }
  if (doc.frames.empty()) {
    return absl::FailedPreconditionError("motion has no frames");
  }
  for (size_t f = 0; f < doc.frames.size(); ++f) {
    const MotionFrame& frame = doc.frames[f];
    if (frame.joint_values.size() != doc.body_dof_count()) {
      return absl::InvalidArgumentError(
          absl::StrCat("frame ", f, " has ", frame.joint_values.size(),
                       " joint values, expected ", doc.body_dof_count()));
    }
    if (!std::isfinite(frame.timestamp)) {
      return absl::FailedPreconditionError(
          absl::StrCat("frame ", f, " has a non-finite timestamp"));
    }
    if (f > 0 && !(frame.timestamp > doc.frames[f - 1].timestamp)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "timestamps must increase strictly: frame ", f, " at ",
          frame.timestamp, " follows ", doc.frames[f - 1].timestamp));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<MotionDocument> ParseMotionDocument(std::string_view xml) {
  ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    boost::property_tree::read_xml(in, tree,
                                   boost::property_tree::xml_parser::no_comments);
  } catch (const boost::property_tree::xml_parser_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("XML syntax error at line ", e.line(), ": ", e.message()));
  }

  auto root = tree.get_child_optional("MMM");
  if (!root) return SchemaError("MMM", "missing root element");
  auto motion = root->get_child_optional("Motion");
  if (!motion) return SchemaError("MMM/Motion", "missing element");

  MotionDocument doc;
  doc.motion_name = motion->get<std::string>("<xmlattr>.name", "");
  doc.model_name = motion->get<std::string>("Model.<xmlattr>.path", "");

  auto order = motion->get_child_optional("JointOrder");
  if (!order) return SchemaError("MMM/Motion/JointOrder", "missing element");
  for (std::string_view name : kRootDofNames) doc.dof_names.emplace_back(name);
  size_t joint_index = 0;
  for (const auto& [tag, joint] : *order) {
    if (tag != "Joint") continue;
    ++joint_index;
    auto name = joint.get_optional<std::string>("<xmlattr>.name");
    if (!name || name->empty()) {
      return SchemaError(
          absl::StrCat("MMM/Motion/JointOrder/Joint[", joint_index, "]"),
          "missing name attribute");
    }
    doc.dof_names.push_back(*name);
  }
  const size_t body_dofs = doc.body_dof_count();

  auto frames = motion->get_child_optional("MotionFrames");
  if (!frames) return SchemaError("MMM/Motion/MotionFrames", "missing element");
  size_t frame_index = 0;
  for (const auto& [tag, node] : *frames) {
    if (tag != "MotionFrame") continue;
    ++frame_index;
    const std::string path =
        absl::StrCat("MMM/Motion/MotionFrames/MotionFrame[", frame_index, "]");
    MotionFrame frame;
    auto timestep = NumbersAt(node, "Timestep", 1, path);
    if (!timestep.ok()) return timestep.status();
    frame.timestamp = (*timestep)[0];
    auto position = NumbersAt(node, "RootPosition", 3, path);
    if (!position.ok()) return position.status();
    auto rotation = NumbersAt(node, "RootRotation", 3, path);
    if (!rotation.ok()) return rotation.status();
    for (int i = 0; i < 3; ++i) {
      frame.root_position[i] = (*position)[i];
      frame.root_rotation[i] = (*rotation)[i];
    }
    if (body_dofs > 0 || node.get_child_optional("JointPosition")) {
      auto joints = NumbersAt(node, "JointPosition", body_dofs, path);
      if (!joints.ok()) return joints.status();
      frame.joint_values = *std::move(joints);
    }
    doc.frames.push_back(std::move(frame));
  }

  if (absl::Status s = ValidateMotionDocument(doc); !s.ok()) return s;
  return doc;
}

std::string SerializeMotionDocument(const MotionDocument& doc) {
  std::string out = "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<MMM>\n";
  absl::StrAppend(&out, "  <Motion name=\"", EscapeXml(doc.motion_name), "\">\n");
  if (!doc.model_name.empty()) {
    absl::StrAppend(&out, "    <Model path=\"", EscapeXml(doc.model_name), "\"/>\n");
  }
  out += "    <JointOrder>\n";
  for (size_t i = kRootDofNames.size(); i < doc.dof_names.size(); ++i) {
    absl::StrAppend(&out, "      <Joint name=\"", EscapeXml(doc.dof_names[i]),
                    "\"/>\n");
  }
  out += "    </JointOrder>\n    <MotionFrames>\n";
  for (const MotionFrame& f : doc.frames) {
    out += "      <MotionFrame>\n        <Timestep>";
    AppendNumber(out, f.timestamp);
    out += "</Timestep>\n        <RootPosition>";
    AppendNumbers(out, f.root_position.data(), f.root_position.data() + 3);
    out += "</RootPosition>\n        <RootRotation>";
    AppendNumbers(out, f.root_rotation.data(), f.root_rotation.data() + 3);
    out += "</RootRotation>\n        <JointPosition>";
    AppendNumbers(out, f.joint_values.data(),
                  f.joint_values.data() + f.joint_values.size());
    out += "</JointPosition>\n      </MotionFrame>\n";
  }
  out += "    </MotionFrames>\n  </Motion>\n</MMM>\n";
  return out;
}

}  // namespace ingest
}  // namespace annot
