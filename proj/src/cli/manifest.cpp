// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/manifest.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace omnitok::cli {

namespace {

std::string summarize(const std::vector<FieldError>& errors) {
  std::ostringstream out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const auto& e = errors[i];
    if (i) out << "\n";
    if (e.line > 0) out << "line " << e.line << ":" << e.column << ": ";
    out << e.field << ": " << e.message;
  }
  return out.str();
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  // Keep a decimal point so the scalar reads back as a float.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.is_open(), ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

YAML::Node load_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError({{"<document>", e.mark.line + 1, e.mark.column + 1, e.msg}});
  }
}

// Collects field-level errors instead of stopping at the first one.
class Reader {
public:
  void error(const YAML::Node& node, const std::string& field, const std::string& message) {
    int line = 0;
    int column = 0;
    if (node.IsDefined()) {
      const YAML::Mark mark = node.Mark();
      if (mark.line >= 0) {
        line = mark.line + 1;
        column = mark.column + 1;
      }
    }
    errors_.push_back({field, line, column, message});
  }

  bool expect_map(const YAML::Node& node, const std::string& field) {
    if (node.IsMap()) return true;
    error(node, field, "expected a mapping");
    return false;
  }

  void reject_unknown(const YAML::Node& map, const std::string& prefix,
                      std::initializer_list<const char*> known) {
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      bool ok = false;
      for (const char* k : known) ok = ok || key == k;
      if (!ok) error(kv.first, join(prefix, key), "unknown field");
    }
  }

  template <typename T>
  std::optional<T> get(const YAML::Node& map, const char* key, const std::string& prefix,
                       const char* type_name) {
    const YAML::Node node = map[key];
    if (!node) return std::nullopt;
    try {
      if (!node.IsScalar()) throw YAML::Exception(node.Mark(), "not a scalar");
      return node.as<T>();
    } catch (const YAML::Exception&) {
      error(node, join(prefix, key), std::string("expected ") + type_name);
      return std::nullopt;
    }
  }

  static std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
  }

  // Reported in document order.
  void throw_if_errors() {
    if (errors_.empty()) return;
    std::stable_sort(errors_.begin(), errors_.end(), [](const FieldError& a, const FieldError& b) {
      return std::pair(a.line, a.column) < std::pair(b.line, b.column);
    });
    throw ConfigError(errors_);
  }

private:
  std::vector<FieldError> errors_;
};

void read_pipeline(Reader& r, const YAML::Node& node, PipelineFlags& p) {
  if (!r.expect_map(node, "pipeline")) return;
  r.reject_unknown(node, "pipeline",
                   {"conv3d", "evs_q", "patch_budget", "frame_patches", "overhead", "stage",
                    "window", "max_frames"});
  if (auto v = r.get<bool>(node, "conv3d", "pipeline", "a boolean")) p.conv3d = *v;
  if (auto v = r.get<double>(node, "evs_q", "pipeline", "a number")) {
    p.evs_q = *v;
    if (!(*v >= 0.0 && *v < 1.0)) r.error(node["evs_q"], "pipeline.evs_q", "must lie in [0, 1)");
  }
  if (const YAML::Node pb = node["patch_budget"]) {
    if (r.expect_map(pb, "pipeline.patch_budget")) {
      r.reject_unknown(pb, "pipeline.patch_budget", {"min", "max"});
      if (auto v = r.get<std::int64_t>(pb, "min", "pipeline.patch_budget", "an integer"))
        p.patch_budget.min_patches = *v;
      if (auto v = r.get<std::int64_t>(pb, "max", "pipeline.patch_budget", "an integer"))
        p.patch_budget.max_patches = *v;
      if (!(p.patch_budget.min_patches > 0 &&
            p.patch_budget.min_patches <= p.patch_budget.max_patches &&
            p.patch_budget.max_patches >= 4)) {
        r.error(pb, "pipeline.patch_budget", "must satisfy 0 < min <= max and max >= 4");
      }
    }
  }
  if (const YAML::Node fp = node["frame_patches"]) {
    const auto text = fp.IsScalar() ? fp.Scalar() : std::string();
    if (text == "default") {
      p.frame_patches.reset();
    } else if (auto v = r.get<std::int64_t>(node, "frame_patches", "pipeline",
                                            "256, 512, 768, 1024 or default")) {
      if (*v != 256 && *v != 512 && *v != 768 && *v != 1024) {
        r.error(fp, "pipeline.frame_patches", "must be 256, 512, 768, 1024 or default");
      }
      p.frame_patches = *v;
    }
  }
  if (const YAML::Node oh = node["overhead"]) {
    if (r.expect_map(oh, "pipeline.overhead")) {
      r.reject_unknown(oh, "pipeline.overhead", {"per_frame", "per_image_fixed", "per_sequence_fixed"});
      const auto read = [&](const char* key, std::int64_t& dst) {
        if (auto v = r.get<std::int64_t>(oh, key, "pipeline.overhead", "an integer")) {
          dst = *v;
          if (*v < 0) r.error(oh[key], std::string("pipeline.overhead.") + key, "must be >= 0");
        }
      };
      read("per_frame", p.overhead.per_frame);
      read("per_image_fixed", p.overhead.per_image_fixed);
      read("per_sequence_fixed", p.overhead.per_sequence_fixed);
    }
  }
  if (auto v = r.get<std::string>(node, "stage", "pipeline", "a string")) {
    try {
      p.stage = sequencer::parse_stage(*v);
    } catch (const Error&) {
      r.error(node["stage"], "pipeline.stage", "must be 16k, 48k or 256k");
    }
  }
  if (auto v = r.get<double>(node, "window", "pipeline", "a number")) {
    p.window = *v;
    if (!(*v > 0.0)) r.error(node["window"], "pipeline.window", "must be positive");
  }
  if (auto v = r.get<std::int64_t>(node, "max_frames", "pipeline", "an integer")) {
    p.max_frames = *v;
    if (*v < 1) r.error(node["max_frames"], "pipeline.max_frames", "must be >= 1");
  }
}

void read_entry(Reader& r, const YAML::Node& node, const std::string& path, MediaEntry& e) {
  using sequencer::MediaKind;
  if (!r.expect_map(node, path)) return;
  r.reject_unknown(node, path,
                   {"id", "kind", "start", "duration", "width", "height", "frames", "fps",
                    "max_frames", "tokens"});
  if (auto v = r.get<std::string>(node, "id", path, "a string")) {
    e.id = *v;
  } else if (!node["id"]) {
    r.error(node, path + ".id", "is required");
  }
  bool kind_ok = false;
  if (auto v = r.get<std::string>(node, "kind", path, "a string")) {
    if (auto k = sequencer::parse_media_kind(*v)) {
      e.kind = *k;
      kind_ok = true;
    } else {
      r.error(node["kind"], path + ".kind", "must be image, video, audio or text");
    }
  } else if (!node["kind"]) {
    r.error(node, path + ".kind", "is required");
  }

  if (auto v = r.get<double>(node, "start", path, "a number")) e.start = *v;
  if (auto v = r.get<double>(node, "duration", path, "a number")) e.duration = *v;
  if (auto v = r.get<std::int64_t>(node, "width", path, "an integer")) e.width = *v;
  if (auto v = r.get<std::int64_t>(node, "height", path, "an integer")) e.height = *v;
  e.frames = r.get<std::int64_t>(node, "frames", path, "an integer");
  e.fps = r.get<double>(node, "fps", path, "a number");
  e.max_frames = r.get<std::int64_t>(node, "max_frames", path, "an integer");
  if (auto v = r.get<std::int64_t>(node, "tokens", path, "an integer")) e.tokens = *v;

  if (!(e.start >= 0.0)) r.error(node["start"], path + ".start", "must be >= 0");
  if (!(e.duration >= 0.0)) r.error(node["duration"], path + ".duration", "must be >= 0");
  if (!kind_ok) return;

  const bool visual = e.kind == MediaKind::Image || e.kind == MediaKind::Video;
  if (visual && e.width < 1) r.error(node["width"] ? node["width"] : node, path + ".width", "must be >= 1");
  if (visual && e.height < 1) r.error(node["height"] ? node["height"] : node, path + ".height", "must be >= 1");
  if (e.kind == MediaKind::Video) {
    if (e.frames && *e.frames < 1) r.error(node["frames"], path + ".frames", "must be >= 1");
    if (e.fps && !(*e.fps > 0.0)) r.error(node["fps"], path + ".fps", "must be positive");
    if (e.max_frames && *e.max_frames < 1) r.error(node["max_frames"], path + ".max_frames", "must be >= 1");
    if (!e.frames && !(e.fps && e.duration > 0.0)) {
      r.error(node, path, "video needs frames, or fps with a positive duration");
    }
  }
  if (e.kind == MediaKind::Audio && !(e.duration > 0.0)) {
    r.error(node["duration"] ? node["duration"] : node, path + ".duration", "audio needs a positive duration");
  }
  if (e.kind == MediaKind::Text && e.tokens < 0) r.error(node["tokens"], path + ".tokens", "must be >= 0");
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errors)
    : Error(ErrorCode::Parse, summarize(errors)), errors_(std::move(errors)) {}

Manifest parse_manifest_text(std::string_view text) {
  const YAML::Node root = load_yaml(text);
  Reader r;
  Manifest m;
  if (!r.expect_map(root, "<document>")) r.throw_if_errors();
  r.reject_unknown(root, "", {"version", "pipeline", "entries"});
  if (auto v = r.get<int>(root, "version", "", "an integer")) {
    m.version = *v;
    if (*v != kManifestVersion) r.error(root["version"], "version", "unsupported manifest version");
  }
  if (const YAML::Node p = root["pipeline"]) read_pipeline(r, p, m.pipeline);

  const YAML::Node entries = root["entries"];
  if (entries && !entries.IsSequence()) {
    r.error(entries, "entries", "expected a list");
  } else if (entries) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string path = "entries[" + std::to_string(i) + "]";
      MediaEntry e;
      read_entry(r, entries[i], path, e);
      if (!e.id.empty() && !seen.insert(e.id).second) {
        r.error(entries[i]["id"], path + ".id", "duplicate id '" + e.id + "'");
      }
      m.entries.push_back(std::move(e));
    }
  }
  r.throw_if_errors();
  return m;
}

Manifest parse_manifest(const std::filesystem::path& path) {
  return parse_manifest_text(read_file(path));
}

std::string serialize_manifest(const Manifest& m) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "version" << YAML::Value << m.version;
  const auto& p = m.pipeline;
  out << YAML::Key << "pipeline" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "conv3d" << YAML::Value << p.conv3d;
  out << YAML::Key << "evs_q" << YAML::Value << format_double(p.evs_q);
  out << YAML::Key << "patch_budget" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << "min" << YAML::Value << p.patch_budget.min_patches << YAML::Key << "max"
      << YAML::Value << p.patch_budget.max_patches << YAML::EndMap;
  out << YAML::Key << "frame_patches" << YAML::Value;
  if (p.frame_patches) {
    out << *p.frame_patches;
  } else {
    out << "default";
  }
  out << YAML::Key << "overhead" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << "per_frame" << YAML::Value << p.overhead.per_frame
      << YAML::Key << "per_image_fixed" << YAML::Value << p.overhead.per_image_fixed
      << YAML::Key << "per_sequence_fixed" << YAML::Value << p.overhead.per_sequence_fixed
      << YAML::EndMap;
  out << YAML::Key << "stage" << YAML::Value << std::string(sequencer::to_string(p.stage));
  out << YAML::Key << "window" << YAML::Value << format_double(p.window);
  out << YAML::Key << "max_frames" << YAML::Value << p.max_frames;
  out << YAML::EndMap;

  out << YAML::Key << "entries" << YAML::Value << YAML::BeginSeq;
  for (const auto& e : m.entries) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << YAML::DoubleQuoted << e.id;
    out << YAML::Key << "kind" << YAML::Value << std::string(sequencer::to_string(e.kind));
    out << YAML::Key << "start" << YAML::Value << format_double(e.start);
    out << YAML::Key << "duration" << YAML::Value << format_double(e.duration);
    out << YAML::Key << "width" << YAML::Value << e.width;
    out << YAML::Key << "height" << YAML::Value << e.height;
    if (e.frames) out << YAML::Key << "frames" << YAML::Value << *e.frames;
    if (e.fps) out << YAML::Key << "fps" << YAML::Value << format_double(*e.fps);
    if (e.max_frames) out << YAML::Key << "max_frames" << YAML::Value << *e.max_frames;
    out << YAML::Key << "tokens" << YAML::Value << e.tokens;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

footprint::ParamGroupInventory parse_inventory_text(std::string_view text) {
  const YAML::Node root = load_yaml(text);
  Reader r;
  footprint::ParamGroupInventory inv;
  if (!r.expect_map(root, "<document>")) r.throw_if_errors();
  r.reject_unknown(root, "", {"name", "groups"});
  if (auto v = r.get<std::string>(root, "name", "", "a string")) inv.name = *v;
  const YAML::Node groups = root["groups"];
  if (!groups || !groups.IsSequence() || groups.size() == 0) {
    r.error(groups ? groups : root, "groups", "expected a non-empty list");
  } else {
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const std::string path = "groups[" + std::to_string(i) + "]";
      const YAML::Node g = groups[i];
      if (!r.expect_map(g, path)) continue;
      r.reject_unknown(g, path, {"name", "params", "bits", "encoder"});
      footprint::ParamGroup group;
      if (auto v = r.get<std::string>(g, "name", path, "a string")) group.name = *v;
      // Accept 2.754e10 as well as plain integers.
      if (auto v = r.get<double>(g, "params", path, "a number")) {
        if (*v >= 1.0 && *v < 9e18 && *v == std::floor(*v)) {
          group.param_count = static_cast<std::int64_t>(*v);
        } else {
          r.error(g["params"], path + ".params", "must be a positive whole number");
        }
      } else if (!g["params"]) {
        r.error(g, path + ".params", "is required");
      }
      if (auto v = r.get<double>(g, "bits", path, "a number")) {
        group.bits_per_weight = *v;
        if (!(*v > 0.0)) r.error(g["bits"], path + ".bits", "must be positive");
      } else if (!g["bits"]) {
        r.error(g, path + ".bits", "is required");
      }
      if (auto v = r.get<bool>(g, "encoder", path, "a boolean")) group.encoder = *v;
      inv.groups.push_back(std::move(group));
    }
  }
  r.throw_if_errors();
  return inv;
}

footprint::ParamGroupInventory parse_inventory(const std::filesystem::path& path) {
  return parse_inventory_text(read_file(path));
}

std::string serialize_inventory(const footprint::ParamGroupInventory& inv) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << inv.name;
  out << YAML::Key << "groups" << YAML::Value << YAML::BeginSeq;
  for (const auto& g : inv.groups) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << g.name;
    out << YAML::Key << "params" << YAML::Value << g.param_count;
    out << YAML::Key << "bits" << YAML::Value << format_double(g.bits_per_weight);
    out << YAML::Key << "encoder" << YAML::Value << g.encoder;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace omnitok::cli
