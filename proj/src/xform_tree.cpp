#include "jawkit/xform_tree.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jawkit/error.hpp"
#include "jawkit/io_util.hpp"
#include "jawkit/transform_io.hpp"

namespace jawkit {

ErrorMagnitude error_magnitude(const RigidTransform& e) {
  return {log_rotation(e.rotation()).norm() * kDegPerRad, e.translation().norm()};
}

void TransformTree::add_frame(const FrameId& frame) {
  if (frame.empty()) throw Error(ErrorCode::invalid_config, "frame id must be nonempty");
  if (has_frame(frame)) return;
  frames_.push_back(frame);
  spanning_adjacency_.emplace(frame, std::vector<std::pair<FrameId, size_t>>{});
}

bool TransformTree::has_frame(const FrameId& frame) const {
  return std::find(frames_.begin(), frames_.end(), frame) != frames_.end();
}

std::vector<FrameId> TransformTree::frames() const { return frames_; }

void TransformTree::add_edge(const FrameId& from, const FrameId& to,
                             const RigidTransform& t, EdgeRole role,
                             const std::string& label) {
  if (!has_frame(from)) throw Error(ErrorCode::unknown_frame, from);
  if (!has_frame(to)) throw Error(ErrorCode::unknown_frame, to);
  if (from == to) {
    throw Error(ErrorCode::duplicate_edge, "self edge on frame " + from);
  }
  for (const FrameEdge& e : edges_) {
    const bool same_pair = (e.from == from && e.to == to) ||
                           (e.from == to && e.to == from);
    if (same_pair && e.role == role) {
      throw Error(ErrorCode::duplicate_edge, from + " <-> " + to);
    }
  }
  if (role == EdgeRole::spanning) {
    // A spanning edge may not connect two frames already joined by a
    // spanning path.
    bool connected = true;
    try {
      (void)resolve(from, to);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::disconnected_frames) throw;
      connected = false;
    }
    if (connected) {
      throw Error(ErrorCode::spanning_cycle,
                  "spanning edge " + from + " -> " + to + " would close a loop");
    }
  }
  edges_.push_back({from, to, t, role, label});
  if (role == EdgeRole::spanning) {
    const size_t index = edges_.size() - 1;
    spanning_adjacency_[from].emplace_back(to, index);
    spanning_adjacency_[to].emplace_back(from, index);
  }
}

RigidTransform TransformTree::resolve(const FrameId& from, const FrameId& to) const {
  if (!has_frame(from)) throw Error(ErrorCode::unknown_frame, from);
  if (!has_frame(to)) throw Error(ErrorCode::unknown_frame, to);
  if (from == to) return RigidTransform::identity();

  // BFS over spanning edges from `from`; accumulate the transform mapping
  // each visited frame's coordinates into `from` coordinates.
  std::map<FrameId, RigidTransform> reached;
  reached.emplace(from, RigidTransform::identity());
  std::deque<FrameId> queue{from};
  while (!queue.empty()) {
    const FrameId current = queue.front();
    queue.pop_front();
    const RigidTransform& to_from = reached.at(current);
    const auto it = spanning_adjacency_.find(current);
    if (it == spanning_adjacency_.end()) continue;
    for (const auto& [neighbor, edge_index] : it->second) {
      if (reached.count(neighbor)) continue;
      const FrameEdge& e = edges_[edge_index];
      // Edge stores p_{e.from} = T p_{e.to}; orient it as current <- neighbor.
      const RigidTransform step =
          (e.from == current) ? e.transform : e.transform.inverse();
      reached.emplace(neighbor, to_from * step);
      if (neighbor == to) return reached.at(to);
      queue.push_back(neighbor);
    }
  }
  throw Error(ErrorCode::disconnected_frames, from + " and " + to);
}

const FrameEdge* TransformTree::find_edge(const FrameId& a, const FrameId& b,
                                          bool* forward) const {
  // Prefer check edges: in a consistency cycle an explicitly measured edge
  // must be compared against the spanning path, not replaced by it.
  const FrameEdge* found = nullptr;
  for (const FrameEdge& e : edges_) {
    const bool fwd = (e.from == a && e.to == b);
    const bool bwd = (e.from == b && e.to == a);
    if (!fwd && !bwd) continue;
    if (!found || e.role == EdgeRole::check) {
      found = &e;
      *forward = fwd;
    }
  }
  return found;
}

RigidTransform TransformTree::consistency_error(const std::vector<FrameId>& cycle) const {
  std::vector<FrameId> loop = cycle;
  if (loop.size() >= 2 && loop.front() == loop.back()) loop.pop_back();
  if (loop.size() < 2) {
    throw Error(ErrorCode::invalid_config, "cycle needs at least two distinct frames");
  }
  for (const FrameId& f : loop) {
    if (!has_frame(f)) throw Error(ErrorCode::unknown_frame, f);
  }
  RigidTransform e;
  for (size_t i = 0; i < loop.size(); ++i) {
    const FrameId& a = loop[i];
    const FrameId& b = loop[(i + 1) % loop.size()];
    bool forward = false;
    const FrameEdge* edge = find_edge(a, b, &forward);
    if (!edge) throw Error(ErrorCode::missing_edge, a + " -> " + b);
    // Orient as a <- b so the loop composes p_a -> ... -> p_a.
    const RigidTransform step = forward ? edge->transform : edge->transform.inverse();
    e = e * step;
  }
  return e;
}

MotionTrack conjugate_motion(const MotionTrack& track, const RigidTransform& bridge,
                             const FrameId& target_frame) {
  MotionTrack out;
  out.frame = target_frame;
  out.samples.reserve(track.samples.size());
  const RigidTransform bridge_inv = bridge.inverse();
  for (const auto& [time, pose] : track.samples) {
    out.samples.emplace_back(time, bridge_inv * pose * bridge);
  }
  return out;
}

// -- serialization ----------------------------------------------------------

void save_tree_json(const std::filesystem::path& path, const TransformTree& tree) {
  nlohmann::json j;
  j["frames"] = tree.frames();
  j["edges"] = nlohmann::json::array();
  for (const FrameEdge& e : tree.edges()) {
    nlohmann::json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["role"] = e.role == EdgeRole::spanning ? "spanning" : "check";
    if (!e.label.empty()) je["label"] = e.label;
    je["matrix"] = transform_to_row(e.transform);
    j["edges"].push_back(je);
  }
  write_text_file(path, j.dump(2) + "\n");
}

TransformTree load_tree_json(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
  if (!j.contains("frames") || !j.contains("edges")) {
    throw Error(ErrorCode::parse_error,
                path.string() + ": tree JSON requires \"frames\" and \"edges\"");
  }
  TransformTree tree;
  for (const auto& f : j["frames"]) tree.add_frame(f.get<std::string>());
  for (const auto& je : j["edges"]) {
    const std::string role_str = je.value("role", "spanning");
    if (role_str != "spanning" && role_str != "check") {
      throw Error(ErrorCode::parse_error, "unknown edge role: " + role_str);
    }
    const RigidTransform t = transform_from_json(je);
    tree.add_edge(je.at("from").get<std::string>(), je.at("to").get<std::string>(), t,
                  role_str == "spanning" ? EdgeRole::spanning : EdgeRole::check,
                  je.value("label", ""));
  }
  return tree;
}

void save_motion_csv(const std::filesystem::path& path, const MotionTrack& track) {
  std::ostringstream out;
  out << "time_s";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out << ",m" << i << j;
  out << "\n";
  for (const auto& [time, pose] : track.samples) {
    out << format_double(time) << ',' << transform_to_csv_line(pose) << "\n";
  }
  write_text_file(path, out.str());
}

MotionTrack load_motion_csv(const std::filesystem::path& path, const FrameId& frame) {
  std::istringstream in(read_text_file(path));
  MotionTrack track;
  track.frame = frame;
  std::string line;
  size_t line_no = 0;
  double last_time = -std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line_no == 1) continue;  // header
    const auto fields = split_csv_line(line);
    if (fields.size() != 17) {
      throw Error(ErrorCode::parse_error,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected 17 fields (time + 16 matrix entries)");
    }
    const double time = parse_double_field(fields[0], "time_s");
    if (time <= last_time) {
      throw Error(ErrorCode::parse_error,
                  path.string() + ":" + std::to_string(line_no) +
                      ": timestamps must be strictly increasing");
    }
    last_time = time;
    track.samples.emplace_back(
        time, transform_from_csv_fields(std::span(fields).subspan(1),
                                        path.string() + ":" + std::to_string(line_no)));
  }
  return track;
}

}  // namespace jawkit
