#ifndef JAWKIT_XFORM_TREE_HPP
#define JAWKIT_XFORM_TREE_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "jawkit/se3.hpp"

namespace jawkit {

using FrameId = std::string;

enum class EdgeRole { spanning, check };

/// Directed edge from -> to carrying the transform that maps coordinates
/// expressed in `to` into coordinates expressed in `from`:
///   p_from = transform * p_to.
struct FrameEdge {
  FrameId from;
  FrameId to;
  RigidTransform transform;
  EdgeRole role = EdgeRole::spanning;
  std::string label;
};

/// (theta in degrees, translation norm in mm) of a transform, the two
/// summary magnitudes used for consistency reporting.
struct ErrorMagnitude {
  double theta_deg = 0.0;
  double t_norm_mm = 0.0;
};

ErrorMagnitude error_magnitude(const RigidTransform& e);

/// Registry of coordinate frames connected by rigid transforms. Spanning
/// edges must form a forest and define path resolution; check edges carry
/// redundant registrations and only participate in cycle-consistency
/// queries. Build single-threaded, then read concurrently.
class TransformTree {
 public:
  void add_frame(const FrameId& frame);
  bool has_frame(const FrameId& frame) const;
  std::vector<FrameId> frames() const;

  /// Errors: unknown_frame, duplicate_edge (same unordered pair and role),
  /// spanning_cycle (spanning edge closing a loop among spanning edges).
  void add_edge(const FrameId& from, const FrameId& to, const RigidTransform& t,
                EdgeRole role = EdgeRole::spanning, const std::string& label = "");

  const std::vector<FrameEdge>& edges() const { return edges_; }

  /// Transform mapping `to`-frame coordinates into `from`-frame coordinates,
  /// composed along the unique spanning path. resolve(a, a) is the identity.
  /// Errors: unknown_frame, disconnected_frames.
  RigidTransform resolve(const FrameId& from, const FrameId& to) const;

  /// Loop transform E composed from stored edges (spanning or check) along
  /// the closed cycle f0 -> f1 -> ... -> f0; consistent registrations give
  /// E ~ identity. The cycle may optionally repeat the first frame at the
  /// end. Errors: unknown_frame, missing_edge.
  RigidTransform consistency_error(const std::vector<FrameId>& cycle) const;

 private:
  const FrameEdge* find_edge(const FrameId& a, const FrameId& b, bool* forward) const;

  std::vector<FrameId> frames_;
  std::vector<FrameEdge> edges_;
  // frame -> (neighbor, edge index) over spanning edges only
  std::map<FrameId, std::vector<std::pair<FrameId, size_t>>> spanning_adjacency_;
};

/// Time-stamped rigid motion of one frame. Samples are piecewise-constant
/// between timestamps.
struct MotionTrack {
  FrameId frame;
  std::vector<std::pair<double, RigidTransform>> samples;  // (time s, pose)
};

/// Transfers a motion track into another frame by conjugation:
/// each sample P(t) becomes bridge^-1 * P(t) * bridge. Timestamps are
/// preserved and rotation angles are invariant.
MotionTrack conjugate_motion(const MotionTrack& track, const RigidTransform& bridge,
                             const FrameId& target_frame);

// -- serialization ----------------------------------------------------------

void save_tree_json(const std::filesystem::path& path, const TransformTree& tree);
TransformTree load_tree_json(const std::filesystem::path& path);

/// Motion CSV: header "time_s,m00,...,m33", one sample per line.
void save_motion_csv(const std::filesystem::path& path, const MotionTrack& track);
MotionTrack load_motion_csv(const std::filesystem::path& path, const FrameId& frame);

}  // namespace jawkit

#endif  // JAWKIT_XFORM_TREE_HPP
