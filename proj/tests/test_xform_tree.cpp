#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include <Eigen/Dense>

#include "jawkit/error.hpp"
#include "jawkit/xform_tree.hpp"
#include "test_util.hpp"

using namespace jawkit;
using namespace jawkit::testutil;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  REQUIRE(false);
  return ErrorCode::io_error;
}

TransformTree study_tree(std::mt19937_64& rng, RigidTransform* t_ck = nullptr,
                         RigidTransform* t_cf = nullptr) {
  TransformTree tree;
  tree.add_frame("C");
  tree.add_frame("F");
  tree.add_frame("K");
  const RigidTransform ck = random_transform(rng);
  const RigidTransform cf = random_transform(rng);
  tree.add_edge("C", "K", ck, EdgeRole::spanning, "teeth icp");
  tree.add_edge("C", "F", cf, EdgeRole::spanning, "face icp");
  if (t_ck) *t_ck = ck;
  if (t_cf) *t_cf = cf;
  return tree;
}

}  // namespace

TEST_CASE("add_edge: registration triple accepted, duplicates and cycles rejected") {
  std::mt19937_64 rng(101);
  TransformTree tree = study_tree(rng);
  // Direct F -> K measurement rides along as a check edge.
  tree.add_edge("F", "K", random_transform(rng), EdgeRole::check, "arch icp");
  CHECK(tree.edges().size() == 3);

  CHECK(code_of([&] {
          tree.add_edge("C", "K", RigidTransform(), EdgeRole::spanning);
        }) == ErrorCode::duplicate_edge);
  CHECK(code_of([&] {
          tree.add_edge("K", "C", RigidTransform(), EdgeRole::spanning);
        }) == ErrorCode::duplicate_edge);
  CHECK(code_of([&] {
          tree.add_edge("K", "F", RigidTransform(), EdgeRole::spanning);
        }) == ErrorCode::spanning_cycle);
  CHECK(code_of([&] {
          tree.add_edge("C", "missing", RigidTransform(), EdgeRole::spanning);
        }) == ErrorCode::unknown_frame);
}

TEST_CASE("resolve: identity, hand-composed path, disconnected") {
  std::mt19937_64 rng(103);
  RigidTransform ck, cf;
  TransformTree tree = study_tree(rng, &ck, &cf);
  tree.add_frame("isolated");

  CHECK((tree.resolve("C", "C").matrix() - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);

  // K <- F goes K <- C <- F: inverse(C->K) composed with C->F.
  const Mat4 expected = ck.matrix().inverse() * cf.matrix();
  CHECK((tree.resolve("K", "F").matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(code_of([&] { (void)tree.resolve("C", "isolated"); }) ==
        ErrorCode::disconnected_frames);
}

TEST_CASE("resolve: forward/backward symmetry") {
  std::mt19937_64 rng(107);
  RigidTransform ck, cf;
  TransformTree tree = study_tree(rng, &ck, &cf);
  const Mat4 ab = tree.resolve("K", "F").matrix();
  const Mat4 ba = tree.resolve("F", "K").matrix();
  CHECK((ab * ba - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((tree.resolve("F", "K").matrix() - tree.resolve("K", "F").inverse().matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("consistency_error: constructed-consistent cycle is identity") {
  std::mt19937_64 rng(109);
  TransformTree tree = study_tree(rng);
  // Derive the F -> K check edge from the spanning path, then close the loop.
  tree.add_edge("F", "K", tree.resolve("F", "K"), EdgeRole::check);
  const RigidTransform e = tree.consistency_error({"C", "K", "F"});
  CHECK((e.matrix() - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  const auto mag = error_magnitude(e);
  CHECK(mag.theta_deg < 1e-10);
  CHECK(mag.t_norm_mm < 1e-10);

  // Closed form with explicit repetition of the first frame also works.
  const RigidTransform e2 = tree.consistency_error({"C", "K", "F", "C"});
  CHECK((e2.matrix() - e.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("consistency_error: injected translation is reported exactly") {
  // Identity rotations: a 0.5 mm perturbation on one edge must surface as
  // t_norm exactly 0.5.
  TransformTree tree;
  tree.add_frame("C");
  tree.add_frame("F");
  tree.add_frame("K");
  tree.add_edge("C", "K", RigidTransform::from_translation(Vec3(4, 0, 1)),
                EdgeRole::spanning);
  tree.add_edge("C", "F", RigidTransform::from_translation(Vec3(-2, 3, 0)),
                EdgeRole::spanning);
  const RigidTransform clean_fk = tree.resolve("F", "K");
  const RigidTransform perturbed(
      clean_fk.rotation(), clean_fk.translation() + Vec3(0.5, 0, 0));
  tree.add_edge("F", "K", perturbed, EdgeRole::check);

  const RigidTransform e = tree.consistency_error({"C", "K", "F"});
  const auto mag = error_magnitude(e);
  CHECK(mag.theta_deg == 0.0);
  CHECK(std::abs(mag.t_norm_mm - 0.5) < 1e-9);
}

TEST_CASE("consistency_error: absent edge") {
  std::mt19937_64 rng(113);
  TransformTree tree = study_tree(rng);
  CHECK(code_of([&] { (void)tree.consistency_error({"C", "K", "F"}); }) ==
        ErrorCode::missing_edge);
}

TEST_CASE("loop closure over resolve-derived check edges") {
  // Chain of five frames; every extra edge derived from resolve must close
  // any cycle to identity.
  std::mt19937_64 rng(127);
  TransformTree tree;
  const std::vector<FrameId> names = {"a", "b", "c", "d", "e"};
  for (const auto& n : names) tree.add_frame(n);
  for (size_t i = 1; i < names.size(); ++i) {
    tree.add_edge(names[i - 1], names[i], random_transform(rng), EdgeRole::spanning);
  }
  tree.add_edge("a", "c", tree.resolve("a", "c"), EdgeRole::check);
  tree.add_edge("b", "e", tree.resolve("b", "e"), EdgeRole::check);
  for (const auto& cycle : std::vector<std::vector<FrameId>>{
           {"a", "b", "c"}, {"b", "c", "d", "e"}, {"a", "c", "d", "e", "b"}}) {
    const auto mag = error_magnitude(tree.consistency_error(cycle));
    CHECK(mag.theta_deg * kRadPerDeg < 1e-9);
    CHECK(mag.t_norm_mm < 1e-9);
  }
}

TEST_CASE("error_magnitude: trivial and analytic") {
  const auto zero = error_magnitude(RigidTransform());
  CHECK(zero.theta_deg == 0.0);
  CHECK(zero.t_norm_mm == 0.0);

  const auto rz2 = error_magnitude(
      RigidTransform::from_rotation(rot_z(2.0 * kRadPerDeg)));
  CHECK(std::abs(rz2.theta_deg - 2.0) < 1e-12);
  CHECK(rz2.t_norm_mm == 0.0);

  const RigidTransform mean(study_mean_rotation(), study_mean_translation());
  const auto m = error_magnitude(mean);
  CHECK(std::abs(m.theta_deg - 1.3182) < 1e-3);
  CHECK(std::abs(m.t_norm_mm - 2.0124) < 1e-3);
}

TEST_CASE("conjugate_motion: trivial cases and analytic conjugation") {
  MotionTrack track;
  track.frame = "F";
  std::mt19937_64 rng(131);
  for (int i = 0; i < 5; ++i) {
    track.samples.emplace_back(0.1 * i, random_transform(rng));
  }

  const MotionTrack same = conjugate_motion(track, RigidTransform(), "F");
  for (size_t i = 0; i < track.samples.size(); ++i) {
    CHECK((same.samples[i].second.matrix() - track.samples[i].second.matrix())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }

  MotionTrack still;
  still.frame = "F";
  still.samples.emplace_back(0.0, RigidTransform());
  const MotionTrack conj_still =
      conjugate_motion(still, random_transform(rng), "K");
  CHECK((conj_still.samples[0].second.matrix() - Mat4::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // Rz(30 deg) conjugated by Rx(90 deg): rotation moves to the y axis.
  MotionTrack rzt;
  rzt.frame = "F";
  rzt.samples.emplace_back(0.0,
                           RigidTransform::from_rotation(rot_z(30.0 * kRadPerDeg)));
  const RigidTransform bridge = RigidTransform::from_rotation(rot_x(kPi / 2.0));
  const MotionTrack conj = conjugate_motion(rzt, bridge, "K");
  const Vec3 r = log_rotation(conj.samples[0].second.rotation());
  CHECK(std::abs(r.norm() * kDegPerRad - 30.0) < 1e-12);
  // Rx(90)^-1 z = -y... the axis must be along y up to the known sign.
  const Vec3 axis = r / r.norm();
  CHECK(std::abs(std::abs(axis.y()) - 1.0) < 1e-12);
  CHECK(std::abs(axis.x()) < 1e-12);
  CHECK(std::abs(axis.z()) < 1e-12);
}

TEST_CASE("conjugation preserves rotation angle for random tracks") {
  std::mt19937_64 rng(137);
  for (int i = 0; i < 100; ++i) {
    const RigidTransform t = random_transform(rng);
    const RigidTransform bridge = random_transform(rng);
    MotionTrack track{"F", {{0.0, t}}};
    const MotionTrack conj = conjugate_motion(track, bridge, "K");
    const double theta = log_rotation(t.rotation()).norm();
    const double theta_conj = log_rotation(conj.samples[0].second.rotation()).norm();
    CHECK(std::abs(theta - theta_conj) < 1e-9);
  }
}

TEST_CASE("tree JSON and motion CSV round-trips") {
  std::mt19937_64 rng(139);
  TransformTree tree = study_tree(rng);
  tree.add_edge("F", "K", random_transform(rng), EdgeRole::check, "direct");

  const auto dir = std::filesystem::temp_directory_path() / "jawkit_tree_test";
  std::filesystem::create_directories(dir);
  const auto tree_path = dir / "tree.json";
  save_tree_json(tree_path, tree);
  const TransformTree loaded = load_tree_json(tree_path);
  REQUIRE(loaded.frames().size() == 3);
  REQUIRE(loaded.edges().size() == 3);
  for (size_t i = 0; i < tree.edges().size(); ++i) {
    CHECK((loaded.edges()[i].transform.matrix() - tree.edges()[i].transform.matrix())
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK(loaded.edges()[i].role == tree.edges()[i].role);
  }

  MotionTrack track{"F", {}};
  for (int i = 0; i < 4; ++i) track.samples.emplace_back(0.25 * i, random_transform(rng));
  const auto motion_path = dir / "motion.csv";
  save_motion_csv(motion_path, track);
  const MotionTrack back = load_motion_csv(motion_path, "F");
  REQUIRE(back.samples.size() == track.samples.size());
  for (size_t i = 0; i < track.samples.size(); ++i) {
    CHECK(back.samples[i].first == track.samples[i].first);
    CHECK((back.samples[i].second.matrix() - track.samples[i].second.matrix())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }

  CHECK_THROWS_AS((void)load_tree_json(dir / "nope.json"), Error);
  std::filesystem::remove_all(dir);
}
