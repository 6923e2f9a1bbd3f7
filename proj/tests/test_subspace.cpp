#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace linrel;
using testsup::known_matrix;
using testsup::KnownMatrix;
using testsup::span_residual;

namespace {
constexpr double kTight = 1e-12;
constexpr double kLoose = 1e-10;
}  // namespace

TEST_CASE("orthonormalize recovers the rank of a factored matrix") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = rng.uniform_int(1, 9);
    const int cols = rng.uniform_int(1, 9);
    const int rank = rng.uniform_int(0, std::min(rows, cols));
    const KnownMatrix k = known_matrix(rng, rows, cols, rank);

    const Subspace s = orthonormalize(k.m, rows);
    CHECK(s.rank() == rank);
    CHECK(s.ambient_dim() == rows);
    if (s.rank() > 0) {
      const Eigen::MatrixXd gram = s.basis().transpose() * s.basis();
      CHECK((gram - Eigen::MatrixXd::Identity(rank, rank)).norm() < kTight);
    }
    // same span as the factor that generated the range
    CHECK(span_residual(k.range, s) < kLoose);
    CHECK(span_residual(s.basis(), orthonormalize(k.range, rows)) < kLoose);
  }
}

TEST_CASE("orthonormalize edge cases") {
  CHECK(orthonormalize(Eigen::MatrixXd(3, 0), 3).is_zero());
  CHECK(orthonormalize(Eigen::MatrixXd::Zero(3, 2), 3).is_zero());
  CHECK(orthonormalize(Eigen::MatrixXd(0, 0), 0).ambient_dim() == 0);
  CHECK_THROWS_AS(orthonormalize(Eigen::MatrixXd::Identity(3, 3), 4),
                  ShapeError);
  CHECK_THROWS_AS(orthonormalize(Eigen::MatrixXd(2, 2), -1), ShapeError);

  // vector-collection overload
  std::vector<Eigen::VectorXd> vecs{Eigen::Vector3d(1, 0, 0),
                                    Eigen::Vector3d(1, 1, 0)};
  CHECK(orthonormalize(vecs, 3).rank() == 2);
  vecs.push_back(Eigen::Vector2d(1, 1));
  CHECK_THROWS_AS(orthonormalize(vecs, 3), ShapeError);
}

TEST_CASE("scale floor reads uniformly tiny slices as zero") {
  // a noise-level matrix: relative to itself it has rank, relative to the
  // unit scale of a parent orthonormal frame it is {0}
  const Eigen::MatrixXd noise = 1e-16 * Eigen::MatrixXd::Identity(4, 2);
  CHECK(orthonormalize(noise, 4).rank() == 2);
  CHECK(orthonormalize(noise, 4, {}, 1.0).rank() == 0);
}

TEST_CASE("from_orthonormal enforces the invariant") {
  CHECK_THROWS_AS(
      Subspace::from_orthonormal(Eigen::MatrixXd::Identity(2, 2) * 1.5),
      PreconditionError);
  Eigen::MatrixXd wide(2, 3);
  wide.setZero();
  CHECK_THROWS_AS(Subspace::from_orthonormal(wide), ShapeError);
  CHECK_THROWS_AS(Subspace::zero(-1), ShapeError);
  CHECK(Subspace::full(3).is_full());
  CHECK(Subspace::zero(3).is_zero());
  CHECK(Subspace::full(3).projector().isApprox(Eigen::MatrixXd::Identity(3, 3)));
  CHECK(Subspace::zero(3).projector().norm() == 0.0);
}

TEST_CASE("complement is an orthogonal involution") {
  Rng rng(202);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(1, 10);
    const Subspace s = random_subspace(rng, n);
    const Subspace c = complement(s);
    CHECK(s.rank() + c.rank() == n);
    if (s.rank() > 0 && c.rank() > 0)
      CHECK((s.basis().transpose() * c.basis()).cwiseAbs().maxCoeff() < kTight);
    CHECK(deviation(complement(c), s) < kTight);
  }
  CHECK(complement(Subspace::zero(4)).is_full());
  CHECK(complement(Subspace::full(4)).is_zero());
}

TEST_CASE("sum and intersect against the De Morgan route") {
  Rng rng(303);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(1, 9);
    const Subspace s1 = random_subspace(rng, n);
    const Subspace s2 = random_subspace(rng, n);
    const Subspace meet = intersect(s1, s2);
    const Subspace join = sum(s1, s2);

    CHECK(join.rank() == s1.rank() + s2.rank() - meet.rank());
    // independent oracle: S1 ∩ S2 = (S1^perp + S2^perp)^perp
    const Subspace demorgan =
        complement(sum(complement(s1), complement(s2)));
    CHECK(deviation(meet, demorgan) < kLoose);
    CHECK(containment_residual(meet, s1) < kLoose);
    CHECK(containment_residual(meet, s2) < kLoose);
    CHECK(containment_residual(s1, join) < kLoose);
    CHECK(containment_residual(s2, join) < kLoose);
  }
}

TEST_CASE("intersect recovers a planted common core") {
  Rng rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    const int core = rng.uniform_int(0, 2);
    const int extra1 = rng.uniform_int(0, 2);
    const int extra2 = rng.uniform_int(0, 2);
    const int n = core + extra1 + extra2 + rng.uniform_int(1, 3);
    const Eigen::MatrixXd basis =
        random_subspace(rng, n, core + extra1 + extra2).basis();

    Eigen::MatrixXd m1(n, core + extra1), m2(n, core + extra2);
    m1 << basis.leftCols(core), basis.middleCols(core, extra1);
    m2 << basis.leftCols(core), basis.rightCols(extra2);
    const Subspace s1 = orthonormalize(m1, n);
    const Subspace s2 = orthonormalize(m2, n);
    const Subspace meet = intersect(s1, s2);
    CHECK(meet.rank() == core);
    CHECK(span_residual(basis.leftCols(core), meet) < kLoose);
  }

  // axis-aligned sanity case
  const Subspace xy = orthonormalize(Eigen::MatrixXd::Identity(4, 2), 4);
  Eigen::MatrixXd yz = Eigen::MatrixXd::Zero(4, 2);
  yz(1, 0) = 1;
  yz(2, 1) = 1;
  const Subspace meet = intersect(xy, orthonormalize(yz, 4));
  REQUIRE(meet.rank() == 1);
  CHECK(std::abs(std::abs(meet.basis()(1, 0)) - 1.0) < kTight);
}

TEST_CASE("containment and compare") {
  Rng rng(505);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const Subspace big = random_subspace(rng, n, rng.uniform_int(1, n));
    const Subspace small = random_subspace_of(rng, big);

    CHECK(containment_residual(small, big) < kLoose);
    if (small.rank() < big.rank()) {
      CHECK(compare(small, big) == Containment::s1_in_s2);
      CHECK(compare(big, small) == Containment::s2_in_s1);
    } else {
      CHECK(compare(small, big) == Containment::equal);
    }
  }

  const Subspace x = orthonormalize(Eigen::Vector2d(1, 0), 2);
  const Subspace y = orthonormalize(Eigen::Vector2d(0, 1), 2);
  CHECK(compare(x, y) == Containment::incomparable);
  CHECK(deviation(x, y) == Catch::Approx(std::numbers::pi / 2));
  CHECK(containment_residual(Subspace::zero(2), x) == 0.0);
  CHECK(containment_residual(x, Subspace::zero(2)) ==
        Catch::Approx(std::numbers::pi / 2));
  CHECK(to_string(Containment::equal) == std::string("equal"));
  CHECK_THROWS_AS(compare(x, Subspace::zero(3)), ShapeError);
}

TEST_CASE("deviation resolves tiny angles that cosines cannot") {
  // two lines an angle 3e-9 apart: equality must be rejected at angle_abs
  // 1e-9 and accepted at 1e-8... the residual itself must be accurate
  const double theta = 3e-9;
  const Subspace a = orthonormalize(Eigen::Vector2d(1, 0), 2);
  const Subspace b =
      orthonormalize(Eigen::Vector2d(std::cos(theta), std::sin(theta)), 2);
  CHECK(deviation(a, b) == Catch::Approx(theta).epsilon(1e-6));
}

TEST_CASE("product stacks factors") {
  Rng rng(606);
  const Subspace s1 = random_subspace(rng, 4, 2);
  const Subspace s2 = random_subspace(rng, 3, 1);
  const Subspace p = product(s1, s2);
  CHECK(p.ambient_dim() == 7);
  CHECK(p.rank() == 3);
  // top block spans s1 x {0}, bottom block {0} x s2
  Eigen::MatrixXd top = p.basis().topRows(4);
  Eigen::MatrixXd bottom = p.basis().bottomRows(3);
  CHECK(span_residual(top, s1) < kTight);
  CHECK(span_residual(bottom, s2) < kTight);
  CHECK(deviation(product(Subspace::zero(2), Subspace::zero(3)),
                  Subspace::zero(5)) == 0.0);
}

TEST_CASE("map_image") {
  Rng rng(707);
  const KnownMatrix k = known_matrix(rng, 5, 4, 2);
  // image of the full space under m is ran m
  const Subspace img = map_image(k.m, Subspace::full(4));
  CHECK(img.rank() == 2);
  CHECK(span_residual(k.range, img) < kLoose);
  // image of ker m is {0}
  const Subspace ker =
      complement(Subspace::from_orthonormal(k.rowspan));
  CHECK(map_image(k.m, ker, {}, 1.0).is_zero());
  CHECK_THROWS_AS(map_image(k.m, Subspace::full(5)), ShapeError);
}

TEST_CASE("every stored subspace is its own double complement") {
  Rng rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    const Subspace s = random_subspace(rng, rng.uniform_int(1, 10));
    CHECK(closedness_residual(s) < kTight);
  }
}

TEST_CASE("principal angles of a planted rotation") {
  const double theta = 0.3;
  Eigen::MatrixXd b1 = Eigen::MatrixXd::Zero(3, 2);
  b1(0, 0) = 1;
  b1(1, 1) = 1;
  Eigen::MatrixXd b2 = Eigen::MatrixXd::Zero(3, 2);
  b2(0, 0) = 1;
  b2(1, 1) = std::cos(theta);
  b2(2, 1) = std::sin(theta);
  const Subspace s1 = Subspace::from_orthonormal(b1);
  const Subspace s2 = Subspace::from_orthonormal(b2);

  const PrincipalAngles pa = principal_angles(s1, s2);
  REQUIRE(pa.angles.size() == 2);
  CHECK(pa.angles(0) == Catch::Approx(0.0).margin(1e-7));
  CHECK(pa.angles(1) == Catch::Approx(theta));
  CHECK(pa.min_gap == Catch::Approx(0.0).margin(1e-7));
  // one shared direction, so the Friedrichs cosine skips a single zero angle
  CHECK(pa.cos_friedrichs == Catch::Approx(std::cos(theta)));

  // identical spans: everything is intersection, cosine convention is 0
  CHECK(principal_angles(s1, s1).cos_friedrichs == 0.0);
  // orthogonal pair
  const Subspace z = orthonormalize(Eigen::Vector3d(0, 0, 1), 3);
  CHECK(principal_angles(s1, z).cos_friedrichs ==
        Catch::Approx(0.0).margin(1e-12));
  CHECK(principal_angles(s1, z).min_gap ==
        Catch::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(principal_angles(s1, Subspace::zero(3)),
                  PreconditionError);
}
