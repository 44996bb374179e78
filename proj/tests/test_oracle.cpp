#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "conical/errors.hpp"
#include "conical/generator.hpp"
#include "conical/oracle.hpp"
#include "support/fixtures.hpp"

using namespace conical;
using fixtures::column;
using fixtures::mat;
using fixtures::vec;

namespace {

bool contains(const std::vector<Vector>& pts, const Vector& x, double dist) {
  return std::any_of(pts.begin(), pts.end(), [&](const Vector& p) { return max_abs(Vector(p - x)) <= dist; });
}

}  // namespace

TEST_CASE("vertex_enumerate examples") {
  const std::vector<Vector> iv = oracle::vertex_enumerate(column({1, -1}), vec({2, -1}));
  CHECK(iv.size() == 2);
  CHECK(contains(iv, vec({1}), 1e-12));
  CHECK(contains(iv, vec({2}), 1e-12));

  const Matrix square = mat({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(oracle::vertex_enumerate(square, vec({1, 1, 0, 0})).size() == 4);

  CHECK_THROWS_AS(oracle::vertex_enumerate(Matrix::Zero(17, 2), Vector::Zero(17)), DimensionTooLarge);
  CHECK_THROWS_AS(oracle::vertex_enumerate(Matrix::Zero(10, 9), Vector::Zero(10)), DimensionTooLarge);
}

TEST_CASE("vertex_enumerate recovers the corners of rotated boxes") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> width(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index m = 1 + trial % 4;
    Matrix a(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) a(i, j) = normal(rng);
    }
    const Matrix r = Eigen::HouseholderQR<Matrix>(a).householderQ();
    Vector lo(m), hi(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      lo(i) = normal(rng);
      hi(i) = lo(i) + width(rng);
    }
    Matrix g(2 * m, m);
    g.topRows(m) = r;
    g.bottomRows(m) = -r;
    Vector v(2 * m);
    v.head(m) = hi;
    v.tail(m) = -lo;
    const std::vector<Vector> got = oracle::vertex_enumerate(g, v);
    CHECK(got.size() == (std::size_t{1} << m));
    for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
      Vector corner(m);
      for (Eigen::Index i = 0; i < m; ++i) corner(i) = (bits >> i) & 1 ? hi(i) : lo(i);
      CHECK(contains(got, r.transpose() * corner, 1e-8));
    }
  }
}

TEST_CASE("property: every enumerated vertex is feasible") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto [n, m] = fixtures::suite_dims(seed);
    const io::ProblemFile f = gen::generate_instance(seed, n, m, gen::InstanceKind::Feasible);
    const std::vector<Vector> vs = oracle::vertex_enumerate(f.g, f.v);
    CHECK_FALSE(vs.empty());
    for (const Vector& x : vs) CHECK((f.v - f.g * x).minCoeff() >= -1e-8);
  }
}

TEST_CASE("oracle_solve examples") {
  const oracle::OracleVerdict iv = oracle::oracle_solve({column({1, -1}), vec({2, -1}), vec({1})});
  CHECK(iv.feasible);
  REQUIRE(iv.optimum);
  CHECK(*iv.optimum == doctest::Approx(2.0));
  REQUIRE(iv.argmax_vertices.size() == 1);
  CHECK(iv.argmax_vertices[0](0) == doctest::Approx(2.0));

  const oracle::OracleVerdict empty = oracle::oracle_solve({column({1, -1}), vec({0, -1}), vec({1})});
  CHECK_FALSE(empty.feasible);
  CHECK_FALSE(empty.optimum);

  CHECK_FALSE(oracle::oracle_feasibility(column({1, -1}), vec({0, -1})).feasible);
  CHECK(oracle::oracle_feasibility(column({1, -1}), vec({2, -1})).feasible);
}

TEST_CASE("rank-deficient G is handled in the row space") {
  // Both columns equal: x1 + x2 in [1, 2].
  const Matrix g = mat({{1, 1}, {-1, -1}});
  const std::vector<Vector> vs = oracle::vertex_enumerate(g, vec({2, -1}));
  CHECK(vs.size() == 2);
  CHECK(contains(vs, vec({0.5, 0.5}), 1e-12));
  CHECK(contains(vs, vec({1.0, 1.0}), 1e-12));
  const oracle::OracleVerdict o = oracle::oracle_solve({g, vec({2, -1}), vec({1, 1})});
  REQUIRE(o.optimum);
  CHECK(*o.optimum == doctest::Approx(2.0));
  CHECK_FALSE(oracle::oracle_solve({g, vec({2, -1}), vec({1, 0})}).optimum);
}

TEST_CASE("hull_member examples") {
  const std::vector<Vector> seg{vec({0, 0}), vec({2, 2})};
  CHECK(oracle::hull_member(vec({1, 1}), seg, 1e-9));
  CHECK_FALSE(oracle::hull_member(vec({3, 3}), seg, 1e-9));
  CHECK_FALSE(oracle::hull_member(vec({1, 0}), seg, 1e-9));
  for (const Vector& p : seg) CHECK(oracle::hull_member(p, seg, 1e-12));

  const std::vector<Vector> tri{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})};
  CHECK(oracle::hull_member(vec({0.2, 0.3, 0.5}), tri, 1e-9));
  CHECK_FALSE(oracle::hull_member(vec({0.5, 0.5, 0.5}), tri, 1e-9));
}

TEST_CASE("nnls satisfies the optimality conditions") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index r = 2 + trial % 6;
    const Eigen::Index c = 1 + trial % 5;
    Matrix a(r, c);
    Vector b(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      b(i) = normal(rng);
      for (Eigen::Index j = 0; j < c; ++j) a(i, j) = normal(rng);
    }
    const Vector w = oracle::nnls(a, b);
    const Vector grad = a.transpose() * (a * w - b);
    CHECK(w.minCoeff() >= 0.0);
    for (Eigen::Index j = 0; j < c; ++j) {
      CHECK(grad(j) >= -1e-9);
      if (w(j) > 1e-12) CHECK(std::abs(grad(j)) <= 1e-9);
    }
  }
}
