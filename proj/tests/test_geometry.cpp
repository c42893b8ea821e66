#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "phc/errors.hpp"
#include "phc/geometry.hpp"

using namespace phc;

TEST_CASE("interval mesh nodes and wrap-around") {
  IntervalMesh open(0.0, 2.0, 4);
  CHECK(open.n_nodes() == 5);
  CHECK(open.node(4) == doctest::Approx(2.0));
  CHECK(open.cell_nodes(3) == std::array<std::size_t, 2>{3, 4});

  IntervalMesh ring(0.0, 1.0, 4, true);
  CHECK(ring.n_nodes() == 4);
  CHECK(ring.cell_nodes(3) == std::array<std::size_t, 2>{3, 0});
  CHECK(ring.refined().n_cells() == 8);
  CHECK(ring.refined().periodic());
}

TEST_CASE("mesh matching is node for node") {
  CHECK(IntervalMesh(0, 1, 8).matches(IntervalMesh(0, 1, 8)));
  CHECK_FALSE(IntervalMesh(0, 1, 8).matches(IntervalMesh(0, 1, 16)));
  CHECK_FALSE(IntervalMesh(0, 1, 8).matches(IntervalMesh(0, 1.5, 8)));
}

TEST_CASE("solid domain counts") {
  const auto d = build_solid_domain(0, 1, 1, 0.1, 4, 4, 2);
  CHECK(d.n_cells() == 32);
  const auto face = d.coupling_face();
  CHECK(face.gamma1().n_cells() == 4);
  CHECK(face.gamma2().n_cells() == 4);
  CHECK(face.n_cells() == 16);
  CHECK(d.coupling_face_nodes().size() == face.n_nodes());
  CHECK(d.external_face_nodes().size() == face.n_nodes());
}

TEST_CASE("coupling face measure is the product measure") {
  const auto d = build_solid_domain(0, 1, 2 * std::numbers::pi, 0.1, 8, 8, 2);
  CHECK(std::abs(d.coupling_face().measure() - 2 * std::numbers::pi) < 1e-12);
  CHECK(std::abs(d.coupling_face().measure2() - 2 * std::numbers::pi) < 1e-12);
}

TEST_CASE("wall layer shares indices with the coupling face") {
  const auto d = build_solid_domain(0, 1, 1, 0.2, 3, 5, 2);
  const auto face = d.coupling_face();
  const auto wall = d.coupling_face_nodes();
  for (std::size_t i = 0; i < face.gamma1().n_nodes(); ++i)
    for (std::size_t j = 0; j < face.gamma2().n_nodes(); ++j) {
      CHECK(d.index(i, j, 0) == face.index(i, j));
      CHECK(wall[face.index(i, j)] == face.index(i, j));
    }
  const auto ext = d.external_face_nodes();
  for (auto n : ext) CHECK(d.node(n)[2] == doctest::Approx(0.2));
}

TEST_CASE("refinement keeps measures") {
  const auto d = build_solid_domain(-1, 2, 3, 0.5, 3, 4, 2);
  const auto r = build_solid_domain(-1, 2, 3, 0.5, 6, 8, 4);
  CHECK(std::abs(d.volume() - r.volume()) <= 1e-12 * d.volume());
  CHECK(std::abs(d.coupling_face().measure() - r.coupling_face().measure()) <= 1e-12 * d.coupling_face().measure());
}

TEST_CASE("invalid domains name the parameter") {
  try {
    build_solid_domain(0, 0, 1, 1, 1, 1, 1);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("axial extent non-positive") != std::string::npos);
  }
  CHECK_THROWS_AS(build_solid_domain(0, 1, 0, 1, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(build_solid_domain(0, 1, 1, -1, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(build_solid_domain(0, 1, 1, 1, 0, 1, 1), DomainError);
  CHECK_THROWS_AS(IntervalMesh(0, 1, 0), DomainError);
}
