#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ffl/demo_ellipse.hpp"
#include "ffl/render.hpp"

using namespace ffl;

TEST_CASE("demo passes at 1e-9 for both sample counts") {
  for (long n : {100L, 10000L}) {
    EllipseDemoConfig cfg;
    cfg.samples = n;
    EllipseDemoReport rep = run_ellipse_demo(cfg);
    CHECK(rep.pass);
    CHECK(rep.max_deviation < 1e-9);
    CHECK(rep.max_denominator_rel_error < 1e-9);
  }
}

TEST_CASE("theta = 0 lies on the identity branch and maps exactly") {
  EllipseDemoConfig cfg;
  cfg.samples = 1;  // only theta = 0, i.e. z = 3
  EllipseDemoReport rep = run_ellipse_demo(cfg);
  CHECK(rep.max_deviation == 0.0);
}

TEST_CASE("off-figure probe shows g is not globally the identity") {
  EllipseDemoConfig cfg;
  cfg.samples = 16;
  EllipseDemoReport rep = run_ellipse_demo(cfg);
  CHECK(rep.probe_differs);
  // g(-1 + i/2) = 36 z / 40, so the deviation is 0.1 * ||z||.
  double expected = 0.1 * std::sqrt(1.0 / 9.0 + 4.0 * 0.25);
  CHECK(std::abs(rep.probe_deviation - expected) < 1e-12);
}

TEST_CASE("forcing the inversion branch still fixes the whole figure") {
  EllipseDemoConfig cfg;
  cfg.samples = 4096;
  cfg.policy = EllipseDemoConfig::QuadrantPolicy::ForceInversion;
  EllipseDemoReport rep = run_ellipse_demo(cfg);
  CHECK(rep.pass);
  CHECK(rep.policy == "force-inversion");
}

TEST_CASE("demo validates its configuration") {
  EllipseDemoConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(run_ellipse_demo(cfg), ParameterError);
  cfg.samples = 10;
  cfg.eps = 0.0;
  CHECK_THROWS_AS(run_ellipse_demo(cfg), ParameterError);
}

TEST_CASE("demo report renders deterministically") {
  EllipseDemoConfig cfg;
  cfg.samples = 128;
  EllipseDemoReport a = run_ellipse_demo(cfg);
  EllipseDemoReport b = run_ellipse_demo(cfg);
  CHECK(render_text(a) == render_text(b));
  CHECK(to_json(a).dump() == to_json(b).dump());
}
