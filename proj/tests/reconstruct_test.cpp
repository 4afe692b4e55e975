#include <gtest/gtest.h>

#include <cmath>

#include "plr/curve.hpp"
#include "plr/presets.hpp"
#include "plr/reconstruct.hpp"
#include "testing_util.hpp"

using plr::GridSpec;
using plr::ReconstructionFields;
using plr::Vec3;

namespace {

ReconstructionFields static_circle_fields() {
  ReconstructionFields f;
  const auto one = [](double, double) { return 1.0; };
  const auto zero = [](double, double) { return 0.0; };
  f.ell = one;
  f.kappa = one;
  f.tau = zero;
  f.a = zero;
  f.b = zero;
  f.c = zero;
  f.m21 = zero;
  f.m31 = zero;
  f.m32 = zero;
  return f;
}

TEST(Reconstruct, StaticUnitCircle) {
  const auto fields = static_circle_fields();
  // sample step 1e-3: the curvature recovery is then good to ~h^2/4
  const auto s = GridSpec::linspace(0.0, 0.6, 601);
  const auto t = GridSpec::linspace(0.0, 1.0, 3);
  plr::ReconstructOptions opts;
  opts.max_step = 1e-3;
  const auto result = plr::reconstruct_curve(fields, s, t, opts);
  EXPECT_LE(result.path_defect, 1e-10);

  // gamma(s) = (sin s, 1 - cos s, 0): unit circle centered at (0, 1, 0)
  const Vec3 center{0.0, 1.0, 0.0};
  for (std::size_t is = 0; is < s.size(); is += 40) {
    EXPECT_NEAR(plr::norm(result.grid.at(is, 0) - center), 1.0, 1e-9);
    // static evolution: no t dependence
    EXPECT_LE(plr::norm(result.grid.at(is, 2) - result.grid.at(is, 0)), 1e-9);
  }
  std::vector<Vec3> line(result.grid.points.begin(), result.grid.points.begin() + s.size());
  const auto fr = plr::frenet_apparatus(s, line);
  int checked = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!fr.valid[i]) continue;
    EXPECT_NEAR(fr.kappa[i], 1.0, 1e-6);
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(Reconstruct, DateSolitonRoundTrip) {
  const auto p = plr::preset("B");
  const plr::SolitonProbe probe(p);
  const auto fields = plr::date_reconstruction_fields(probe);
  const auto s = GridSpec::linspace(-2.0, 2.0, 41);
  const auto t = GridSpec::linspace(-0.5, 0.5, 3);

  std::vector<Vec3> target;
  for (double tt : t)
    for (double ss : s) target.push_back(plr::nsoliton_curve(p, ss, tt));

  const auto deviation = [&](double step) {
    plr::ReconstructOptions opts;
    opts.max_step = step;
    opts.path_tolerance = 1e-4;
    const auto result = plr::reconstruct_curve(fields, s, t, opts);
    return plrtest::alignment_residual(result.grid.points, target);
  };
  const double dev_coarse = deviation(0.02);
  const double dev_fine = deviation(0.01);
  EXPECT_LE(dev_fine, 1e-4);  // well under the step^2 = 1e-4 bound
  EXPECT_GE(dev_coarse / dev_fine, 3.5);
}

TEST(Reconstruct, PathIndependenceForSolutionData) {
  const auto p = plr::preset("A");
  const plr::SolitonProbe probe(p);
  const auto fields = plr::date_reconstruction_fields(probe);
  plr::ReconstructOptions opts;
  opts.max_step = 0.01;
  opts.path_tolerance = 1e-6;
  const auto result = plr::reconstruct_curve(fields, GridSpec::linspace(-1.5, 1.5, 31),
                                             GridSpec::linspace(-0.4, 0.4, 3), opts);
  EXPECT_LE(result.path_defect, 1e-6);
}

TEST(Reconstruct, IncompatibleFieldsRejected) {
  const auto p = plr::preset("A");
  const plr::SolitonProbe probe(p);
  auto fields = plr::date_reconstruction_fields(probe);
  // break compatibility: wrong rotation speed in the deformation part
  fields.m32 = [&probe](double s, double t) {
    return 1.5 * (-probe.kappa_t_s(s, t) - probe.coeff_c(s, t) * probe.tau(s, t)) /
           probe.kappa(s, t);
  };
  plr::ReconstructOptions opts;
  opts.max_step = 0.01;
  opts.path_tolerance = 1e-6;
  EXPECT_THROW(plr::reconstruct_curve(fields, GridSpec::linspace(-1.5, 1.5, 31),
                                      GridSpec::linspace(-0.4, 0.4, 3), opts),
               plr::ConsistencyError);
}

TEST(Reconstruct, DegenerateLatticeRejected) {
  const auto fields = static_circle_fields();
  EXPECT_THROW(plr::reconstruct_curve(fields, {0.0}, {0.0, 1.0}), plr::ValidationError);
}

}  // namespace
