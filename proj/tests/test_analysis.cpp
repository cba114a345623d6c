#include <cmath>
#include <cstddef>

#include "bousslyap/analysis.hpp"
#include "bousslyap/errors.hpp"
#include "bousslyap/stepper.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bousslyap;

TEST_CASE("truncation: constants annihilate everything") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  const Profile p = make_profile("constant", 2.5, g);
  const auto [r1, r2] = truncation_residual(p, g, m, 0.4);
  CHECK(r1 <= 1e-12);
  CHECK(r2 <= 1e-12);
}

TEST_CASE("truncation: affine profiles cancel to rounding") {
  const GridSpec g = build_grid(0.0, 1.0, 16, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  const Profile p = make_profile("affine", 1.0, g, {{"ax", 0.7}, {"by", -0.4}});
  const auto [r1, r2] = truncation_residual(p, g, m, 0.3);
  CHECK(r1 <= 1e-10);
  CHECK(r2 <= 1e-10);
}

TEST_CASE("truncation: profile without the time extension is rejected") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  Profile bare;
  bare.name = "bare";
  bare.u0 = [](double, double) { return 0.0; };
  bare.phi = [](double, double) { return 0.0; };
  CHECK_THROWS_AS(truncation_residual(bare, g, m, 0.5), ValidationError);
}

TEST_CASE("truncation residuals drop ~4x when the grid halves") {
  const Profile p16 = make_profile(
      "cosine_decay", 1.0,
      build_grid(0.0, 1.0, 16, 0.25, 1.0, 1.0, 0.0), {});
  const GridSpec g16 = build_grid(0.0, 1.0, 16, 0.25, 1.0, 1.0, 0.0);
  const GridSpec g32 = build_grid(0.0, 1.0, 32, 0.25, 1.0, 1.0, 0.0);
  const auto [a1, a2] =
      truncation_residual(p16, g16, build_matrices(g16, false), 0.5);
  const auto [b1, b2] =
      truncation_residual(p16, g32, build_matrices(g32, false), 0.5);
  CHECK(a1 / b1 >= 3.2);
  CHECK(a1 / b1 <= 4.8);
  CHECK(a2 / b2 >= 3.2);
  CHECK(a2 / b2 <= 4.8);
}

TEST_CASE("consistency study: orders near two, sentinel for degenerate "
          "profiles") {
  const GridSpec base = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const Profile cosine = make_profile("cosine_decay", 0.5, base);
  const RefinementStudy study = consistency_study(cosine, base, 3, 0.5);
  REQUIRE(study.levels.size() == 3);
  REQUIRE(study.orders_eq1.size() == 2);
  CHECK_FALSE(study.all_zero);
  for (const double o : study.orders_eq1) CHECK(o >= 1.7);
  for (const double o : study.orders_eq2) CHECK(o >= 1.7);

  const RefinementStudy flat =
      consistency_study(make_profile("constant", 1.0, base), base, 2, 0.5);
  CHECK(flat.all_zero);
  CHECK(flat.orders_eq1.empty());

  const RefinementStudy aff =
      consistency_study(make_profile("affine", 1.0, base), base, 2, 0.5);
  CHECK(aff.all_zero);

  CHECK_THROWS_AS(consistency_study(cosine, base, 1, 0.5), ValidationError);
}

TEST_CASE("operator report: alpha=0 is the identity operator") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.0, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  const OperatorReport rep = operator_report(g, m, 10, 1234);
  CHECK(rep.deviation == 0.0);
  CHECK(rep.min_lwa == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.max_lwa == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.lwa_within_band);
}

TEST_CASE("operator report: sampled norms respect the deviation band") {
  const GridSpec g = build_grid(0.0, 1.0, 16, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  const OperatorReport rep = operator_report(g, m, 40, 987);
  CHECK(rep.lwa_within_band);
  CHECK(rep.min_lwa >= 1.0 - rep.deviation - 1e-10);
  CHECK(rep.max_lwa <= 1.0 + rep.deviation + 1e-10);
  // Honest triangle bound on the sampled values; the displayed bound_ltbb
  // uses ||R||^2 -> 4 and is only claimed once it sits under 6.
  CHECK(rep.max_ltbb <=
        inf_norm(m.B_tilde) + inf_norm(m.B) + 1e-10);
  CHECK(rep.bound_ltbb <= 6.0);
  CHECK(rep.ltbb_within_six);

  // Closed form at X = I: ||L_{W,A}(I)|| = ||W + A||.
  const Matrix I = Matrix::identity(m.W.side());
  CHECK(inf_norm(sylvester_apply(m.W, m.A, I, false)) ==
        inf_norm(m.W + m.A));
}

TEST_CASE("operator report is seed-deterministic") {
  const GridSpec g = build_grid(0.0, 1.0, 12, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, false);
  const OperatorReport a = operator_report(g, m, 25, 42);
  const OperatorReport b = operator_report(g, m, 25, 42);
  CHECK(a.min_lwa == b.min_lwa);
  CHECK(a.max_lwa == b.max_lwa);
  CHECK(a.max_ltbb == b.max_ltbb);
}

TEST_CASE("theoretical eta: reference root and back-substitution") {
  const GridSpec g = build_grid(0.0, 1.0, 10, 0.25, 1.0, 1.0, 0.0);
  const CoefficientSet c = coefficients(g);
  const EtaBounds eta = theoretical_eta(1.0, 0.0, 0.0, c, g.h);
  CHECK(eta.eta1 ==
        doctest::Approx((std::sqrt(393.0) - 19.0) / 16.0).epsilon(1e-14));
  CHECK(std::fabs(eta.backsub1) <= 1e-12);
  CHECK(std::fabs(eta.backsub2) <= 1e-10);
  CHECK(eta.eta1_admissible);
  CHECK(eta.eta1_prime_admissible);
  CHECK(eta.eta1_prime > 0.0);
  // At l = 0 the induction constant eps1 coincides with eta1.
  CHECK(eta.eps1 == doctest::Approx(eta.eta1).epsilon(1e-14));
  CHECK(eta.eps1_prime > 0.0);
}

TEST_CASE("theoretical eta: interval collapses as epsilon -> 0") {
  const GridSpec g = build_grid(0.0, 1.0, 10, 0.25, 1.0, 1.0, 0.0);
  const CoefficientSet c = coefficients(g);
  const EtaBounds eta = theoretical_eta(1e-9, 0.0, 0.0, c, g.h);
  CHECK(eta.eta1 > 0.0);
  CHECK(eta.eta1 <= 1e-9);
  CHECK_THROWS_AS(theoretical_eta(0.0, 0.0, 0.0, c, g.h), ValidationError);
}

TEST_CASE("theoretical eta: negative discriminant is flagged as empty") {
  const GridSpec g = build_grid(0.0, 1.0, 10, 0.25, 1.0, 1.0, 0.0);
  const CoefficientSet c = coefficients(g);
  // l ||phi|| large makes the constant term dominate the first quadratic.
  const EtaBounds eta = theoretical_eta(1.0, 1.0, 100.0, c, g.h);
  CHECK_FALSE(eta.eta1_admissible);
  CHECK(eta.eta1 == 0.0);
}

TEST_CASE("stability probe: constant family accepts the whole interval") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, true);
  SolverOptions opts;
  const Profile family = make_profile("constant", 1.0, g);
  const StabilityProbeResult probe =
      stability_probe(g, m, opts, 1.0, 20, 2, family, 77);
  CHECK(probe.eta_found == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& trial : probe.log) {
    CHECK(trial.passed);
    CHECK(trial.initial_pair_norm <= 1.0 + 1e-12);
  }
}

TEST_CASE("stability probe: zero family is trivially bounded") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, true);
  SolverOptions opts;
  const Profile family = make_profile("zero", 1.0, g);
  const StabilityProbeResult probe =
      stability_probe(g, m, opts, 0.5, 10, 2, family, 3);
  CHECK(probe.eta_found >= 0.0);
  for (const auto& trial : probe.log) CHECK(trial.max_pair_norm == 0.0);
}

TEST_CASE("stability probe: cosine family yields a positive eta and a sound "
          "log") {
  const GridSpec g = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  const SchemeMatrices m = build_matrices(g, true);
  SolverOptions opts;
  const Profile family = make_profile("cosine", 1.0, g);
  const StabilityProbeResult probe =
      stability_probe(g, m, opts, 0.1, 15, 2, family, 2024);
  CHECK(probe.eta_found > 0.0);
  CHECK(probe.eta_found <= probe.epsilon);
  // Soundness: the reported eta corresponds to logged, passing trials.
  int passing_at_eta = 0;
  for (const auto& trial : probe.log) {
    if (trial.amplitude == probe.eta_found) {
      CHECK(trial.passed);
      CHECK(trial.max_pair_norm <= probe.epsilon);
      ++passing_at_eta;
    }
  }
  CHECK(passing_at_eta == probe.trials);

  // Determinism under a fixed seed.
  const StabilityProbeResult again =
      stability_probe(g, m, opts, 0.1, 15, 2, family, 2024);
  CHECK(again.eta_found == probe.eta_found);
  REQUIRE(again.log.size() == probe.log.size());
  for (std::size_t i = 0; i < probe.log.size(); ++i)
    CHECK(again.log[i].max_pair_norm == probe.log[i].max_pair_norm);
}

TEST_CASE("convergence study: constant collapses, cosine refines at order "
          "~2") {
  const GridSpec base = build_grid(0.0, 1.0, 8, 0.25, 1.0, 1.0, 0.0);
  SolverOptions opts;

  const RefinementStudy flat = convergence_study(
      make_profile("constant", 0.3, base), base, 3, 2, opts);
  CHECK(flat.all_zero);

  const RefinementStudy study = convergence_study(
      make_profile("cosine", 0.1, base), base, 3, 2, opts);
  REQUIRE(study.levels.size() == 3);
  CHECK_FALSE(study.all_zero);
  REQUIRE(study.orders_solution.size() == 1);
  CHECK(study.orders_solution[0] > 0.0);

  CHECK_THROWS_AS(convergence_study(make_profile("cosine", 0.1, base), base,
                                    2, 2, opts),
                  ValidationError);
}
