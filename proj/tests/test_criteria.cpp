#include <doctest.h>

#include <cmath>

#include "corrsep/criteria.hpp"
#include "corrsep/error.hpp"
#include "oracles.hpp"
#include "rudolph_oracle.hpp"

using namespace corrsep;

TEST_CASE("bound factor") {
  CHECK(bound_factor(3, 0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(bound_factor(2, 1) == 1.0);
  CHECK(bound_factor(4, std::sqrt(5.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(bound_factor(2, -1), Error);
  const BoundFactors b = bound_factors({2, 3}, ScalingVector({1.0, 0.0}));
  CHECK(std::abs(b.product - std::sqrt(2.0 / 3.0)) < 1e-15);
}

TEST_CASE("Bell gap is -1 along the whole family") {
  const DensityMatrix bell = bell_state();
  for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{1.0, 1.0}, std::pair{2.0, 0.5},
                      std::pair{7.0, 7.0}}) {
    const CriterionReport r = family_gap(bell, x, y);
    // D_x C D_y = diag(xy/2, 1/2, -1/2, 1/2).
    CHECK(std::abs(r.lhs - (x * y / 2 + 1.5)) < 1e-13);
    CHECK(std::abs(r.rhs - std::sqrt((1 + x * x) * (1 + y * y)) / 2) < 1e-13);
    CHECK(r.detected);
    CHECK(r.params == std::vector<double>{x, y});
  }
  CHECK(std::abs(family_gap(bell, 1, 1).gap + 1.0) < 1e-14);
}

TEST_CASE("maximally mixed state is never detected") {
  for (const Dims& dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    const DensityMatrix mm = maximally_mixed(dims);
    for (double x : {0.0, 0.3, 1.0, 4.0}) {
      for (double y : {0.0, 1.0, 10.0}) {
        const CriterionReport r = family_gap(mm, x, y);
        const double expected =
            r.rhs - x * y / std::sqrt(double(dims[0] * dims[1]));
        CHECK(std::abs(r.gap - expected) < 1e-13);
        CHECK(r.gap >= 0);
      }
    }
  }
}

TEST_CASE("named points") {
  CHECK(named_point(NamedCriterion::DeVicente, 2, 3) == std::pair{0.0, 0.0});
  CHECK(named_point(NamedCriterion::Ccnr, 2, 3) == std::pair{1.0, 1.0});
  CHECK(named_point(NamedCriterion::Esic, 2, 3) == std::pair{std::sqrt(3.0), 2.0});
  CHECK(named_point(NamedCriterion::Fei, 2, 4) == std::pair{1.0, std::sqrt(0.5)});
  const CriterionReport ccnr = named_criterion(bell_state(), NamedCriterion::Ccnr);
  CHECK(ccnr.criterion == CriterionKind::Ccnr);
  CHECK(to_string(ccnr.criterion) == "ccnr");
}

TEST_CASE("Rudolph trace norm matches the closed form") {
  for (double r : {-0.4, 0.0, 0.3}) {
    for (double s : {r, r + 0.2, 0.6}) {
      if (s < r || s > 1) continue;
      const double tmax = std::sqrt((1 + r) * (1 - s));
      for (double t : {0.0, 0.5 * tmax, -0.9 * tmax}) {
        const DensityMatrix rho = rudolph_state(r, s, t);
        for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{1.0, 1.0}, std::pair{3.0, 0.5},
                            std::pair{20.0, 15.0}}) {
          CHECK(std::abs(family_gap(rho, x, y).lhs - rudolph_closed_form(x, y, r, s, t)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("ESIC from overlaps equals the scaled canonical norm") {
  for (const Dims& dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}, Dims{3, 4}}) {
    for (SicSign sign : {SicSign::Minus, SicSign::Plus}) {
      const DensityMatrix rho = random_pure_state(dims, 31 + dims[1]);
      const EsicResult e =
          esic_direct(rho, sic_povm(dims[0]), sic_povm(dims[1]), sign);
      CHECK(e.acb_residual < 1e-12);
      CHECK(std::abs(e.scaled_overlap_norm - e.acb_norm) < 1e-12);
      CHECK(std::abs(e.scaled_overlap_norm - e.canonical_norm) < 1e-10);
      // Overlaps are probabilities summing to one.
      CHECK(std::abs(e.overlaps.sum() - 1.0) < 1e-13);
      CHECK(e.overlaps.minCoeff() > -1e-15);
      const CriterionReport esic = named_criterion(rho, NamedCriterion::Esic);
      CHECK(e.report.detected == esic.detected);
    }
  }
}

TEST_CASE("ESIC rejects mismatched SICs") {
  CHECK_THROWS_AS(esic_direct(bell_state(), sic_povm(3), sic_povm(2)), Error);
}

TEST_CASE("PPT check") {
  const CriterionReport bell = ppt_check(bell_state());
  CHECK(bell.detected);
  CHECK(std::abs(bell.lhs + 0.5) < 1e-14);
  CHECK(bell.gap == bell.lhs);
  CHECK_FALSE(ppt_check(random_separable_state({2, 3}, 3, 4)).detected);
  CHECK(ppt_check(ghz_state(3), 0).detected);
  CHECK_THROWS_AS(ppt_check(bell_state(), 2), Error);
}

TEST_CASE("Werner family: CCNR threshold at p = 1/3") {
  // C = diag(1/2, p/2, -p/2, p/2), so ||C||_tr <= 1 iff p <= 1/3.
  const ThresholdResult t = threshold_scan(noisy_family(bell_state(), "werner"),
                                           make_evaluator(CriterionSpec::named(NamedCriterion::Ccnr)),
                                           ThresholdOptions{1e-6});
  CHECK(t.detected);
  CHECK(std::abs(t.p_star - 1.0 / 3.0) < 2e-6);
  CHECK(t.p_lower < t.p_star);
  // PPT threshold of the Werner family is also 1/3.
  const ThresholdResult ppt =
      threshold_scan(noisy_family(bell_state(), "werner"), make_evaluator(CriterionSpec::ppt()),
                     ThresholdOptions{1e-6});
  CHECK(std::abs(ppt.p_star - 1.0 / 3.0) < 2e-6);
}

TEST_CASE("threshold scan edge cases") {
  const StateFamily always_bell{[](double) { return bell_state(); }, "bell"};
  CHECK_THROWS_AS(threshold_scan(always_bell, make_evaluator(CriterionSpec::named(
                                                  NamedCriterion::Ccnr))),
                  Error);
  const StateFamily separable = noisy_family(random_separable_state({2, 2}, 2, 1), "sep");
  const ThresholdResult none =
      threshold_scan(separable, make_evaluator(CriterionSpec::named(NamedCriterion::Ccnr)));
  CHECK_FALSE(none.detected);
  CHECK(none.evaluations == 2);
}

TEST_CASE("criterion spec labels") {
  CHECK(CriterionSpec::named(NamedCriterion::DeVicente).label() == "dv");
  CHECK(CriterionSpec::point(5.8, 5.9).label() == "family(5.8,5.9)");
  CHECK(CriterionSpec::filtered_dv().label() == "filtered-dv");
}

TEST_CASE("optimizer finds the Bell gap and a detecting chessboard point") {
  const XYOptimum bell = optimize_xy(bell_state());
  CHECK(std::abs(bell.gap + 1.0) < 1e-10);

  const DensityMatrix cb = mix_with_white_noise(chessboard_state(ChessboardParams::reference()),
                                                kChessboardReferenceNoise);
  const XYOptimum o = optimize_xy(cb);
  CHECK(o.gap < -5e-5);
  CHECK(std::abs(family_gap(cb, o.x, o.y).gap - o.gap) < 1e-15);
}

TEST_CASE("multipartite path agrees with the bipartite one for two parties") {
  const DensityMatrix rho = random_pure_state({2, 3}, 12);
  for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{1.0, 2.0}}) {
    const double bip = family_gap(rho, x, y).gap;
    for (MultipartiteMethod m : {MultipartiteMethod::KyFan, MultipartiteMethod::NuclearLowerBound}) {
      CHECK(std::abs(multipartite_gap(rho, ScalingVector({x, y}), m).gap - bip) < 1e-12);
    }
  }
}

TEST_CASE("GHZ(3) is detected by the Ky-Fan criterion") {
  const CriterionReport r =
      multipartite_gap(ghz_state(3), ScalingVector::ones(3), MultipartiteMethod::KyFan);
  CHECK(r.lhs > 1.0);
  CHECK(r.rhs == 1.0);
  CHECK(r.detected);
  CHECK(r.criterion == CriterionKind::MultipartiteKyFan);
  CHECK_THROWS_AS(multipartite_gap(ghz_state(3), ScalingVector::ones(2), MultipartiteMethod::KyFan),
                  Error);
}

TEST_CASE("centered identity on the Bell state") {
  const CenteredIdentityReport c = dv_centered_identity_check(bell_state());
  CHECK(c.max_bloch_norm < 1e-15);
  CHECK(c.decomposition_residual < 1e-13);
  CHECK(c.gap_spread < 1e-13);
  CHECK(c.equal_dims);
  CHECK_THROWS_AS(dv_centered_identity_check(random_product_state({2, 2}, 3)), Error);
}
