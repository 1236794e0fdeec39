#include "qamrx/oracles.hpp"
#include "qamrx/receiver.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qamrx;

TEST_CASE("row confusion is stochastic and reflection symmetric") {
  for (double nbar : {0.0, 0.1, 1.0, 4.0, 12.0, 40.0}) {
    const auto rc = row_confusion(nbar);
    for (int r = 1; r <= 4; ++r) {
      double sum = 0.0;
      for (int d = 1; d <= 4; ++d) {
        CHECK(rc(r, d) >= 0.0);
        CHECK(rc(r, d) <= 1.0);
        CHECK(std::abs(rc(r, d) - rc(5 - r, 5 - d)) < 1e-15);
        sum += rc(r, d);
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("row confusion limits") {
  const auto vacuum = row_confusion(0.0);
  CHECK(vacuum.mean_correct() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(vacuum(1, 1) == 0.5);
  CHECK(vacuum(2, 1) == 0.5);
  CHECK(vacuum(2, 2) == 0.0);

  const auto bright = row_confusion(400.0);
  for (int r = 1; r <= 4; ++r) CHECK(bright(r, r) > 1.0 - 1e-12);

  CHECK_THROWS_AS(row_confusion(-1.0), std::invalid_argument);
}

TEST_CASE("average row error against direct integration") {
  for (double nbar : {0.5, 2.0, 10.0}) {
    const double s = std::sqrt(nbar / 10.0);
    const double closed = 1.5 * gaussian_tail(s * std::numbers::sqrt2);
    CHECK(1.0 - row_confusion(nbar).mean_correct() == doctest::Approx(closed).epsilon(1e-13));

    // Integrate the homodyne density of each row's arm amplitude over its own cell.
    const auto t = row_thresholds(s);
    const std::array<double, 5> edges{-20.0, t[0], t[1], t[2], 20.0};
    double correct = 0.0;
    for (int r = 0; r < 4; ++r) {
      const Amplitude arm(0.0, s * kGridLevels[r] / std::numbers::sqrt2);
      correct += oracles::integrate([&](double x) { return homodyne_pdf(arm, x); }, edges[r], edges[r + 1], 200) / 4;
    }
    CHECK(1.0 - correct == doctest::Approx(closed).epsilon(1e-11));
  }
}

TEST_CASE("row decisions") {
  const auto t = row_thresholds(1.0);
  CHECK(decide_row(-5.0, t) == 1);
  CHECK(decide_row(t[0], t) == 1);
  CHECK(decide_row(0.0, t) == 2);
  CHECK(decide_row(0.1, t) == 3);
  CHECK(decide_row(5.0, t) == 4);
  const auto zero = row_thresholds(0.0);
  CHECK(decide_row(0.0, zero) == 1);
  CHECK(decide_row(1e-300, zero) == 4);
}

TEST_CASE("stage-two rates") {
  const auto arm = split(build_qam16(10.0)).nulling;
  const auto cand = row_candidates(arm, 3);
  const auto rates = stage2_rates(cand[0], cand, 0.0);
  CHECK(rates(0) == doctest::Approx(0.0));
  CHECK(rates(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rates(2) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(rates(3) == doctest::Approx(18.0).epsilon(1e-14));

  for (int m = 0; m < 4; ++m) CHECK(stage2_rates(cand[m], cand, 0.0)(m) == 0.0);

  const double b = 0.3;
  const auto shifted = stage2_rates(cand[1], cand, b);
  for (int k = 0; k < 4; ++k) {
    const double re = cand[1].re - cand[k].re;
    CHECK(shifted(k) == doctest::Approx((re + b) * (re + b)).epsilon(1e-14));
  }

  // Wrong row keeps the Im residue.
  const auto other = row_candidates(arm, 4);
  CHECK(stage2_rates(cand[0], other, 0.0)(0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("column decision rule") {
  CHECK(decide_column(0) == 1);
  CHECK(decide_column(1) == 2);
  CHECK(decide_column(2) == 3);
  CHECK(decide_column(3) == 4);
  CHECK(decide_column(17) == 4);
  CHECK_THROWS_AS(decide_column(-1), std::invalid_argument);
}

TEST_CASE("column success given a correct row") {
  const auto dark = column_success_given_correct_row(0.0, 0.0);
  CHECK(dark[0] == 1.0);
  CHECK(dark[1] == 0.0);
  CHECK(dark[2] == 0.0);
  CHECK(dark[3] == 0.0);

  const auto bright = column_success_given_correct_row(400.0, 0.0);
  for (double p : bright) CHECK(p > 1.0 - 1e-12);

  // Column 2 at beta = 0 sees rates (lambda, 0, ...), lambda = nbar / 5.
  const auto mid = column_success_given_correct_row(3.0, 0.0);
  CHECK(mid[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mid[1] == doctest::Approx(1.0 - std::exp(-0.6)).epsilon(1e-13));
}

TEST_CASE("total error") {
  CHECK(total_error(ReceiverConfig::type_one(0.0)) == doctest::Approx(15.0 / 16.0).epsilon(1e-15));
  CHECK(std::abs(total_error(ReceiverConfig::type_one(0.0)) - 0.9375) < 1e-12);
  CHECK(total_error(ReceiverConfig::type_two(0.0, 0.7)) == doctest::Approx(15.0 / 16.0).epsilon(1e-14));
  for (double nbar : {0.3, 3.0, 30.0})
    CHECK(total_error(ReceiverConfig::type_one(nbar)) == total_error(ReceiverConfig::type_two(nbar, 0.0)));

  CHECK_THROWS_AS(total_error(ReceiverConfig{1.0, 0.5, ReceiverMode::TypeI}), std::invalid_argument);
  CHECK_THROWS_AS(total_error(ReceiverConfig::type_one(-1.0)), std::invalid_argument);
  CHECK_THROWS_AS(total_error(ReceiverConfig::type_two(1.0, NAN)), std::invalid_argument);
}

TEST_CASE("factorized error equals exhaustive enumeration") {
  for (double nbar : {0.0, 0.2, 1.0, 2.0, 5.0, 10.0, 25.0})
    for (double beta : {-0.8, 0.0, 0.35, 1.2})
      for (auto order : {NullingOrder::Ascending, NullingOrder::Descending}) {
        ReceiverConfig cfg = ReceiverConfig::type_two(nbar, beta);
        cfg.order = order;
        REQUIRE(std::abs(total_error(cfg) - oracles::brute_force_total_error(nbar, beta, order)) < 1e-12);
      }
}

TEST_CASE("total error bounds and monotonicity") {
  double prev = total_error(ReceiverConfig::type_one(0.0));
  for (int k = 1; k <= 200; ++k) {
    const double e = total_error(ReceiverConfig::type_one(0.1 * k));
    CHECK(e >= 0.0);
    CHECK(e <= 15.0 / 16.0 + 1e-15);
    CHECK(e <= prev + 1e-15);
    prev = e;
  }
}

TEST_CASE("reversing the nulling order mirrors beta") {
  for (double nbar : {0.5, 2.0, 8.0})
    for (double beta : {-1.0, -0.2, 0.4, 0.9}) {
      ReceiverConfig down = ReceiverConfig::type_two(nbar, -beta);
      down.order = NullingOrder::Descending;
      CHECK(total_error(ReceiverConfig::type_two(nbar, beta)) == doctest::Approx(total_error(down)).epsilon(1e-13));
    }
}
