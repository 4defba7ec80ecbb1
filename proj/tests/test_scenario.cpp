#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fdisac/linalg.hpp"
#include "fdisac/scenario.hpp"
#include "support/instances.hpp"

using namespace fdisac;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.n_tx = 2;
  cfg.n_rx = 2;
  cfg.n_ris_rows = 2;
  cfg.n_ris_cols = 2;
  cfg.n_users = 2;
  return cfg;
}

}  // namespace

TEST_CASE("ULA steering vector basics") {
  CHECK(steering_vector_ula(1, 0.5, 1.234).size() == 1);
  CHECK(std::abs(steering_vector_ula(1, 0.5, 1.234)[0] - cxd(1, 0)) < 1e-15);

  const Vec flat = steering_vector_ula(4, 0.5, 0.0);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(flat[i] - cxd(1, 0)) < 1e-15);

  const Vec endfire = steering_vector_ula(2, 0.5, std::numbers::pi / 2);
  CHECK(std::abs(endfire[0] - cxd(1, 0)) < 1e-12);
  CHECK(std::abs(endfire[1] - cxd(-1, 0)) < 1e-12);
}

TEST_CASE("ULA entries are unit modulus and follow the index law") {
  const Vec a = steering_vector_ula(7, 0.37, 0.91);
  for (int i = 0; i < 7; ++i) {
    CHECK(std::abs(std::abs(a[i]) - 1.0) < 1e-12);
    const cxd expected =
        std::polar(1.0, -2.0 * std::numbers::pi * 0.37 * i * std::sin(0.91));
    CHECK(std::abs(a[i] - expected) < 1e-12);
  }
}

TEST_CASE("RIS steering vector") {
  SUBCASE("single element") {
    const Vec a = steering_vector_ris(1, 1, 0.5, 0.3, 0.4);
    REQUIRE(a.size() == 1);
    CHECK(std::abs(a[0] - cxd(1, 0)) < 1e-15);
  }
  SUBCASE("2x2 at broadside elevation") {
    // elev = pi/2, azim = 0: g1 = 1/2, g2 = 0
    const Vec a = steering_vector_ris(2, 2, 0.5, std::numbers::pi / 2, 0.0);
    const cxd f = std::polar(1.0, 2.0 * std::numbers::pi * 0.5 * 0.5);
    REQUIRE(a.size() == 4);
    CHECK(std::abs(a[0] - cxd(1, 0)) < 1e-12);
    CHECK(std::abs(a[1] - cxd(1, 0)) < 1e-12);
    CHECK(std::abs(a[2] - f) < 1e-12);
    CHECK(std::abs(a[3] - f) < 1e-12);
  }
  SUBCASE("per-entry formula at a generic angle") {
    const int m1 = 2, m2 = 3;
    const double elev = 0.7, azim = 1.1, ratio = 0.5;
    const Vec a = steering_vector_ris(m1, m2, ratio, elev, azim);
    const double g1 = 0.5 * std::sin(elev) * std::cos(azim);
    const double g2 = 0.5 * std::cos(elev);
    for (int i = 0; i < m1; ++i) {
      for (int j = 0; j < m2; ++j) {
        const cxd expected =
            std::polar(1.0, 2.0 * std::numbers::pi * ratio * (i * g1 + j * g2));
        CHECK(std::abs(a[i * m2 + j] - expected) < 1e-12);
      }
    }
    CHECK(unit_modulus_error(a) < 1e-12);
  }
}

TEST_CASE("generate_channels is deterministic in (cfg, seed)") {
  const ScenarioConfig cfg = small_config();
  const ChannelSet a = generate_channels(cfg, 7);
  const ChannelSet b = generate_channels(cfg, 7);
  CHECK((a.g_bs_tx_ris - b.g_bs_tx_ris).norm() == 0.0);
  CHECK((a.h_self_interference - b.h_self_interference).norm() == 0.0);
  CHECK((a.g_ris_target - b.g_ris_target).norm() == 0.0);
  for (int k = 0; k < cfg.n_users; ++k) {
    CHECK((a.h_bs_user[k] - b.h_bs_user[k]).norm() == 0.0);
  }
  const ChannelSet c = generate_channels(cfg, 8);
  CHECK((a.g_bs_tx_ris - c.g_bs_tx_ris).norm() > 0.0);
}

TEST_CASE("path gain follows the distance power law") {
  const double g1 = path_gain(-30.0, 10.0, 2.0);
  const double g2 = path_gain(-30.0, 20.0, 2.0);
  CHECK(g2 / g1 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(path_gain(-30.0, 1.0, 3.0) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK_THROWS_AS(path_gain(-30.0, 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("large Rician factor drives scatter energy to zero") {
  ScenarioConfig cfg = small_config();
  cfg.rician_k_db.bs_ris = 40.0;  // kappa = 1e4
  const double kappa = db_to_linear(40.0);
  const double d = distance(cfg.bs_position, cfg.ris_position);
  const double gain =
      path_gain(cfg.pathloss_ref_db, d, cfg.pathloss_exponents.bs_tx_ris);

  // sample variance of the scatter residual over many draws
  double residual_energy = 0.0;
  int count = 0;
  for (int s = 0; s < 1000; ++s) {
    const ChannelSet ch = generate_channels(cfg, 1000 + s);
    // remove the deterministic part by comparing two seeds' shared LoS:
    // residual = ch - sqrt(gain*kappa/(1+kappa)) * LoS, recovered via the
    // known LoS magnitude structure: E|entry|^2 = gain, LoS part has
    // |entry| = sqrt(gain*kappa/(1+kappa)).
    residual_energy += (ch.g_bs_tx_ris.cwiseAbs().array() -
                        std::sqrt(gain * kappa / (1.0 + kappa)))
                           .square()
                           .mean();
    ++count;
  }
  residual_energy /= count;
  // scatter variance per entry is gain/(1+kappa); |.| deviation is of that order
  CHECK(residual_energy < 5.0 * gain / (1.0 + kappa));
}

TEST_CASE("zero-distance placement is rejected") {
  ScenarioConfig cfg = small_config();
  cfg.target_box = {0.0, 0.0, 0.0, 0.0, 5.0, 5.0};  // exactly at the BS
  CHECK_THROWS_AS(generate_channels(cfg, 1), std::invalid_argument);
}

TEST_CASE("effective user channel") {
  testing::Rng rng(11);
  const testing::Dims d{4, 2, 2, 2};
  ChannelSet ch = testing::random_channels(d, rng);
  const Vec phi = rng.unit_phases(d.m);

  SUBCASE("no RIS-user link reduces to the direct channel") {
    ch.h_ris_user[0].setZero();
    CHECK((effective_user_channel(ch, phi, 0) - ch.h_bs_user[0]).norm() < 1e-15);
  }
  SUBCASE("scalar identity at M = 1") {
    testing::Rng rng2(12);
    const testing::Dims d1{1, 1, 1, 1};
    const ChannelSet c1 = testing::random_channels(d1, rng2);
    const Vec p1 = rng2.unit_phases(1);
    const cxd expected = c1.h_bs_user[0][0] +
                         std::conj(c1.g_bs_rx_ris(0, 0)) * p1[0] * c1.h_ris_user[0][0];
    CHECK(std::abs(effective_user_channel(c1, p1, 0)[0] - expected) < 1e-14);
  }
  SUBCASE("linear in the RIS-user link") {
    const Vec base = effective_user_channel(ch, phi, 1);
    ch.h_ris_user[1] *= 2.0;
    const Vec doubled = effective_user_channel(ch, phi, 1);
    CHECK((doubled - ch.h_bs_user[1] - 2.0 * (base - ch.h_bs_user[1])).norm() <
          1e-12);
  }
}

TEST_CASE("effective self-interference channel") {
  testing::Rng rng(13);
  const testing::Dims d{4, 3, 2, 1};
  const ChannelSet ch = testing::random_channels(d, rng);

  SUBCASE("zero phases leave only the direct loopback") {
    const Vec zero = Vec::Zero(d.m);
    CHECK((effective_si_channel(ch, zero) - ch.h_self_interference.adjoint())
              .norm() < 1e-15);
  }
  SUBCASE("matches entry-wise triple-product expansion") {
    const Vec phi = rng.unit_phases(d.m);
    const Mat g = effective_si_channel(ch, phi);
    for (int r = 0; r < d.n_rx; ++r) {
      for (int c = 0; c < d.n_tx; ++c) {
        cxd sum = std::conj(ch.h_self_interference(c, r));
        for (int m = 0; m < d.m; ++m) {
          sum += std::conj(ch.g_bs_rx_ris(m, r)) * phi[m] * ch.g_bs_tx_ris(m, c);
        }
        CHECK(std::abs(g(r, c) - sum) < 1e-12);
      }
    }
  }
  SUBCASE("transpose consistency of the RIS loop") {
    const Vec phi = rng.unit_phases(d.m);
    const Mat loop = effective_si_channel(ch, phi) - ch.h_self_interference.adjoint();
    const Mat loop_h =
        ch.g_bs_tx_ris.adjoint() * phi.conjugate().asDiagonal() * ch.g_bs_rx_ris;
    CHECK((loop.adjoint() - loop_h).norm() < 1e-12 * std::max(1.0, loop.norm()));
  }
}

TEST_CASE("effective radar channel") {
  testing::Rng rng(14);
  const testing::Dims d{5, 3, 4, 1};
  ChannelSet ch = testing::random_channels(d, rng);
  const Vec phi = rng.unit_phases(d.m);
  const Vec psi = rng.unit_phases(d.m);

  SUBCASE("splitting copy equal to phi reproduces the physical channel") {
    const Mat a = effective_radar_channel(ch, phi, phi);
    const Vec rx = ch.g_bs_rx_target +
                   ch.g_bs_rx_ris.adjoint() * phi.cwiseProduct(ch.g_ris_target);
    const Eigen::RowVectorXcd tx =
        ch.g_bs_tx_target.adjoint() +
        (phi.cwiseProduct(ch.g_ris_target)).transpose() * ch.g_bs_tx_ris;
    CHECK((a - rx * tx).norm() < 1e-12 * std::max(1.0, a.norm()));
  }
  SUBCASE("no RIS-target link removes the phase dependence") {
    ch.g_ris_target.setZero();
    const Mat a = effective_radar_channel(ch, phi, psi);
    const Mat direct = ch.g_bs_rx_target * ch.g_bs_tx_target.adjoint();
    CHECK((a - direct).norm() < 1e-14 * std::max(1.0, direct.norm()));
  }
  SUBCASE("result has rank one") {
    const Mat a = effective_radar_channel(ch, phi, psi);
    Eigen::JacobiSVD<Mat> svd(a);
    CHECK(svd.singularValues()[1] < 1e-10 * svd.singularValues()[0]);
  }
}

TEST_CASE("config validation catches bad inputs") {
  ScenarioConfig cfg = small_config();
  cfg.pathloss_exponents.bs_user = 7.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.n_users = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.user_power_dbm = {10.0, 11.0, 12.0};  // wrong count for 2 users
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
