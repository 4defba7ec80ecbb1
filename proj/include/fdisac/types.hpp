#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace fdisac {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

struct Position {
  double x = 0.0, y = 0.0, z = 0.0;
};

double distance(const Position& a, const Position& b);

/// Physical and system constants of one simulation scenario.
///
/// Powers are stored in dBm / dB as configured; linear-domain values are
/// derived once via system_params() and path_gain(). Internally all powers
/// are expressed in units of the receiver noise power, so sigma_r^2 == 1.
struct ScenarioConfig {
  int n_tx = 4;                 // BS transmit antennas
  int n_rx = 4;                 // BS receive antennas
  int n_ris_rows = 10;          // RIS elevation elements (M1)
  int n_ris_cols = 10;          // RIS azimuth elements (M2)
  int n_users = 4;

  double antenna_spacing_ratio = 0.5;  // d / lambda

  double bs_power_dbm = 30.0;
  std::vector<double> user_power_dbm;  // per user; empty => all 10 dBm
  double noise_dbm = -90.0;
  double radar_threshold_db = 5.0;
  double rcs_variance = 1.0;           // second moment of the target RCS
  double si_path_loss_db = -110.0;     // residual self-interference level
  double pathloss_ref_db = -30.0;      // path loss at the 1 m reference

  struct PathLossExponents {
    double bs_user = 3.6;
    double bs_tx_ris = 2.7;
    double bs_rx_ris = 2.7;
    double ris_user = 2.4;
    double ris_target = 2.2;
    double bs_tx_target = 2.2;
    double bs_rx_target = 2.2;
  } pathloss_exponents;

  struct RicianFactorsDb {
    double bs_ris = 3.0;
    double self_interference = 5.0;
  } rician_k_db;

  Position bs_position{0.0, 0.0, 5.0};
  Position ris_position{0.0, -50.0, 4.0};

  struct TargetBox {
    double x_min = -1.0, x_max = 1.0;
    double y_min = 10.0, y_max = 40.0;
    double z_min = 7.0, z_max = 10.0;
  } target_box;

  struct UserDisc {
    double radius = 10.0;
    double height = 1.5;
  } user_disc;

  std::uint64_t rng_seed = 1;

  int n_ris() const { return n_ris_rows * n_ris_cols; }

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;

  double user_power_dbm_of(int k) const;
};

/// Linear-domain constants consumed by the metric and subproblem builders.
/// Power unit: the receiver noise power (so noise_power == 1).
struct SystemParams {
  double bs_power = 0.0;               // transmit power budget
  std::vector<double> user_power;      // per-user uplink budgets
  double noise_power = 1.0;            // sigma_r^2
  double radar_threshold = 0.0;        // Gamma_r, linear
  double rcs_variance = 1.0;           // sigma_t^2
};

SystemParams system_params(const ScenarioConfig& cfg);

/// PL = C0 * (d / 1m)^(-alpha), in linear power gain.
double path_gain(double pathloss_ref_db, double dist, double alpha);

/// One realization of every propagation link.
struct ChannelSet {
  Mat g_bs_tx_ris;                 // M x N_t
  Mat g_bs_rx_ris;                 // M x N_r
  std::vector<Vec> h_bs_user;      // K vectors, N_r
  std::vector<Vec> h_ris_user;     // K vectors, M
  Vec g_ris_target;                // M
  Vec g_bs_tx_target;              // N_t
  Vec g_bs_rx_target;              // N_r
  Mat h_self_interference;         // N_t x N_r

  cxd fading_bs_tx_target{0.0, 0.0};
  cxd fading_bs_rx_target{0.0, 0.0};
  cxd fading_ris_target{0.0, 0.0};

  double angle_tx_target = 0.0;    // departure angle at the BS array
  double angle_rx_target = 0.0;    // arrival angle at the BS array
  double ris_elev_target = 0.0;
  double ris_azim_target = 0.0;

  Position target_position{};
  std::vector<Position> user_positions;

  int n_tx() const { return static_cast<int>(g_bs_tx_ris.cols()); }
  int n_rx() const { return static_cast<int>(g_bs_rx_ris.cols()); }
  int n_ris() const { return static_cast<int>(g_bs_tx_ris.rows()); }
  int n_users() const { return static_cast<int>(h_bs_user.size()); }
};

/// The joint optimization state.
struct DesignVariables {
  Mat beamformer;                  // W, N_t x N_t
  Vec phase;                       // phi, M, unit modulus
  RealVec user_power;              // q_k, K
  std::vector<Vec> user_filters;   // u_k, K vectors, N_r
  Vec radar_filter;                // u_0, N_r
};

/// Auxiliaries of the rate surrogate plus the penalty/dual state of the
/// phase-shift and beamformer inner solvers.
struct AuxState {
  std::vector<cxd> beta;           // K
  std::vector<double> omega;       // K, positive
  Vec psi1, psi2;                  // phase splitting copies, M
  Vec lambda1, lambda2;            // duals for phi = psi1 / psi2, M
  double rho = 1.0;                // penalty scale (weight is 1/rho)
  double eta_threshold = 0.1;      // dual-step acceptance threshold
  double upsilon = 1.0;            // consensus penalty of the beamformer split
  Vec tau;                         // beamformer consensus dual, N_t^2
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fdisac
