#pragma once

#include <Eigen/Dense>
#include <vector>

namespace abrc {

/// Linear readout trained by ridge regression. `weights` has one entry per
/// reservoir node plus a final direct-input weight. Errors are RMS residuals
/// over the training rows (training_error) and over the closed-form
/// leave-one-out residuals (loo_error).
struct TrainedReadout {
    Eigen::VectorXd weights;
    double ridge_param = 0.0;
    double training_error = 0.0;
    double loo_error = 0.0;
};

/// Exact normal-equations ridge fit of targets ~ states * w minimizing
/// |targets - states * w|^2 + r * |w|^2. At r = 0 with a rank-deficient
/// normal matrix the minimum-norm pseudo-solution is returned and a warning
/// is logged.
TrainedReadout ridge_train(const Eigen::MatrixXd& states, const Eigen::VectorXd& targets,
                           double r);

/// Closed-form leave-one-out RMS error for each ridge value in the grid,
/// computed from one thin SVD via the hat-matrix identity
/// e_loo_i = e_i / (1 - h_ii).
std::vector<double> loo_rms_errors(const Eigen::MatrixXd& states, const Eigen::VectorXd& targets,
                                   const std::vector<double>& grid);

/// Train at the grid value minimizing the leave-one-out error.
TrainedReadout select_ridge_loo(const Eigen::MatrixXd& states, const Eigen::VectorXd& targets,
                                const std::vector<double>& grid);

/// 13 logarithmically spaced ridge values, 1e-8 .. 1e4.
std::vector<double> default_ridge_grid();

}  // namespace abrc
