#include "abrc/readout.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "abrc/log.hpp"

namespace abrc {

namespace {

double rms(const Eigen::VectorXd& v) {
    if (v.size() == 0) return 0.0;
    return std::sqrt(v.squaredNorm() / static_cast<double>(v.size()));
}

void check_inputs(const Eigen::MatrixXd& states, const Eigen::VectorXd& targets) {
    if (states.rows() != targets.size() || states.rows() == 0 || states.cols() == 0) {
        throw std::invalid_argument("ridge: design matrix and targets sizes do not match");
    }
    if (!states.allFinite() || !targets.allFinite()) {
        throw std::invalid_argument("ridge: non-finite entries");
    }
}

}  // namespace

TrainedReadout ridge_train(const Eigen::MatrixXd& states, const Eigen::VectorXd& targets,
                           double r) {
    check_inputs(states, targets);
    if (r < 0.0) throw std::invalid_argument("ridge_train: negative ridge parameter");

    const auto p = states.cols();
    TrainedReadout out;
    out.ridge_param = r;

    if (r == 0.0) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(states);
        if (cod.rank() < p) {
            log::warnf(
                "ridge_train: singular normal matrix at r = 0 (rank %ld of %ld); returning the "
                "minimum-norm pseudo-solution",
                static_cast<long>(cod.rank()), static_cast<long>(p));
        }
        out.weights = cod.solve(targets);
    } else {
        Eigen::MatrixXd normal = states.transpose() * states;
        normal.diagonal().array() += r;
        out.weights = Eigen::LDLT<Eigen::MatrixXd>(normal).solve(states.transpose() * targets);
    }
    out.training_error = rms(targets - states * out.weights);

    // Closed-form LOO at the chosen r, for the record.
    const auto loo = loo_rms_errors(states, targets, {r});
    out.loo_error = loo.front();
    return out;
}

std::vector<double> loo_rms_errors(const Eigen::MatrixXd& states, const Eigen::VectorXd& targets,
                                   const std::vector<double>& grid) {
    check_inputs(states, targets);
    if (grid.empty()) throw std::invalid_argument("loo_rms_errors: empty ridge grid");

    const auto m = states.rows();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(states, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::MatrixXd& u = svd.matrixU();
    const Eigen::VectorXd& s = svd.singularValues();
    const Eigen::VectorXd uty = u.transpose() * targets;
    const Eigen::VectorXd s2 = s.array().square();

    std::vector<double> out;
    out.reserve(grid.size());
    for (double r : grid) {
        if (r < 0.0) throw std::invalid_argument("loo_rms_errors: negative ridge parameter");
        // shrink_k = s_k^2 / (s_k^2 + r); fitted = U * diag(shrink) * U' * y,
        // h_ii = sum_k shrink_k * U_ik^2.
        Eigen::VectorXd shrink(s2.size());
        for (Eigen::Index k = 0; k < s2.size(); ++k) {
            shrink[k] = (s2[k] > 0.0 || r > 0.0) ? s2[k] / (s2[k] + r) : 0.0;
        }
        const Eigen::VectorXd fitted = u * shrink.cwiseProduct(uty).eval();
        double total = 0.0;
        bool degenerate = false;
        for (Eigen::Index i = 0; i < m; ++i) {
            double h = 0.0;
            for (Eigen::Index k = 0; k < s2.size(); ++k) h += shrink[k] * u(i, k) * u(i, k);
            const double denom = 1.0 - h;
            if (std::abs(denom) < 1e-12) {
                degenerate = true;
                break;
            }
            const double e = (targets[i] - fitted[i]) / denom;
            total += e * e;
        }
        out.push_back(degenerate ? std::numeric_limits<double>::infinity()
                                 : std::sqrt(total / static_cast<double>(m)));
    }
    return out;
}

TrainedReadout select_ridge_loo(const Eigen::MatrixXd& states, const Eigen::VectorXd& targets,
                                const std::vector<double>& grid) {
    const auto errors = loo_rms_errors(states, targets, grid);
    std::size_t best = 0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        if (errors[i] < errors[best]) best = i;
    }
    if (!std::isfinite(errors[best])) {
        throw std::runtime_error("select_ridge_loo: leave-one-out error degenerate on the whole grid");
    }
    auto out = ridge_train(states, targets, grid[best]);
    out.loo_error = errors[best];
    return out;
}

std::vector<double> default_ridge_grid() {
    std::vector<double> grid;
    for (int e = -8; e <= 4; ++e) grid.push_back(std::pow(10.0, e));
    return grid;
}

}  // namespace abrc
