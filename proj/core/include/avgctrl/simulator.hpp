#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "avgctrl/certificate.hpp"
#include "avgctrl/oracle.hpp"

namespace avgctrl {

/// Quadrature sampling of an ensemble: Gauss-Legendre nodes on [-1, 1]
/// rescaled to the uniform probability measure (weights sum to 1).
struct DiscretizedEnsemble {
    std::vector<double> sigma;
    std::vector<double> weight;
    std::vector<Eigen::MatrixXd> A;
    std::vector<Eigen::VectorXd> b;

    int n = 0;
    int nodes() const { return static_cast<int>(sigma.size()); }
};

/// Gauss-Legendre nodes and probability weights on [-1, 1].
void gauss_legendre(int N, std::vector<double>& nodes, std::vector<double>& weights);

DiscretizedEnsemble discretize(const SymbolicEnsemble& e, int N);
DiscretizedEnsemble discretize(const PolynomialEnsemble& e, int N);

/// Piecewise-linear control on a uniform time grid.
struct ControlSignal {
    std::vector<double> t;
    std::vector<double> u;

    double at(double time) const;  // linear interpolation, clamped
    double horizon() const { return t.empty() ? 0.0 : t.back(); }
};

class SingularGramianError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SynthesisInfo {
    ControlSignal u;
    double gramian_condition = 0.0;
    Eigen::MatrixXd gramian;
    Eigen::VectorXd xbar_free;  // uncontrolled average at T
};

/// Minimum-norm steering through the averaged reachability Gramian
/// W(T) = int_0^T gbar(s) gbar(s)^T ds with gbar(s) the averaged impulse
/// response: u(t) = gbar(T-t)^T W^{-1} (x* - xbar_free(T)), sampled on a
/// uniform grid of M intervals. The initial profile is given per quadrature
/// node; a single vector is broadcast. Throws SingularGramianError when the
/// Gramian condition number exceeds 1e12.
SynthesisInfo synthesize_control(const DiscretizedEnsemble& de,
                                 const std::vector<Eigen::VectorXd>& x0,
                                 const Eigen::VectorXd& target, double T,
                                 int M = 4000);

struct SimulationResult {
    std::vector<double> t;
    Eigen::MatrixXd xbar;     // n x (steps+1), averaged trajectory
    std::vector<double> u;    // control resampled on t
    // Per-node trajectories, only stored when requested.
    std::vector<Eigen::MatrixXd> node_traj;

    Eigen::VectorXd terminal_average() const { return xbar.col(xbar.cols() - 1); }
    double terminal_error(const Eigen::VectorXd& target) const {
        return (terminal_average() - target).norm();
    }
};

/// Integrates every individual system with a fixed-step classical RK4
/// scheme (step <= T/1000) and assembles the average by quadrature weights.
SimulationResult simulate(const DiscretizedEnsemble& de, const ControlSignal& u,
                          const std::vector<Eigen::VectorXd>& x0, double T,
                          bool store_nodes = false);

struct TargetReport {
    bool hit = false;
    double error = 0.0;
    double tolerance = 0.0;
};

TargetReport verify_target(const SimulationResult& result,
                           const Eigen::VectorXd& target, double tol);

}  // namespace avgctrl
