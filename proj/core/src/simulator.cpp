#include "avgctrl/simulator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

namespace avgctrl {

void gauss_legendre(int N, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(N, 0.0);
    weights.assign(N, 0.0);
    if (N == 1) {
        nodes[0] = 0.0;
        weights[0] = 1.0;
        return;
    }
    // Golub-Welsch: eigen-decomposition of the Jacobi matrix. The
    // probability weights on [-1, 1] are the squared first eigenvector
    // components.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(N, N);
    for (int k = 1; k < N; ++k) {
        double b = k / std::sqrt(4.0 * k * k - 1.0);
        jac(k - 1, k) = b;
        jac(k, k - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    for (int k = 0; k < N; ++k) {
        nodes[k] = es.eigenvalues()(k);
        double v0 = es.eigenvectors()(0, k);
        weights[k] = v0 * v0;
    }
}

namespace {

DiscretizedEnsemble discretize_impl(
    int n, int N,
    const std::function<double(int, int, double)>& a_entry,
    const std::function<double(int, double)>& b_entry) {
    DiscretizedEnsemble de;
    de.n = n;
    gauss_legendre(N, de.sigma, de.weight);
    for (int k = 0; k < N; ++k) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        for (int i = 1; i <= n; ++i) {
            b(i - 1) = b_entry(i, de.sigma[k]);
            for (int j = 1; j <= n; ++j) A(i - 1, j - 1) = a_entry(i, j, de.sigma[k]);
        }
        de.A.push_back(std::move(A));
        de.b.push_back(std::move(b));
    }
    return de;
}

}  // namespace

DiscretizedEnsemble discretize(const SymbolicEnsemble& e, int N) {
    auto f_pow = [&](const NuValue& nu, double sigma) {
        double r = nu.value(e.L, e.lambda);
        if (r == 0.0) return 1.0;
        return std::pow(std::abs(sigma), r);
    };
    return discretize_impl(
        e.n, N,
        [&](int i, int j, double sigma) {
            auto it = e.a_exponents.find({i, j});
            return it == e.a_exponents.end() ? 0.0 : f_pow(it->second, sigma);
        },
        [&](int i, double sigma) {
            auto it = e.b_exponents.find(i);
            return it == e.b_exponents.end() ? 0.0 : f_pow(it->second, sigma);
        });
}

DiscretizedEnsemble discretize(const PolynomialEnsemble& e, int N) {
    return discretize_impl(
        e.n, N,
        [&](int i, int j, double sigma) {
            auto it = e.a.find({i, j});
            return it == e.a.end() ? 0.0 : it->second.eval(sigma);
        },
        [&](int i, double sigma) {
            auto it = e.b.find(i);
            return it == e.b.end() ? 0.0 : it->second.eval(sigma);
        });
}

double ControlSignal::at(double time) const {
    if (t.empty()) return 0.0;
    if (time <= t.front()) return u.front();
    if (time >= t.back()) return u.back();
    // Uniform grid.
    double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    auto idx = static_cast<size_t>((time - t.front()) / h);
    idx = std::min(idx, t.size() - 2);
    double frac = (time - t[idx]) / h;
    return u[idx] * (1.0 - frac) + u[idx + 1] * frac;
}

namespace {

std::vector<Eigen::VectorXd> broadcast_x0(const DiscretizedEnsemble& de,
                                          const std::vector<Eigen::VectorXd>& x0) {
    if (static_cast<int>(x0.size()) == de.nodes()) return x0;
    if (x0.size() == 1)
        return std::vector<Eigen::VectorXd>(de.nodes(), x0.front());
    throw std::invalid_argument("initial profile size mismatch");
}

}  // namespace

SynthesisInfo synthesize_control(const DiscretizedEnsemble& de,
                                 const std::vector<Eigen::VectorXd>& x0_in,
                                 const Eigen::VectorXd& target, double T, int M) {
    if (M % 2 != 0) ++M;
    auto x0 = broadcast_x0(de, x0_in);
    int n = de.n;
    double h = T / M;

    // Averaged impulse response gbar(t_m) on the grid, propagated per node
    // by one matrix exponential per step.
    std::vector<Eigen::VectorXd> gbar(M + 1, Eigen::VectorXd::Zero(n));
    Eigen::VectorXd xbar_free = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < de.nodes(); ++k) {
        Eigen::MatrixXd step = (de.A[k] * h).exp();
        Eigen::VectorXd v = de.b[k];
        gbar[0] += de.weight[k] * v;
        for (int m = 1; m <= M; ++m) {
            v = step * v;
            gbar[m] += de.weight[k] * v;
        }
        xbar_free += de.weight[k] * ((de.A[k] * T).exp() * x0[k]);
    }

    // W(T) = int_0^T gbar gbar^T by composite Simpson, factored as
    // W = B B^T with column m of B the Simpson-weighted response to a
    // control impulse at t_m. The minimum-norm solve goes through the SVD
    // of B: the factor's condition number (sqrt of the Gramian's) is what
    // limits the solve, so the singularity check lives there.
    Eigen::MatrixXd B(n, M + 1);
    std::vector<double> sqc(M + 1);
    for (int m = 0; m <= M; ++m) {
        double coeff = (m == 0 || m == M) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
        sqc[m] = std::sqrt(coeff * h / 3.0);
        B.col(m) = sqc[m] * gbar[M - m];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        B, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double sv_max = svd.singularValues()(0);
    double sv_min = svd.singularValues()(n - 1);
    double cond = sv_min > 0 ? sv_max / sv_min
                             : std::numeric_limits<double>::infinity();
    if (!(cond < 1e12))
        throw SingularGramianError(
            "averaged Gramian is numerically singular (condition " +
            std::to_string(cond) + "); the discretized ensemble is not "
            "averaged controllable");

    // u_m = gbar(T - t_m)^T W^{-1} r collapses to V S^{-1} U^T r in the
    // factored form, so only one power of the condition number enters.
    auto min_norm_u = [&](const Eigen::VectorXd& rhs) {
        Eigen::VectorXd y =
            svd.singularValues().cwiseInverse().asDiagonal() *
            (svd.matrixU().transpose() * rhs);
        Eigen::VectorXd weighted = svd.matrixV() * y;
        std::vector<double> u(M + 1);
        for (int m = 0; m <= M; ++m) u[m] = weighted(m) / sqc[m];
        return u;
    };

    SynthesisInfo info;
    info.gramian = B * B.transpose();
    info.gramian_condition = cond;
    info.xbar_free = xbar_free;
    info.u.t.resize(M + 1);
    for (int m = 0; m <= M; ++m) info.u.t[m] = m * h;
    Eigen::VectorXd r = target - xbar_free;
    info.u.u = min_norm_u(r);

    // The Simpson model of the response map differs from the RK4
    // integrator by discretization error, which the huge norm of the
    // minimum-norm solution amplifies. Refine against the integrator
    // itself: the simulated map is linear in u, so the loop contracts, and
    // the relative stopping rule keeps synthesis linear in the residual.
    double scale = std::max(r.norm(), 1e-30);
    double best_err = std::numeric_limits<double>::infinity();
    std::vector<double> best_u = info.u.u;
    for (int it = 0; it < 10; ++it) {
        SimulationResult sim = simulate(de, info.u, x0_in, T);
        Eigen::VectorXd resid = target - sim.terminal_average();
        double err = resid.norm();
        if (err < best_err) {
            best_err = err;
            best_u = info.u.u;
        }
        if (err <= 1e-10 * scale || err > 10.0 * best_err) break;
        std::vector<double> du = min_norm_u(resid);
        for (int m = 0; m <= M; ++m) info.u.u[m] += du[m];
    }
    info.u.u = std::move(best_u);
    return info;
}

SimulationResult simulate(const DiscretizedEnsemble& de, const ControlSignal& u,
                          const std::vector<Eigen::VectorXd>& x0_in, double T,
                          bool store_nodes) {
    auto x0 = broadcast_x0(de, x0_in);
    int n = de.n;
    int steps = std::max<int>(1000, static_cast<int>(u.t.size()) - 1);
    double h = T / steps;

    SimulationResult res;
    res.t.resize(steps + 1);
    res.u.resize(steps + 1);
    res.xbar = Eigen::MatrixXd::Zero(n, steps + 1);
    for (int m = 0; m <= steps; ++m) {
        res.t[m] = m * h;
        res.u[m] = u.at(res.t[m]);
    }
    if (store_nodes)
        res.node_traj.assign(de.nodes(), Eigen::MatrixXd::Zero(n, steps + 1));

    for (int k = 0; k < de.nodes(); ++k) {
        const Eigen::MatrixXd& A = de.A[k];
        const Eigen::VectorXd& b = de.b[k];
        Eigen::VectorXd x = x0[k];
        res.xbar.col(0) += de.weight[k] * x;
        if (store_nodes) res.node_traj[k].col(0) = x;
        auto deriv = [&](const Eigen::VectorXd& state, double time) {
            return (A * state + b * u.at(time)).eval();
        };
        for (int m = 0; m < steps; ++m) {
            double t0 = res.t[m];
            Eigen::VectorXd k1 = deriv(x, t0);
            Eigen::VectorXd k2 = deriv(x + 0.5 * h * k1, t0 + 0.5 * h);
            Eigen::VectorXd k3 = deriv(x + 0.5 * h * k2, t0 + 0.5 * h);
            Eigen::VectorXd k4 = deriv(x + h * k3, t0 + h);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            res.xbar.col(m + 1) += de.weight[k] * x;
            if (store_nodes) res.node_traj[k].col(m + 1) = x;
        }
    }
    return res;
}

TargetReport verify_target(const SimulationResult& result,
                           const Eigen::VectorXd& target, double tol) {
    TargetReport rep;
    rep.error = result.terminal_error(target);
    rep.tolerance = tol;
    rep.hit = rep.error <= tol;
    return rep;
}

}  // namespace avgctrl
