#include "avgctrl/verification.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>

namespace avgctrl {

double moment(double r) {
    if (r < 0) throw std::domain_error("moment exponent must be nonnegative");
    return 1.0 / (r + 1.0);
}

double moment(const NuValue& r, const EdgeWeighting& w) {
    return moment(w.value(r));
}

ColumnVec column(const ReducedGraph& g, const EdgeWeighting& w, std::int64_t j) {
    ColumnVec col;
    col.j = j;
    col.v = Eigen::VectorXd::Zero(g.g.n);
    col.provenance.resize(g.g.n);
    for (int i = 1; i <= g.g.n; ++i) {
        auto wd = nu_of_walk(g, w, i, j);
        if (wd) {
            col.v(i - 1) = moment(wd->nu, w);
            col.provenance[i - 1] = wd;
        }
    }
    return col;
}

ColumnSelection select_columns(const ReducedGraph& g, const EdgeWeighting& w) {
    ColumnSelection sel;
    sel.j_star = j_star(g);
    for (int v : g.core_nodes)
        if (v != kBeta) sel.core_columns.push_back(g.depth[v]);
    std::sort(sel.core_columns.begin(), sel.core_columns.end());
    sel.all_columns = sel.core_columns;

    std::set<int> taken;
    for (int ell = 0; ell < w.ell_max; ++ell) {
        ReachableSet rs = reachable_set(g, sel.j_star + ell);
        ColumnSelection::Group grp;
        grp.ell = ell;
        for (int v : rs.members)
            if (!taken.count(v)) {
                taken.insert(v);
                grp.v_prime.push_back(v);
            }
        for (size_t k = 0; k < grp.v_prime.size(); ++k)
            grp.columns.push_back(sel.j_star + ell +
                                  static_cast<std::int64_t>(k) * w.L);
        sel.all_columns.insert(sel.all_columns.end(), grp.columns.begin(),
                               grp.columns.end());
        sel.groups.push_back(std::move(grp));
    }
    return sel;
}

int numeric_rank(const Eigen::MatrixXd& m, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) / sv(0) > tol) ++rank;
    return rank;
}

RankCertificate certify_rank(const ReducedGraph& g, const EdgeWeighting& w) {
    RankCertificate cert;
    cert.selection = select_columns(g, w);
    int n = g.g.n;
    cert.matrix.resize(n, n);
    for (size_t c = 0; c < cert.selection.all_columns.size(); ++c)
        cert.matrix.col(static_cast<int>(c)) =
            column(g, w, cert.selection.all_columns[c]).v;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cert.matrix);
    const auto& sv = svd.singularValues();
    cert.sv_ratio = sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0;
    cert.numeric_rank = numeric_rank(cert.matrix, cert.tolerance);

    // Exact side, per residue group: the restricted m_ell x m_ell matrix
    // has entries 1/(nu(tau_j) + k + 1), a Cauchy structure whose
    // determinant is nonzero iff the nu(tau_j) are pairwise distinct.
    bool exact_ok = true;
    for (const auto& grp : cert.selection.groups) {
        RankCertificate::GroupCheck chk;
        std::vector<NuValue> nus;
        for (int v : grp.v_prime) {
            auto wd = nu_of_walk(g, w, v, cert.selection.j_star + grp.ell);
            nus.push_back(wd->nu);
        }
        chk.nus_distinct = true;
        for (size_t i = 0; i < nus.size(); ++i)
            for (size_t jn = i + 1; jn < nus.size(); ++jn)
                if (nus[i] == nus[jn]) chk.nus_distinct = false;
        chk.det_nonzero = chk.nus_distinct;

        chk.cauchy_consistent = true;
        for (size_t jn = 0; jn < nus.size(); ++jn) {
            double base = w.value(nus[jn]);
            for (size_t k = 0; k < grp.v_prime.size(); ++k) {
                double via_moment =
                    moment(nus[jn].plus_integer(static_cast<std::int64_t>(k), w.L), w);
                double via_cauchy = 1.0 / (base + static_cast<double>(k) + 1.0);
                if (std::abs(via_moment - via_cauchy) >
                    1e-14 * std::max(1.0, std::abs(via_cauchy)))
                    chk.cauchy_consistent = false;
            }
        }
        exact_ok = exact_ok && chk.nus_distinct && chk.det_nonzero &&
                   chk.cauchy_consistent;
        cert.group_checks.push_back(chk);
    }

    cert.verdict = cert.numeric_rank == n && cert.sv_ratio > cert.tolerance &&
                   exact_ok;
    return cert;
}

}  // namespace avgctrl
