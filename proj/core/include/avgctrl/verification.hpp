#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "avgctrl/certificate.hpp"

namespace avgctrl {

/// Moment law of the fixed instantiation: integral of f^r over Sigma equals
/// 1/(r+1). Throws std::domain_error for r < 0.
double moment(double r);
double moment(const NuValue& r, const EdgeWeighting& w);

/// Column j of C(A, b) built from the moment law, with per-row walk
/// provenance. Support equals reachable_set(j).
struct ColumnVec {
    std::int64_t j = 0;
    Eigen::VectorXd v;
    std::vector<std::optional<WalkDescriptor>> provenance;  // per row, 0-based
};

ColumnVec column(const ReducedGraph& g, const EdgeWeighting& w, std::int64_t j);

/// The n certifying columns of the sufficiency argument: the core columns
/// 1..core_alpha_count plus, for each residue group ell, m_ell columns
/// spaced L apart starting at j* + ell.
struct ColumnSelection {
    std::int64_t j_star = 0;
    std::vector<std::int64_t> core_columns;
    struct Group {
        int ell = 0;
        std::vector<int> v_prime;            // V'_ell, sorted
        std::vector<std::int64_t> columns;   // j* + ell + k*L, k = 0..m_ell-1
    };
    std::vector<Group> groups;
    std::vector<std::int64_t> all_columns;   // core columns then groups
};

ColumnSelection select_columns(const ReducedGraph& g, const EdgeWeighting& w);

/// Full-rank certificate for the selected n x n matrix. The verdict
/// requires numeric rank n (singular value ratio above tolerance) and all
/// per-group exact checks: pairwise distinct nu values and a nonzero
/// Cauchy-structured group determinant.
struct RankCertificate {
    bool verdict = false;
    int numeric_rank = 0;
    double sv_ratio = 0.0;
    double tolerance = 1e-10;
    struct GroupCheck {
        bool nus_distinct = false;
        bool cauchy_consistent = false;  // two evaluation routes agree to 1e-14
        bool det_nonzero = false;
    };
    std::vector<GroupCheck> group_checks;
    ColumnSelection selection;
    Eigen::MatrixXd matrix;
};

RankCertificate certify_rank(const ReducedGraph& g, const EdgeWeighting& w);

/// Numeric rank of an arbitrary matrix by singular values, with the same
/// relative tolerance as certify_rank.
int numeric_rank(const Eigen::MatrixXd& m, double tol = 1e-10);

}  // namespace avgctrl
