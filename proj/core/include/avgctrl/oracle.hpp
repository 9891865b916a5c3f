#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "avgctrl/scc.hpp"

namespace avgctrl {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Dense univariate polynomial with exact integer coefficients.
struct Poly {
    std::vector<BigInt> c;  // c[k] * sigma^k

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const;
    double eval(double sigma) const;
    static Poly mul(const Poly& a, const Poly& b);
    void add_in(const Poly& o);
    /// Integral over [-1, 1] against the uniform probability measure:
    /// odd powers vanish, sigma^t contributes 1/(t+1) for even t.
    Rational integrate_uniform() const;
};

/// A randomized compliant pair: every structural nonzero carries an
/// independent polynomial with integer coefficients in [-3, 3], not all
/// zero, of degree <= d. Reproducible from the seed.
struct PolynomialEnsemble {
    int n = 0;
    int degree = 0;
    std::uint64_t seed = 0;
    std::map<std::pair<int, int>, Poly> a;  // (row, col), 1-based
    std::map<int, Poly> b;                  // row, 1-based
};

PolynomialEnsemble oracle_sample(const SparsityPattern& g, int degree,
                                 std::uint64_t seed);

/// Exact rank of the first m columns of C(A, b): the entries of A^k b are
/// integer polynomials, integrated in closed form, and the rank of the
/// resulting rational matrix is computed by exact elimination.
int oracle_rank(const PolynomialEnsemble& pe, int m);

/// A full-rank oracle sample on a verdict-false pattern; forbidden by the
/// necessity theorem, so it signals an implementation bug.
class OracleContradiction : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AgreementReport {
    bool verdict = false;         // the graph-side decision
    bool agreement = false;
    std::vector<int> ranks;       // per sample
    int full_rank_count = 0;
    int columns = 0;
    int samples = 0;
    int degree = 0;
    std::uint64_t seed = 0;
};

/// Draws s samples and checks them against the decision: verdict-false
/// patterns must stay rank-deficient on every sample (throws
/// OracleContradiction otherwise); verdict-true patterns agree when at
/// least one sample reaches full rank. columns < 0 selects the default
/// window of 4n columns.
AgreementReport cross_validate(const SparsityPattern& g, int samples, int degree,
                               std::uint64_t seed, int columns = -1);

}  // namespace avgctrl
