#include "avgctrl/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace avgctrl {

bool Poly::is_zero() const {
    for (const BigInt& k : c)
        if (k != 0) return false;
    return true;
}

double Poly::eval(double sigma) const {
    double acc = 0.0;
    for (size_t k = c.size(); k-- > 0;)
        acc = acc * sigma + c[k].convert_to<double>();
    return acc;
}

Poly Poly::mul(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Poly out;
    out.c.assign(a.c.size() + b.c.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    }
    return out;
}

void Poly::add_in(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), BigInt(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
}

Rational Poly::integrate_uniform() const {
    Rational acc = 0;
    for (size_t t = 0; t < c.size(); t += 2)
        acc += Rational(c[t], BigInt(t + 1));
    return acc;
}

PolynomialEnsemble oracle_sample(const SparsityPattern& g, int degree,
                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto draw = [&]() {
        Poly p;
        do {
            p.c.assign(degree + 1, BigInt(0));
            for (int k = 0; k <= degree; ++k) p.c[k] = coeff(rng);
        } while (p.is_zero());
        return p;
    };
    PolynomialEnsemble pe;
    pe.n = g.n;
    pe.degree = degree;
    pe.seed = seed;
    for (const Edge& e : g.edges) {
        if (e.from == kBeta)
            pe.b[e.to] = draw();
        else
            pe.a[{e.to, e.from}] = draw();
    }
    return pe;
}

namespace {

int exact_rank(const std::vector<std::vector<Rational>>& m) {
    if (m.empty()) return 0;
    std::vector<std::vector<Rational>> a = m;
    int rows = static_cast<int>(a.size());
    int cols = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            if (a[r][col] == 0) continue;
            Rational factor = a[r][col] / a[rank][col];
            for (int cc = col; cc < cols; ++cc)
                a[r][cc] -= factor * a[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int oracle_rank(const PolynomialEnsemble& pe, int m) {
    int n = pe.n;
    std::vector<std::vector<Rational>> cab(n, std::vector<Rational>(m, Rational(0)));
    std::vector<Poly> v(n + 1);
    for (const auto& [row, p] : pe.b) v[row] = p;
    for (int col = 0; col < m; ++col) {
        for (int i = 1; i <= n; ++i)
            cab[i - 1][col] = v[i].integrate_uniform();
        if (col + 1 == m) break;
        std::vector<Poly> next(n + 1);
        for (const auto& [pos, p] : pe.a) {
            if (v[pos.second].c.empty()) continue;
            next[pos.first].add_in(Poly::mul(p, v[pos.second]));
        }
        v = std::move(next);
    }
    return exact_rank(cab);
}

AgreementReport cross_validate(const SparsityPattern& g, int samples, int degree,
                               std::uint64_t seed, int columns) {
    AgreementReport rep;
    rep.verdict = decide_structural_avg_ctrl(g).verdict;
    rep.samples = samples;
    rep.degree = degree;
    rep.seed = seed;
    rep.columns = columns > 0 ? columns : 4 * g.n;

    for (int s = 0; s < samples; ++s) {
        std::uint64_t sample_seed = seed ^ (0x9e3779b97f4a7c15ULL * (s + 1));
        PolynomialEnsemble pe = oracle_sample(g, degree, sample_seed);
        int rank = oracle_rank(pe, rep.columns);
        rep.ranks.push_back(rank);
        if (rank == g.n) {
            ++rep.full_rank_count;
            if (!rep.verdict) {
                std::ostringstream os;
                os << "full-rank sample (seed " << sample_seed
                   << ") on a verdict-false pattern";
                throw OracleContradiction(os.str());
            }
        }
    }
    rep.agreement = rep.verdict ? rep.full_rank_count > 0 : true;
    return rep;
}

}  // namespace avgctrl
