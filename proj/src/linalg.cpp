#include "lr/linalg.hpp"

#include <numeric>
#include <vector>

namespace lr {
namespace {

// Fraction-free Gaussian elimination (Bareiss) over raw integers. Rows are
// first scaled integer (row scaling leaves rank and null space unchanged);
// every division below is then exact. Pivots are chosen among the remaining
// submatrix by smallest bit length to curb coefficient growth.
struct Echelon {
    std::vector<std::vector<mpz_class>> m;
    std::vector<Eigen::Index> colPerm;  // column j of m is original column colPerm[j]
    Eigen::Index rows = 0, cols = 0;
    Eigen::Index rank = 0;
};

Echelon eliminate(const RatMatrix& input) {
    Echelon e;
    e.rows = input.rows();
    e.cols = input.cols();
    e.colPerm.resize(static_cast<std::size_t>(e.cols));
    std::iota(e.colPerm.begin(), e.colPerm.end(), 0);

    e.m.assign(static_cast<std::size_t>(e.rows), std::vector<mpz_class>(static_cast<std::size_t>(e.cols)));
    mpz_class l, g, f;
    for (Eigen::Index r = 0; r < e.rows; ++r) {
        l = 1;
        for (Eigen::Index c = 0; c < e.cols; ++c) {
            const mpz_class& d = input(r, c).den();
            mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
            l = l / g * d;
        }
        auto& row = e.m[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < e.cols; ++c) {
            const Rational& x = input(r, c);
            mpz_divexact(f.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
            row[static_cast<std::size_t>(c)] = x.num() * f;
        }
    }

    mpz_class prevPivot{1}, t1, t2;
    Eigen::Index k = 0;
    while (k < e.rows && k < e.cols) {
        Eigen::Index pr = -1, pc = -1;
        std::size_t best = 0;
        for (Eigen::Index c = k; c < e.cols; ++c) {
            for (Eigen::Index r = k; r < e.rows; ++r) {
                const mpz_class& x = e.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                if (sgn(x) == 0) continue;
                std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
                if (pr < 0 || bits < best) {
                    pr = r;
                    pc = c;
                    best = bits;
                }
            }
        }
        if (pr < 0) break;
        if (pr != k) std::swap(e.m[static_cast<std::size_t>(pr)], e.m[static_cast<std::size_t>(k)]);
        if (pc != k) {
            for (auto& row : e.m) std::swap(row[static_cast<std::size_t>(pc)], row[static_cast<std::size_t>(k)]);
            std::swap(e.colPerm[static_cast<std::size_t>(pc)], e.colPerm[static_cast<std::size_t>(k)]);
        }
        const auto& pivotRow = e.m[static_cast<std::size_t>(k)];
        const mpz_class& pivot = pivotRow[static_cast<std::size_t>(k)];
        for (Eigen::Index r = k + 1; r < e.rows; ++r) {
            auto& row = e.m[static_cast<std::size_t>(r)];
            const mpz_class rk = row[static_cast<std::size_t>(k)];
            for (Eigen::Index c = k + 1; c < e.cols; ++c) {
                mpz_class& x = row[static_cast<std::size_t>(c)];
                mpz_mul(t1.get_mpz_t(), pivot.get_mpz_t(), x.get_mpz_t());
                mpz_mul(t2.get_mpz_t(), rk.get_mpz_t(), pivotRow[static_cast<std::size_t>(c)].get_mpz_t());
                mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
                mpz_divexact(x.get_mpz_t(), t1.get_mpz_t(), prevPivot.get_mpz_t());
            }
            row[static_cast<std::size_t>(k)] = 0;
        }
        prevPivot = pivot;
        ++k;
    }
    e.rank = k;
    return e;
}

}  // namespace

Eigen::Index rankOf(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return eliminate(m).rank;
}

std::vector<RatVector> nullSpace(const RatMatrix& m) {
    const Eigen::Index cols = m.cols();
    std::vector<RatVector> basis;
    if (cols == 0) return basis;
    if (m.rows() == 0) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            RatVector v = RatVector::Constant(cols, Rational(0));
            v(j) = Rational(1);
            basis.push_back(std::move(v));
        }
        return basis;
    }
    Echelon e = eliminate(m);
    const Eigen::Index r = e.rank;
    // Back substitution in the permuted triangular system: for each free
    // column f >= r, solve U * x_basic = -U_col(f).
    for (Eigen::Index f = r; f < cols; ++f) {
        RatVector xp = RatVector::Constant(cols, Rational(0));  // permuted coordinates
        xp(f) = Rational(1);
        for (Eigen::Index i = r - 1; i >= 0; --i) {
            const auto& row = e.m[static_cast<std::size_t>(i)];
            Rational s(0);
            for (Eigen::Index j = i + 1; j < cols; ++j) {
                const mpz_class& u = row[static_cast<std::size_t>(j)];
                if (sgn(u) == 0 || xp(j).isZero()) continue;
                s += Rational(u, mpz_class(1)) * xp(j);
            }
            xp(i) = -s / Rational(row[static_cast<std::size_t>(i)], mpz_class(1));
        }
        RatVector x = RatVector::Constant(cols, Rational(0));
        for (Eigen::Index j = 0; j < cols; ++j) x(e.colPerm[static_cast<std::size_t>(j)]) = xp(j);
        basis.push_back(normalizedIntegerVector(x));
    }
    return basis;
}

RatVector normalizedIntegerVector(const RatVector& v) {
    mpz_class denLcm = 1, numGcd = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i).isZero()) continue;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), denLcm.get_mpz_t(), v(i).den().get_mpz_t());
        denLcm = denLcm / g * v(i).den();
    }
    RatVector out = v;
    if (denLcm != 1) {
        Rational f(denLcm, mpz_class(1));
        for (Eigen::Index i = 0; i < out.size(); ++i) out(i) *= f;
    }
    int firstSign = 0;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out(i).isZero()) continue;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), numGcd.get_mpz_t(), out(i).num().get_mpz_t());
        numGcd = g;
        if (firstSign == 0) firstSign = out(i).sign();
    }
    if (numGcd == 0) return out;
    if (firstSign < 0) numGcd = -numGcd;
    Rational f(mpz_class(1), numGcd);
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) *= f;
    return out;
}

}  // namespace lr
