#pragma once

#include "lr/rational.hpp"

#include <Eigen/Core>

#include <vector>

// Eigen scalar adaptor for the exact rational type.
namespace Eigen {
template <>
struct NumTraits<lr::Rational> : GenericNumTraits<lr::Rational> {
    typedef lr::Rational Real;
    typedef lr::Rational NonInteger;
    typedef lr::Rational Nested;

    static inline Real epsilon() { return lr::Rational(0); }
    static inline Real dummy_precision() { return lr::Rational(0); }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};
}  // namespace Eigen

namespace lr {

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Exact rank via fraction-free (Bareiss) elimination with smallest-bit-length pivoting.
Eigen::Index rankOf(const RatMatrix& m);

/// Exact null-space basis of m (as column vectors). Empty result means full column rank.
std::vector<RatVector> nullSpace(const RatMatrix& m);

/// Scales v so entries are coprime integers and the first nonzero entry is positive.
RatVector normalizedIntegerVector(const RatVector& v);

}  // namespace lr
