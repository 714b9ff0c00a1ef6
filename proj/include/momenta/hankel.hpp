#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "momenta/rat_func.hpp"
#include "momenta/reduce.hpp"

namespace Eigen {

template <>
struct NumTraits<momenta::BigRational> : GenericNumTraits<momenta::BigRational> {
    using Real = momenta::BigRational;
    using NonInteger = momenta::BigRational;
    using Nested = momenta::BigRational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 16
    };
};

template <>
struct NumTraits<momenta::RatFunc> : GenericNumTraits<momenta::RatFunc> {
    using Real = momenta::RatFunc;
    using NonInteger = momenta::RatFunc;
    using Nested = momenta::RatFunc;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 64,
        MulCost = 256
    };
};

}  // namespace Eigen

namespace momenta {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using RationalMatrix = Matrix<BigRational>;
using RatFuncMatrix = Matrix<RatFunc>;

// Basis words and the moment word of every entry.
struct HankelSpec {
    int m = 1;
    std::vector<Word> basis;
    std::vector<std::vector<CyclicWord>> entries;  // canonicalize(reverse(w_i) w_j) unless overridden

    int size() const { return static_cast<int>(basis.size()); }
    int max_entry_length() const;
};

// First n words of the shortlex basis.
HankelSpec hankel_spec(int m, int n);
// Explicit entry words (e.g. a printed matrix); basis labels are informational.
HankelSpec hankel_spec_literal(int m, std::vector<Word> basis, const std::vector<std::vector<std::string>>& entries);

// Index blocks of the basis that the declared negation symmetries decouple:
// entries between different parity classes are forced to vanish.
std::vector<std::vector<int>> parity_blocks(const HankelSpec& spec, const SymmetryGroup& group);

RatFuncMatrix build_hankel(const MomentTable& table, const HankelSpec& spec);

struct PsdVerdict {
    bool feasible = true;
    std::vector<BigRational> pivots;  // pivots met in order (zero pivots included)
    int violating_index = -1;         // leading principal block at which elimination failed
};

// Exact decision by symmetric elimination without pivoting. A zero pivot with a
// nonzero remaining row, or a negative pivot, is infeasible.
PsdVerdict psd_test_exact(RationalMatrix M);

// Same elimination in floating point; min over pivots scaled by the diagonal. Used only for ranking candidates.
double psd_margin(const Eigen::MatrixXd& M);

template <class Scalar>
Matrix<Scalar> principal_submatrix(const Matrix<Scalar>& M, const std::vector<int>& rows) {
    const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
    Matrix<Scalar> out(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) out(i, j) = M(rows[i], rows[j]);
    return out;
}

// Determinant by fraction-based elimination with nonzero pivot search.
template <class Scalar>
Scalar determinant(Matrix<Scalar> M, const Scalar& zero, const Scalar& one) {
    const Eigen::Index n = M.rows();
    Scalar det = one;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index p = k;
        while (p < n && M(p, k) == zero) ++p;
        if (p == n) return zero;
        if (p != k) {
            M.row(p).swap(M.row(k));
            det = -det;
        }
        det = det * M(k, k);
        Scalar inv = one / M(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (M(i, k) == zero) continue;
            Scalar f = M(i, k) * inv;
            for (Eigen::Index j = k; j < n; ++j) M(i, j) = M(i, j) - f * M(k, j);
        }
    }
    return det;
}

// Polynomial form of "principal minor >= 0". With det = N / D in lowest terms:
//  Definite: D is a positive constant times an even monomial, so det >= 0 iff N >= 0.
//  SignConditional: D = c * g^odd * (even monomial); det >= 0 iff N >= 0 for c*g > 0 and N <= 0 for c*g < 0.
//  Product: otherwise det >= 0 iff N * D >= 0 wherever D != 0.
struct MinorConstraint {
    enum class Kind { Definite, SignConditional, Product };
    RatFunc det;
    Kind kind = Kind::Definite;
    Poly constraint;  // N (Definite, SignConditional) or N * D (Product)
    int sign_when_g_positive = 1;  // SignConditional: constraint * this >= 0 for g > 0

    std::string to_string() const;
};

MinorConstraint minor_constraint(const RatFuncMatrix& M, const std::vector<int>& rows);

// Evaluates every entry at a point; nullopt when a denominator vanishes.
std::optional<RationalMatrix> evaluate(const RatFuncMatrix& M, const std::vector<BigRational>& point);

std::string hankel_to_json(const RatFuncMatrix& M);

}  // namespace momenta
