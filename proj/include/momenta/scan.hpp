#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "momenta/hankel.hpp"

namespace momenta {

// Worker count: MOMENTA_THREADS when set, else `requested` when positive, else the core count.
int thread_count(int requested = 0);

struct Axis {
    std::string name;
    std::vector<BigRational> values;
};

// "lo:hi:step" with rational or decimal parts; hi is included when it lies on the grid.
Axis parse_axis(const std::string& name, const std::string& range);

enum class Cell : std::int8_t { Infeasible = 0, Feasible = 1, Indeterminate = -1 };

// The Hankel matrix with its distinct entries evaluated once per point.
class HankelEvaluator {
public:
    HankelEvaluator(const MomentTable& table, const HankelSpec& spec, bool use_blocks = true);

    int size() const { return n_; }
    const VarList& vars() const { return vars_; }
    // point = (g, generators...). Indeterminate when a denominator vanishes.
    Cell verdict(const std::vector<BigRational>& point) const;
    // Entries with g fixed, in the generators only.
    HankelEvaluator at_g(const BigRational& g) const;
    // Floating margin (scaled min pivot) used only to rank candidate points.
    std::optional<double> margin(const std::vector<double>& point) const;
    std::optional<RationalMatrix> matrix(const std::vector<BigRational>& point) const;

private:
    HankelEvaluator() = default;
    int n_ = 0;
    VarList vars_;
    bool g_fixed_ = false;
    BigRational g_;
    std::vector<RatFunc> distinct_;
    std::vector<std::vector<int>> index_;  // entry -> distinct
    std::vector<std::vector<int>> blocks_;
    struct FloatTerm {
        double c;
        Monomial mono;
    };
    using FloatPoly = std::vector<FloatTerm>;
    std::vector<std::pair<FloatPoly, FloatPoly>> floats_;  // distinct entries for margin()
    void build_floats();
};

struct FeasibilityGrid {
    std::vector<Axis> axes;  // g first, then generators in declaration order
    std::vector<Cell> cells;  // row-major, last axis fastest
    int n = 0;

    std::size_t size() const { return cells.size(); }
    std::vector<std::size_t> shape() const;
    // Coordinates of cell k.
    std::vector<BigRational> point(std::size_t k) const;
    std::string to_csv() const;
    std::size_t count(Cell c) const;
};

FeasibilityGrid scan_region(const MomentTable& table, const HankelSpec& spec, const std::vector<Axis>& axes,
                            int threads = 0);

// Cells feasible in `finer` must be feasible in `coarser` (same axes).
bool nested(const FeasibilityGrid& coarser, const FeasibilityGrid& finer);

struct QuarticValues {
    double a, m2, m4;
    double dF;   // dF0/dg = -m4/4
    double d2F;  // second derivative
};

// Closed form for the one-matrix quartic model, valid for g >= -1/12.
QuarticValues quartic_analytic(double g);
double quartic_moment(double g, int half_length);  // m_{2l}

struct CriticalEstimate {
    enum class Method { FeasibleBoundary, TruncationRoot, Fit };
    Method method = Method::FeasibleBoundary;
    bool found = false;
    double g_c = 0;
    std::optional<BigRational> exact;
    int n = 0;                    // Hankel size, or 0
    std::string note;
    std::vector<std::pair<int, double>> trend;  // (n, estimate) per grid

    std::string method_name() const;
};

// Infimum of g with a feasible cell at the largest n, trend across all grids.
// Throws std::logic_error when the grids are not nested.
CriticalEstimate estimate_critical_point(const std::vector<FeasibilityGrid>& grids);

struct SliceBox {
    std::vector<std::pair<BigRational, BigRational>> ranges;  // per generator
    int max_level = 10;    // dyadic refinement depth per axis
    int candidates = 4;    // best float candidates tested exactly per level
};

// A point of the g-slice where the Hankel matrix is exactly PSD, if one is found.
std::optional<std::vector<BigRational>> find_feasible_point(const HankelEvaluator& ev, const BigRational& g,
                                                            const SliceBox& box);

// Bisection on g between an infeasible and a feasible slice, to width `tol`.
CriticalEstimate bisect_critical_point(const HankelEvaluator& ev, BigRational g_infeasible, BigRational g_feasible,
                                       const SliceBox& box, double tol);

// Walks g down from the largest of `g_values` (zero skipped) to the first slice without a
// feasible point, then bisects that bracket.
CriticalEstimate feasible_boundary(const HankelEvaluator& ev, const std::vector<BigRational>& g_values,
                                   const SliceBox& box, double tol);

// Boundary where the physical branch of numerator(m_w) = 0 in the single
// generator stops being real, located at a discriminant root.
CriticalEstimate truncation_critical(const MomentTable& table, const CyclicWord& w);

// Discriminant in the generator (variable 1) of a polynomial in (g, x).
Poly discriminant(const Poly& p, int var);

struct FitPoint {
    double g, value;
};

struct FitOptions {
    std::optional<double> g_c;  // fixed when set
    int derivative_order = 1;   // data are d^k F0 / dg^k; gamma = 2 - k - p
};

struct ExponentFit {
    double g_c = 0, c0 = 0, c1 = 0, p = 0;
    double residual = 0;  // root mean square
    double gamma = 0;
    bool g_c_fitted = false;
    std::vector<double> residuals;
};

// value ~ c0 + c1 |g - g_c|^p by variable projection: c0, c1 by linear least
// squares, p (and g_c) by multi-start golden-section search.
ExponentFit fit_exponent(const std::vector<FitPoint>& points, const FitOptions& opts = {});

// Taylor coefficients of -2 g_c (-1 + sqrt(1 - g/g_c)) / g.
std::vector<BigRational> ansatz_coefficients(const BigRational& g_c, int K);

}  // namespace momenta
