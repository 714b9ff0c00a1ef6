#include "momenta/scan.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "momenta/moment_series.hpp"

namespace momenta {

int thread_count(int requested) {
    if (const char* env = std::getenv("MOMENTA_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

Axis parse_axis(const std::string& name, const std::string& range) {
    std::vector<std::string> parts;
    std::stringstream ss(range);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("scan: axis '" + name + "' must be lo:hi:step");
    BigRational lo = BigRational::parse(parts[0]), hi = BigRational::parse(parts[1]),
                step = BigRational::parse(parts[2]);
    if (step.sign() <= 0) throw std::invalid_argument("scan: axis '" + name + "' needs a positive step");
    if (hi < lo) throw std::invalid_argument("scan: axis '" + name + "' has hi < lo");
    Axis a;
    a.name = name;
    for (BigRational v = lo; v <= hi; v += step) {
        a.values.push_back(v);
        if (a.values.size() > 1000000) throw std::invalid_argument("scan: axis '" + name + "' too long");
    }
    return a;
}

namespace {

}  // namespace

HankelEvaluator::HankelEvaluator(const MomentTable& table, const HankelSpec& spec, bool use_blocks)
    : n_(spec.size()), vars_(table.vars) {
    std::map<CyclicWord, int, ShortLex> ids;
    index_.assign(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const CyclicWord& w = spec.entries[i][j];
            auto [it, fresh] = ids.emplace(w, static_cast<int>(distinct_.size()));
            if (fresh) {
                if (!table.has(w))
                    throw std::out_of_range("scan: moment '" + w.to_string() + "' missing; cutoff must be at least " +
                                            std::to_string(spec.max_entry_length()));
                distinct_.push_back(table.at(w));
            }
            index_[i][j] = it->second;
        }
    if (use_blocks) {
        blocks_ = parity_blocks(spec, SymmetryGroup(table.model.m, table.model.symmetries));
    } else {
        blocks_.emplace_back();
        for (int i = 0; i < n_; ++i) blocks_[0].push_back(i);
    }
    build_floats();
}

void HankelEvaluator::build_floats() {
    floats_.clear();
    for (const auto& f : distinct_) {
        FloatPoly num, den;
        for (const auto& t : f.num().terms()) num.push_back({t.coeff.to_double(), t.mono});
        for (const auto& t : f.den().terms()) den.push_back({t.coeff.to_double(), t.mono});
        floats_.emplace_back(std::move(num), std::move(den));
    }
}

HankelEvaluator HankelEvaluator::at_g(const BigRational& g) const {
    HankelEvaluator e;
    e.n_ = n_;
    e.vars_ = vars_;
    e.g_fixed_ = true;
    e.g_ = g;
    e.index_ = index_;
    e.blocks_ = blocks_;
    for (const auto& f : distinct_) {
        if (f.den().substitute(0, g).is_zero()) {
            // Keep the pole: verdict() reports it as indeterminate.
            e.distinct_.push_back(f);
            continue;
        }
        e.distinct_.push_back(f.substitute(0, g));
    }
    e.build_floats();
    return e;
}

std::optional<RationalMatrix> HankelEvaluator::matrix(const std::vector<BigRational>& point) const {
    std::vector<BigRational> vals;
    vals.reserve(distinct_.size());
    try {
        for (const auto& f : distinct_) vals.push_back(f.eval(point));
    } catch (const DenominatorZero&) {
        return std::nullopt;
    }
    RationalMatrix M(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) M(i, j) = vals[index_[i][j]];
    return M;
}

Cell HankelEvaluator::verdict(const std::vector<BigRational>& point) const {
    auto M = matrix(point);
    if (!M) return Cell::Indeterminate;
    for (const auto& b : blocks_)
        if (!psd_test_exact(principal_submatrix(*M, b)).feasible) return Cell::Infeasible;
    return Cell::Feasible;
}

std::optional<double> HankelEvaluator::margin(const std::vector<double>& point) const {
    std::vector<double> vals;
    vals.reserve(floats_.size());
    for (const auto& [num, den] : floats_) {
        double d = 0, n = 0;
        for (const auto& t : den) {
            double x = t.c;
            for (std::size_t i = 0; i < point.size(); ++i)
                for (int e = 0; e < t.mono.e[i]; ++e) x *= point[i];
            d += x;
        }
        if (d == 0 || !std::isfinite(d)) return std::nullopt;
        for (const auto& t : num) {
            double x = t.c;
            for (std::size_t i = 0; i < point.size(); ++i)
                for (int e = 0; e < t.mono.e[i]; ++e) x *= point[i];
            n += x;
        }
        vals.push_back(n / d);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks_) {
        Eigen::MatrixXd M(b.size(), b.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) M(i, j) = vals[index_[b[i]][b[j]]];
        best = std::min(best, psd_margin(M));
    }
    return best;
}

std::vector<std::size_t> FeasibilityGrid::shape() const {
    std::vector<std::size_t> s;
    for (const auto& a : axes) s.push_back(a.values.size());
    return s;
}

std::vector<BigRational> FeasibilityGrid::point(std::size_t k) const {
    std::vector<BigRational> p(axes.size());
    for (std::size_t d = axes.size(); d-- > 0;) {
        std::size_t len = axes[d].values.size();
        p[d] = axes[d].values[k % len];
        k /= len;
    }
    return p;
}

std::size_t FeasibilityGrid::count(Cell c) const { return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), c)); }

std::string FeasibilityGrid::to_csv() const {
    std::string out;
    for (const auto& a : axes) out += a.name + ",";
    out += "feasible\n";
    char buf[64];
    for (std::size_t k = 0; k < cells.size(); ++k) {
        for (const auto& v : point(k)) {
            std::snprintf(buf, sizeof buf, "%.12g,", v.to_double());
            out += buf;
        }
        out += cells[k] == Cell::Feasible ? "1\n" : cells[k] == Cell::Infeasible ? "0\n" : "NA\n";
    }
    return out;
}

FeasibilityGrid scan_region(const MomentTable& table, const HankelSpec& spec, const std::vector<Axis>& axes,
                            int threads) {
    if (axes.size() != table.vars->size())
        throw std::invalid_argument("scan: expected one axis for g and one per generator");
    HankelEvaluator base(table, spec);
    FeasibilityGrid grid;
    grid.axes = axes;
    grid.n = spec.size();
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.values.size();
    grid.cells.assign(total, Cell::Indeterminate);
    const std::size_t per_g = total / std::max<std::size_t>(axes[0].values.size(), 1);
    const int workers = std::max(1, std::min<int>(thread_count(threads), static_cast<int>(axes[0].values.size())));
    // One g column per task; columns are independent, so the result does not depend on scheduling.
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t gi; (gi = next.fetch_add(1)) < axes[0].values.size();) {
            const BigRational& g = axes[0].values[gi];
            HankelEvaluator ev = base.at_g(g);
            for (std::size_t k = gi * per_g; k < (gi + 1) * per_g; ++k) grid.cells[k] = ev.verdict(grid.point(k));
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return grid;
}

bool nested(const FeasibilityGrid& coarser, const FeasibilityGrid& finer) {
    if (coarser.cells.size() != finer.cells.size()) throw std::invalid_argument("scan: grids have different shapes");
    for (std::size_t k = 0; k < finer.cells.size(); ++k)
        if (finer.cells[k] == Cell::Feasible && coarser.cells[k] == Cell::Infeasible) return false;
    return true;
}

QuarticValues quartic_analytic(double g) {
    const double disc = 1 + 12 * g;
    if (disc < 0) throw std::domain_error("quartic: g below the critical point -1/12");
    const double s = std::sqrt(disc);
    const double a = 2 / (1 + s);  // equals (s - 1) / (6 g), finite at g = 0
    QuarticValues v;
    v.a = a;
    v.m2 = a * (4 - a) / 3;
    v.m4 = a * a * (3 - a);
    v.dF = -v.m4 / 4;
    // d m4/dg = -18 a^3 / (1 + s), so F'' = 36 / (1 + s)^4.
    v.d2F = 36 / std::pow(1 + s, 4);
    return v;
}

double quartic_moment(double g, int l) {
    const double a = quartic_analytic(g).a;
    // (2l)! / (l! (l+2)!)
    double c = 1;
    for (int k = 1; k <= 2 * l; ++k) c *= k;
    for (int k = 1; k <= l; ++k) c /= k;
    for (int k = 1; k <= l + 2; ++k) c /= k;
    return std::pow(a, l) * c * (2 * l + 2 - l * a);
}

std::string CriticalEstimate::method_name() const {
    switch (method) {
        case Method::FeasibleBoundary:
            return "feasible-boundary";
        case Method::TruncationRoot:
            return "truncation-root";
        case Method::Fit:
            return "fit";
    }
    return {};
}

CriticalEstimate estimate_critical_point(const std::vector<FeasibilityGrid>& grids) {
    if (grids.empty()) throw std::invalid_argument("critical: no grids");
    for (std::size_t i = 1; i < grids.size(); ++i)
        if (!nested(grids[i - 1], grids[i]))
            throw std::logic_error("critical: feasible sets not nested between n = " + std::to_string(grids[i - 1].n) +
                                   " and n = " + std::to_string(grids[i].n));
    CriticalEstimate est;
    est.method = CriticalEstimate::Method::FeasibleBoundary;
    for (const auto& grid : grids) {
        const auto& gs = grid.axes[0].values;
        const std::size_t per_g = grid.cells.size() / gs.size();
        std::optional<std::size_t> first;
        for (std::size_t gi = 0; gi < gs.size() && !first; ++gi)
            for (std::size_t k = gi * per_g; k < (gi + 1) * per_g; ++k)
                if (grid.cells[k] == Cell::Feasible) {
                    first = gi;
                    break;
                }
        est.n = grid.n;
        if (!first) {
            est.found = false;
            est.note = "no feasible cell in the scanned range";
            est.trend.emplace_back(grid.n, std::nan(""));
            continue;
        }
        est.g_c = gs[*first].to_double();
        est.exact = gs[*first];
        est.found = *first > 0;
        est.note = est.found ? "smallest g with a feasible cell" : "feasible at the lower end of the g range; boundary not bracketed";
        est.trend.emplace_back(grid.n, est.g_c);
    }
    return est;
}

namespace {

BigRational lerp(const std::pair<BigRational, BigRational>& r, long k, long steps) {
    return r.first + (r.second - r.first) * BigRational(k, steps);
}

}  // namespace

std::optional<std::vector<BigRational>> find_feasible_point(const HankelEvaluator& ev, const BigRational& g,
                                                            const SliceBox& box) {
    const HankelEvaluator slice = ev.at_g(g);
    const std::size_t d = box.ranges.size();
    if (d + 1 != ev.vars()->size()) throw std::invalid_argument("critical: box dimension mismatch");
    const double gd = g.to_double();
    auto exact_point = [&](const std::vector<BigRational>& x) {
        std::vector<BigRational> p{g};
        p.insert(p.end(), x.begin(), x.end());
        return p;
    };
    const int cap = d == 1 ? box.max_level : std::min(box.max_level, 14 / static_cast<int>(std::max<std::size_t>(d, 1)));
    for (int level = 1; level <= cap; ++level) {
        const long steps = 1L << level;
        std::vector<std::pair<double, std::vector<long>>> scored;
        std::vector<long> idx(d, 0);
        while (true) {
            std::vector<double> x{gd};
            for (std::size_t i = 0; i < d; ++i) x.push_back(lerp(box.ranges[i], idx[i], steps).to_double());
            if (auto m = slice.margin(x)) scored.emplace_back(*m, idx);
            std::size_t i = 0;
            while (i < d && ++idx[i] > steps) idx[i++] = 0;
            if (i == d) break;
        }
        std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        for (int c = 0; c < box.candidates && c < static_cast<int>(scored.size()); ++c) {
            std::vector<BigRational> x;
            for (std::size_t i = 0; i < d; ++i) x.push_back(lerp(box.ranges[i], scored[c].second[i], steps));
            if (slice.verdict(exact_point(x)) == Cell::Feasible) return exact_point(x);
        }
        // Local refinement of the best candidate by coordinate-wise golden section on the margin.
        if (!scored.empty() && d >= 1) {
            std::vector<double> best;
            for (std::size_t i = 0; i < d; ++i) best.push_back(lerp(box.ranges[i], scored[0].second[i], steps).to_double());
            for (int sweep = 0; sweep < 2; ++sweep)
                for (std::size_t i = 0; i < d; ++i) {
                    double h = (box.ranges[i].second - box.ranges[i].first).to_double() / steps;
                    double lo = best[i] - h, hi = best[i] + h;
                    const double phi = 0.6180339887498949;
                    auto f = [&](double v) {
                        std::vector<double> x{gd};
                        for (std::size_t j = 0; j < d; ++j) x.push_back(j == i ? v : best[j]);
                        auto m = slice.margin(x);
                        return m ? *m : -std::numeric_limits<double>::infinity();
                    };
                    for (int it = 0; it < 60; ++it) {
                        double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
                        if (f(a) < f(b))
                            lo = a;
                        else
                            hi = b;
                    }
                    best[i] = (lo + hi) / 2;
                }
            std::vector<BigRational> x;
            for (double v : best) x.push_back(BigRational::from_double(v));
            if (slice.verdict(exact_point(x)) == Cell::Feasible) return exact_point(x);
        }
    }
    return std::nullopt;
}

CriticalEstimate bisect_critical_point(const HankelEvaluator& ev, BigRational g_infeasible, BigRational g_feasible,
                                       const SliceBox& box, double tol) {
    CriticalEstimate est;
    est.method = CriticalEstimate::Method::FeasibleBoundary;
    est.n = ev.size();
    if (!find_feasible_point(ev, g_feasible, box)) throw std::invalid_argument("critical: upper bracket is not feasible");
    if (find_feasible_point(ev, g_infeasible, box)) {
        est.found = false;
        est.g_c = g_infeasible.to_double();
        est.note = "lower bracket is feasible; boundary lies beyond the bracket";
        return est;
    }
    while ((g_feasible - g_infeasible).abs().to_double() > tol) {
        BigRational mid = (g_feasible + g_infeasible) / BigRational(2);
        if (find_feasible_point(ev, mid, box))
            g_feasible = mid;
        else
            g_infeasible = mid;
    }
    est.found = true;
    est.exact = g_feasible;
    est.g_c = g_feasible.to_double();
    est.note = "most negative g with a feasible point found, bisection width " + std::to_string(tol);
    est.trend.emplace_back(est.n, est.g_c);
    return est;
}

CriticalEstimate feasible_boundary(const HankelEvaluator& ev, const std::vector<BigRational>& g_values,
                                   const SliceBox& box, double tol) {
    std::vector<BigRational> gs = g_values;
    std::sort(gs.begin(), gs.end());
    std::optional<BigRational> feasible_g, infeasible_g;
    for (std::size_t k = gs.size(); k-- > 0;) {
        if (gs[k].is_zero()) continue;
        if (find_feasible_point(ev, gs[k], box)) {
            feasible_g = gs[k];
        } else if (feasible_g) {
            infeasible_g = gs[k];
            break;
        }
    }
    CriticalEstimate est;
    est.method = CriticalEstimate::Method::FeasibleBoundary;
    est.n = ev.size();
    if (!feasible_g) {
        est.note = "no feasible slice in the g range";
        return est;
    }
    if (!infeasible_g) {
        est.g_c = feasible_g->to_double();
        est.exact = feasible_g;
        est.note = "feasible down to the bottom of the g range; boundary not bracketed";
        return est;
    }
    return bisect_critical_point(ev, *infeasible_g, *feasible_g, box, tol);
}

Poly discriminant(const Poly& p, int var) {
    const unsigned deg = p.degree_in(var);
    if (deg == 0) throw std::invalid_argument("discriminant: polynomial does not depend on the variable");
    const Poly dp = p.derivative(var);
    const auto a = p.coeffs_in(var);   // a[k] multiplies x^k
    const auto b = dp.coeffs_in(var);
    const int n = static_cast<int>(deg), m = n - 1;
    const int size = n + m;
    if (size == 1) return Poly(p.vars(), BigRational(1));
    const VarList& vars = p.vars();
    RatFuncMatrix S(size, size);
    const RatFunc zero(vars, BigRational(0));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) S(i, j) = zero;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) S(i, i + k) = RatFunc(a[n - k]);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k)
            if (n - 1 - k < static_cast<int>(b.size())) S(m + i, i + k) = RatFunc(b[m - k]);
    RatFunc det = determinant(S, zero, RatFunc(vars, BigRational(1)));
    RatFunc q = det / RatFunc(a[n]);
    return q.num();
}

namespace {

std::vector<double> float_coeffs(const Poly& p) {  // univariate in variable 0
    std::vector<double> c(p.degree_in(0) + 1, 0.0);
    for (const auto& t : p.terms()) c[t.mono.e[0]] += t.coeff.to_double();
    return c;
}

double horner(const std::vector<double>& c, double x) {
    double s = 0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
    return s;
}

// Real roots of sum c[k] x^k, sorted ascending.
std::vector<double> real_roots(std::vector<double> c) {
    while (!c.empty() && std::abs(c.back()) < 1e-300) c.pop_back();
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<double> out;
    if (d < 1) return out;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -c[i] / c[d];
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    for (int i = 0; i < d; ++i) {
        auto z = es.eigenvalues()[i];
        if (std::abs(z.imag()) <= 1e-7 * (1 + std::abs(z.real()))) out.push_back(z.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Coefficients in x of p(g, x) at a fixed g.
std::vector<double> slice_coeffs(const Poly& p, double g) {
    std::vector<double> c(p.degree_in(1) + 1, 0.0);
    for (const auto& t : p.terms()) c[t.mono.e[1]] += t.coeff.to_double() * std::pow(g, t.mono.e[0]);
    return c;
}

BigRational eval_univariate(const Poly& p, const BigRational& g) {
    BigRational s(0);
    for (const auto& t : p.terms()) s += t.coeff * pow(g, t.mono.e[0]);
    return s;
}

// Smallest-denominator rational within the bracket, if it is an exact root.
std::optional<BigRational> exact_root(const Poly& disc, const BigRational& lo, const BigRational& hi) {
    for (long q = 1; q <= 4096; ++q) {
        BigRational x = hi * BigRational(q);
        mpz_class k;
        mpz_fdiv_q(k.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
        BigRational cand(k, mpz_class(q));
        if (lo <= cand && cand <= hi && eval_univariate(disc, cand).is_zero()) return cand;
    }
    return std::nullopt;
}

}  // namespace

CriticalEstimate truncation_critical(const MomentTable& table, const CyclicWord& w) {
    if (table.vars->size() != 2) throw std::invalid_argument("truncation: needs exactly one generator");
    const Poly N = table.at(w).num();
    if (N.degree_in(1) == 0) throw std::invalid_argument("truncation: numerator of m_" + w.to_string() +
                                                         " does not depend on the generator");
    CriticalEstimate est;
    est.method = CriticalEstimate::Method::TruncationRoot;
    Poly disc = discriminant(N, 1);
    // Drop powers of g: the root at g = 0 is the expansion point itself.
    while (!disc.is_zero() && disc.substitute(0, BigRational(0)).is_zero()) {
        Monomial gm{};
        gm.e[0] = 1;
        disc = *disc.divide_exact(Poly::monomial(disc.vars(), gm, BigRational(1)));
    }
    const auto dc = float_coeffs(disc);
    // Discriminant roots in [-1, 0), closest to zero first.
    std::vector<std::pair<double, std::optional<BigRational>>> roots;
    const int samples = 20000;
    std::vector<double> fd(samples + 1);
    for (int k = 0; k <= samples; ++k) fd[k] = horner(dc, -static_cast<double>(k) / samples);
    for (int k = 0; k < samples; ++k) {
        // Floating signs select the intervals; the decision itself is exact.
        if (k > 0 && fd[k] * fd[k + 1] > 0 && std::abs(fd[k]) > 1e-9 * (1 + std::abs(fd[k + 1]))) continue;
        BigRational a(-k, samples), b(-(k + 1), samples);
        BigRational fa = eval_univariate(disc, a), fb = eval_univariate(disc, b);
        if (fa.is_zero() && k > 0) {
            roots.emplace_back(a.to_double(), a);
            continue;
        }
        if (fa.sign() * fb.sign() >= 0) continue;
        BigRational lo = b, hi = a;
        for (int it = 0; it < 60; ++it) {
            BigRational mid = (lo + hi) / BigRational(2);
            if (eval_univariate(disc, mid).sign() == eval_univariate(disc, lo).sign())
                lo = mid;
            else
                hi = mid;
        }
        roots.emplace_back(((lo + hi) / BigRational(2)).to_double(), exact_root(disc, b, a));
    }
    // Follow the branch that starts at the free value of the generator.
    const double x0 = gue_mixed_moment(table.model.generators.at(0)).to_double();
    auto newton = [&](double g, double x) {
        for (int it = 0; it < 50; ++it) {
            auto c = slice_coeffs(N, g);
            double f = horner(c, x), df = 0;
            for (std::size_t k = c.size(); k-- > 1;) df = df * x + k * c[k];
            if (df == 0) break;
            x -= f / df;
        }
        return x;
    };
    const double g_first = roots.empty() ? -1.0 : roots[0].first;
    double g = -1e-6, x = newton(g, x0);
    const double g_s = g_first / 2;
    for (int k = 1; k <= 2000; ++k) {
        double gk = -1e-6 * std::pow(-g_s / 1e-6, k / 2000.0);
        x = newton(gk, x);
        g = gk;
    }
    auto nearest = [](const std::vector<double>& rs, double t) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < rs.size(); ++i)
            if (std::abs(rs[i] - t) < std::abs(rs[best] - t)) best = i;
        return best;
    };
    auto rs = real_roots(slice_coeffs(N, g));
    if (rs.empty()) throw std::runtime_error("truncation: physical branch not found");
    std::size_t rank = nearest(rs, x);
    for (const auto& [r, exact] : roots) {
        const double eps = 1e-9 * std::max(1.0, std::abs(r));
        auto above = real_roots(slice_coeffs(N, r + eps));
        auto below = real_roots(slice_coeffs(N, r - eps));
        if (rank >= above.size()) break;
        const double t = above[rank];
        if (below.size() < above.size()) {
            std::size_t j = below.empty() ? 0 : nearest(below, t);
            if (below.empty() || std::abs(below[j] - t) > 1e-3 * (1 + std::abs(t))) {
                est.found = true;
                est.g_c = exact ? exact->to_double() : r;
                est.exact = exact;
                std::ostringstream note;
                note.precision(6);
                note << "physical root of the numerator (starting at " << x0 << ") merges and leaves the real line at "
                     << "a discriminant root; value there " << t;
                est.note = note.str();
                return est;
            }
            rank = j;
        } else {
            rank = nearest(below, t);
        }
    }
    est.found = false;
    est.note = "physical branch stays real on [-1, 0)";
    return est;
}

namespace {

struct Projection {
    double rss, c0, c1;
};

Projection project(const std::vector<FitPoint>& pts, double gc, double p) {
    const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = 1;
        X(i, 1) = std::pow(std::abs(pts[i].g - gc), p);
        y(i) = pts[i].value;
    }
    Eigen::Vector2d c = X.colPivHouseholderQr().solve(y);
    double rss = (X * c - y).squaredNorm();
    if (!std::isfinite(rss)) rss = std::numeric_limits<double>::infinity();
    return {rss, c(0), c(1)};
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters) {
    const double phi = 0.6180339887498949;
    double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    double fa = f(a), fb = f(b);
    for (int it = 0; it < iters; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            fb = f(b);
        }
    }
    return fa < fb ? a : b;
}

double best_power(const std::vector<FitPoint>& pts, double gc) {
    double p0 = 0.25, best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 7; ++k) {
        double p = 0.25 * k, r = project(pts, gc, p).rss;
        if (r < best) {
            best = r;
            p0 = p;
        }
    }
    return golden_min([&](double p) { return project(pts, gc, p).rss; }, std::max(0.01, p0 - 0.25), p0 + 0.25, 120);
}

}  // namespace

ExponentFit fit_exponent(const std::vector<FitPoint>& points, const FitOptions& opts) {
    if (points.size() < 4) throw std::invalid_argument("fit: need at least 4 points");
    bool up = true, down = true;
    for (std::size_t i = 1; i < points.size(); ++i) {
        up &= points[i].g > points[i - 1].g;
        down &= points[i].g < points[i - 1].g;
    }
    if (!up && !down) throw std::invalid_argument("fit: g values must be strictly monotone");
    double gmin = points.front().g, gmax = points.back().g;
    if (gmin > gmax) std::swap(gmin, gmax);
    ExponentFit fit;
    if (opts.g_c) {
        fit.g_c = *opts.g_c;
        if (*opts.g_c >= gmin && *opts.g_c <= gmax) throw std::invalid_argument("fit: g_c inside the data range");
    } else {
        // Search the distance to g_c on a log scale on both sides of the data.
        const double span = gmax - gmin;
        auto profile = [&](double gc) { return project(points, gc, best_power(points, gc)).rss; };
        double best = std::numeric_limits<double>::infinity(), best_logd = 0;
        int best_side = -1;
        const int K = 48;
        const double lo = std::log(1e-6 * span), hi = std::log(4 * span);
        for (int side : {-1, 1})
            for (int k = 0; k <= K; ++k) {
                double logd = lo + (hi - lo) * k / K;
                double gc = side < 0 ? gmin - std::exp(logd) : gmax + std::exp(logd);
                double r = profile(gc);
                if (r < best) {
                    best = r;
                    best_logd = logd;
                    best_side = side;
                }
            }
        const double h = (hi - lo) / K;
        auto at = [&](double logd) { return best_side < 0 ? gmin - std::exp(logd) : gmax + std::exp(logd); };
        double logd = golden_min([&](double l) { return profile(at(l)); }, best_logd - h, best_logd + h, 80);
        fit.g_c = at(logd);
        fit.g_c_fitted = true;
    }
    fit.p = best_power(points, fit.g_c);
    Projection pr = project(points, fit.g_c, fit.p);
    fit.c0 = pr.c0;
    fit.c1 = pr.c1;
    fit.residual = std::sqrt(pr.rss / static_cast<double>(points.size()));
    for (const auto& pt : points)
        fit.residuals.push_back(pt.value - (fit.c0 + fit.c1 * std::pow(std::abs(pt.g - fit.g_c), fit.p)));
    fit.gamma = 2 - opts.derivative_order - fit.p;
    return fit;
}

std::vector<BigRational> ansatz_coefficients(const BigRational& g_c, int K) {
    // -2 g_c/g * sum_{k>=1} binom(1/2, k) (-g/g_c)^k
    std::vector<BigRational> out;
    BigRational binom(1);
    for (int k = 0; k <= K + 1; ++k) {
        if (k >= 1) {
            BigRational sign = (k % 2) ? BigRational(-1) : BigRational(1);
            out.push_back(BigRational(-2) * binom * sign / pow(g_c, k - 1));
        }
        binom = binom * (BigRational(1, 2) - BigRational(k)) / BigRational(k + 1);
    }
    return out;
}

}  // namespace momenta
