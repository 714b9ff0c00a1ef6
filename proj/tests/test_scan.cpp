#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "momenta/moment_series.hpp"
#include "momenta/scan.hpp"

using namespace momenta;

namespace {

HankelSpec proposition_spec() {
    return hankel_spec_literal(2, {Word(), Word::from_string("A"), Word::from_string("B"), Word::from_string("AA"),
                                   Word::from_string("AB")},
                               {{"", "A", "A", "AA", "A"},
                                {"A", "AA", "A", "A", "A"},
                                {"A", "A", "BB", "A", "A"},
                                {"AA", "A", "A", "AAAA", "A"},
                                {"A", "A", "A", "A", "ABAB"}});
}

// Closed-form feasible set of the printed 5x5 matrix.
bool closed_form_interval(const BigRational& g, const BigRational& m2) {
    BigRational q = BigRational(4) * g * m2 * m2 + m2 - BigRational(1);
    if (g.sign() > 0) return m2.sign() >= 0 && q.sign() <= 0;
    return m2 >= BigRational(1) && q.sign() >= 0;
}

}  // namespace

TEST_CASE("axis parsing") {
    Axis g = parse_axis("g", "-0.10:0.0:1/256");
    CHECK(g.values.front() == BigRational(-1, 10));
    CHECK(g.values.size() == 26);
    CHECK(g.values.back() <= BigRational(0));
    Axis m = parse_axis("m2", "0:2:1/128");
    CHECK(m.values.size() == 257);
    CHECK(m.values.back() == BigRational(2));
    CHECK_THROWS(parse_axis("g", "0:1"));
    CHECK_THROWS(parse_axis("g", "0:1:0"));
    CHECK_THROWS(parse_axis("g", "1:0:1/2"));
}

TEST_CASE("thread count override") {
    setenv("MOMENTA_THREADS", "3", 1);
    CHECK(thread_count(8) == 3);
    unsetenv("MOMENTA_THREADS");
    CHECK(thread_count(5) == 5);
    CHECK(thread_count() >= 1);
}

TEST_CASE("quartic closed form") {
    auto v0 = quartic_analytic(0);
    CHECK(v0.a == 1);
    CHECK(v0.m2 == doctest::Approx(1));
    CHECK(v0.m4 == doctest::Approx(2));
    CHECK(quartic_moment(0, 3) == doctest::Approx(5));
    CHECK(quartic_moment(0.3, 1) == doctest::Approx(quartic_analytic(0.3).m2));
    // Finite differences of dF match d2F.
    for (double g : {-0.07, -0.02, 0.05, 0.4}) {
        const double h = 1e-6;
        CHECK((quartic_analytic(g + h).dF - quartic_analytic(g - h).dF) / (2 * h) ==
              doctest::Approx(quartic_analytic(g).d2F).epsilon(1e-6));
        // SDE: 1 = m2 + g m4.
        CHECK(quartic_analytic(g).m2 + g * quartic_analytic(g).m4 == doctest::Approx(1));
    }
    CHECK(quartic_analytic(-1.0 / 12).d2F == doctest::Approx(36));
    CHECK_THROWS(quartic_analytic(-0.1));
}

TEST_CASE("quartic truth lies in the feasible set") {
    MomentTable t = solve_moments(preset("quartic"), 8);
    HankelSpec spec = hankel_spec(1, 5);
    HankelEvaluator ev(t, spec);
    for (double g : {-0.08, -0.06, -0.03, 0.02, 0.1, 0.5, 2.0}) {
        BigRational gr = BigRational::from_double(g);
        std::vector<BigRational> p{gr, BigRational::from_double(quartic_analytic(g).m2)};
        CHECK(ev.verdict(p) == Cell::Feasible);
        auto m = ev.margin({g, quartic_analytic(g).m2});
        REQUIRE(m);
        CHECK(*m > 0);
        CHECK(ev.at_g(gr).verdict(p) == Cell::Feasible);
    }
    // Negative m2 is excluded at every g.
    CHECK(ev.verdict({BigRational(-1, 20), BigRational(-1, 10)}) == Cell::Infeasible);
    CHECK(ev.verdict({BigRational(0), BigRational(1)}) == Cell::Indeterminate);
}

TEST_CASE("n=5 slices follow the closed-form m2 interval") {
    MomentTable t = solve_moments(preset("ggg"), 4);
    HankelSpec spec = proposition_spec();
    HankelEvaluator ev(t, spec);
    int checked = 0, feasible = 0;
    for (int k = -8; k <= 12; ++k) {
        if (k == 0) continue;
        BigRational g(k, 100);
        HankelEvaluator slice = ev.at_g(g);
        for (int j = 0; j <= 300; ++j) {
            BigRational m2(j, 64);
            Cell c = slice.verdict({g, m2});
            CHECK(c == (closed_form_interval(g, m2) ? Cell::Feasible : Cell::Infeasible));
            ++checked;
            feasible += c == Cell::Feasible;
        }
    }
    CHECK(checked == 20 * 301);
    CHECK(feasible > 300);
    // Below -1/16 the slice is empty; at -1/16 it is the single point m2 = 2.
    CHECK(ev.verdict({BigRational(-1, 16), BigRational(2)}) == Cell::Feasible);
    CHECK(ev.verdict({BigRational(-1, 16), BigRational(2) + BigRational(1, 1024)}) == Cell::Infeasible);
}

TEST_CASE("scan grid and nesting") {
    MomentTable t = solve_moments(preset("ggg"), 6);
    std::vector<Axis> axes{parse_axis("g", "-0.125:0.125:1/64"), parse_axis("m2", "0:3:1/16")};
    FeasibilityGrid g5 = scan_region(t, hankel_spec(2, 5), axes, 2);
    FeasibilityGrid g9 = scan_region(t, hankel_spec(2, 9), axes, 3);
    CHECK(g9.n == 9);
    CHECK(nested(g5, g9));
    CHECK(g9.count(Cell::Feasible) < g5.count(Cell::Feasible));
    CHECK(g9.count(Cell::Feasible) > 0);
    CHECK(g9.count(Cell::Indeterminate) == 49);  // the g = 0 column
    // Thread count does not change the bytes.
    FeasibilityGrid again = scan_region(t, hankel_spec(2, 9), axes, 1);
    CHECK(again.to_csv() == g9.to_csv());
    const std::string csv = g9.to_csv();
    CHECK(csv.rfind("g,m2,feasible\n", 0) == 0);
    CHECK(csv.find(",NA\n") != std::string::npos);

    auto est = estimate_critical_point({g5, g9});
    CHECK(est.trend.size() == 2);
    CHECK(est.trend[0].second <= est.trend[1].second);
    CHECK_THROWS_AS(estimate_critical_point({g9, g5}), std::logic_error);

    FeasibilityGrid wrong = g5;
    wrong.cells.pop_back();
    CHECK_THROWS(nested(g5, wrong));
    CHECK_THROWS(scan_region(t, hankel_spec(2, 9), {axes[0]}));
}

TEST_CASE("gaussian has no critical point") {
    MomentTable t = solve_moments(preset("gaussian1"), 8);
    FeasibilityGrid grid = scan_region(t, hankel_spec(1, 5), {parse_axis("g", "-1:1:1/8")});
    CHECK(grid.count(Cell::Feasible) == grid.size());
    auto est = estimate_critical_point({grid});
    CHECK_FALSE(est.found);
}

TEST_CASE("bisection on slices") {
    MomentTable t = solve_moments(preset("ggg"), 4);
    HankelEvaluator ev(t, proposition_spec());
    SliceBox box{{{BigRational(0), BigRational(4)}}, 10, 4};
    CHECK(find_feasible_point(ev, BigRational(-1, 20), box));
    CHECK_FALSE(find_feasible_point(ev, BigRational(-1, 15), box));
    auto est = bisect_critical_point(ev, BigRational(-1, 10), BigRational(-1, 40), box, 1e-4);
    CHECK(est.found);
    CHECK(est.g_c == doctest::Approx(-0.0625).epsilon(2e-3));
}

TEST_CASE("truncation boundary") {
    MomentTable t4 = solve_moments(preset("ggg"), 4);
    auto abab = truncation_critical(t4, canonicalize(Word::from_string("ABAB")));
    CHECK(abab.found);
    REQUIRE(abab.exact);
    CHECK(*abab.exact == BigRational(-1, 16));
    CHECK(discriminant(t4.at("ABAB").num(), 1) != Poly(t4.vars, BigRational(0)));
    MomentTable t8 = solve_moments(preset("ggg"), 8);
    auto ab4 = truncation_critical(t8, canonicalize(Word::from_string("ABABABAB")));
    CHECK(ab4.found);
    CHECK(ab4.g_c == doctest::Approx(-0.04863).epsilon(1e-3));
}

TEST_CASE("exponent fit recovers synthetic data") {
    std::vector<FitPoint> pts;
    const double gc = -1.0 / 12;
    for (int k = 0; k < 40; ++k) {
        double g = -0.08 + 0.0015 * k;
        pts.push_back({g, 3.0 - 1.7 * std::pow(g - gc, 0.5)});
    }
    auto fixed = fit_exponent(pts, {gc, 1});
    CHECK(fixed.p == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(fixed.c0 == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(fixed.gamma == doctest::Approx(0.5).epsilon(1e-6));
    auto free_fit = fit_exponent(pts);
    CHECK(free_fit.g_c_fitted);
    CHECK(free_fit.g_c == doctest::Approx(gc).epsilon(1e-3));
    CHECK(free_fit.p == doctest::Approx(0.5).epsilon(1e-2));

    // Power-of-two rescaling of the data leaves p bit-identical.
    std::vector<FitPoint> scaled = pts;
    for (auto& p : scaled) p.value *= 8;
    CHECK(fit_exponent(scaled, {gc, 1}).p == fixed.p);
    CHECK(fit_exponent(scaled).p == free_fit.p);

    CHECK_THROWS(fit_exponent({{0, 1}, {1, 2}}));
    std::vector<FitPoint> shuffled = pts;
    std::swap(shuffled[3], shuffled[10]);
    CHECK_THROWS(fit_exponent(shuffled));
}

TEST_CASE("quartic second derivative exponent") {
    std::vector<FitPoint> pts;
    const double gc = -1.0 / 12;
    for (int k = 1; k <= 30; ++k) {
        double g = gc + 1e-8 * k;
        pts.push_back({g, quartic_analytic(g).d2F});
    }
    auto fit = fit_exponent(pts, {gc, 2});
    CHECK(fit.p == doctest::Approx(0.5).epsilon(0.05));
    CHECK(fit.gamma == doctest::Approx(-0.5).epsilon(0.1));
}

TEST_CASE("square-root ansatz against the series") {
    for (long q : {-16, -12, -7, 3}) {
        BigRational gc(1, q);
        auto c = ansatz_coefficients(gc, 3);
        REQUIRE(c.size() == 4);
        CHECK(c[0] == BigRational(1));
        CHECK(c[1] == BigRational(1) / (BigRational(4) * gc));
        CHECK(c[2] == BigRational(1) / (BigRational(8) * gc * gc));
        CHECK(c[3] == BigRational(5) / (BigRational(64) * pow(gc, 3)));
        // Ratios independent of g_c.
        CHECK(c[2] / (c[1] * c[1]) == BigRational(2));
        CHECK(c[3] / pow(c[1], 3) == BigRational(5));
    }
    SeriesEngine eng(preset("ggg"));
    TruncSeries m2 = eng.moment(canonicalize(Word::from_string("AA")), 3);
    BigRational c1 = m2[1], c2 = m2[2], c3 = m2[3];
    CHECK(c2 / (c1 * c1) == BigRational(36, 16));
    CHECK(c3 / pow(c1, 3) == BigRational(432, 64));
}
