#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "momenta/expr.hpp"
#include "momenta/hankel.hpp"
#include "momenta/maps.hpp"
#include "momenta/moment_series.hpp"
#include "momenta/reduce.hpp"
#include "momenta/scan.hpp"
#include "momenta/sde.hpp"

using namespace momenta;
using ojson = nlohmann::ordered_json;

namespace {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kParse = 2,
    kSolve = 3,
    kInfeasibleEverywhere = 4,
    kResource = 5,
};

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolveFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleEverywhere : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseFailure("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ParseFailure("cannot write '" + out + "'");
    f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseFailure(what + ": '" + s + "' is not an integer");
    }
}

// Exact rationals as JSON numbers when they are small integers, else as "p/q" strings.
ojson rational_json(const BigRational& r) {
    if (r.is_integer() && r.num().fits_slong_p()) return r.num().get_si();
    return r.to_string();
}

// A model file, a preset, or a table artifact written by `solve`.
struct Input {
    ModelSpec model;
    std::optional<MomentTable> table;
};

MomentTable table_from_artifact(const ojson& j) {
    MomentTable t;
    t.model = parse_model(j.at("model").dump());
    t.cutoff = j.at("config").at("cutoff").get<int>();
    t.vars = model_vars(t.model);
    auto resolve = variable_resolver(t.vars);
    for (const auto& [word, e] : j.at("entries").items()) {
        RatFunc num = parse_expression(e.at("num").get<std::string>(), resolve);
        RatFunc den = parse_expression(e.at("den").get<std::string>(), resolve);
        t.entries.emplace(canonicalize(Word::from_string(word)), num / den);
    }
    for (const auto& w : j.value("unresolved", ojson::array())) t.unresolved.insert(canonicalize(Word::from_string(w.get<std::string>())));
    return t;
}

Input load_input(const std::string& path) {
    Input in;
    try {
        if (path.rfind("preset:", 0) != 0) {
            const std::string text = read_file(path);
            ojson j = ojson::parse(text);
            if (j.contains("entries") && j.contains("model")) {
                in.table = table_from_artifact(j);
                in.model = in.table->model;
                return in;
            }
        }
        in.model = load_model(path);
    } catch (const ParseFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseFailure(std::string("model: ") + e.what());
    }
    return in;
}

MomentTable table_for(const Input& in, int cutoff) {
    if (in.table) {
        if (in.table->cutoff < cutoff)
            throw SolveFailure("reduce: table artifact has cutoff " + std::to_string(in.table->cutoff) + ", need " +
                               std::to_string(cutoff));
        return *in.table;
    }
    try {
        return solve_moments(in.model, cutoff);
    } catch (const std::exception& e) {
        throw SolveFailure(std::string("reduce: ") + e.what());
    }
}

ojson header(const std::string& command, const ojson& config, const ModelSpec* model) {
    ojson h;
    h["tool"] = "momenta";
    h["version"] = MOMENTA_VERSION;
    h["command"] = command;
    h["config"] = config;
    if (model) {
        h["model_hash"] = model_hash(*model);
        h["model"] = ojson::parse(model_to_json(*model));
    }
    return h;
}

std::string csv_header(const ojson& h) {
    std::string out;
    out += "# tool=momenta version=" + h["version"].get<std::string>() + " command=" + h["command"].get<std::string>() + "\n";
    if (h.contains("model_hash")) out += "# model_hash=" + h["model_hash"].get<std::string>() + "\n";
    out += "# config=" + h["config"].dump() + "\n";
    return out;
}

// "--name value" pairs left over after CLI11 parsing, keyed by name without dashes.
std::map<std::string, std::string> extra_pairs(const std::vector<std::string>& extras) {
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& a = extras[i];
        if (a.rfind("--", 0) != 0) throw ParseFailure("unexpected argument '" + a + "'");
        std::string name = a.substr(2), value;
        if (auto eq = name.find('='); eq != std::string::npos) {
            value = name.substr(eq + 1);
            name = name.substr(0, eq);
        } else {
            if (i + 1 >= extras.size()) throw ParseFailure("option --" + name + " needs a value");
            value = extras[++i];
        }
        out[name] = value;
    }
    return out;
}

std::vector<std::string> generator_names(const ModelSpec& m) {
    std::vector<std::string> names;
    for (const auto& g : m.generators) names.push_back(generator_symbol(g));
    return names;
}

// ---- subcommands -------------------------------------------------------

struct SdeArgs {
    std::string model, out, notation = "exponent";
    int max_len = 2;
};

int run_sde(const SdeArgs& a) {
    Input in = load_input(a.model);
    auto eqs = generate_system(in.model, a.max_len, true);
    const bool exponent = a.notation == "exponent";
    if (a.out.empty()) {
        for (const auto& e : eqs) std::cout << format_equation(e, in.model.m, exponent) << "\n";
        return kOk;
    }
    ojson j = header("sde", {{"model", a.model}, {"max_len", a.max_len}, {"notation", a.notation}}, &in.model);
    auto& list = j["equations"] = ojson::array();
    for (const auto& e : eqs)
        list.push_back({{"p", std::string(1, letter_char(e.p))},
                        {"w", e.w.to_string()},
                        {"text", format_equation(e, in.model.m, exponent)}});
    emit(j.dump(2) + "\n", a.out);
    return kOk;
}

struct SolveArgs {
    std::string model, out;
    int cutoff = 4;
};

int run_solve(const SolveArgs& a) {
    Input in = load_input(a.model);
    MomentTable t = table_for(in, a.cutoff);
    ojson j = header("solve", {{"model", a.model}, {"cutoff", a.cutoff}}, &in.model);
    j["vars"] = *t.vars;
    ojson entries = ojson::object(), formulas = ojson::object();
    for (const auto& [w, f] : t.entries) {
        if (static_cast<int>(w.size()) > a.cutoff) continue;
        entries[w.to_string()] = {{"num", f.num().to_string()}, {"den", f.den().to_string()}};
        formulas[w.to_string()] = f.to_string();
    }
    // ordered_json keeps members in a vector, so fill them before attaching.
    j["entries"] = std::move(entries);
    j["formulas"] = std::move(formulas);
    auto report = report_search_space(t);
    j["unresolved"] = report.unresolved;
    j["relations"] = report.relations;
    j["eliminable"] = report.eliminable;
    j["closed"] = report.closed;
    emit(j.dump(2) + "\n", a.out);
    return kOk;
}

struct SeriesArgs {
    std::string model, out, words;
    int K = 5;
};

int run_series(const SeriesArgs& a) {
    Input in = load_input(a.model);
    SeriesEngine eng(in.model);
    std::vector<std::string> words;
    if (!a.words.empty()) {
        words = split(a.words, ',');
    } else {
        words = {"AA", "AAAA"};
        for (const auto& g : in.model.generators)
            if (std::find(words.begin(), words.end(), g.to_string()) == words.end()) words.push_back(g.to_string());
    }
    ojson j = header("series", {{"model", a.model}, {"K", a.K}, {"words", words}}, &in.model);
    auto& s = j["series"] = ojson::object();
    try {
        for (const auto& w : words) {
            Word word = Word::from_string(w);
            if (word.max_letter() >= in.model.m) throw ParseFailure("series: word '" + w + "' uses a letter >= m");
            TruncSeries ser = eng.moment(canonicalize(word), a.K);
            auto& arr = s[w] = ojson::array();
            for (const auto& c : ser.coeffs()) arr.push_back(rational_json(c));
        }
        TruncSeries F = eng.free_energy(a.K);
        auto& arr = s["F"] = ojson::array();
        for (const auto& c : F.coeffs()) arr.push_back(rational_json(c));
    } catch (const ParseFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw SolveFailure(std::string("series: ") + e.what());
    }
    emit(j.dump(2) + "\n", a.out);
    return kOk;
}

// "1,A,A,AA;A,AA,A,A;..." rows of entry words for a printed matrix.
HankelSpec literal_spec(int m, const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : split(text, ';')) rows.push_back(split(r, ','));
    for (auto& r : rows)
        for (auto& w : r)
            if (w == "1") w.clear();
    std::vector<Word> basis;
    for (std::size_t i = 0; i < rows.size(); ++i) basis.push_back(Word());
    try {
        return hankel_spec_literal(m, basis, rows);
    } catch (const std::exception& e) {
        throw ParseFailure(std::string("minor: ") + e.what());
    }
}

struct MinorArgs {
    std::string model, out, rows, entries;
    int n = 0;
};

int run_minor(const MinorArgs& a) {
    Input in = load_input(a.model);
    std::vector<int> rows;
    for (const auto& r : split(a.rows, ',')) rows.push_back(parse_int(r, "--rows"));
    if (rows.empty()) throw ParseFailure("minor: --rows is empty");
    HankelSpec spec;
    if (!a.entries.empty()) {
        spec = literal_spec(in.model.m, a.entries);
    } else {
        int n = a.n ? a.n : *std::max_element(rows.begin(), rows.end()) + 1;
        spec = hankel_spec(in.model.m, n);
    }
    for (int r : rows)
        if (r < 0 || r >= spec.size()) throw ParseFailure("minor: row " + std::to_string(r) + " outside the matrix");
    MomentTable t = table_for(in, spec.max_entry_length());
    RatFuncMatrix M;
    try {
        M = build_hankel(t, spec);
    } catch (const std::exception& e) {
        throw SolveFailure(std::string("hankel: ") + e.what());
    }
    MinorConstraint c = minor_constraint(M, rows);
    ojson j = header("minor", {{"model", a.model}, {"rows", rows}, {"n", spec.size()}, {"entries", a.entries}}, &in.model);
    auto& words = j["entry_words"] = ojson::array();
    for (int r : rows) {
        ojson row = ojson::array();
        for (int s : rows) row.push_back(spec.entries[r][s].to_string());
        words.push_back(row);
    }
    j["determinant"] = c.det.to_string();
    j["kind"] = c.kind == MinorConstraint::Kind::Definite          ? "definite"
                : c.kind == MinorConstraint::Kind::SignConditional ? "sign-conditional"
                                                                     : "product";
    j["constraint"] = c.constraint.to_string();
    j["condition"] = c.to_string();
    emit(j.dump(2) + "\n", a.out);
    return kOk;
}

struct ScanArgs {
    std::string model, out, g;
    int n = 5, threads = 0;
    std::vector<std::string> extras;
};

int run_scan(const ScanArgs& a) {
    Input in = load_input(a.model);
    auto ranges = extra_pairs(a.extras);
    std::vector<Axis> axes;
    ojson axis_cfg = ojson::object();
    try {
        axes.push_back(parse_axis("g", a.g));
        axis_cfg["g"] = a.g;
        for (const auto& name : generator_names(in.model)) {
            auto it = ranges.find(name);
            if (it == ranges.end()) throw ParseFailure("scan: missing --" + name + " lo:hi:step");
            axes.push_back(parse_axis(name, it->second));
            axis_cfg[name] = it->second;
            ranges.erase(it);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseFailure(e.what());
    }
    if (!ranges.empty()) throw ParseFailure("scan: unknown axis --" + ranges.begin()->first);
    HankelSpec spec = hankel_spec(in.model.m, a.n);
    MomentTable t = table_for(in, spec.max_entry_length());
    FeasibilityGrid grid;
    try {
        grid = scan_region(t, spec, axes, a.threads);
    } catch (const std::out_of_range& e) {
        throw SolveFailure(e.what());
    }
    ojson h = header("scan", {{"model", a.model}, {"n", a.n}, {"axes", axis_cfg}}, &in.model);
    std::string text = csv_header(h);
    text += "# counts feasible=" + std::to_string(grid.count(Cell::Feasible)) +
            " infeasible=" + std::to_string(grid.count(Cell::Infeasible)) +
            " indeterminate=" + std::to_string(grid.count(Cell::Indeterminate)) + "\n";
    text += grid.to_csv();
    emit(text, a.out);
    if (grid.count(Cell::Feasible) == 0) throw InfeasibleEverywhere("scan: no feasible cell in the region");
    return kOk;
}

struct CriticalArgs {
    std::string model, out, word, g, ns;
    int cutoff = 0, threads = 0;
    double tol = 1e-4;
    std::vector<std::string> extras;
};

ojson estimate_json(const CriticalEstimate& e) {
    ojson j;
    j["method"] = e.method_name();
    j["found"] = e.found;
    j["n"] = e.n;
    if (e.found) j["g_c"] = e.g_c;
    if (e.exact) j["g_c_exact"] = e.exact->to_string();
    j["note"] = e.note;
    return j;
}

int run_critical(const CriticalArgs& a) {
    Input in = load_input(a.model);
    ojson cfg{{"model", a.model}};
    ojson j;
    if (!a.word.empty()) {
        Word w = Word::from_string(a.word);
        const int cutoff = a.cutoff ? a.cutoff : static_cast<int>(w.size());
        cfg["word"] = a.word;
        cfg["cutoff"] = cutoff;
        MomentTable t = table_for(in, cutoff);
        j = header("critical", cfg, &in.model);
        try {
            j["estimate"] = estimate_json(truncation_critical(t, canonicalize(w)));
        } catch (const std::exception& e) {
            throw SolveFailure(std::string("critical: ") + e.what());
        }
        emit(j.dump(2) + "\n", a.out);
        return kOk;
    }
    if (a.ns.empty() || a.g.empty()) throw ParseFailure("critical: give --word, or -n with --g lo:hi:step and generator ranges");
    auto ranges = extra_pairs(a.extras);
    Axis gaxis;
    SliceBox box;
    ojson box_cfg = ojson::object();
    try {
        gaxis = parse_axis("g", a.g);
        for (const auto& name : generator_names(in.model)) {
            auto it = ranges.find(name);
            if (it == ranges.end()) throw ParseFailure("critical: missing --" + name + " lo:hi");
            auto parts = split(it->second, ':');
            if (parts.size() < 2) throw ParseFailure("critical: range for --" + name + " must be lo:hi");
            box.ranges.emplace_back(BigRational::parse(parts[0]), BigRational::parse(parts[1]));
            box_cfg[name] = it->second;
            ranges.erase(it);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseFailure(e.what());
    }
    if (!ranges.empty()) throw ParseFailure("critical: unknown range --" + ranges.begin()->first);
    std::vector<int> ns;
    for (const auto& s : split(a.ns, ',')) ns.push_back(parse_int(s, "-n"));
    cfg["n"] = ns;
    cfg["g"] = a.g;
    cfg["box"] = box_cfg;
    cfg["tol"] = a.tol;
    j = header("critical", cfg, &in.model);
    auto& results = j["estimates"] = ojson::array();
    bool any_feasible = false;
    for (int n : ns) {
        HankelSpec spec = hankel_spec(in.model.m, n);
        MomentTable t = table_for(in, spec.max_entry_length());
        HankelEvaluator ev(t, spec);
        CriticalEstimate est = feasible_boundary(ev, gaxis.values, box, a.tol);
        any_feasible |= est.found || est.exact.has_value();
        results.push_back(estimate_json(est));
    }
    emit(j.dump(2) + "\n", a.out);
    if (!any_feasible) throw InfeasibleEverywhere("critical: no feasible slice for any n");
    return kOk;
}

struct FitArgs {
    std::string input, out, level, boundary = "lower";
    std::optional<double> gc;
    int derivative_order = 1;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (t.columns.empty())
            t.columns = split(line, ',');
        else
            t.rows.push_back(split(line, ','));
    }
    if (t.columns.empty()) throw ParseFailure("fit: '" + path + "' has no header");
    return t;
}

double to_double(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseFailure("fit: '" + s + "' is not a number");
    }
}

int run_fit(const FitArgs& a) {
    CsvTable csv = read_csv(a.input);
    auto col = [&](const std::string& name) -> int {
        auto it = std::find(csv.columns.begin(), csv.columns.end(), name);
        return it == csv.columns.end() ? -1 : static_cast<int>(it - csv.columns.begin());
    };
    std::vector<FitPoint> points;
    std::string fitted_column;
    if (col("feasible") >= 0) {
        // Boundary of the feasible set of the one free generator at a fixed level of the others.
        std::map<std::string, double> levels;
        for (const auto& l : split(a.level, ',')) {
            auto kv = split(l, '=');
            if (kv.size() != 2 || col(kv[0]) < 0) throw ParseFailure("fit: bad --level '" + l + "'");
            levels[kv[0]] = to_double(kv[1]);
        }
        std::vector<int> free;
        for (std::size_t c = 1; c + 1 < csv.columns.size(); ++c)
            if (!levels.count(csv.columns[c])) free.push_back(static_cast<int>(c));
        if (free.size() != 1) throw ParseFailure("fit: --level must fix all generator axes but one");
        fitted_column = csv.columns[free[0]];
        const int fcol = col("feasible"), gcol = col("g");
        std::map<double, std::pair<double, double>> extent;
        for (const auto& r : csv.rows) {
            if (r.size() != csv.columns.size()) throw ParseFailure("fit: ragged row");
            bool on_level = true;
            for (const auto& [name, v] : levels) on_level &= std::abs(to_double(r[col(name)]) - v) <= 1e-12 * (1 + std::abs(v));
            if (!on_level || r[fcol] != "1") continue;
            double g = to_double(r[gcol]), x = to_double(r[free[0]]);
            auto [it, fresh] = extent.emplace(g, std::make_pair(x, x));
            if (!fresh) {
                it->second.first = std::min(it->second.first, x);
                it->second.second = std::max(it->second.second, x);
            }
        }
        for (const auto& [g, mm] : extent) points.push_back({g, a.boundary == "upper" ? mm.second : mm.first});
        if (points.empty()) throw InfeasibleEverywhere("fit: no feasible cell on the level set");
    } else {
        const int gcol = col("g"), vcol = col("value");
        if (gcol < 0 || vcol < 0) throw ParseFailure("fit: expected columns g,value or a scan grid");
        for (const auto& r : csv.rows) points.push_back({to_double(r[gcol]), to_double(r[vcol])});
        fitted_column = "value";
    }
    ExponentFit fit;
    try {
        fit = fit_exponent(points, {a.gc, a.derivative_order});
    } catch (const std::exception& e) {
        throw SolveFailure(std::string("fit: ") + e.what());
    }
    ojson cfg{{"input", a.input}, {"level", a.level}, {"boundary", a.boundary}, {"derivative_order", a.derivative_order}};
    if (a.gc) cfg["g_c"] = *a.gc;
    ojson j = header("fit", cfg, nullptr);
    j["fitted"] = fitted_column;
    j["fit"] = {{"g_c", fit.g_c}, {"g_c_fitted", fit.g_c_fitted}, {"c0", fit.c0}, {"c1", fit.c1}, {"p", fit.p},
                {"gamma", fit.gamma}, {"rms_residual", fit.residual}};
    auto& pts = j["points"] = ojson::array();
    for (std::size_t i = 0; i < points.size(); ++i)
        pts.push_back({{"g", points[i].g}, {"value", points[i].value}, {"residual", fit.residuals[i]}});
    emit(j.dump(2) + "\n", a.out);
    return kOk;
}

struct MapsArgs {
    std::string rooted, polygons, model, out;
    int max_j = 2, m = 0;
    std::optional<int> genus;
};

int run_maps(const MapsArgs& a) {
    GluingProblem p;
    std::optional<ModelSpec> model;
    if (!a.model.empty()) {
        model = load_input(a.model).model;
        p = GluingProblem::from_model(*model, Word::from_string(a.rooted));
    } else {
        p.rooted = Word::from_string(a.rooted);
        int m = p.rooted.max_letter() + 1;
        if (!a.polygons.empty())
            for (const auto& item : split(a.polygons, ',')) {
                auto kv = split(item, ':');
                if (kv.size() != 2) throw ParseFailure("maps: polygon '" + item + "' must be WORD:weight");
                PotentialTerm t;
                t.word = canonicalize(Word::from_string(kv[0]));
                try {
                    t.coeff = BigRational::parse(kv[1]);
                } catch (const std::exception& e) {
                    throw ParseFailure(std::string("maps: ") + e.what());
                }
                m = std::max(m, t.word.word().max_letter() + 1);
                p.polygons.push_back(t);
            }
        p.m = a.m ? a.m : std::max(m, 1);
    }
    p.genus = a.genus;
    GluingCount c;
    try {
        c = count_gluings(p, a.max_j);
    } catch (const ResourceCapExceeded&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseFailure(e.what());
    }
    ojson cfg{{"rooted", a.rooted}, {"polygons", a.polygons}, {"model", a.model}, {"max_j", a.max_j}, {"m", p.m}};
    if (a.genus) cfg["genus"] = *a.genus;
    ojson j = header("maps", cfg, model ? &*model : nullptr);
    ojson body = ojson::parse(gluings_to_json(p, c));
    for (auto& [k, v] : body.items()) j[k] = v;
    emit(j.dump(2) + "\n", a.out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schwinger-Dyson moment solver and positivity bootstrap"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(MOMENTA_VERSION));

    SdeArgs sde;
    auto* c_sde = app.add_subcommand("sde", "print the loop equations up to an insertion length");
    c_sde->add_option("model", sde.model, "model JSON or preset:NAME")->required();
    c_sde->add_option("--max-len", sde.max_len, "longest insertion word")->check(CLI::NonNegativeNumber);
    c_sde->add_option("--notation", sde.notation)->check(CLI::IsMember({"exponent", "word"}));
    c_sde->add_option("--out", sde.out);

    SolveArgs solve;
    auto* c_solve = app.add_subcommand("solve", "solve moments up to a cutoff in terms of the generators");
    c_solve->add_option("model", solve.model)->required();
    c_solve->add_option("--cutoff", solve.cutoff)->check(CLI::NonNegativeNumber);
    c_solve->add_option("--out", solve.out);

    SeriesArgs series;
    auto* c_series = app.add_subcommand("series", "weak-coupling series of moments and free energy");
    c_series->add_option("model", series.model)->required();
    c_series->add_option("-K", series.K, "highest power of g")->check(CLI::NonNegativeNumber);
    c_series->add_option("--words", series.words, "comma-separated words");
    c_series->add_option("--out", series.out);

    MinorArgs minor;
    auto* c_minor = app.add_subcommand("minor", "symbolic principal minor of the Hankel matrix");
    c_minor->add_option("model", minor.model)->required();
    c_minor->add_option("--rows", minor.rows)->required();
    c_minor->add_option("-n", minor.n, "basis size");
    c_minor->add_option("--entries", minor.entries, "explicit entry words, rows split by ';'");
    c_minor->add_option("--out", minor.out);

    ScanArgs scan;
    auto* c_scan = app.add_subcommand("scan", "exact PSD feasibility over a grid");
    c_scan->add_option("model", scan.model)->required();
    c_scan->add_option("-n", scan.n, "basis size")->check(CLI::PositiveNumber);
    c_scan->add_option("--g", scan.g, "lo:hi:step")->required();
    c_scan->add_option("--threads", scan.threads);
    c_scan->add_option("--out", scan.out);
    c_scan->allow_extras();

    CriticalArgs crit;
    auto* c_crit = app.add_subcommand("critical", "critical coupling from truncation or from the feasible boundary");
    c_crit->add_option("model", crit.model)->required();
    c_crit->add_option("--word", crit.word, "truncation method on this moment");
    c_crit->add_option("--cutoff", crit.cutoff);
    c_crit->add_option("-n", crit.ns, "comma-separated basis sizes");
    c_crit->add_option("--g", crit.g, "lo:hi:step");
    c_crit->add_option("--tol", crit.tol);
    c_crit->add_option("--out", crit.out);
    c_crit->allow_extras();

    FitArgs fit;
    auto* c_fit = app.add_subcommand("fit", "fit c0 + c1 |g - g_c|^p to a level-set boundary or g,value data");
    c_fit->add_option("input", fit.input, "scan CSV or g,value CSV")->required();
    c_fit->add_option("--level", fit.level, "fixed generator values, e.g. m4=3");
    c_fit->add_option("--boundary", fit.boundary)->check(CLI::IsMember({"lower", "upper"}));
    c_fit->add_option("--gc", fit.gc);
    c_fit->add_option("--derivative-order", fit.derivative_order);
    c_fit->add_option("--out", fit.out);

    MapsArgs maps;
    auto* c_maps = app.add_subcommand("maps", "count colored polygon gluings by genus and polygon number");
    c_maps->add_option("--rooted", maps.rooted)->required();
    c_maps->add_option("--polygons", maps.polygons, "WORD:weight,...");
    c_maps->add_option("--model", maps.model, "take polygons from a model instead");
    c_maps->add_option("--max-j", maps.max_j)->check(CLI::NonNegativeNumber);
    c_maps->add_option("--m", maps.m);
    c_maps->add_option("--genus", maps.genus);
    c_maps->add_option("--out", maps.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*c_sde) return run_sde(sde);
        if (*c_solve) return run_solve(solve);
        if (*c_series) return run_series(series);
        if (*c_minor) return run_minor(minor);
        if (*c_scan) {
            scan.extras = c_scan->remaining();
            return run_scan(scan);
        }
        if (*c_crit) {
            crit.extras = c_crit->remaining();
            return run_critical(crit);
        }
        if (*c_fit) return run_fit(fit);
        if (*c_maps) return run_maps(maps);
    } catch (const ParseFailure& e) {
        std::cerr << "momenta: " << e.what() << "\n";
        return kParse;
    } catch (const SolveFailure& e) {
        std::cerr << "momenta: " << e.what() << "\n";
        return kSolve;
    } catch (const InfeasibleEverywhere& e) {
        std::cerr << "momenta: " << e.what() << "\n";
        return kInfeasibleEverywhere;
    } catch (const ResourceCapExceeded& e) {
        std::cerr << "momenta: " << e.what() << "\n";
        return kResource;
    } catch (const ModelError& e) {
        std::cerr << "momenta: model: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "momenta: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
