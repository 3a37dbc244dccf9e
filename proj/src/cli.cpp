#include "emdd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "emdd/analysis.hpp"
#include "emdd/cost.hpp"
#include "emdd/errors.hpp"
#include "emdd/genfunc.hpp"
#include "emdd/monge.hpp"
#include "emdd/transport.hpp"

namespace emdd {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitData = 4;

json rational_json(const Rational& r, int digits) {
    return json{{"num", rational_num(r).str()},
                {"den", rational_den(r).str()},
                {"decimal", decimal_string(r, digits)},
                {"digits", digits}};
}

std::string rational_text(const Rational& r, int digits) {
    std::string s = rational_num(r).str() + "/" + rational_den(r).str();
    return s + " = " + decimal_string(r, digits);
}

std::vector<std::int64_t> parse_int_list(const std::string& text, char sep) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw DataError("'" + tok + "' is not an integer");
        }
        if (pos != tok.size()) throw DataError("'" + tok + "' is not an integer");
        out.push_back(v);
    }
    if (out.empty()) throw DataError("empty number list");
    return out;
}

std::vector<Composition> parse_inline_dists(const std::string& text) {
    std::vector<Composition> dists;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        dists.emplace_back(parse_int_list(part, ','));
    }
    return dists;
}

std::vector<Composition> read_dists_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::string first;
    std::streampos start = in.tellg();
    if (std::getline(in, first) && first.rfind("label,", 0) == 0) {
        in.seekg(start);
        return load_grade_csv(path).sections;
    }
    in.clear();
    in.seekg(start);
    std::vector<Composition> dists;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        dists.emplace_back(parse_int_list(line, ','));
    }
    if (dists.empty()) throw DataError("'" + path + "' holds no distributions");
    return dists;
}

void require_common_bins(const std::vector<Composition>& dists) {
    for (const auto& m : dists) {
        if (m.n() != dists.front().n())
            throw ShapeMismatchError("distributions disagree on bin count: " +
                                     std::to_string(m.n()) + " vs " +
                                     std::to_string(dists.front().n()));
    }
}

std::int64_t enum_budget_default() {
    if (const char* env = std::getenv("EMDD_ENUM_BUDGET")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw DataError("EMDD_ENUM_BUDGET is not an integer");
        }
    }
    return kDefaultEnumBudget;
}

void emit(std::ostream& out, const json& doc, bool as_json, const std::string& text) {
    if (as_json)
        out << doc.dump(2) << "\n";
    else
        out << text;
}

struct EmdOptions {
    std::string inline_dists;
    std::string csv_path;
    bool rescale = false;
    bool plan = false;
    bool as_json = false;
    int digits = 6;
};

int cmd_emd(const EmdOptions& opt, std::ostream& out) {
    std::vector<Composition> dists;
    if (!opt.inline_dists.empty()) dists = parse_inline_dists(opt.inline_dists);
    if (!opt.csv_path.empty()) {
        auto extra = read_dists_csv(opt.csv_path);
        dists.insert(dists.end(), extra.begin(), extra.end());
    }
    if (dists.size() < 2) throw DataError("need at least two distributions");
    require_common_bins(dists);

    bool rescaled = false;
    std::optional<DistTuple> tuple;
    bool equal_mass = true;
    for (const auto& m : dists) equal_mass = equal_mass && m.mass() == dists.front().mass();
    if (equal_mass) {
        tuple.emplace(dists);
    } else if (opt.rescale) {
        tuple.emplace(rescale_common_mass(dists));
        rescaled = true;
    } else {
        throw MassMismatchError(
            "distributions have different masses; pass --rescale to scale them to a common mass");
    }

    const std::int64_t discrete = discrete_emd(*tuple);
    const Rational continuous = continuous_emd(*tuple);
    const Rational normalized = unit_normalized_emd(*tuple);

    json doc{{"command", "emd"},
             {"d", tuple->d()},
             {"n", tuple->member(1).n()},
             {"mass", tuple->mass()},
             {"rescaled", rescaled}};
    json dist_rows = json::array();
    for (const auto& m : tuple->members()) dist_rows.push_back(m.bins());
    doc["distributions"] = dist_rows;
    doc["discrete"] = discrete;
    doc["continuous"] = rational_json(continuous, opt.digits);
    doc["unit_normalized"] = rational_json(normalized, opt.digits);
    doc["max_per_unit"] = max_emd(tuple->d(), tuple->member(1).n());

    std::ostringstream text;
    text << "d = " << tuple->d() << ", n = " << tuple->member(1).n() << ", s = " << tuple->mass()
         << (rescaled ? " (rescaled)" : "") << "\n";
    text << "discrete EMD:        " << discrete << "\n";
    text << "continuous EMD:      " << rational_text(continuous, opt.digits) << "\n";
    text << "unit-normalized EMD: " << rational_text(normalized, opt.digits) << "\n";

    if (opt.plan) {
        JointArray plan = rsk_joint(*tuple);
        json support = json::array();
        text << "optimal plan support (position : weight):\n";
        for (const auto& [m, w] : plan.support()) {
            support.push_back(json{{"position", m.coords()}, {"weight", w}});
            text << "  (";
            for (int i = 1; i <= m.d(); ++i) text << (i > 1 ? "," : "") << m.coord(i);
            text << ") : " << w << "\n";
        }
        doc["plan"] = support;
    }
    emit(out, doc, opt.as_json, text.str());
    return 0;
}

struct ExpectedOptions {
    int d = 2;
    int n = 2;
    int table_nmax = 0;
    std::int64_t discrete_s = -1;
    bool normalized_only = false;
    bool as_json = false;
    int digits = 6;
};

int cmd_expected(const ExpectedOptions& opt, std::ostream& out) {
    if (opt.d < 1 || opt.n < 1) throw DataError("need d >= 1 and n >= 1");
    const int digits = opt.digits;

    if (opt.table_nmax > 0) {
        if (opt.table_nmax < 2) throw DataError("--table needs nmax >= 2");
        json rows = json::array();
        std::ostringstream text;
        text << "n    E(n^2)   E(n^3)   ratio\n";
        for (int n = 2; n <= opt.table_nmax; ++n) {
            Rational e2 = continuous_expected(BinShape::cube(2, n));
            Rational e3 = continuous_expected(BinShape::cube(3, n));
            Rational ratio = e3 / e2;
            rows.push_back(json{{"n", n},
                                {"pair", rational_json(e2, digits)},
                                {"triple", rational_json(e3, digits)},
                                {"ratio", rational_json(ratio, digits)}});
            text << n << "    " << decimal_string(e2, 4) << "   " << decimal_string(e3, 4)
                 << "   " << rational_num(ratio).str() << "/" << rational_den(ratio).str()
                 << "\n";
        }
        json doc{{"command", "expected"}, {"mode", "table"}, {"rows", rows}};
        emit(out, doc, opt.as_json, text.str());
        return 0;
    }

    if (opt.discrete_s >= 0) {
        Rational e = discrete_expected(BinShape::cube(opt.d, opt.n), opt.discrete_s);
        json doc{{"command", "expected"},
                 {"mode", "discrete"},
                 {"d", opt.d},
                 {"n", opt.n},
                 {"s", opt.discrete_s},
                 {"expected_discrete", rational_json(e, digits)}};
        std::ostringstream text;
        text << "E(EMD_" << opt.d << "^" << opt.discrete_s << ") on " << opt.n
             << " bins: " << rational_text(e, digits) << "\n";
        emit(out, doc, opt.as_json, text.str());
        return 0;
    }

    Rational e = continuous_expected(BinShape::cube(opt.d, opt.n));
    const bool has_norm = opt.d >= 2 && opt.n >= 2;
    Rational norm = has_norm ? unit_normalized_expected(opt.d, opt.n) : Rational(0);
    json doc{{"command", "expected"}, {"mode", "continuous"}, {"d", opt.d}, {"n", opt.n}};
    doc["expected"] = rational_json(e, digits);
    doc["unit_normalized"] = has_norm ? rational_json(norm, digits) : json(nullptr);
    std::ostringstream text;
    if (opt.normalized_only && has_norm) {
        text << decimal_string(norm, digits) << "\n";
    } else {
        text << "expected EMD_" << opt.d << " on " << opt.n
             << " bins: " << rational_text(e, digits) << "\n";
        if (has_norm)
            text << "unit-normalized:            " << rational_text(norm, digits) << "\n";
        else
            text << "unit-normalized:            undefined for d < 2 or n < 2\n";
    }
    emit(out, doc, opt.as_json, text.str());
    return 0;
}

struct HistogramOptions {
    int d = 2;
    int n = 2;
    std::int64_t s = 0;
    bool via_genfunc = false;
    bool as_csv = false;
    bool as_json = false;
    std::int64_t budget = -1;
    int digits = 6;
};

int cmd_histogram(const HistogramOptions& opt, std::ostream& out) {
    std::int64_t budget = opt.budget >= 0 ? opt.budget : enum_budget_default();
    EmdHistogram h;
    try {
        h = opt.via_genfunc ? emd_histogram_genfunc(opt.d, opt.n, opt.s, budget)
                            : emd_histogram(opt.d, opt.n, opt.s, budget);
    } catch (const CapacityError& e) {
        throw CapacityError(std::string(e.what()) +
                            (opt.via_genfunc
                                 ? "; raise --budget or EMDD_ENUM_BUDGET"
                                 : "; try --via-genfunc, or raise --budget or EMDD_ENUM_BUDGET"));
    }
    SkewnessResult skew = skewness(h);

    if (opt.as_csv) {
        out << "value,count\n";
        for (std::size_t r = 0; r < h.counts.size(); ++r)
            out << r << "," << h.counts[r] << "\n";
        return 0;
    }

    json doc{{"command", "histogram"},
             {"d", opt.d},
             {"n", opt.n},
             {"s", opt.s},
             {"method", opt.via_genfunc ? "genfunc" : "enumeration"},
             {"counts", h.counts},
             {"total", h.total()},
             {"max_value", h.max_value()},
             {"mean", rational_json(h.mean(), opt.digits)},
             {"skewness", skew.value},
             {"skewness_degenerate", skew.degenerate}};
    std::ostringstream text;
    text << "EMD value distribution for d = " << opt.d << ", n = " << opt.n << ", s = " << opt.s
         << " (" << (opt.via_genfunc ? "generating function" : "enumeration") << ")\n";
    for (std::size_t r = 0; r < h.counts.size(); ++r)
        text << "  " << r << ": " << h.counts[r] << "\n";
    text << "total:    " << h.total() << "\n";
    text << "mean:     " << rational_text(h.mean(), opt.digits) << "\n";
    text << "skewness: " << skew.value << (skew.degenerate ? " (degenerate)" : "") << "\n";
    emit(out, doc, opt.as_json, text.str());
    return 0;
}

struct MongeOptions {
    std::vector<int> builtin;  // d n
    std::string file;
    bool as_json = false;
};

CostArray read_cost_array_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw DataError("'" + path + "' is empty");

    auto parse_entries = [&](std::size_t first_line) {
        std::vector<std::int64_t> entries;
        for (std::size_t i = first_line; i < lines.size(); ++i) {
            auto row = parse_int_list(lines[i], ',');
            for (auto v : row) {
                if (v < 0) throw DataError("cost arrays must be nonnegative");
                entries.push_back(v);
            }
        }
        return entries;
    };

    if (lines.front().rfind("shape:", 0) == 0) {
        auto sizes64 = parse_int_list(lines.front().substr(6), ',');
        std::vector<int> sizes(sizes64.begin(), sizes64.end());
        BinShape shape(sizes);
        auto entries = parse_entries(1);
        auto expect = shape.entry_count(kDefaultDenseCap);
        if (!expect) throw CapacityError("array exceeds the dense cap");
        if (*expect != static_cast<std::int64_t>(entries.size()))
            throw DataError("expected " + std::to_string(*expect) + " entries, got " +
                            std::to_string(entries.size()));
        return CostArray(shape, std::move(entries));
    }

    // Two-dimensional grid: one row per line.
    std::size_t cols = parse_int_list(lines.front(), ',').size();
    for (const auto& l : lines) {
        if (parse_int_list(l, ',').size() != cols)
            throw DataError("rows have unequal lengths");
    }
    BinShape shape({static_cast<int>(lines.size()), static_cast<int>(cols)});
    return CostArray(shape, parse_entries(0));
}

int cmd_monge(const MongeOptions& opt, std::ostream& out) {
    std::optional<CostArray> array;
    std::string source;
    if (!opt.builtin.empty()) {
        if (opt.builtin.size() != 2 || opt.builtin[0] < 1 || opt.builtin[1] < 1)
            throw DataError("--builtin takes d >= 1 and n >= 1");
        array.emplace(build_cost_array(BinShape::cube(opt.builtin[0], opt.builtin[1])));
        source = "builtin d=" + std::to_string(opt.builtin[0]) +
                 " n=" + std::to_string(opt.builtin[1]);
    } else if (!opt.file.empty()) {
        array.emplace(read_cost_array_csv(opt.file));
        source = opt.file;
    } else {
        throw DataError("pass --builtin D N or an array CSV path");
    }

    MongeResult result = monge_check_planes(*array);
    json doc{{"command", "monge"},
             {"source", source},
             {"shape", array->shape().sizes()},
             {"monge", result.monge}};
    std::ostringstream text;
    text << "shape (";
    for (int i = 1; i <= array->shape().d(); ++i)
        text << (i > 1 ? "," : "") << array->shape().size(i);
    text << "): " << (result.monge ? "Monge" : "NOT Monge") << "\n";
    if (result.counterexample) {
        const auto& [x, y] = *result.counterexample;
        doc["counterexample"] = json{{"x", x.coords()}, {"y", y.coords()}};
        auto print = [&](const MultiIndex& m) {
            text << "(";
            for (int i = 1; i <= m.d(); ++i) text << (i > 1 ? "," : "") << m.coord(i);
            text << ")";
        };
        text << "violating pair: x = ";
        print(x);
        text << ", y = ";
        print(y);
        text << "\n";
    } else {
        doc["counterexample"] = nullptr;
    }
    emit(out, doc, opt.as_json, text.str());
    return 0;
}

struct GradesOptions {
    std::string file;
    bool as_json = false;
    int digits = 6;
};

int cmd_grades(const GradesOptions& opt, std::ostream& out) {
    GradeTable table = load_grade_csv(opt.file);
    EmdReport report = grade_report(table);

    json sections = json::array();
    for (std::size_t i = 0; i < report.rescaled.size(); ++i) {
        sections.push_back(json{{"name", report.section_names[i]},
                                {"rescaled", report.rescaled[i].bins()}});
    }
    json doc{{"command", "grades"},
             {"file", opt.file},
             {"d", report.d},
             {"n", report.n},
             {"common_mass", report.common_mass},
             {"sections", sections},
             {"discrete", report.discrete},
             {"continuous", rational_json(report.continuous, opt.digits)},
             {"unit_normalized", report.degenerate
                                     ? json(nullptr)
                                     : rational_json(report.normalized, opt.digits)},
             {"expected_normalized", report.degenerate
                                         ? json(nullptr)
                                         : rational_json(report.expected_normalized, opt.digits)},
             {"ratio_to_expected", report.degenerate
                                       ? json(nullptr)
                                       : rational_json(report.ratio_to_expected, opt.digits)},
             {"degenerate", report.degenerate},
             {"warning", report.warning.empty() ? json(nullptr) : json(report.warning)}};

    std::ostringstream text;
    text << report.d << " sections over " << report.n
         << " categories, common mass s = " << report.common_mass << "\n";
    for (std::size_t i = 0; i < report.rescaled.size(); ++i) {
        text << "  " << report.section_names[i] << ":";
        for (auto b : report.rescaled[i].bins()) text << " " << b;
        text << "\n";
    }
    text << "discrete EMD:          " << report.discrete << "\n";
    text << "continuous EMD:        " << rational_text(report.continuous, opt.digits) << "\n";
    if (report.degenerate) {
        text << "warning: " << report.warning << "\n";
    } else {
        text << "unit-normalized EMD:   " << rational_text(report.normalized, opt.digits) << "\n";
        text << "expected (normalized): " << rational_text(report.expected_normalized, opt.digits)
             << "\n";
        text << "observed / expected:   " << rational_text(report.ratio_to_expected, opt.digits)
             << "\n";
    }
    emit(out, doc, opt.as_json, text.str());
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"generalized earth mover's distance across d histograms"};
    app.require_subcommand(1);

    EmdOptions emd_opt;
    auto* emd = app.add_subcommand("emd", "EMD of two or more distributions");
    emd->add_option("--dists", emd_opt.inline_dists,
                    "inline distributions, e.g. \"4,0,1;1,2,2;0,5,0\"");
    emd->add_option("--csv", emd_opt.csv_path, "CSV of distributions (rows, or a grade table)");
    emd->add_flag("--rescale", emd_opt.rescale, "scale to a common mass when masses differ");
    emd->add_flag("--plan", emd_opt.plan, "print the optimal chain-supported plan");
    emd->add_flag("--json", emd_opt.as_json, "machine-readable output");
    emd->add_option("--digits", emd_opt.digits, "decimal places (default 6)");

    ExpectedOptions exp_opt;
    auto* expected = app.add_subcommand("expected", "expected EMD of random distributions");
    expected->add_option("-d,--dists", exp_opt.d, "number of distributions");
    expected->add_option("-n,--bins", exp_opt.n, "number of bins");
    expected->add_option("--table", exp_opt.table_nmax, "print the pair/triple table up to n");
    expected->add_option("--discrete", exp_opt.discrete_s, "mean of the discrete EMD at mass s");
    expected->add_flag("--normalized", exp_opt.normalized_only, "print only the normalized value");
    expected->add_flag("--json", exp_opt.as_json, "machine-readable output");
    expected->add_option("--digits", exp_opt.digits, "decimal places (default 6)");

    HistogramOptions hist_opt;
    auto* hist = app.add_subcommand("histogram", "distribution of EMD values over all tuples");
    hist->add_option("-d,--dists", hist_opt.d, "number of distributions")->required();
    hist->add_option("-n,--bins", hist_opt.n, "number of bins")->required();
    hist->add_option("-s,--mass", hist_opt.s, "total mass")->required();
    hist->add_flag("--via-genfunc", hist_opt.via_genfunc,
                   "read counts off the generating function instead of enumerating");
    hist->add_flag("--csv", hist_opt.as_csv, "emit value,count rows for plotting");
    hist->add_flag("--json", hist_opt.as_json, "machine-readable output");
    hist->add_option("--budget", hist_opt.budget, "enumeration budget (default 10^6)");
    hist->add_option("--digits", hist_opt.digits, "decimal places (default 6)");

    MongeOptions monge_opt;
    auto* monge = app.add_subcommand("monge", "check the min/max exchange inequality");
    monge->add_option("--builtin", monge_opt.builtin, "check the built-in cost array for d n")
        ->expected(2);
    monge->add_option("file", monge_opt.file, "array CSV path");
    monge->add_flag("--json", monge_opt.as_json, "machine-readable output");

    GradesOptions grades_opt;
    auto* grades = app.add_subcommand("grades", "EMD report for a grade-table CSV");
    grades->add_option("file", grades_opt.file, "grade table CSV path")->required();
    grades->add_flag("--json", grades_opt.as_json, "machine-readable output");
    grades->add_option("--digits", grades_opt.digits, "decimal places (default 6)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help;
        int code = app.exit(e, help, help);
        (code == 0 ? out : err) << help.str();
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(emd)) return cmd_emd(emd_opt, out);
        if (app.got_subcommand(expected)) return cmd_expected(exp_opt, out);
        if (app.got_subcommand(hist)) return cmd_histogram(hist_opt, out);
        if (app.got_subcommand(monge)) return cmd_monge(monge_opt, out);
        if (app.got_subcommand(grades)) return cmd_grades(grades_opt, out);
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace emdd
