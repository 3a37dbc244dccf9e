#include "emdd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "emdd/cost.hpp"
#include "emdd/errors.hpp"
#include "emdd/genfunc.hpp"

namespace emdd {

Int composition_count(std::int64_t s, int n) {
    if (s < 0 || n < 1) throw std::invalid_argument("need s >= 0 and n >= 1");
    return binomial(s + n - 1, n - 1);
}

bool next_composition(std::vector<std::int64_t>& bins) {
    const int n = static_cast<int>(bins.size());
    // Decreasing lexicographic successor: pull one unit off the rightmost
    // active position before the last bin, dump the tail just after it.
    for (int i = n - 2; i >= 0; --i) {
        if (bins[static_cast<std::size_t>(i)] > 0) {
            std::int64_t tail = 0;
            for (int j = i + 1; j < n; ++j) {
                tail += bins[static_cast<std::size_t>(j)];
                bins[static_cast<std::size_t>(j)] = 0;
            }
            bins[static_cast<std::size_t>(i)] -= 1;
            bins[static_cast<std::size_t>(i + 1)] = tail + 1;
            return true;
        }
    }
    return false;
}

std::vector<Composition> enumerate_compositions(std::int64_t s, int n) {
    if (s < 0 || n < 1) throw std::invalid_argument("need s >= 0 and n >= 1");
    std::vector<Composition> out;
    std::vector<std::int64_t> bins(static_cast<std::size_t>(n), 0);
    bins[0] = s;
    do {
        out.emplace_back(bins);
    } while (next_composition(bins));
    return out;
}

void for_each_tuple(const BinShape& shape, std::int64_t s,
                    const std::function<void(const std::vector<Composition>&)>& fn,
                    std::int64_t budget) {
    Int count = h_coeff(shape, s);
    if (count > budget)
        throw CapacityError("tuple enumeration would visit " + count.str() +
                            " tuples, over the budget of " + std::to_string(budget));

    const int d = shape.d();
    // One composition list per distinct bin count.
    std::map<int, std::vector<Composition>> lists;
    for (int i = 1; i <= d; ++i) {
        if (!lists.count(shape.size(i))) lists.emplace(shape.size(i), enumerate_compositions(s, shape.size(i)));
    }

    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    std::vector<Composition> current;
    current.reserve(static_cast<std::size_t>(d));
    for (int i = 1; i <= d; ++i) current.push_back(lists.at(shape.size(i)).front());

    while (true) {
        fn(current);
        int axis = d - 1;
        while (axis >= 0) {
            const auto& list = lists.at(shape.size(axis + 1));
            if (++idx[static_cast<std::size_t>(axis)] < list.size()) {
                current[static_cast<std::size_t>(axis)] = list[idx[static_cast<std::size_t>(axis)]];
                break;
            }
            idx[static_cast<std::size_t>(axis)] = 0;
            current[static_cast<std::size_t>(axis)] = list.front();
            --axis;
        }
        if (axis < 0) break;
    }
}

std::int64_t EmdHistogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::int64_t EmdHistogram::weighted_sum() const {
    std::int64_t sum = 0;
    for (std::size_t r = 0; r < counts.size(); ++r)
        sum += static_cast<std::int64_t>(r) * counts[r];
    return sum;
}

Rational EmdHistogram::mean() const {
    std::int64_t n = total();
    if (n == 0) return Rational(0);
    return Rational(weighted_sum(), n);
}

std::int64_t EmdHistogram::max_value() const {
    for (std::size_t r = counts.size(); r > 0; --r) {
        if (counts[r - 1] > 0) return static_cast<std::int64_t>(r - 1);
    }
    return 0;
}

EmdHistogram emd_histogram(int d, int n, std::int64_t s, std::int64_t budget) {
    if (d < 1 || n < 1 || s < 0) throw std::invalid_argument("need d, n >= 1 and s >= 0");
    BinShape shape = BinShape::cube(d, n);
    Int count = h_coeff(shape, s);
    if (count > budget)
        throw CapacityError("histogram enumeration would visit " + count.str() +
                            " tuples, over the budget of " + std::to_string(budget));

    EmdHistogram h;
    h.d = d;
    h.n = n;
    h.s = s;
    h.counts.assign(static_cast<std::size_t>(s * max_emd(d, n)) + 1, 0);

    // Odometer over word indices; EMD streamed straight off the words.
    const std::vector<Composition> comps = enumerate_compositions(s, n);
    std::vector<std::vector<int>> words;
    words.reserve(comps.size());
    for (const auto& c : comps) words.push_back(rsk_word(c));

    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    std::vector<int> column(static_cast<std::size_t>(d));
    while (true) {
        std::int64_t emd = 0;
        for (std::int64_t j = 0; j < s; ++j) {
            for (int i = 0; i < d; ++i)
                column[static_cast<std::size_t>(i)] =
                    words[idx[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)];
            emd += cost_sorted_form(MultiIndex(column));
        }
        ++h.counts[static_cast<std::size_t>(emd)];

        int axis = d - 1;
        while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == words.size()) {
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return h;
}

EmdHistogram emd_histogram_genfunc(int d, int n, std::int64_t s, std::int64_t budget) {
    if (d < 1 || n < 1 || s < 0) throw std::invalid_argument("need d, n >= 1 and s >= 0");
    BivariateSeries series = h_bivariate(BinShape::cube(d, n), s, budget);
    EmdHistogram h;
    h.d = d;
    h.n = n;
    h.s = s;
    h.counts.assign(static_cast<std::size_t>(s * max_emd(d, n)) + 1, 0);
    for (const auto& [r, c] : series.t_slice(s)) {
        if (denominator(c) != 1 || c < 0)
            throw std::logic_error("tuple counts must be nonnegative integers");
        h.counts[static_cast<std::size_t>(r)] = numerator(c).convert_to<std::int64_t>();
    }
    return h;
}

SkewnessResult skewness(const EmdHistogram& h) {
    const double n = static_cast<double>(h.total());
    if (n == 0) return {0.0, true};
    double mean = 0;
    for (std::size_t r = 0; r < h.counts.size(); ++r)
        mean += static_cast<double>(r) * static_cast<double>(h.counts[r]);
    mean /= n;
    double m2 = 0, m3 = 0;
    for (std::size_t r = 0; r < h.counts.size(); ++r) {
        const double dev = static_cast<double>(r) - mean;
        const double w = static_cast<double>(h.counts[r]);
        m2 += w * dev * dev;
        m3 += w * dev * dev * dev;
    }
    m2 /= n;
    m3 /= n;
    if (m2 == 0) return {0.0, true};
    return {m3 / std::pow(m2, 1.5), false};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::int64_t parse_count(const std::string& cell, int line_no) {
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(cell, &pos);
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": '" + cell +
                        "' is not an integer count");
    }
    if (pos != cell.size() || v < 0)
        throw DataError("line " + std::to_string(line_no) + ": '" + cell +
                        "' is not a nonnegative integer count");
    return v;
}

}  // namespace

GradeTable parse_grade_csv(std::istream& in) {
    GradeTable g;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (g.labels.empty()) {
            if (cells.size() < 2 || cells[0] != "label")
                throw DataError("line " + std::to_string(line_no) +
                                ": expected header 'label,<cat-1>,...'");
            g.labels.assign(cells.begin() + 1, cells.end());
            continue;
        }
        if (cells.size() != g.labels.size() + 1)
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(g.labels.size()) + " counts after the name");
        std::vector<std::int64_t> bins;
        bins.reserve(g.labels.size());
        for (std::size_t i = 1; i < cells.size(); ++i)
            bins.push_back(parse_count(cells[i], line_no));
        g.section_names.push_back(cells[0]);
        g.sections.emplace_back(std::move(bins));
    }
    if (g.labels.empty()) throw DataError("missing 'label,...' header line");
    return g;
}

GradeTable load_grade_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return parse_grade_csv(in);
}

DistTuple rescale_common_mass(const std::vector<Composition>& sections) {
    if (sections.empty()) throw DataError("table has no sections");
    std::int64_t target = 0;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        if (sections[i].mass() == 0)
            throw DataError("section " + std::to_string(i + 1) + " has zero mass");
        target = std::max(target, sections[i].mass());
    }

    std::vector<Composition> scaled;
    scaled.reserve(sections.size());
    for (const auto& section : sections) {
        const int n = section.n();
        std::vector<std::int64_t> floors(static_cast<std::size_t>(n));
        std::vector<Rational> fracs(static_cast<std::size_t>(n));
        std::int64_t assigned = 0;
        for (int k = 0; k < n; ++k) {
            Rational exact = Rational(section.bins()[static_cast<std::size_t>(k)]) *
                             Rational(target, section.mass());
            Int fl = numerator(exact) / denominator(exact);
            floors[static_cast<std::size_t>(k)] = fl.convert_to<std::int64_t>();
            fracs[static_cast<std::size_t>(k)] = exact - Rational(fl);
            assigned += floors[static_cast<std::size_t>(k)];
        }
        // Largest remainder takes the leftover units; ties go to the lower
        // bin index.
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const auto& fa = fracs[static_cast<std::size_t>(a)];
            const auto& fb = fracs[static_cast<std::size_t>(b)];
            if (fa != fb) return fa > fb;
            return a < b;
        });
        for (std::int64_t u = 0; u < target - assigned; ++u)
            ++floors[static_cast<std::size_t>(order[static_cast<std::size_t>(u)])];
        scaled.emplace_back(std::move(floors));
    }
    return DistTuple(std::move(scaled));
}

DistTuple rescale_common_mass(const GradeTable& g) {
    for (std::size_t i = 0; i < g.sections.size(); ++i) {
        if (g.sections[i].mass() == 0)
            throw DataError("section '" + g.section_names[i] + "' has zero mass");
    }
    return rescale_common_mass(g.sections);
}

EmdReport grade_report(const GradeTable& g) {
    EmdReport report;
    DistTuple tuple = rescale_common_mass(g);
    report.d = tuple.d();
    report.n = g.n();
    report.common_mass = tuple.mass();
    report.section_names = g.section_names;
    report.rescaled = tuple.members();
    report.discrete = discrete_emd(tuple);
    report.continuous = continuous_emd(tuple);

    if (report.d < 2 || report.n < 2) {
        report.degenerate = true;
        report.warning = report.d < 2
                             ? "a single distribution is degenerate: the EMD is identically 0"
                             : "a single bin is degenerate: the EMD is identically 0";
        return report;
    }
    report.normalized = unit_normalized_emd(tuple);
    report.expected_normalized = unit_normalized_expected(report.d, report.n);
    if (report.expected_normalized != 0)
        report.ratio_to_expected = report.normalized / report.expected_normalized;
    return report;
}

}  // namespace emdd
