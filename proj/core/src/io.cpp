#include "transport1d/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "transport1d/error.hpp"

namespace transport1d {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void line(std::ostream& os, std::initializer_list<double> vals) {
    bool first = true;
    for (double v : vals) {
        if (!first) os << ',';
        os << format_number(v);
        first = false;
    }
    os << '\n';
}

std::vector<double> unique_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

void write_field_csv(std::ostream& os, const FieldPair& f) {
    const auto& g = f.grid;
    os << "t,x,rho,b\n";
    for (std::size_t i = 0; i < g.nt(); ++i)
        for (std::size_t j = 0; j < g.nx(); ++j) line(os, {g.t(i), g.x(j), f.rho(i, j), f.b(i, j)});
}

void write_potential_csv(std::ostream& os, const Potential& p) {
    const auto& g = p.grid();
    os << "t,x,Q\n";
    for (std::size_t i = 0; i < g.nt(); ++i)
        for (std::size_t j = 0; j < g.nx(); ++j) line(os, {g.t(i), g.x(j), p(i, j)});
}

void write_curve_csv(std::ostream& os, const CharCurve& c, const SpaceTimeGrid& g) {
    os << "t,x\n";
    for (std::size_t i = 0; i < c.positions.size(); ++i) line(os, {g.t(i), c.positions[i]});
}

void write_solution_csv(std::ostream& os, const SpaceTimeGrid& g, const GridField& rho,
                        const GridField& b, const GridField& theta, const GridField& rho_theta,
                        const std::optional<std::string>& comment) {
    if (comment) os << "# " << *comment << '\n';
    os << "t,x,rho,b,theta,rho_theta\n";
    for (std::size_t i = 0; i < g.nt(); ++i)
        for (std::size_t j = 0; j < g.nx(); ++j)
            line(os, {g.t(i), g.x(j), rho(i, j), b(i, j), theta(i, j), rho_theta(i, j)});
}

void write_trace_csv(std::ostream& os, const Potential& p, const Potential& p_theta) {
    const auto& g = p.grid();
    const auto l = boundary_trace(p, Side::left);
    const auto lt = boundary_trace(p_theta, Side::left);
    const auto r = boundary_trace(p, Side::right);
    const auto rt = boundary_trace(p_theta, Side::right);
    os << "t,tr_brho_left,tr_brhotheta_left,tr_brho_right,tr_brhotheta_right\n";
    for (std::size_t i = 0; i < l.size(); ++i) line(os, {g.t(i), l[i], lt[i], r[i], rt[i]});
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw InvalidArgument("missing CSV column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string text;
    std::size_t lineno = 0;
    while (std::getline(is, text)) {
        ++lineno;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty() || text[0] == '#') continue;
        std::stringstream ss(text);
        std::string cell;
        if (t.columns.empty()) {
            while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            // strtod, unlike stod, accepts subnormals.
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size())
                throw InvalidArgument("line " + std::to_string(lineno) + ": not a number: '" + cell + "'");
            row.push_back(v);
        }
        if (row.size() != t.columns.size())
            throw InvalidArgument("line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(t.columns.size()) + " fields");
        t.rows.push_back(std::move(row));
    }
    if (t.columns.empty()) throw InvalidArgument("CSV without header");
    return t;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
    return read_csv(in);
}

Scenario tabulated_scenario(const CsvTable& table, std::string label, BoundaryData data) {
    const std::size_t ct = table.column("t"), cx = table.column("x");
    const std::size_t cr = table.column("rho"), cb = table.column("b");
    std::vector<double> ts, xs;
    for (const auto& r : table.rows) {
        ts.push_back(r[ct]);
        xs.push_back(r[cx]);
    }
    ts = unique_sorted(std::move(ts));
    xs = unique_sorted(std::move(xs));
    if (ts.size() < 2 || xs.size() < 2) throw InvalidArgument("tabulated scenario needs at least 2x2 nodes");
    if (ts.front() != 0.0) throw InvalidArgument("tabulated scenario must start at t = 0");
    if (table.rows.size() != ts.size() * xs.size())
        throw InvalidArgument("tabulated scenario is not a full lattice");

    const auto grid = SpaceTimeGrid::build(ts.back(), xs.front(), xs.back(), ts.size(), xs.size());
    const auto check_uniform = [](const std::vector<double>& v, double h, const char* what) {
        for (std::size_t k = 0; k < v.size(); ++k)
            if (std::abs(v[k] - (v.front() + static_cast<double>(k) * h)) > 1e-9 * (1.0 + std::abs(v.back())))
                throw InvalidArgument(std::string("non-uniform ") + what + " spacing in tabulated scenario");
    };
    check_uniform(ts, grid.dt(), "time");
    check_uniform(xs, grid.dx(), "space");

    auto tab = std::make_shared<TabulatedField>(
        TabulatedField{grid, GridField(grid.nt(), grid.nx()), GridField(grid.nt(), grid.nx())});
    for (const auto& r : table.rows) {
        if (r[cr] < 0.0) throw NumericalFailure("negative density", r[cr]);
        const std::size_t i = grid.nearest_level(r[ct]);
        const std::size_t j = grid.nearest_column(r[cx]);
        tab->rho(i, j) = r[cr];
        tab->b(i, j) = r[cb];
    }
    Scenario s;
    s.kind = ScenarioKind::tabulated;
    s.label = std::move(label);
    s.domain = {grid.T(), grid.alpha(), grid.beta()};
    s.table = std::move(tab);
    s.boundary = std::move(data);
    s.positive_b = std::all_of(s.table->b.data().begin(), s.table->b.data().end(),
                               [](double v) { return v >= 0.0; });
    return s;
}

}  // namespace transport1d
