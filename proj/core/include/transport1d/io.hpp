#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "transport1d/characteristics.hpp"
#include "transport1d/field.hpp"
#include "transport1d/potential.hpp"
#include "transport1d/solver.hpp"

namespace transport1d {

// Numbers are printed with 17 significant digits so every file round-trips exactly.
std::string format_number(double v);

void write_field_csv(std::ostream& os, const FieldPair& f);
void write_potential_csv(std::ostream& os, const Potential& p);
void write_curve_csv(std::ostream& os, const CharCurve& c, const SpaceTimeGrid& g);
// t,x,rho,b,theta,rho_theta; `comment` (without '#') becomes a leading metadata line.
void write_solution_csv(std::ostream& os, const SpaceTimeGrid& g, const GridField& rho,
                        const GridField& b, const GridField& theta, const GridField& rho_theta,
                        const std::optional<std::string>& comment = std::nullopt);
// One row per time interval, stamped with its left end.
void write_trace_csv(std::ostream& os, const Potential& p, const Potential& p_theta);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;  // throws if absent
};

// Comma-separated numbers with a header line; lines starting with '#' are skipped.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::filesystem::path& path);

// Builds a tabulated scenario from columns t,x,rho,b on a full uniform lattice.
Scenario tabulated_scenario(const CsvTable& table, std::string label, BoundaryData data);

}  // namespace transport1d
