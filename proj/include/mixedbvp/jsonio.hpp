#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mixedbvp/atoms.hpp"
#include "mixedbvp/exponents.hpp"
#include "mixedbvp/fields.hpp"
#include "mixedbvp/geometry.hpp"
#include "mixedbvp/solver.hpp"

namespace mixedbvp {

// All emitted files keep insertion order, so reports read top-down in the
// order values were produced and repeated runs are byte-identical.
using ojson = nlohmann::ordered_json;

// %.17g round-trips an IEEE double exactly; every number written to CSV or
// SVG goes through here so output bytes depend only on the computed values.
std::string fmt17(double v);

// Domains: {"breakpoints": [[x,y],...], "left_slope": s, "right_slope": s}
// for graphs, {"opening": v} for sectors. The reader dispatches on which
// keys are present and validates before returning.
ojson domain_to_json(const Domain& dom);
Domain domain_from_json(const ojson& j);

ojson field_to_json(const HolomorphicField& field);
HolomorphicField field_from_json(const ojson& j);
ojson certificate_to_json(const FieldCertificate& cert);

ojson window_to_json(const Window& w);
ojson exponent_report_to_json(const ExponentReport& r);

// Descriptive summary only: the trace function itself is not serialized,
// custom shapes round-trip through their nodal samples instead.
ojson atom_to_json(const AtomSpec& atom);

// Boundary data source: either a catalog function name ("power:2",
// "poly:0,3,1", ...) whose value/normal derivative is sampled on the mesh,
// or inline nodal samples in mesh order.
struct DataSpec {
  std::string name;
  std::vector<double> samples;
  bool is_inline() const { return name.empty(); }
};

DataSpec data_spec_from_json(const ojson& j);
ojson data_spec_to_json(const DataSpec& d);

// One mixed solve: domain, truncation radius, mesh resolution, optional
// conformal reduction exponent, and the three data sources. arc falling back
// to f_D matches the manufactured setup where both carry the solution trace.
struct ProblemConfig {
  Domain domain = Sector{3 * kPi / 8};
  double R = 2.0;
  int levels = 24;
  int panels_per_level = 1;
  int panel_order = 8;
  int arc_panels = 16;
  double map_s = 1.0;
  DataSpec f_N{"poly:0,3,1", {}};
  DataSpec f_D{"poly:0,3,1", {}};
  DataSpec arc{"", {}};
};

ProblemConfig problem_from_json(const ojson& j);
ojson problem_to_json(const ProblemConfig& p);

// CSV building blocks. Tables open with '#'-prefixed provenance lines (the
// materialized config), then a header row, then data rows.
std::string csv_header_comment(const ojson& config);
std::string csv_row(const std::vector<std::string>& cells);
std::string csv_table(const ojson& config, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

// Nodal density table: x, y, kind (0 Neumann ray, 1 Dirichlet ray, 2 arc),
// arc-length weight, density value, and the solve's residual as the shared
// error-estimate column.
std::string density_to_csv(const ojson& config, const SolveResult& result);

// Self-contained SVG: the contour polyline through the mesh nodes plus probe
// markers. Purely diagnostic; no plotting library involved.
std::string contour_svg(const SolverMesh& mesh, const std::vector<Vec2>& probes);

}  // namespace mixedbvp
