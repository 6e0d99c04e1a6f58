#include "mixedbvp/jsonio.hpp"

#include <cstdio>
#include <stdexcept>

namespace mixedbvp {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ojson domain_to_json(const Domain& dom) {
  ojson j;
  if (const Sector* sec = std::get_if<Sector>(&dom)) {
    j["opening"] = sec->opening;
    return j;
  }
  const GraphDomain& g = std::get<GraphDomain>(dom);
  ojson pts = ojson::array();
  for (Vec2 p : g.breakpoints) pts.push_back({p.x, p.y});
  j["breakpoints"] = pts;
  j["left_slope"] = g.left_slope;
  j["right_slope"] = g.right_slope;
  return j;
}

Domain domain_from_json(const ojson& j) {
  if (!j.is_object())
    throw std::invalid_argument("domain: expected a JSON object");
  if (j.contains("opening")) {
    Sector sec{j.at("opening").get<double>()};
    sec.validate();
    return sec;
  }
  GraphDomain g;
  if (j.contains("breakpoints"))
    for (const auto& p : j.at("breakpoints"))
      g.breakpoints.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  g.left_slope = j.value("left_slope", 0.0);
  g.right_slope = j.value("right_slope", 0.0);
  g.validate();
  return g;
}

ojson field_to_json(const HolomorphicField& field) {
  return ojson{{"lambda", field.lambda}, {"epsilon", field.epsilon}};
}

HolomorphicField field_from_json(const ojson& j) {
  return {j.at("lambda").get<double>(), j.at("epsilon").get<double>()};
}

ojson certificate_to_json(const FieldCertificate& cert) {
  ojson j;
  j["field"] = field_to_json(cert.field);
  j["beta0"] = cert.beta0;
  j["margin"] = cert.margin;
  return j;
}

ojson window_to_json(const Window& w) {
  return ojson{{"lo", w.lo}, {"hi", w.hi}, {"empty", w.empty()}};
}

ojson exponent_report_to_json(const ExponentReport& r) {
  ojson j;
  j["M"] = r.M;
  j["beta"] = r.beta;
  j["delta"] = r.delta;
  j["neumann_reg"] = window_to_json(r.neumann_reg);
  j["mixed_L2"] = window_to_json(r.mixed_L2);
  j["atomic"] = window_to_json(r.atomic);
  j["m"] = r.m;
  j["p1"] = r.p1;
  j["p2"] = r.p2;
  j["p0"] = r.p0;
  j["out_of_hypothesis"] = r.out_of_hypothesis;
  return j;
}

ojson atom_to_json(const AtomSpec& atom) {
  ojson j;
  j["center"] = {atom.center.x, atom.center.y};
  j["rho"] = atom.rho;
  j["epsilon"] = atom.eps_prime;
  if (atom.shape == "custom") {
    // Custom traces have no closed form; emit nodal samples over the support.
    const int n = 257;
    ojson samples = ojson::array();
    for (int i = 0; i < n; ++i) {
      double s = atom.support_lo +
                 (atom.support_hi - atom.support_lo) * i / double(n - 1);
      samples.push_back({s, atom.trace(s)});
    }
    j["samples"] = samples;
  } else {
    j["shape"] = atom.shape;
  }
  j["sup_norm"] = atom.sup_norm;
  j["non_canonical"] = atom.non_canonical;
  return j;
}

DataSpec data_spec_from_json(const ojson& j) {
  DataSpec d;
  if (j.is_string()) {
    d.name = j.get<std::string>();
    return d;
  }
  if (j.is_object() && j.contains("samples")) {
    for (const auto& v : j.at("samples")) d.samples.push_back(v.get<double>());
    return d;
  }
  if (j.is_object() && j.contains("name")) {
    d.name = j.at("name").get<std::string>();
    return d;
  }
  throw std::invalid_argument(
      "data spec: expected a catalog name or {\"samples\": [...]}");
}

ojson data_spec_to_json(const DataSpec& d) {
  if (d.is_inline()) return ojson{{"samples", d.samples}};
  return ojson(d.name);
}

ProblemConfig problem_from_json(const ojson& j) {
  ProblemConfig p;
  if (j.contains("domain")) p.domain = domain_from_json(j.at("domain"));
  p.R = j.value("R", p.R);
  if (!(p.R > 0)) throw std::invalid_argument("problem: R must be positive");
  if (j.contains("mesh")) {
    const ojson& m = j.at("mesh");
    p.levels = m.value("levels", p.levels);
    p.panels_per_level = m.value("panels_per_level", p.panels_per_level);
    p.panel_order = m.value("panel_order", p.panel_order);
    p.arc_panels = m.value("arc_panels", p.arc_panels);
  }
  p.map_s = j.value("map_s", 1.0);
  if (j.contains("data")) {
    const ojson& d = j.at("data");
    if (d.contains("f_N")) p.f_N = data_spec_from_json(d.at("f_N"));
    if (d.contains("f_D")) p.f_D = data_spec_from_json(d.at("f_D"));
    if (d.contains("arc")) p.arc = data_spec_from_json(d.at("arc"));
  }
  return p;
}

ojson problem_to_json(const ProblemConfig& p) {
  ojson j;
  j["domain"] = domain_to_json(p.domain);
  j["R"] = p.R;
  j["mesh"] = ojson{{"levels", p.levels},
                    {"panels_per_level", p.panels_per_level},
                    {"panel_order", p.panel_order},
                    {"arc_panels", p.arc_panels}};
  j["map_s"] = p.map_s;
  j["data"] = ojson{{"f_N", data_spec_to_json(p.f_N)},
                    {"f_D", data_spec_to_json(p.f_D)},
                    {"arc", data_spec_to_json(p.arc.name.empty() &&
                                                      p.arc.samples.empty()
                                                  ? p.f_D
                                                  : p.arc)}};
  return j;
}

std::string csv_header_comment(const ojson& config) {
  return "# config " + config.dump() + "\n";
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

std::string csv_table(const ojson& config, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::string out = csv_header_comment(config);
  out += csv_row(columns);
  for (const auto& r : rows) {
    std::vector<std::string> cells;
    cells.reserve(r.size());
    for (double v : r) cells.push_back(fmt17(v));
    out += csv_row(cells);
  }
  return out;
}

std::string density_to_csv(const ojson& config, const SolveResult& result) {
  const SolverMesh& mesh = result.density.mesh;
  std::string out = csv_header_comment(config);
  out += csv_row({"x", "y", "kind", "weight", "rho", "residual"});
  for (int i = 0; i < mesh.size(); ++i) {
    int kind = static_cast<int>(mesh.node_kind(i));
    out += csv_row({fmt17(mesh.nodes[i].x), fmt17(mesh.nodes[i].y),
                    std::to_string(kind), fmt17(mesh.weights[i]),
                    fmt17(result.density.values[i]), fmt17(result.residual)});
  }
  return out;
}

std::string contour_svg(const SolverMesh& mesh, const std::vector<Vec2>& probes) {
  // Fit the scene into a fixed 640x640 viewport with a 5% margin.
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto grow = [&](Vec2 p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const Vec2& p : mesh.nodes) grow(p);
  for (const Vec2& p : probes) grow(p);
  double span = std::max(xmax - xmin, ymax - ymin);
  if (!(span > 0)) span = 1.0;
  double pad = 0.05 * span;
  double scale = 640.0 / (span + 2 * pad);
  auto px = [&](double x) { return fmt17((x - xmin + pad) * scale); };
  auto py = [&](double y) { return fmt17(640.0 - (y - ymin + pad) * scale); };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
      "viewBox=\"0 0 640 640\">\n";
  svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  for (int i = 0; i < mesh.size(); ++i) {
    if (i) svg += ' ';
    svg += px(mesh.nodes[i].x) + "," + py(mesh.nodes[i].y);
  }
  svg += "\"/>\n";
  for (const Vec2& p : probes)
    svg += "<circle cx=\"" + px(p.x) + "\" cy=\"" + py(p.y) +
           "\" r=\"3\" fill=\"red\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace mixedbvp
