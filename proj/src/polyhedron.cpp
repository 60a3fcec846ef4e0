#include "blowcycle/polyhedron.hpp"

#include <algorithm>
#include <sstream>

#include "blowcycle/errors.hpp"

namespace blowcycle {

VertexSet minimal_vertices(const Polynomial& G) {
  if (G.is_zero()) throw Error("minimal vertices of the zero polynomial");
  // Any divisor of a support vector precedes it in lex order, so one ascending pass suffices.
  VertexSet out;
  for (const auto& t : G.terms()) {
    const bool dominated = std::any_of(out.minimal.begin(), out.minimal.end(),
                                       [&](const ExponentVector& m) { return m.divides(t.exponents); });
    if (!dominated) out.minimal.push_back(t.exponents);
  }
  return out;
}

VertexSet minimal_vertices(const FactoredPolynomial& G) {
  if (!G.unit_factors_are_units()) return minimal_vertices(G.expand());
  VertexSet out = minimal_vertices(G.residue());
  const ExponentVector shift = G.variable_exponents();
  for (auto& m : out.minimal) m += shift;
  return out;
}

Exponent Edge::l1_length() const {
  Exponent total = 0;
  for (std::size_t i = 0; i < heavy.size(); ++i)
    total = checked_add(total, heavy[i] > light[i] ? heavy[i] - light[i] : light[i] - heavy[i]);
  return total;
}

Edge significant_edge(const VertexSet& vertices, std::size_t heavy_var) {
  if (vertices.minimal.size() != 2) {
    std::string listed;
    for (const auto& m : vertices.minimal) listed += " " + to_string(m);
    throw ShapeMismatch("expected exactly two minimal vertices, found " + std::to_string(vertices.minimal.size()) +
                        ":" + listed);
  }
  const auto& a = vertices.minimal[0];
  const auto& b = vertices.minimal[1];
  if (heavy_var >= a.size()) throw ParameterError("heavy variable out of range");
  return a[heavy_var] >= b[heavy_var] ? Edge{a, b} : Edge{b, a};
}

Edge significant_edge(const FactoredPolynomial& G, std::size_t heavy_var) {
  return significant_edge(minimal_vertices(G), heavy_var);
}

namespace {

constexpr long kScale = 8;
constexpr long kMargin = 40;
constexpr long kGap = 60;

std::array<Exponent, 2> project(const ExponentVector& v, const std::array<std::size_t, 2>& plane) {
  return {v[plane[0]], v[plane[1]]};
}

}  // namespace

FigureDocument emit_figure(std::span<const EdgeTrackEntry> tracks, const Ring& ring,
                           const FigureProjection& projection) {
  if (tracks.empty()) throw ParameterError("a figure needs at least one cycle");
  for (auto i : {projection.light_plane[0], projection.light_plane[1], projection.heavy_plane[0],
                 projection.heavy_plane[1]})
    if (i >= ring.size()) throw ParameterError("projection variable out of range");

  Exponent light_w = 1, light_h = 1, heavy_w = 1, heavy_h = 1;
  for (const auto& t : tracks) {
    const auto l = project(t.edge.light, projection.light_plane);
    const auto h = project(t.edge.heavy, projection.heavy_plane);
    light_w = std::max(light_w, l[0]);
    light_h = std::max(light_h, l[1]);
    heavy_w = std::max(heavy_w, h[0]);
    heavy_h = std::max(heavy_h, h[1]);
  }
  const long left_w = static_cast<long>(light_w) * kScale;
  const long right_w = static_cast<long>(heavy_w) * kScale;
  const long plot_h = static_cast<long>(std::max(light_h, heavy_h)) * kScale;
  const long width = 2 * kMargin + left_w + kGap + right_w;
  const long height = 2 * kMargin + plot_h;
  const long right_x0 = kMargin + left_w + kGap;
  const long base_y = kMargin + plot_h;

  auto label = [&](const std::array<std::size_t, 2>& plane) { return ring.name(plane[0]) + ring.name(plane[1]); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "  <rect class=\"plane\" data-plane=\"" << label(projection.light_plane) << "\" x=\"" << kMargin
      << "\" y=\"" << kMargin << "\" width=\"" << left_w << "\" height=\"" << plot_h
      << "\" fill=\"#fff3b0\" stroke=\"#999\"/>\n";
  svg << "  <rect class=\"plane\" data-plane=\"" << label(projection.heavy_plane) << "\" x=\"" << right_x0
      << "\" y=\"" << kMargin << "\" width=\"" << right_w << "\" height=\"" << plot_h
      << "\" fill=\"#fff3b0\" stroke=\"#999\"/>\n";
  svg << "  <text x=\"" << kMargin << "\" y=\"" << kMargin - 10 << "\" font-size=\"14\">"
      << label(projection.light_plane) << "-plane</text>\n";
  svg << "  <text x=\"" << right_x0 << "\" y=\"" << kMargin - 10 << "\" font-size=\"14\">"
      << label(projection.heavy_plane) << "-plane</text>\n";

  nlohmann::json segments = nlohmann::json::array();
  for (const auto& t : tracks) {
    const auto l = project(t.edge.light, projection.light_plane);
    const auto h = project(t.edge.heavy, projection.heavy_plane);
    const long x1 = kMargin + static_cast<long>(l[0]) * kScale;
    const long y1 = base_y - static_cast<long>(l[1]) * kScale;
    const long x2 = right_x0 + static_cast<long>(h[0]) * kScale;
    const long y2 = base_y - static_cast<long>(h[1]) * kScale;
    svg << "  <line class=\"edge\" data-cycle=\"" << t.cycle << "\" data-light=\"" << l[0] << "," << l[1]
        << "\" data-heavy=\"" << h[0] << "," << h[1] << "\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
        << "\" y2=\"" << y2 << "\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
    segments.push_back({{"cycle", t.cycle},
                        {"light", std::vector<Exponent>(t.edge.light.begin(), t.edge.light.end())},
                        {"heavy", std::vector<Exponent>(t.edge.heavy.begin(), t.edge.heavy.end())},
                        {"light_projection", {l[0], l[1]}},
                        {"heavy_projection", {h[0], h[1]}},
                        {"l1_length", t.edge.l1_length()}});
  }
  svg << "</svg>\n";

  FigureDocument doc;
  doc.svg = svg.str();
  doc.data = {{"variables", ring.names()},
              {"light_plane", label(projection.light_plane)},
              {"heavy_plane", label(projection.heavy_plane)},
              {"segments", std::move(segments)}};
  return doc;
}

}  // namespace blowcycle
