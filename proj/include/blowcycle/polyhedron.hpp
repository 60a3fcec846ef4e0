#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "blowcycle/factored.hpp"

namespace blowcycle {

// Componentwise-minimal elements of a support, in ascending lex order.
struct VertexSet {
  std::vector<ExponentVector> minimal;
};

VertexSet minimal_vertices(const Polynomial& G);
// Units among the factors do not change the minimal set; other factors shift it.
VertexSet minimal_vertices(const FactoredPolynomial& G);

// Endpoints of the edge joining the two minimal monomials, the one with the
// larger exponent of heavy_var first.
struct Edge {
  ExponentVector heavy;
  ExponentVector light;

  Exponent l1_length() const;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Throws ShapeMismatch unless there are exactly two minimal vertices.
Edge significant_edge(const VertexSet& vertices, std::size_t heavy_var);
Edge significant_edge(const FactoredPolynomial& G, std::size_t heavy_var);

struct EdgeTrackEntry {
  std::size_t cycle;
  Edge edge;
};

// The heavy endpoint is drawn in heavy_plane coordinates, the light endpoint in light_plane.
struct FigureProjection {
  std::array<std::size_t, 2> light_plane;
  std::array<std::size_t, 2> heavy_plane;
};

struct FigureDocument {
  std::string svg;
  nlohmann::json data;
};

// One segment per track entry; integer coordinates only, so output is bit-stable.
FigureDocument emit_figure(std::span<const EdgeTrackEntry> tracks, const Ring& ring, const FigureProjection& projection);

}  // namespace blowcycle
