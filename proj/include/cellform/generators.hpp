#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cellform/complex.hpp"

namespace cellform {

// Simple graph on vertices 0..n-1; edge k is oriented from the lower to the
// higher vertex index.
CellComplex graph_complex(int vertex_count, const std::vector<std::pair<int, int>>& edges);

CellComplex cycle_graph(int n);     // n >= 3
CellComplex path_graph(int n);      // n >= 1 vertices
CellComplex complete_graph(int n);  // n >= 1
CellComplex star_graph(int leaves); // K_{1,leaves}, leaves >= 1
CellComplex petersen_graph();
// Erdos-Renyi G(n, p) drawn from Rng(seed).
CellComplex random_graph(int n, double p, std::uint64_t seed);

CellComplex tetrahedron();
CellComplex cube();
CellComplex octahedron();
CellComplex dodecahedron();
CellComplex icosahedron();

// Square grid on the flat p x q torus, p, q >= 3.
CellComplex torus_grid(int p, int q);
// Hexagonal cells on the torus: dual of the p x q grid with every square cut
// along a diagonal. p, q >= 3.
CellComplex hex_torus(int p, int q);
// Two 4 x 4 torus grids, each with one square removed, glued along the
// boundary 4-cycle. 28 vertices, 60 edges, 30 squares, chi = -2.
CellComplex genus_two();
// Icosahedron after `flips` random edge flips that keep the triangulation
// simple and every degree >= 3.
CellComplex flipped_icosahedron(int flips, std::uint64_t seed);

// Vertex cycles of the faces of a closed polygonal surface, and of its dual
// (one face per vertex, one vertex per face).
std::vector<std::vector<int>> dual_faces(int vertex_count, const std::vector<std::vector<int>>& faces);

// "kind" or "kind:params", e.g. "cycle:5", "torus_grid:4x4", "random_graph:20,0.3".
// Kinds: interval, cycle:n, path:n, complete:n, star:n, petersen,
// random_graph:n[,p], tetrahedron, cube, octahedron, dodecahedron,
// icosahedron, torus_grid:pxq, hex_torus:pxq, genus2, flipped_icosahedron:k.
// Throws BadParameter.
CellComplex generate(std::string_view spec, std::uint64_t seed = 0);
std::vector<std::string> generator_kinds();

}  // namespace cellform
