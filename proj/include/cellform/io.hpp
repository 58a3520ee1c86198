#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cellform/calculus.hpp"
#include "cellform/complex.hpp"

namespace cellform {

// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

// Complex document, schema version "1":
//   {"schema_version": "1", "dimension": n, "name": "...",
//    "cells": [[{"boundary": []}, ...], [{"boundary": [[face, sign], ...]}, ...], ...],
//    "weights": [[w, ...], ...]}
// "name" and "weights" are optional. Throws ParseError (with byte position for
// malformed JSON) or the validation error raised by CellComplex::build.
CellComplex parse_complex_json(std::string_view text);
nlohmann::json complex_to_json(const CellComplex& complex, const std::string& name = "");
// Canonical form: sorted keys, two-space indent, shortest round-trip floats,
// trailing newline.
std::string serialize_complex_json(const CellComplex& complex, const std::string& name = "");

// One edge "u v" per line; a single name declares an isolated vertex; '#'
// starts a comment. Vertices are numbered by first appearance and each edge
// is oriented later - earlier. Throws SelfLoop, DuplicateEdge, ParseError.
struct EdgeListGraph {
    CellComplex complex;
    std::vector<std::string> vertex_names;
};
EdgeListGraph parse_edge_list(std::string_view text);

// Polygonal surface from vertex cycles. Edges are numbered by first
// appearance while walking the faces, oriented from the lower to the higher
// vertex index; a face gets +1 on an edge it traverses low-to-high.
CellComplex from_polygons(int vertex_count, const std::vector<std::vector<int>>& faces);

// OFF mesh; coordinates are read and discarded. Edges not lying in exactly
// two faces are reported in non_manifold_edges (as vertex pairs, lower first).
struct OffMesh {
    CellComplex complex;
    std::vector<std::pair<int, int>> non_manifold_edges;
};
OffMesh parse_off(std::string_view text);

// Reads a complex from disk, choosing the parser by extension:
// .json, .off, anything else is treated as an edge list.
// Throws ParseError when the file cannot be read.
CellComplex load_complex_file(const std::string& path);

// Weight document: the "weights" array of a complex document, either bare or
// inside an object. Shapes must match the complex.
CellComplex::Weights parse_weights_json(const CellComplex& complex, std::string_view text);

// Value maps keyed by "d<dim>:<i>" (functions) and "d<p+1>:<i>>d<p>:<j>"
// (1-forms and vector fields).
std::string vector_key(const IncidenceVector& v);
nlohmann::json function_to_json(const CellComplex& complex, const Eigen::VectorXd& values);
nlohmann::json vectors_to_json(const CellComplex& complex, const Eigen::VectorXd& values);
CellFunction function_from_json(const CellComplex& complex, const nlohmann::json& j);
OneForm one_form_from_json(const CellComplex& complex, const nlohmann::json& j);

std::string read_file(const std::string& path);

}  // namespace cellform
