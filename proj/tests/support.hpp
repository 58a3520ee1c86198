#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "cellform/complex.hpp"
#include "cellform/generators.hpp"
#include "cellform/io.hpp"
#include "cellform/random.hpp"

namespace testing_support {

using cellform::CellComplex;
using cellform::CellId;
using cellform::Incidence;

// v = vertex 0, u = vertex 1, boundary(e) = v - u.
inline CellComplex single_edge(CellComplex::Weights w = {}) {
    return CellComplex::build({{{}, {}}, {{{0, 1}, {1, -1}}}}, std::move(w));
}

inline CellComplex single_vertex() { return CellComplex::build({{{}}}); }

// One triangle: vertices 0,1,2; edges 01, 12, 02 oriented low to high.
inline CellComplex triangle() { return cellform::from_polygons(3, {{0, 1, 2}}); }

// Two squares glued along two opposite edges (open cylinder): edges 0,1 run
// a0->a1, edges 2,3 run b0->b1, edge 4 = a0->b0, edge 5 = a1->b1.
inline CellComplex two_square_cylinder() {
    CellComplex::BoundaryLists b(3);
    b[0].resize(4);
    b[1] = {{{0, -1}, {1, 1}}, {{0, -1}, {1, 1}}, {{2, -1}, {3, 1}}, {{2, -1}, {3, 1}}, {{0, -1}, {2, 1}},
            {{1, -1}, {3, 1}}};
    b[2] = {{{0, 1}, {5, 1}, {2, -1}, {4, -1}}, {{1, 1}, {5, 1}, {3, -1}, {4, -1}}};
    return CellComplex::build(std::move(b));
}

inline CellComplex::Weights random_weights(const CellComplex& c, cellform::Rng& rng, double lo = 0.1,
                                           double hi = 10.0) {
    CellComplex::Weights w;
    for (int p = 0; p <= c.dimension(); ++p) {
        std::vector<double> row(c.cell_count(p));
        for (double& x : row) x = rng.uniform(lo, hi);
        w.push_back(row);
    }
    return w;
}

inline Eigen::VectorXd random_vector(cellform::Rng& rng, Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
    return v;
}

// Complexes used by the property tests.
inline std::vector<std::pair<std::string, CellComplex>> property_complexes() {
    std::vector<std::pair<std::string, CellComplex>> out;
    for (const char* spec : {"interval", "cycle:5", "complete:4", "star:4", "petersen", "tetrahedron", "cube",
                             "octahedron", "icosahedron", "torus_grid:3x3", "hex_torus:3x3"})
        out.emplace_back(spec, cellform::generate(spec));
    out.emplace_back("triangle", triangle());
    return out;
}

}  // namespace testing_support
