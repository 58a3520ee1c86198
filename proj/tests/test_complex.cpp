#include <doctest.h>

#include <algorithm>
#include <iterator>
#include <numeric>
#include <set>

#include <Eigen/LU>

#include "cellform/generators.hpp"
#include "support.hpp"

using namespace cellform;
using testing_support::single_edge;

namespace {

ErrorCode build_error(CellComplex::BoundaryLists b, CellComplex::Weights w = {}) {
    try {
        CellComplex::build(std::move(b), std::move(w));
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("build accepted an invalid complex");
    return ErrorCode::ParseError;
}

// Closure by breadth-first descent through faces().
std::set<CellId> descend(const CellComplex& c, CellId start) {
    std::set<CellId> seen{start};
    std::vector<CellId> frontier{start};
    while (!frontier.empty()) {
        const CellId x = frontier.back();
        frontier.pop_back();
        if (x.dim == 0) continue;
        for (const auto& f : c.faces(x))
            if (seen.insert({x.dim - 1, f.cell}).second) frontier.push_back({x.dim - 1, f.cell});
    }
    return seen;
}

}  // namespace

TEST_CASE("single edge is the smallest valid complex") {
    const CellComplex c = single_edge();
    CHECK(c.dimension() == 1);
    CHECK(c.total_cells() == 3);
    CHECK(c.euler_characteristic() == 1);
    const Eigen::MatrixXi m = c.boundary_matrix(1);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 1);
    CHECK(m(0, 0) == 1);
    CHECK(m(1, 0) == -1);
    CHECK(c.weight({1, 0}) == 1.0);
}

TEST_CASE("tetrahedron boundary squares to zero") {
    const CellComplex c = tetrahedron();
    CHECK(c.cell_counts() == std::vector<int>{4, 6, 4});
    const Eigen::MatrixXi d1 = c.boundary_matrix(1);
    const Eigen::MatrixXi d2 = c.boundary_matrix(2);
    // Hand multiplication, entry by entry.
    for (int v = 0; v < 4; ++v)
        for (int f = 0; f < 4; ++f) {
            int s = 0;
            for (int e = 0; e < 6; ++e) s += d1(v, e) * d2(e, f);
            CHECK(s == 0);
        }
    CHECK(c.is_closed_surface());
}

TEST_CASE("validation errors") {
    SUBCASE("dangling face") { CHECK(build_error({{{}, {}}, {{{0, 1}, {2, -1}}}}) == ErrorCode::DanglingFace); }
    SUBCASE("bad sign") { CHECK(build_error({{{}, {}}, {{{0, 2}, {1, -1}}}}) == ErrorCode::BadSign); }
    SUBCASE("repeated face") {
        // Triangle listing the same edge twice.
        CellComplex::BoundaryLists b = {{{}, {}, {}},
                                        {{{0, -1}, {1, 1}}, {{1, -1}, {2, 1}}, {{0, -1}, {2, 1}}},
                                        {{{0, 1}, {1, 1}, {1, 1}}}};
        const ErrorCode code = build_error(b);
        CHECK((code == ErrorCode::RepeatedFace || code == ErrorCode::BoundaryNotSquareZero));
    }
    SUBCASE("too few faces") { CHECK(build_error({{{}, {}}, {{{0, 1}}}}) == ErrorCode::TooFewFaces); }
    SUBCASE("boundary not square zero") {
        CellComplex::BoundaryLists b = {{{}, {}, {}},
                                        {{{0, -1}, {1, 1}}, {{1, -1}, {2, 1}}, {{0, -1}, {2, 1}}},
                                        {{{0, 1}, {1, 1}, {2, 1}}}};
        CHECK(build_error(b) == ErrorCode::BoundaryNotSquareZero);
        try {
            CellComplex::build(b);
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("row") != std::string::npos);
        }
    }
    SUBCASE("non-positive weight") {
        CHECK(build_error({{{}, {}}, {{{0, 1}, {1, -1}}}}, {{1.0, 0.0}, {1.0}}) == ErrorCode::NonPositiveWeight);
        CHECK(build_error({{{}, {}}, {{{0, 1}, {1, -1}}}}, {{1.0, 1.0}, {-2.0}}) == ErrorCode::NonPositiveWeight);
    }
    SUBCASE("no vertices") { CHECK(build_error({}) == ErrorCode::BadParameter); }
}

TEST_CASE("boundary matrix") {
    CHECK_THROWS_AS(single_edge().boundary_matrix(2), Error);
    CHECK_THROWS_AS(single_edge().boundary_matrix(0), Error);

    const Eigen::MatrixXi c3 = cycle_graph(3).boundary_matrix(1);
    CHECK(c3.rows() == 3);
    CHECK(c3.cols() == 3);
    for (int j = 0; j < 3; ++j) {
        CHECK(c3.col(j).sum() == 0);
        CHECK(c3.col(j).cwiseAbs().sum() == 2);
    }
    CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(c3.cast<double>()).rank() == 2);

    const CellComplex cu = cube();
    CHECK((cu.boundary_matrix(1) * cu.boundary_matrix(2)).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("closure") {
    CHECK(single_edge().closure({0, 0}) == std::vector<CellId>{{0, 0}});
    CHECK(testing_support::triangle().closure({2, 0}).size() == 7);
    const CellComplex cu = cube();
    for (int f = 0; f < cu.cell_count(2); ++f) {
        const auto& cl = cu.closure({2, f});
        CHECK(cl.size() == 9);
        CHECK(std::set<CellId>(cl.begin(), cl.end()) == descend(cu, {2, f}));
    }
    // Idempotence: the union of the closures of the faces plus the cell itself.
    const CellComplex ico = icosahedron();
    for (int f = 0; f < ico.cell_count(2); ++f) {
        std::set<CellId> u{{2, f}};
        for (const auto& e : ico.faces({2, f})) {
            const auto& cl = ico.closure({1, e.cell});
            u.insert(cl.begin(), cl.end());
        }
        const auto& cl = ico.closure({2, f});
        CHECK(u == std::set<CellId>(cl.begin(), cl.end()));
    }
    CHECK_THROWS_AS(ico.closure({3, 0}), Error);
}

TEST_CASE("quasiconvexity") {
    CHECK(from_polygons(4, {{0, 1, 2}, {1, 3, 2}}).is_quasiconvex());

    const CellComplex cyl = testing_support::two_square_cylinder();
    const QuasiconvexityReport r = cyl.quasiconvexity();
    CHECK_FALSE(r.quasiconvex);
    // First witness: the two parallel edges a0 -> a1 meet in both endpoints.
    CHECK(r.first == CellId{1, 0});
    CHECK(r.second == CellId{1, 1});
    CHECK(r.intersection == std::vector<CellId>{{0, 0}, {0, 1}});
    // The two squares themselves meet in two edges.
    const auto& c1 = cyl.closure({2, 0});
    const auto& c2 = cyl.closure({2, 1});
    std::vector<CellId> common;
    std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(common));
    CHECK(std::count_if(common.begin(), common.end(), [](CellId c) { return c.dim == 1; }) == 2);

    for (const char* g : {"complete:6", "petersen", "star:5", "cycle:4"}) CHECK(generate(g).is_quasiconvex());
    for (const char* s : {"tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"}) {
        CHECK(generate(s).is_quasiconvex());
        CHECK(generate(s).is_closed_surface());
    }
}

TEST_CASE("euler characteristic") {
    CHECK(complete_graph(4).euler_characteristic() == -2);
    CHECK(cube().euler_characteristic() == 2);
    const CellComplex t = torus_grid(3, 3);
    CHECK(t.cell_counts() == std::vector<int>{9, 18, 9});
    CHECK(t.euler_characteristic() == 0);

    // Invariance under a relabeling of the vertices.
    const CellComplex ico = icosahedron();
    std::vector<int> perm(12);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    CellComplex::BoundaryLists b = ico.boundary_lists();
    for (auto& e : b[1])
        for (auto& inc : e) inc.cell = perm[inc.cell];
    CHECK(CellComplex::build(b).euler_characteristic() == ico.euler_characteristic());
}

TEST_CASE("degree") {
    CHECK(star_graph(3).degree({0, 0}) == 3);
    CHECK(cube().degree({2, 0}) == 4);
    const CellComplex ico = icosahedron();
    for (int v = 0; v < 12; ++v) {
        int count = 0;
        for (int e = 0; e < ico.cell_count(1); ++e)
            if (ico.incidence({1, e}, {0, v}) != 0) ++count;
        CHECK(ico.degree({0, v}) == count);
        CHECK(count == 5);
    }
    CHECK_THROWS_AS(cube().degree({1, 0}), Error);
}

TEST_CASE("closed surface detection") {
    CHECK(tetrahedron().is_closed_surface());
    CHECK_FALSE(testing_support::triangle().is_closed_surface());
    // Two tetrahedra sharing vertex 0: the link of 0 is two disjoint cycles.
    const CellComplex wedge = from_polygons(7, {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2},
                                                {0, 4, 5}, {0, 6, 4}, {0, 5, 6}, {4, 6, 5}});
    CHECK(wedge.euler_characteristic() == 3);
    CHECK_FALSE(wedge.is_closed_surface());
    CHECK_FALSE(cycle_graph(4).is_closed_surface());
}

TEST_CASE("incidence vectors and reorientation") {
    const CellComplex c = single_edge();
    REQUIRE(c.vectors().size() == 2);
    CHECK(c.vectors()[0].sign == 1);
    CHECK(c.vectors()[1].sign == -1);
    CHECK(c.vector_index({1, 0}, {0, 1}) == 1);

    const CellComplex cu = cube();
    const CellComplex flipped = cu.reoriented({1, 3});
    CHECK((flipped.boundary_matrix(1) * flipped.boundary_matrix(2)).cwiseAbs().maxCoeff() == 0);
    for (int f = 0; f < cu.cell_count(2); ++f)
        CHECK(flipped.incidence({2, f}, {1, 3}) == -cu.incidence({2, f}, {1, 3}));
    for (const auto& v : cu.faces({1, 3})) CHECK(flipped.incidence({1, 3}, {0, v.cell}) == -v.sign);
}

TEST_CASE("cell id keys") {
    CHECK(to_string(CellId{2, 17}) == "d2:17");
    CHECK(parse_cell_id("d1:4") == CellId{1, 4});
    CHECK_FALSE(parse_cell_id("d1").has_value());
    CHECK_FALSE(parse_cell_id("x1:2").has_value());
}
