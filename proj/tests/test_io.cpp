#include <doctest.h>

#include "cellform/io.hpp"
#include "support.hpp"

using namespace cellform;

namespace {

const std::string kData = CELLFORM_TEST_DATA;

ErrorCode error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::BadParameter;
}

}  // namespace

TEST_CASE("complex documents") {
    const CellComplex e = parse_complex_json(read_file(kData + "/single_edge.json"));
    CHECK(e.total_cells() == 3);
    CHECK(e.euler_characteristic() == 1);
    CHECK(e.incidence({1, 0}, {0, 0}) == 1);
    CHECK(e.weight({0, 1}) == 1.0);

    CHECK(error_of([] { parse_complex_json(read_file(kData + "/bad_sign.json")); }) == ErrorCode::BadSign);

    try {
        parse_complex_json(read_file(kData + "/malformed.json"));
        FAIL("expected a parse error");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::ParseError);
        CHECK(std::string(err.what()).find("byte") != std::string::npos);
    }

    CHECK(error_of([] { parse_complex_json(R"({"schema_version": "2", "dimension": 0, "cells": [[{"boundary": []}]]})"); }) ==
          ErrorCode::ParseError);
    CHECK(error_of([] { parse_complex_json(R"({"schema_version": "1", "dimension": 1, "cells": [[{"boundary": []}]]})"); }) ==
          ErrorCode::ParseError);
    CHECK(error_of([] {
              parse_complex_json(R"({"schema_version": "1", "dimension": 0, "cells": [[{"boundary": [[0, 1]]}]]})");
          }) == ErrorCode::ParseError);
    CHECK(error_of([] {
              parse_complex_json(
                  R"({"schema_version": "1", "dimension": 0, "cells": [[{"boundary": []}]], "weights": [[-1]]})");
          }) == ErrorCode::NonPositiveWeight);
}

TEST_CASE("serialization round trip") {
    Rng rng(3);
    for (const char* spec : {"interval", "cube", "torus_grid:3x4", "petersen"}) {
        const CellComplex base = generate(spec);
        const CellComplex c = base.with_weights(testing_support::random_weights(base, rng));
        const std::string text = serialize_complex_json(c, spec);
        const CellComplex back = parse_complex_json(text);
        CHECK(back.boundary_lists() == c.boundary_lists());
        CHECK(back.weights() == c.weights());
        // Canonical: serializing the parsed document reproduces the bytes.
        CHECK(serialize_complex_json(back, spec) == text);
    }
    const std::string text = serialize_complex_json(testing_support::single_edge());
    CHECK(text.find("\"cells\"") < text.find("\"dimension\""));
    CHECK(text.find("\"dimension\"") < text.find("\"schema_version\""));
    CHECK(text.back() == '\n');
}

TEST_CASE("edge lists") {
    const EdgeListGraph p = parse_edge_list("a b\nb c\n");
    CHECK(p.complex.cell_counts() == std::vector<int>{3, 2});
    CHECK(p.complex.euler_characteristic() == 1);
    CHECK(p.vertex_names == std::vector<std::string>{"a", "b", "c"});
    // Later vertex minus earlier vertex.
    CHECK(p.complex.incidence({1, 0}, {0, 1}) == 1);
    CHECK(p.complex.incidence({1, 0}, {0, 0}) == -1);

    const EdgeListGraph k4 = parse_edge_list(read_file(kData + "/k4.txt"));
    CHECK(k4.complex.total_cells() == 10);

    const EdgeListGraph iso = parse_edge_list("x\n# comment only\ny z  # trailing\n");
    CHECK(iso.complex.cell_counts() == std::vector<int>{3, 1});

    CHECK(error_of([] { parse_edge_list("a a"); }) == ErrorCode::SelfLoop);
    CHECK(error_of([] { parse_edge_list("a b\nb a"); }) == ErrorCode::DuplicateEdge);
    CHECK(error_of([] { parse_edge_list("a b c"); }) == ErrorCode::ParseError);
    CHECK(error_of([] { parse_edge_list("# nothing"); }) == ErrorCode::ParseError);
}

TEST_CASE("OFF meshes") {
    const OffMesh cube = parse_off(read_file(kData + "/cube.off"));
    CHECK(cube.complex.cell_counts() == std::vector<int>{8, 12, 6});
    CHECK(cube.complex.is_closed_surface());
    CHECK(cube.non_manifold_edges.empty());

    const OffMesh tri = parse_off(read_file(kData + "/triangle.off"));
    CHECK(tri.complex.cell_counts() == std::vector<int>{3, 3, 1});
    CHECK_FALSE(tri.complex.is_closed_surface());
    CHECK(tri.non_manifold_edges.size() == 3);

    const OffMesh fin = parse_off(read_file(kData + "/fin.off"));
    CHECK(std::find(fin.non_manifold_edges.begin(), fin.non_manifold_edges.end(), std::pair{0, 1}) !=
          fin.non_manifold_edges.end());
    CHECK_FALSE(fin.complex.is_closed_surface());

    // Counts on the header line.
    CHECK(parse_off("OFF 3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n").complex.total_cells() == 7);

    CHECK(error_of([] { parse_off("PLY\n"); }) == ErrorCode::ParseError);
    CHECK(error_of([] { parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 5\n"); }) == ErrorCode::ParseError);
    CHECK(error_of([] { parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 1\n"); }) == ErrorCode::ParseError);
    CHECK(error_of([] { parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n"); }) == ErrorCode::ParseError);
    CHECK(error_of([] { parse_off("OFF\n3 1 0\n0 zero 0\n1 0 0\n0 1 0\n3 0 1 2\n"); }) == ErrorCode::ParseError);

    // Polygon orientation: head is the higher vertex, faces follow traversal.
    const CellComplex sq = from_polygons(4, {{0, 1, 2, 3}});
    CHECK(sq.incidence({1, 0}, {0, 1}) == 1);
    CHECK(sq.incidence({2, 0}, {1, 0}) == 1);
    CHECK(sq.incidence({2, 0}, {1, 3}) == -1);  // edge {0,3} walked 3 -> 0
}

TEST_CASE("value maps") {
    const CellComplex e = testing_support::single_edge();
    const nlohmann::json f = function_to_json(e, Eigen::Vector3d(1.5, 2.0, -1.0));
    CHECK(f["d1:0"] == -1.0);
    CHECK((function_from_json(e, f).values - Eigen::Vector3d(1.5, 2.0, -1.0)).norm() == 0.0);

    const nlohmann::json w = vectors_to_json(e, Eigen::Vector2d(0.25, 4.0));
    CHECK(w.contains("d1:0>d0:1"));
    CHECK(one_form_from_json(e, w).values[1] == 4.0);

    CHECK(error_of([&] { one_form_from_json(e, nlohmann::json{{"d1:0>d0:0", 1.0}}); }) == ErrorCode::MissingValue);
    CHECK(error_of([&] { one_form_from_json(e, nlohmann::json{{"d1:0>d0:0", 1.0}, {"d1:0>d0:1", 1.0}, {"d1:3>d0:1", 1.0}}); }) ==
          ErrorCode::UnknownCell);
    CHECK(error_of([&] { one_form_from_json(e, nlohmann::json{{"bogus", 1.0}}); }) == ErrorCode::ParseError);

    const auto weights = parse_weights_json(e, R"({"weights": [[1, 2], [3.5]]})");
    CHECK(weights[1][0] == 3.5);
    CHECK(error_of([&] { parse_weights_json(e, "[[1, 2]]"); }) == ErrorCode::ParseError);
}

TEST_CASE("float formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1e-13) == "1e-13");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
