#include "cellform/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace cellform {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(where, std::string("missing \"") + key + "\"");
    return *it;
}

int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) schema_error(where, "expected an integer");
    return j.get<int>();
}

CellComplex::Weights read_weight_arrays(const json& j, const std::string& where) {
    if (!j.is_array()) schema_error(where, "expected per-dimension arrays");
    CellComplex::Weights w;
    for (std::size_t p = 0; p < j.size(); ++p) {
        const std::string at = where + "/" + std::to_string(p);
        if (!j[p].is_array()) schema_error(at, "expected an array");
        std::vector<double> row;
        for (std::size_t i = 0; i < j[p].size(); ++i) {
            if (!j[p][i].is_number()) schema_error(at + "/" + std::to_string(i), "expected a number");
            row.push_back(j[p][i].get<double>());
        }
        w.push_back(std::move(row));
    }
    return w;
}

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

}  // namespace

CellComplex parse_complex_json(std::string_view text) {
    const json doc = parse_json_text(text);
    if (!doc.is_object()) schema_error("/", "expected an object");
    const json& version = member(doc, "schema_version", "/");
    if (!version.is_string() || version.get<std::string>() != "1")
        schema_error("/schema_version", "unsupported schema version, expected \"1\"");
    const int dimension = as_int(member(doc, "dimension", "/"), "/dimension");
    const json& cells = member(doc, "cells", "/");
    if (!cells.is_array()) schema_error("/cells", "expected per-dimension arrays");
    if (dimension < 0 || static_cast<int>(cells.size()) != dimension + 1)
        schema_error("/dimension", "dimension " + std::to_string(dimension) + " does not match " +
                                       std::to_string(cells.size()) + " cell arrays");

    CellComplex::BoundaryLists boundary(cells.size());
    for (std::size_t p = 0; p < cells.size(); ++p) {
        const std::string at_p = "/cells/" + std::to_string(p);
        if (!cells[p].is_array()) schema_error(at_p, "expected an array");
        for (std::size_t i = 0; i < cells[p].size(); ++i) {
            const std::string at = at_p + "/" + std::to_string(i);
            const json& cell = cells[p][i];
            if (!cell.is_object()) schema_error(at, "expected an object");
            const json& faces = member(cell, "boundary", at);
            if (!faces.is_array()) schema_error(at + "/boundary", "expected an array");
            std::vector<Incidence> list;
            for (std::size_t k = 0; k < faces.size(); ++k) {
                const std::string at_k = at + "/boundary/" + std::to_string(k);
                if (!faces[k].is_array() || faces[k].size() != 2) schema_error(at_k, "expected [face, sign]");
                list.push_back({as_int(faces[k][0], at_k + "/0"), as_int(faces[k][1], at_k + "/1")});
            }
            if (p == 0 && !list.empty()) schema_error(at + "/boundary", "vertices have no faces");
            boundary[p].push_back(std::move(list));
        }
    }
    CellComplex::Weights weights;
    if (auto it = doc.find("weights"); it != doc.end()) weights = read_weight_arrays(*it, "/weights");
    return CellComplex::build(std::move(boundary), std::move(weights));
}

json complex_to_json(const CellComplex& complex, const std::string& name) {
    json cells = json::array();
    for (const auto& dim : complex.boundary_lists()) {
        json arr = json::array();
        for (const auto& faces : dim) {
            json list = json::array();
            for (const auto& f : faces) list.push_back({f.cell, f.sign});
            arr.push_back({{"boundary", list}});
        }
        cells.push_back(arr);
    }
    json doc = {{"schema_version", "1"},
                {"dimension", complex.dimension()},
                {"cells", cells},
                {"weights", complex.weights()}};
    if (!name.empty()) doc["name"] = name;
    return doc;
}

std::string serialize_complex_json(const CellComplex& complex, const std::string& name) {
    return complex_to_json(complex, name).dump(2) + "\n";
}

namespace {

std::vector<std::string> tokens_of(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line.substr(0, line.find('#')))};
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        out.push_back(text.substr(0, nl));
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return out;
}

std::vector<Incidence> edge_boundary(int a, int b) {
    const int lo = std::min(a, b), hi = std::max(a, b);
    return {{lo, -1}, {hi, 1}};
}

}  // namespace

EdgeListGraph parse_edge_list(std::string_view text) {
    std::unordered_map<std::string, int> index;
    std::vector<std::string> names;
    auto vertex = [&](const std::string& name) {
        auto [it, inserted] = index.try_emplace(name, static_cast<int>(names.size()));
        if (inserted) names.push_back(name);
        return it->second;
    };
    std::vector<std::vector<Incidence>> edges;
    std::map<std::pair<int, int>, int> seen;
    const auto lines = lines_of(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const auto tok = tokens_of(lines[n]);
        const std::string where = "line " + std::to_string(n + 1);
        if (tok.empty()) continue;
        if (tok.size() > 2) throw Error(ErrorCode::ParseError, where + ": expected \"u v\" or a single vertex name");
        if (tok.size() == 1) {
            vertex(tok[0]);
            continue;
        }
        if (tok[0] == tok[1]) throw Error(ErrorCode::SelfLoop, where + ": self-loop at \"" + tok[0] + "\"");
        const int a = vertex(tok[0]);
        const int b = vertex(tok[1]);
        const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        if (!seen.emplace(key, n + 1).second)
            throw Error(ErrorCode::DuplicateEdge, where + ": edge " + tok[0] + " " + tok[1] + " repeats line " +
                                                      std::to_string(seen[key]));
        edges.push_back(edge_boundary(a, b));
    }
    if (names.empty()) throw Error(ErrorCode::ParseError, "edge list has no vertices");
    CellComplex::BoundaryLists boundary{std::vector<std::vector<Incidence>>(names.size()), std::move(edges)};
    return {CellComplex::build(std::move(boundary)), std::move(names)};
}

CellComplex from_polygons(int vertex_count, const std::vector<std::vector<int>>& faces) {
    std::map<std::pair<int, int>, int> edge_index;
    std::vector<std::vector<Incidence>> edges;
    std::vector<std::vector<Incidence>> cells;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& cycle = faces[f];
        if (cycle.size() < 3)
            throw Error(ErrorCode::BadParameter, "face " + std::to_string(f) + " has fewer than 3 vertices");
        std::vector<Incidence> list;
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            const int a = cycle[k];
            const int b = cycle[(k + 1) % cycle.size()];
            if (a < 0 || a >= vertex_count)
                throw Error(ErrorCode::BadParameter, "face " + std::to_string(f) + " uses unknown vertex " +
                                                         std::to_string(a));
            if (a == b) throw Error(ErrorCode::BadParameter, "face " + std::to_string(f) + " repeats a vertex");
            const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(edges.size()));
            if (inserted) edges.push_back(edge_boundary(a, b));
            list.push_back({it->second, a < b ? 1 : -1});
        }
        cells.push_back(std::move(list));
    }
    CellComplex::BoundaryLists boundary{std::vector<std::vector<Incidence>>(vertex_count), std::move(edges)};
    if (!cells.empty()) boundary.push_back(std::move(cells));
    return CellComplex::build(std::move(boundary));
}

OffMesh parse_off(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_line;
    const auto lines = lines_of(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        auto tok = tokens_of(lines[n]);
        if (tok.empty()) continue;
        rows.push_back(std::move(tok));
        row_line.push_back(n + 1);
    }
    if (rows.empty() || rows[0][0] != "OFF") throw Error(ErrorCode::ParseError, "line 1: missing OFF header");

    // Counts may share the header line.
    std::vector<std::string> counts(rows[0].begin() + 1, rows[0].end());
    std::size_t r = 1;
    if (counts.empty()) {
        if (rows.size() < 2) throw Error(ErrorCode::ParseError, "missing vertex/face counts");
        counts = rows[1];
        r = 2;
    }
    auto parse_int = [&](const std::string& s, std::size_t line) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected an integer, got \"" + s + "\"");
        return v;
    };
    const std::size_t counts_line = row_line[r - 1];
    if (counts.size() < 2) throw Error(ErrorCode::ParseError, "line " + std::to_string(counts_line) + ": expected counts");
    const int nv = parse_int(counts[0], counts_line);
    const int nf = parse_int(counts[1], counts_line);
    if (nv <= 0 || nf < 0) throw Error(ErrorCode::ParseError, "line " + std::to_string(counts_line) + ": bad counts");
    if (rows.size() < r + nv + nf) throw Error(ErrorCode::ParseError, "file ends before all vertices and faces");

    for (int v = 0; v < nv; ++v, ++r) {
        const auto& row = rows[r];
        if (row.size() < 3)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(row_line[r]) + ": expected 3 coordinates");
        for (int c = 0; c < 3; ++c) {
            double x = 0;
            auto [p, ec] = std::from_chars(row[c].data(), row[c].data() + row[c].size(), x);
            if (ec != std::errc() || p != row[c].data() + row[c].size())
                throw Error(ErrorCode::ParseError, "line " + std::to_string(row_line[r]) + ": bad coordinate \"" +
                                                       row[c] + "\"");
        }
    }
    std::vector<std::vector<int>> faces;
    for (int f = 0; f < nf; ++f, ++r) {
        const auto& row = rows[r];
        const int k = parse_int(row[0], row_line[r]);
        if (k < 3 || static_cast<int>(row.size()) < k + 1)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(row_line[r]) + ": bad face");
        std::vector<int> cycle;
        for (int i = 1; i <= k; ++i) {
            const int v = parse_int(row[i], row_line[r]);
            if (v < 0 || v >= nv)
                throw Error(ErrorCode::ParseError, "line " + std::to_string(row_line[r]) + ": vertex " +
                                                       std::to_string(v) + " out of range");
            if (std::find(cycle.begin(), cycle.end(), v) != cycle.end())
                throw Error(ErrorCode::ParseError, "line " + std::to_string(row_line[r]) + ": repeated vertex " +
                                                       std::to_string(v));
            cycle.push_back(v);
        }
        faces.push_back(std::move(cycle));
    }

    CellComplex complex = from_polygons(nv, faces);
    std::vector<std::pair<int, int>> bad;
    if (complex.dimension() == 2)
        for (int e = 0; e < complex.cell_count(1); ++e)
            if (complex.cofaces({1, e}).size() != 2) {
                const auto ends = complex.faces({1, e});
                bad.emplace_back(ends[0].cell, ends[1].cell);
            }
    return {std::move(complex), std::move(bad)};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CellComplex load_complex_file(const std::string& path) {
    const std::string text = read_file(path);
    auto ends_with = [&](std::string_view suffix) {
        return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with(".json")) return parse_complex_json(text);
    if (ends_with(".off")) return parse_off(text).complex;
    return parse_edge_list(text).complex;
}

CellComplex::Weights parse_weights_json(const CellComplex& complex, std::string_view text) {
    const json doc = parse_json_text(text);
    const json& arrays = doc.is_object() ? member(doc, "weights", "/") : doc;
    CellComplex::Weights w = read_weight_arrays(arrays, doc.is_object() ? "/weights" : "");
    if (static_cast<int>(w.size()) != complex.dimension() + 1)
        throw Error(ErrorCode::ParseError, "weights have " + std::to_string(w.size()) + " dimensions, complex has " +
                                               std::to_string(complex.dimension() + 1));
    return w;
}

std::string vector_key(const IncidenceVector& v) { return to_string(v.tau) + ">" + to_string(v.sigma); }

json function_to_json(const CellComplex& complex, const Eigen::VectorXd& values) {
    json out = json::object();
    for (int i = 0; i < complex.total_cells(); ++i) out[to_string(complex.cell_at(i))] = values[i];
    return out;
}

json vectors_to_json(const CellComplex& complex, const Eigen::VectorXd& values) {
    json out = json::object();
    const auto& vecs = complex.vectors();
    for (std::size_t i = 0; i < vecs.size(); ++i) out[vector_key(vecs[i])] = values[i];
    return out;
}

CellFunction function_from_json(const CellComplex& complex, const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "function: expected an object keyed by cell");
    std::map<CellId, double> values;
    for (const auto& [key, value] : j.items()) {
        const auto id = parse_cell_id(key);
        if (!id) throw Error(ErrorCode::ParseError, "function: bad cell key \"" + key + "\"");
        if (!value.is_number()) throw Error(ErrorCode::ParseError, "function: value of \"" + key + "\" is not a number");
        values[*id] = value.get<double>();
    }
    return make_function(complex, values);
}

OneForm one_form_from_json(const CellComplex& complex, const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "1-form: expected an object keyed by vector");
    const auto& vecs = complex.vectors();
    OneForm omega{Eigen::VectorXd::Zero(vecs.size())};
    std::vector<bool> set(vecs.size(), false);
    for (const auto& [key, value] : j.items()) {
        const auto gt = key.find('>');
        const auto tau = gt == std::string::npos ? std::nullopt : parse_cell_id(std::string_view(key).substr(0, gt));
        const auto sigma = gt == std::string::npos ? std::nullopt : parse_cell_id(std::string_view(key).substr(gt + 1));
        if (!tau || !sigma) throw Error(ErrorCode::ParseError, "1-form: bad vector key \"" + key + "\"");
        if (!value.is_number()) throw Error(ErrorCode::ParseError, "1-form: value of \"" + key + "\" is not a number");
        const int i = complex.contains(*tau) && complex.contains(*sigma) ? complex.vector_index(*tau, *sigma) : -1;
        if (i < 0) throw Error(ErrorCode::UnknownCell, key + " is not an incidence vector of the complex");
        omega.values[i] = value.get<double>();
        set[i] = true;
    }
    for (std::size_t i = 0; i < vecs.size(); ++i)
        if (!set[i]) throw Error(ErrorCode::MissingValue, "no value for " + vector_key(vecs[i]));
    return omega;
}

}  // namespace cellform
