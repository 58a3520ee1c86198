#include "cellform/generators.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "cellform/io.hpp"
#include "cellform/random.hpp"

namespace cellform {

CellComplex graph_complex(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<Incidence>> cells;
    for (auto [a, b] : edges) cells.push_back({{std::min(a, b), -1}, {std::max(a, b), 1}});
    return CellComplex::build({std::vector<std::vector<Incidence>>(vertex_count), std::move(cells)});
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::BadParameter, what);
}

std::vector<std::vector<int>> torus_grid_faces(int p, int q) {
    std::vector<std::vector<int>> faces;
    auto at = [&](int i, int j) { return (i % p) * q + (j % q); };
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
    return faces;
}

const std::vector<std::vector<int>>& icosahedron_faces() {
    static const std::vector<std::vector<int>> faces = {
        {0, 1, 2},  {0, 2, 3},  {0, 3, 4},  {0, 4, 5},   {0, 5, 1},   {1, 6, 2},   {2, 7, 3},
        {3, 8, 4},  {4, 9, 5},  {5, 10, 1}, {6, 7, 2},   {7, 8, 3},   {8, 9, 4},   {9, 10, 5},
        {10, 6, 1}, {11, 7, 6}, {11, 8, 7}, {11, 9, 8},  {11, 10, 9}, {11, 6, 10},
    };
    return faces;
}

}  // namespace

CellComplex cycle_graph(int n) {
    require(n >= 3, "cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return graph_complex(n, edges);
}

CellComplex path_graph(int n) {
    require(n >= 1, "path needs n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return graph_complex(n, edges);
}

CellComplex complete_graph(int n) {
    require(n >= 1, "complete graph needs n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return graph_complex(n, edges);
}

CellComplex star_graph(int leaves) {
    require(leaves >= 1, "star needs at least one leaf");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return graph_complex(leaves + 1, edges);
}

CellComplex petersen_graph() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return graph_complex(10, edges);
}

CellComplex random_graph(int n, double p, std::uint64_t seed) {
    require(n >= 1, "random graph needs n >= 1");
    require(p >= 0.0 && p <= 1.0, "edge probability must lie in [0, 1]");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) edges.emplace_back(i, j);
    return graph_complex(n, edges);
}

CellComplex tetrahedron() { return from_polygons(4, {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}}); }

CellComplex cube() {
    return from_polygons(8, {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}});
}

CellComplex octahedron() {
    return from_polygons(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}, {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

CellComplex icosahedron() { return from_polygons(12, icosahedron_faces()); }

CellComplex dodecahedron() {
    return from_polygons(static_cast<int>(icosahedron_faces().size()), dual_faces(12, icosahedron_faces()));
}

std::vector<std::vector<int>> dual_faces(int vertex_count, const std::vector<std::vector<int>>& faces) {
    // Faces around each vertex, keyed by the two edges at the vertex.
    std::vector<std::vector<std::pair<int, std::pair<int, int>>>> around(vertex_count);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        const auto& c = faces[f];
        const int k = static_cast<int>(c.size());
        for (int i = 0; i < k; ++i) around[c[i]].push_back({f, {c[(i + k - 1) % k], c[(i + 1) % k]}});
    }
    std::vector<std::vector<int>> out;
    for (int v = 0; v < vertex_count; ++v) {
        const auto& fs = around[v];
        require(fs.size() >= 3, "dual needs every vertex in at least 3 faces");
        std::vector<int> cycle{fs[0].first};
        int came_from = fs[0].second.first;
        int next_edge = fs[0].second.second;
        int current = 0;
        while (cycle.size() < fs.size()) {
            int found = -1;
            for (int j = 0; j < static_cast<int>(fs.size()); ++j) {
                if (j == current) continue;
                if (fs[j].second.first == next_edge || fs[j].second.second == next_edge) {
                    found = j;
                    break;
                }
            }
            require(found >= 0, "vertex link is not a cycle");
            came_from = next_edge;
            next_edge = fs[found].second.first == came_from ? fs[found].second.second : fs[found].second.first;
            current = found;
            cycle.push_back(fs[found].first);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

CellComplex torus_grid(int p, int q) {
    require(p >= 3 && q >= 3, "torus grid needs p, q >= 3");
    return from_polygons(p * q, torus_grid_faces(p, q));
}

CellComplex hex_torus(int p, int q) {
    require(p >= 3 && q >= 3, "hex torus needs p, q >= 3");
    std::vector<std::vector<int>> triangles;
    for (const auto& sq : torus_grid_faces(p, q)) {
        triangles.push_back({sq[0], sq[1], sq[2]});
        triangles.push_back({sq[0], sq[2], sq[3]});
    }
    return from_polygons(static_cast<int>(triangles.size()), dual_faces(p * q, triangles));
}

CellComplex genus_two() {
    const auto grid = torus_grid_faces(4, 4);
    // grid[0] is the square {0, 4, 5, 1}; its boundary ring is shared.
    const std::set<int> ring(grid[0].begin(), grid[0].end());
    std::map<int, int> second;
    int next = 16;
    for (int v = 0; v < 16; ++v) second[v] = ring.count(v) ? v : next++;
    std::vector<std::vector<int>> faces;
    for (std::size_t f = 1; f < grid.size(); ++f) faces.push_back(grid[f]);
    for (std::size_t f = 1; f < grid.size(); ++f) {
        std::vector<int> c;
        for (int v : grid[f]) c.push_back(second[v]);
        faces.push_back(std::move(c));
    }
    return from_polygons(next, faces);
}

CellComplex flipped_icosahedron(int flips, std::uint64_t seed) {
    require(flips >= 0, "flip count must be non-negative");
    std::vector<std::vector<int>> tri = icosahedron_faces();
    Rng rng(seed);
    for (int done = 0; done < flips;) {
        std::map<std::pair<int, int>, std::vector<int>> by_edge;
        std::vector<int> degree(12, 0);
        for (int f = 0; f < static_cast<int>(tri.size()); ++f)
            for (int i = 0; i < 3; ++i) {
                const int a = tri[f][i], b = tri[f][(i + 1) % 3];
                by_edge[{std::min(a, b), std::max(a, b)}].push_back(f);
            }
        for (const auto& [e, fs] : by_edge) {
            ++degree[e.first];
            ++degree[e.second];
        }
        std::vector<std::pair<int, int>> candidates;
        for (const auto& [e, fs] : by_edge) {
            if (degree[e.first] <= 3 || degree[e.second] <= 3) continue;
            auto apex = [&](int f) {
                for (int v : tri[f])
                    if (v != e.first && v != e.second) return v;
                return -1;
            };
            const int c = apex(fs[0]), d = apex(fs[1]);
            if (!by_edge.count({std::min(c, d), std::max(c, d)})) candidates.push_back(e);
        }
        require(!candidates.empty(), "no admissible edge flip left");
        const auto [a, b] = candidates[rng.below(candidates.size())];
        const auto fs = by_edge[{a, b}];
        auto apex = [&](int f) {
            for (int v : tri[f])
                if (v != a && v != b) return v;
            return -1;
        };
        const int c = apex(fs[0]), d = apex(fs[1]);
        tri[fs[0]] = {c, a, d};
        tri[fs[1]] = {b, c, d};
        ++done;
    }
    return from_polygons(12, tri);
}

namespace {

int parse_int(std::string_view s, std::string_view spec) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && p == s.data() + s.size() && !s.empty(),
            "bad integer \"" + std::string(s) + "\" in generator spec \"" + std::string(spec) + "\"");
    return v;
}

std::pair<int, int> parse_dims(std::string_view s, std::string_view spec) {
    const auto x = s.find('x');
    require(x != std::string_view::npos, "expected <p>x<q> in generator spec \"" + std::string(spec) + "\"");
    return {parse_int(s.substr(0, x), spec), parse_int(s.substr(x + 1), spec)};
}

}  // namespace

std::vector<std::string> generator_kinds() {
    return {"interval",     "cycle:n",        "path:n",      "complete:n",        "star:n",
            "petersen",     "random_graph:n[,p]", "tetrahedron", "cube",           "octahedron",
            "dodecahedron", "icosahedron",    "torus_grid:pxq", "hex_torus:pxq",   "genus2",
            "flipped_icosahedron:k"};
}

CellComplex generate(std::string_view spec, std::uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string_view kind = spec.substr(0, colon);
    const bool has_params = colon != std::string_view::npos;
    const std::string_view params = has_params ? spec.substr(colon + 1) : std::string_view{};
    auto no_params = [&] { require(!has_params, std::string(kind) + " takes no parameters"); };
    auto need_params = [&] { require(has_params, std::string(kind) + " needs parameters"); };

    if (kind == "interval") return no_params(), path_graph(2);
    if (kind == "petersen") return no_params(), petersen_graph();
    if (kind == "tetrahedron") return no_params(), tetrahedron();
    if (kind == "cube") return no_params(), cube();
    if (kind == "octahedron") return no_params(), octahedron();
    if (kind == "dodecahedron") return no_params(), dodecahedron();
    if (kind == "icosahedron") return no_params(), icosahedron();
    if (kind == "genus2") return no_params(), genus_two();
    if (kind == "cycle") return need_params(), cycle_graph(parse_int(params, spec));
    if (kind == "path") return need_params(), path_graph(parse_int(params, spec));
    if (kind == "complete") return need_params(), complete_graph(parse_int(params, spec));
    if (kind == "star") return need_params(), star_graph(parse_int(params, spec));
    if (kind == "flipped_icosahedron") return need_params(), flipped_icosahedron(parse_int(params, spec), seed);
    if (kind == "torus_grid" || kind == "hex_torus") {
        need_params();
        const auto [p, q] = parse_dims(params, spec);
        return kind == "torus_grid" ? torus_grid(p, q) : hex_torus(p, q);
    }
    if (kind == "random_graph") {
        need_params();
        const auto comma = params.find(',');
        double p = 0.3;
        if (comma != std::string_view::npos) {
            const auto s = params.substr(comma + 1);
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), p);
            require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(),
                    "bad probability in generator spec \"" + std::string(spec) + "\"");
        }
        return random_graph(parse_int(params.substr(0, comma), spec), p, seed);
    }
    throw Error(ErrorCode::BadParameter, "unknown generator \"" + std::string(kind) + "\"");
}

}  // namespace cellform
