#include "cellform/complex.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace cellform {

std::string to_string(CellId id) {
    return "d" + std::to_string(id.dim) + ":" + std::to_string(id.index);
}

std::optional<CellId> parse_cell_id(std::string_view text) {
    if (text.size() < 4 || text[0] != 'd') return std::nullopt;
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    CellId id;
    const char* begin = text.data() + 1;
    const char* mid = text.data() + colon;
    const char* end = text.data() + text.size();
    auto r1 = std::from_chars(begin, mid, id.dim);
    if (r1.ec != std::errc() || r1.ptr != mid || id.dim < 0) return std::nullopt;
    auto r2 = std::from_chars(mid + 1, end, id.index);
    if (r2.ec != std::errc() || r2.ptr != end || id.index < 0) return std::nullopt;
    return id;
}

namespace {

std::string cell_name(int dim, int index) { return to_string(CellId{dim, index}); }

}  // namespace

CellComplex CellComplex::build(BoundaryLists boundary, Weights weights) {
    while (!boundary.empty() && boundary.back().empty()) boundary.pop_back();
    if (boundary.empty()) throw Error(ErrorCode::BadParameter, "complex has no cells");
    if (boundary[0].empty()) throw Error(ErrorCode::BadParameter, "complex has no vertices");

    const int n = static_cast<int>(boundary.size()) - 1;
    for (std::size_t i = 0; i < boundary[0].size(); ++i) {
        if (!boundary[0][i].empty())
            throw Error(ErrorCode::DanglingFace, cell_name(0, static_cast<int>(i)) + " lists faces but vertices have none");
    }

    for (int p = 1; p <= n; ++p) {
        const int below = static_cast<int>(boundary[p - 1].size());
        for (std::size_t i = 0; i < boundary[p].size(); ++i) {
            const auto& faces = boundary[p][i];
            const std::string name = cell_name(p, static_cast<int>(i));
            std::set<int> seen;
            for (const auto& inc : faces) {
                if (inc.cell < 0 || inc.cell >= below)
                    throw Error(ErrorCode::DanglingFace,
                                name + " references missing face " + cell_name(p - 1, inc.cell));
                if (inc.sign != 1 && inc.sign != -1)
                    throw Error(ErrorCode::BadSign,
                                name + " has incidence " + std::to_string(inc.sign) + " with " +
                                    cell_name(p - 1, inc.cell));
                if (!seen.insert(inc.cell).second)
                    throw Error(ErrorCode::RepeatedFace, name + " lists " + cell_name(p - 1, inc.cell) + " twice");
            }
            if (faces.size() < 2)
                throw Error(ErrorCode::TooFewFaces, name + " has fewer than two faces");
        }
    }

    // Integer check of boundary o boundary = 0, column by column.
    for (int p = 2; p <= n; ++p) {
        for (std::size_t i = 0; i < boundary[p].size(); ++i) {
            std::map<int, int> acc;
            for (const auto& f : boundary[p][i])
                for (const auto& g : boundary[p - 1][f.cell]) acc[g.cell] += f.sign * g.sign;
            for (const auto& [row, value] : acc) {
                if (value != 0)
                    throw Error(ErrorCode::BoundaryNotSquareZero,
                                "boundary_matrix(" + std::to_string(p - 1) + ") * boundary_matrix(" +
                                    std::to_string(p) + ") nonzero at (row " + std::to_string(row) + ", col " +
                                    std::to_string(i) + ")");
            }
        }
    }

    if (weights.empty()) {
        for (const auto& cells : boundary) weights.emplace_back(cells.size(), 1.0);
    }
    while (weights.size() > boundary.size() && weights.back().empty()) weights.pop_back();
    if (weights.size() != boundary.size())
        throw Error(ErrorCode::BadParameter, "weights must list one array per dimension");
    for (int p = 0; p <= n; ++p) {
        if (weights[p].size() != boundary[p].size())
            throw Error(ErrorCode::BadParameter, "weights for dimension " + std::to_string(p) + " have wrong length");
        for (std::size_t i = 0; i < weights[p].size(); ++i) {
            const double w = weights[p][i];
            if (!(w > 0.0) || !std::isfinite(w))
                throw Error(ErrorCode::NonPositiveWeight, cell_name(p, static_cast<int>(i)) + " has weight " +
                                                              std::to_string(w));
        }
    }

    CellComplex c;
    c.boundary_ = std::move(boundary);
    c.weights_ = std::move(weights);

    c.coboundary_.resize(n + 1);
    for (int p = 0; p <= n; ++p) c.coboundary_[p].resize(c.boundary_[p].size());
    for (int p = 1; p <= n; ++p)
        for (std::size_t i = 0; i < c.boundary_[p].size(); ++i)
            for (const auto& inc : c.boundary_[p][i])
                c.coboundary_[p - 1][inc.cell].push_back({static_cast<int>(i), inc.sign});

    c.offsets_.resize(n + 1);
    for (int p = 0; p <= n; ++p) {
        c.offsets_[p] = static_cast<int>(c.flat_.size());
        for (std::size_t i = 0; i < c.boundary_[p].size(); ++i) c.flat_.push_back({p, static_cast<int>(i)});
    }

    c.closures_.resize(c.flat_.size());
    for (std::size_t f = 0; f < c.flat_.size(); ++f) {
        const CellId id = c.flat_[f];
        std::vector<CellId> cl{id};
        for (const auto& inc : c.boundary_[id.dim][id.index]) {
            const auto& sub = c.closures_[c.flat_index({id.dim - 1, inc.cell})];
            cl.insert(cl.end(), sub.begin(), sub.end());
        }
        std::sort(cl.begin(), cl.end());
        cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
        c.closures_[f] = std::move(cl);
    }

    c.vector_offsets_.assign(c.flat_.size() + 1, 0);
    for (std::size_t f = 0; f < c.flat_.size(); ++f) {
        const CellId tau = c.flat_[f];
        c.vector_offsets_[f] = static_cast<int>(c.vectors_.size());
        if (tau.dim == 0) continue;
        std::vector<Incidence> sorted(c.boundary_[tau.dim][tau.index]);
        std::sort(sorted.begin(), sorted.end(), [](const Incidence& a, const Incidence& b) { return a.cell < b.cell; });
        for (const auto& inc : sorted) c.vectors_.push_back({tau, {tau.dim - 1, inc.cell}, inc.sign});
    }
    c.vector_offsets_[c.flat_.size()] = static_cast<int>(c.vectors_.size());
    return c;
}

int CellComplex::cell_count(int dim) const {
    if (dim < 0 || dim > dimension()) return 0;
    return static_cast<int>(boundary_[dim].size());
}

std::vector<int> CellComplex::cell_counts() const {
    std::vector<int> counts;
    for (const auto& cells : boundary_) counts.push_back(static_cast<int>(cells.size()));
    return counts;
}

bool CellComplex::contains(CellId id) const {
    return id.dim >= 0 && id.dim <= dimension() && id.index >= 0 && id.index < cell_count(id.dim);
}

void CellComplex::require(CellId id) const {
    if (!contains(id)) throw Error(ErrorCode::UnknownCell, to_string(id) + " is not a cell of the complex");
}

std::span<const Incidence> CellComplex::faces(CellId id) const {
    require(id);
    return boundary_[id.dim][id.index];
}

std::span<const Incidence> CellComplex::cofaces(CellId id) const {
    require(id);
    return coboundary_[id.dim][id.index];
}

int CellComplex::incidence(CellId tau, CellId sigma) const {
    if (sigma.dim != tau.dim - 1) return 0;
    for (const auto& inc : faces(tau))
        if (inc.cell == sigma.index) return inc.sign;
    return 0;
}

double CellComplex::weight(CellId id) const {
    require(id);
    return weights_[id.dim][id.index];
}

bool CellComplex::has_constant_weights(double relative_tolerance) const {
    const double w0 = weights_[0][0];
    for (const auto& ws : weights_)
        for (double w : ws)
            if (std::abs(w - w0) > relative_tolerance * w0) return false;
    return true;
}

int CellComplex::vector_index(CellId tau, CellId sigma) const {
    if (!contains(tau) || !contains(sigma) || sigma.dim != tau.dim - 1) return -1;
    const int f = flat_index(tau);
    auto first = vectors_.begin() + vector_offsets_[f];
    auto last = vectors_.begin() + vector_offsets_[f + 1];
    auto it = std::lower_bound(first, last, sigma.index,
                               [](const IncidenceVector& v, int idx) { return v.sigma.index < idx; });
    if (it == last || it->sigma.index != sigma.index) return -1;
    return static_cast<int>(it - vectors_.begin());
}

Eigen::MatrixXi CellComplex::boundary_matrix(int p) const {
    if (p < 1 || p > dimension())
        throw Error(ErrorCode::DimensionOutOfRange,
                    "boundary_matrix(" + std::to_string(p) + ") needs 1 <= p <= " + std::to_string(dimension()));
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(cell_count(p - 1), cell_count(p));
    for (int j = 0; j < cell_count(p); ++j)
        for (const auto& inc : boundary_[p][j]) m(inc.cell, j) = inc.sign;
    return m;
}

const std::vector<CellId>& CellComplex::closure(CellId id) const {
    require(id);
    return closures_[flat_index(id)];
}

QuasiconvexityReport CellComplex::quasiconvexity() const {
    QuasiconvexityReport report;
    for (int p = 0; p < dimension(); ++p) {
        for (int s = 0; s < cell_count(p); ++s) {
            const CellId sigma{p, s};
            const auto& cof = coboundary_[p][s];
            const auto& sigma_closure = closure(sigma);
            for (std::size_t a = 0; a < cof.size(); ++a) {
                for (std::size_t b = a + 1; b < cof.size(); ++b) {
                    const CellId t1{p + 1, cof[a].cell};
                    const CellId t2{p + 1, cof[b].cell};
                    std::vector<CellId> common;
                    const auto& c1 = closure(t1);
                    const auto& c2 = closure(t2);
                    std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(common));
                    if (common != sigma_closure) {
                        report.quasiconvex = false;
                        report.first = std::min(t1, t2);
                        report.second = std::max(t1, t2);
                        report.intersection = std::move(common);
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

std::int64_t CellComplex::euler_characteristic() const {
    std::int64_t chi = 0;
    for (int p = 0; p <= dimension(); ++p) chi += (p % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(cell_count(p));
    return chi;
}

int CellComplex::degree(CellId id) const {
    require(id);
    if (id.dim == 0) return static_cast<int>(coboundary_[0][id.index].size());
    if (id.dim == 2) return static_cast<int>(boundary_[2][id.index].size());
    throw Error(ErrorCode::UnsupportedDimension, "degree is defined for vertices and 2-cells, not " + to_string(id));
}

bool CellComplex::is_closed_surface() const {
    if (dimension() != 2) return false;
    for (const auto& cof : coboundary_[1])
        if (cof.size() != 2) return false;

    // The link of a vertex: nodes are incident edges, one link edge per face
    // corner at the vertex. Closed surface iff every link is a single cycle.
    for (int v = 0; v < cell_count(0); ++v) {
        const auto& edges = coboundary_[0][v];
        if (edges.empty()) return false;
        std::map<int, int> node;  // edge index -> link node
        for (std::size_t k = 0; k < edges.size(); ++k) node[edges[k].cell] = static_cast<int>(k);

        std::set<int> corner_faces;
        for (const auto& e : edges)
            for (const auto& f : coboundary_[1][e.cell]) corner_faces.insert(f.cell);

        std::vector<std::vector<int>> adj(edges.size());
        for (int f : corner_faces) {
            std::vector<int> at_v;
            for (const auto& e : boundary_[2][f])
                if (node.count(e.cell)) at_v.push_back(node[e.cell]);
            if (at_v.size() != 2) return false;
            adj[at_v[0]].push_back(at_v[1]);
            adj[at_v[1]].push_back(at_v[0]);
        }
        for (const auto& a : adj)
            if (a.size() != 2) return false;

        std::vector<bool> seen(edges.size(), false);
        std::queue<int> queue;
        queue.push(0);
        seen[0] = true;
        std::size_t reached = 1;
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop();
            for (int y : adj[x])
                if (!seen[y]) {
                    seen[y] = true;
                    ++reached;
                    queue.push(y);
                }
        }
        if (reached != edges.size()) return false;
    }
    return true;
}

CellComplex CellComplex::with_weights(Weights weights) const { return build(boundary_, std::move(weights)); }

CellComplex CellComplex::reoriented(CellId id) const {
    require(id);
    BoundaryLists b = boundary_;
    for (auto& inc : b[id.dim][id.index]) inc.sign = -inc.sign;
    if (id.dim < dimension())
        for (auto& cell : b[id.dim + 1])
            for (auto& inc : cell)
                if (inc.cell == id.index) inc.sign = -inc.sign;
    return build(std::move(b), weights_);
}

}  // namespace cellform
