#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cellform/error.hpp"

namespace cellform {

// A cell is addressed by its dimension and a dense per-dimension index.
struct CellId {
    int dim = 0;
    int index = 0;

    friend auto operator<=>(const CellId&, const CellId&) = default;
};

// "d<dim>:<index>", the key format used by every serialized map.
std::string to_string(CellId id);
std::optional<CellId> parse_cell_id(std::string_view text);

// One entry of a boundary (or coboundary) list: neighbour index in the
// adjacent dimension and the incidence number.
struct Incidence {
    int cell = 0;
    int sign = 1;

    friend bool operator==(const Incidence&, const Incidence&) = default;
};

// The pair (tau > sigma), dim tau = dim sigma + 1.
struct IncidenceVector {
    CellId tau;
    CellId sigma;
    int sign = 1;
};

struct QuasiconvexityReport {
    bool quasiconvex = true;
    // First failing pair of (p+1)-cells and the intersection of their closures.
    CellId first;
    CellId second;
    std::vector<CellId> intersection;
};

/// Finite weighted regular cell complex.
///
/// Regularity is enforced through the usual combinatorial proxy: incidence
/// numbers are +-1, each cell of positive dimension has at least two distinct
/// faces, and the boundary squares to zero over the integers. Geometric
/// regularity of the attaching maps is the caller's responsibility.
///
/// Vertices have no faces (no augmentation). A built complex is immutable.
class CellComplex {
public:
    // boundary[p][i] lists the faces of the i-th p-cell; boundary[0] holds one
    // (empty) entry per vertex.
    using BoundaryLists = std::vector<std::vector<std::vector<Incidence>>>;
    using Weights = std::vector<std::vector<double>>;

    // Validates every invariant. Omitted weights default to 1.0 for all cells.
    static CellComplex build(BoundaryLists boundary, Weights weights = {});

    int dimension() const { return static_cast<int>(boundary_.size()) - 1; }
    int cell_count(int dim) const;
    int total_cells() const { return static_cast<int>(flat_.size()); }
    std::vector<int> cell_counts() const;

    bool contains(CellId id) const;
    std::span<const Incidence> faces(CellId id) const;
    std::span<const Incidence> cofaces(CellId id) const;
    // Incidence number [tau : sigma], 0 when sigma is not a face of tau.
    int incidence(CellId tau, CellId sigma) const;

    double weight(CellId id) const;
    const Weights& weights() const { return weights_; }
    bool has_constant_weights(double relative_tolerance = 1e-12) const;
    const BoundaryLists& boundary_lists() const { return boundary_; }

    // Cells ordered by (dim, index); this order indexes CellFunction values.
    int flat_index(CellId id) const { return offsets_[id.dim] + id.index; }
    CellId cell_at(int flat) const { return flat_[flat]; }

    // All incidence vectors sorted by (dim tau, index tau, index sigma).
    const std::vector<IncidenceVector>& vectors() const { return vectors_; }
    // Position of (tau > sigma) in vectors(), or -1.
    int vector_index(CellId tau, CellId sigma) const;

    Eigen::MatrixXi boundary_matrix(int p) const;

    // Closure of a cell, sorted by (dim, index), including the cell itself.
    const std::vector<CellId>& closure(CellId id) const;

    QuasiconvexityReport quasiconvexity() const;
    bool is_quasiconvex() const { return quasiconvexity().quasiconvex; }
    std::int64_t euler_characteristic() const;
    // Vertex: number of edges containing it. 2-cell: number of boundary edges.
    int degree(CellId id) const;
    bool is_closed_surface() const;

    CellComplex with_weights(Weights weights) const;
    // Same complex with the orientation of one cell reversed.
    CellComplex reoriented(CellId id) const;

private:
    CellComplex() = default;
    void require(CellId id) const;

    BoundaryLists boundary_;
    BoundaryLists coboundary_;
    Weights weights_;
    std::vector<int> offsets_;
    std::vector<CellId> flat_;
    std::vector<std::vector<CellId>> closures_;
    std::vector<IncidenceVector> vectors_;
    // vector_offsets_[flat tau] = first vector index with this tau; faces of
    // tau occupy a contiguous run sorted by sigma index.
    std::vector<int> vector_offsets_;
};

}  // namespace cellform
