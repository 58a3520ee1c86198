#include "cellform/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cellform {

namespace {

bool share_any(std::span<const Incidence> a, std::span<const Incidence> b) {
    for (const auto& x : a)
        for (const auto& y : b)
            if (x.cell == y.cell) return true;
    return false;
}

Eigen::MatrixXd stored_laplacian(const HodgeOperators& hodge) {
    if (hodge.top_degree() < 1) return {};
    const Eigen::VectorXd& n = hodge.basis(1).normalization();
    return n.cwiseInverse().asDiagonal() * hodge.laplacian(1).matrix * n.asDiagonal();
}

}  // namespace

RicciCurvature::RicciCurvature(const CellComplex& complex)
    : complex_(complex), hodge_(complex), laplacian_(stored_laplacian(hodge_)) {
    const QuasiconvexityReport qc = complex.quasiconvexity();
    if (!qc.quasiconvex)
        throw Error(ErrorCode::NotQuasiconvex,
                    "closures of " + to_string(qc.first) + " and " + to_string(qc.second) + " meet in more than one face");

    const auto& vecs = complex.vectors();
    neighbors_.resize(vecs.size());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        const CellId tau = vecs[i].tau;
        const CellId sigma = vecs[i].sigma;
        NeighborSets& n = neighbors_[i];
        n.base = static_cast<int>(i);

        for (const auto& c : complex.cofaces(sigma)) {
            const CellId other{tau.dim, c.cell};
            if (other == tau || share_any(complex.cofaces(tau), complex.cofaces(other))) continue;
            n.zero_up.push_back(complex.vector_index(other, sigma));
        }
        for (const auto& f : complex.faces(tau)) {
            const CellId other{sigma.dim, f.cell};
            if (other == sigma || share_any(complex.faces(sigma), complex.faces(other))) continue;
            n.zero_down.push_back(complex.vector_index(tau, other));
        }
        for (const auto& m : complex.cofaces(tau)) {
            const CellId mu{tau.dim + 1, m.cell};
            for (const auto& t : complex.faces(mu)) {
                const CellId other{tau.dim, t.cell};
                if (other == tau || complex.incidence(other, sigma) == 0) continue;
                n.two_up.push_back({complex.vector_index(mu, other), complex.vector_index(other, sigma), mu});
            }
        }
        if (sigma.dim > 0)
            for (const auto& r : complex.faces(sigma)) {
                const CellId rho{sigma.dim - 1, r.cell};
                for (const auto& s : complex.cofaces(rho)) {
                    const CellId other{sigma.dim, s.cell};
                    if (other == sigma || complex.incidence(tau, other) == 0) continue;
                    n.two_down.push_back({complex.vector_index(other, rho), complex.vector_index(tau, other), rho});
                }
            }

        std::sort(n.zero_up.begin(), n.zero_up.end());
        std::sort(n.zero_down.begin(), n.zero_down.end());
        auto by_vector = [](const TwoNeighbor& a, const TwoNeighbor& b) { return a.vector < b.vector; };
        std::sort(n.two_up.begin(), n.two_up.end(), by_vector);
        std::sort(n.two_down.begin(), n.two_down.end(), by_vector);
    }
}

const NeighborSets& RicciCurvature::neighbors(CellId tau, CellId sigma) const {
    const int i = complex_.vector_index(tau, sigma);
    if (i < 0) throw Error(ErrorCode::UnknownCell, "(" + to_string(tau) + " > " + to_string(sigma) + ") is not a vector");
    return neighbors_[i];
}

double RicciCurvature::rho_factor(const TwoNeighbor& n, CellId tau, WeightReading reading) const {
    const double w_rho = complex_.weight(n.witness);
    return reading == WeightReading::Repaired ? w_rho / complex_.weight(tau) : w_rho;
}

double RicciCurvature::covariant_sq(const OneForm& omega, int base, WeightReading reading) const {
    const auto& vecs = complex_.vectors();
    const CellId tau = vecs[base].tau;
    const CellId sigma = vecs[base].sigma;
    const NeighborSets& n = neighbors_.at(base);
    const double a = omega.values[base];
    const double ws = complex_.weight(sigma);
    const double wt = complex_.weight(tau);

    double acc = 0.0;
    for (const auto& t : n.two_up) {
        const double diff = a - omega.values[t.vector];
        acc += ws / complex_.weight(t.witness) * diff * diff;
    }
    for (const auto& t : n.two_down) {
        const double diff = a - omega.values[t.vector];
        acc += rho_factor(t, tau, reading) * diff * diff;
    }
    for (int k : n.zero_up) {
        const double sum = a + omega.values[k];
        acc += ws * ws / (wt * complex_.weight(vecs[k].tau)) * sum * sum;
    }
    for (int k : n.zero_down) {
        const double sum = a + omega.values[k];
        acc += ws * complex_.weight(vecs[k].sigma) / (wt * wt) * sum * sum;
    }
    return acc;
}

FlatLaplacianParts RicciCurvature::flat_laplacian_parts(const OneForm& omega, int base, WeightReading reading) const {
    const auto& vecs = complex_.vectors();
    const CellId tau = vecs[base].tau;
    const CellId sigma = vecs[base].sigma;
    const NeighborSets& n = neighbors_.at(base);
    const double a2 = omega.values[base] * omega.values[base];
    const double ws = complex_.weight(sigma);
    const double wt = complex_.weight(tau);

    FlatLaplacianParts parts;
    for (const auto& t : n.two_up) {
        const double b = omega.values[t.vector];
        parts.two_neighbor += ws / complex_.weight(t.witness) * (a2 - b * b);
    }
    for (const auto& t : n.two_down) {
        const double b = omega.values[t.vector];
        parts.two_neighbor += rho_factor(t, tau, reading) * (a2 - b * b);
    }
    for (int k : n.zero_up) {
        const double c = omega.values[k];
        parts.zero_neighbor += ws * ws / (wt * complex_.weight(vecs[k].tau)) * (a2 + c * c);
    }
    for (int k : n.zero_down) {
        const double c = omega.values[k];
        parts.zero_neighbor += ws * complex_.weight(vecs[k].sigma) / (wt * wt) * (a2 + c * c);
    }
    return parts;
}

OneForm RicciCurvature::apply_laplacian(const OneForm& omega) const {
    if (laplacian_.rows() == 0) return {Eigen::VectorXd(0)};
    return {laplacian_ * omega.values};
}

double RicciCurvature::pointwise_energy(const OneForm& omega, const OneForm& lap, int base) const {
    const auto& v = complex_.vectors()[base];
    return ratio(v.sigma, v.tau) * lap.values[base] * omega.values[base];
}

double RicciCurvature::pointwise_energy(const OneForm& omega, int base) const {
    return pointwise_energy(omega, apply_laplacian(omega), base);
}

double RicciCurvature::ricci_definition(const OneForm& omega, const OneForm& lap, int base) const {
    return pointwise_energy(omega, lap, base) - 0.5 * covariant_sq(omega, base) + 0.5 * flat_laplacian(omega, base);
}

double RicciCurvature::ricci_definition(const OneForm& omega, int base) const {
    return ricci_definition(omega, apply_laplacian(omega), base);
}

double RicciCurvature::ricci_closed_form(const OneForm& omega, int base) const {
    const auto& vecs = complex_.vectors();
    const CellId tau = vecs[base].tau;
    const CellId sigma = vecs[base].sigma;
    const NeighborSets& n = neighbors_.at(base);
    const double a = omega.values[base];
    const double ws = complex_.weight(sigma);
    const double wt = complex_.weight(tau);

    double value = (2.0 - n.zero_count()) * (ws / wt) * (ws / wt) * a * a;
    for (const auto& t : n.two_up) {
        const double w_other = complex_.weight(vecs[t.partner].tau);
        value += (ws * ws / (wt * w_other) - ws / complex_.weight(t.witness)) * a * omega.values[t.partner];
    }
    for (const auto& t : n.two_down) {
        const double w_other = complex_.weight(vecs[t.partner].sigma);
        value += (ws * w_other / (wt * wt) - complex_.weight(t.witness) / wt) * a * omega.values[t.partner];
    }
    return value;
}

std::vector<double> RicciCurvature::ricci_definition_all(const OneForm& omega) const {
    const OneForm lap = apply_laplacian(omega);
    std::vector<double> out(neighbors_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ricci_definition(omega, lap, static_cast<int>(i));
    return out;
}

std::vector<double> RicciCurvature::ricci_closed_form_all(const OneForm& omega) const {
    std::vector<double> out(neighbors_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ricci_closed_form(omega, static_cast<int>(i));
    return out;
}

// ---------------------------------------------------------------------------
// Gauss and scalar curvature

ComplexClass classify(const CellComplex& complex) {
    if (complex.dimension() <= 1) return ComplexClass::Graph;
    if (complex.dimension() == 2 && complex.is_closed_surface()) return ComplexClass::ClosedSurface;
    return ComplexClass::Other;
}

namespace {

ComplexClass require_curvature_class(const CellComplex& complex) {
    const ComplexClass kind = classify(complex);
    if (kind == ComplexClass::Other)
        throw Error(ErrorCode::UnsupportedComplexClass, "curvature needs a graph or a closed-surface 2-complex");
    if (!complex.has_constant_weights())
        throw Error(ErrorCode::NonConstantWeights, "Gauss and scalar curvature need constant weights");
    return kind;
}

int vertex_base(ComplexClass kind) { return kind == ComplexClass::Graph ? 2 : 4; }

void require_dim(CellId id, int dim, const char* what) {
    if (id.dim != dim) throw Error(ErrorCode::UnsupportedDimension, std::string(what) + " is not defined for " + to_string(id));
}

}  // namespace

int gauss_curvature_vertex(const CellComplex& complex, CellId v) {
    require_dim(v, 0, "vertex curvature");
    return vertex_base(require_curvature_class(complex)) - complex.degree(v);
}

int scalar_curvature_vertex(const CellComplex& complex, CellId v) {
    require_dim(v, 0, "vertex curvature");
    const int deg = complex.degree(v);
    return deg * (vertex_base(require_curvature_class(complex)) - deg);
}

int gauss_curvature_face(const CellComplex& complex, CellId f) {
    require_dim(f, 2, "face curvature");
    if (require_curvature_class(complex) != ComplexClass::ClosedSurface)
        throw Error(ErrorCode::UnsupportedComplexClass, "face curvature needs a closed-surface 2-complex");
    return 4 - complex.degree(f);
}

int scalar_curvature_face(const CellComplex& complex, CellId f) {
    require_dim(f, 2, "face curvature");
    if (require_curvature_class(complex) != ComplexClass::ClosedSurface)
        throw Error(ErrorCode::UnsupportedComplexClass, "face curvature needs a closed-surface 2-complex");
    const int deg = complex.degree(f);
    return deg * (4 - deg);
}

namespace {

// Vectors carrying the localized form at a cell: (e > v) for a vertex,
// (f > e) for a 2-cell.
std::vector<int> vectors_at(const CellComplex& complex, CellId cell) {
    std::vector<int> out;
    if (cell.dim == 0) {
        for (const auto& e : complex.cofaces(cell)) out.push_back(complex.vector_index({1, e.cell}, cell));
    } else if (cell.dim == 2) {
        for (const auto& e : complex.faces(cell)) out.push_back(complex.vector_index(cell, {1, e.cell}));
    } else {
        throw Error(ErrorCode::UnsupportedDimension, "unit-form traces are defined at vertices and 2-cells, not " +
                                                         to_string(cell));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

int closed_form_trace(const RicciCurvature& ricci, CellId cell) {
    int trace = 0;
    for (int k : vectors_at(ricci.complex(), cell)) trace += 2 - ricci.neighbors(k).zero_count();
    return trace;
}

UnitTrace unit_form_trace_check(const RicciCurvature& ricci, const OneForm& omega, CellId cell) {
    const CellComplex& complex = ricci.complex();
    const std::vector<int> at = vectors_at(complex, cell);
    double norm = 0.0;
    for (int k : at) {
        const auto& v = complex.vectors()[k];
        const double r = complex.weight(v.sigma) / complex.weight(v.tau);
        norm += r * r * omega.values[k] * omega.values[k];
    }
    if (std::abs(norm - 1.0) > 1e-10)
        throw Error(ErrorCode::NormalizationViolated,
                    "form has squared norm " + std::to_string(norm) + " at " + to_string(cell) + ", expected 1");
    const OneForm lap = ricci.apply_laplacian(omega);
    UnitTrace out;
    for (int k : at) {
        out.closed_form += ricci.ricci_closed_form(omega, k);
        out.definition += ricci.pointwise_energy(omega, lap, k) - 0.5 * ricci.covariant_sq(omega, k) +
                          0.5 * ricci.flat_laplacian(omega, k);
    }
    return out;
}

CurvatureReport gauss_bonnet(const CellComplex& complex) {
    const ComplexClass kind = classify(complex);
    if (kind == ComplexClass::Other) {
        if (complex.dimension() == 2)
            throw Error(ErrorCode::NotClosedSurface, "2-complex does not decompose a closed surface");
        throw Error(ErrorCode::UnsupportedComplexClass, "Gauss-Bonnet needs a graph or a closed-surface 2-complex");
    }
    const QuasiconvexityReport qc = complex.quasiconvexity();
    if (!qc.quasiconvex)
        throw Error(ErrorCode::NotQuasiconvex,
                    "closures of " + to_string(qc.first) + " and " + to_string(qc.second) + " meet in more than one face");
    if (!complex.has_constant_weights())
        throw Error(ErrorCode::NonConstantWeights, "Gauss-Bonnet needs constant weights");

    CurvatureReport r;
    r.kind = kind;
    const int base = vertex_base(kind);
    for (int v = 0; v < complex.cell_count(0); ++v) {
        const int deg = complex.degree({0, v});
        r.vertices.push_back({{0, v}, deg, base - deg, deg * (base - deg)});
        r.total_vertex_gauss += base - deg;
    }
    if (kind == ComplexClass::ClosedSurface)
        for (int f = 0; f < complex.cell_count(2); ++f) {
            const int deg = complex.degree({2, f});
            r.faces.push_back({{2, f}, deg, 4 - deg, deg * (4 - deg)});
            r.total_face_gauss += 4 - deg;
        }
    r.euler_characteristic = complex.euler_characteristic();
    r.target = (kind == ComplexClass::Graph ? 2 : 4) * r.euler_characteristic;
    r.gauss_bonnet_ok = r.total_gauss() == r.target;
    return r;
}

void attach_ricci(CurvatureReport& report, const RicciCurvature& ricci, const OneForm& omega) {
    const std::vector<double> def = ricci.ricci_definition_all(omega);
    const std::vector<double> closed = ricci.ricci_closed_form_all(omega);
    report.ricci.clear();
    report.max_route_discrepancy = 0.0;
    for (std::size_t i = 0; i < def.size(); ++i) {
        report.ricci.push_back({static_cast<int>(i), def[i], closed[i]});
        report.max_route_discrepancy = std::max(report.max_route_discrepancy, std::abs(def[i] - closed[i]));
    }
}

}  // namespace cellform
