#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cellform/calculus.hpp"
#include "cellform/complex.hpp"
#include "cellform/forms.hpp"

namespace cellform {

// A 2-neighbor of (tau > sigma): either (mu > tau') with mu > tau, or
// (sigma' > rho) with rho < sigma. `partner` is the vector sharing the base's
// other end, (tau' > sigma) resp. (tau > sigma'), which the cross terms of the
// closed form pair with.
struct TwoNeighbor {
    int vector = -1;
    int partner = -1;
    CellId witness;  // mu resp. rho
};

struct NeighborSets {
    int base = -1;
    std::vector<int> zero_up;    // (tau' > sigma), no common coface of tau, tau'
    std::vector<int> zero_down;  // (tau > sigma'), no common face of sigma, sigma'
    std::vector<TwoNeighbor> two_up;
    std::vector<TwoNeighbor> two_down;

    int zero_count() const { return static_cast<int>(zero_up.size() + zero_down.size()); }
    int two_count() const { return static_cast<int>(two_up.size() + two_down.size()); }
};

// How the printed factor "w_rho / tau" in the covariant derivative and in the
// flat Laplacian is read. The two coincide at unit weights.
enum class WeightReading {
    Repaired,  // w_rho / w_tau
    AsPrinted, // w_rho
};

struct FlatLaplacianParts {
    double two_neighbor = 0.0;
    double zero_neighbor = 0.0;
    double total() const { return two_neighbor + zero_neighbor; }
};

/// Bochner-Weitzenboeck ingredients and the Ricci curvature of 1-forms on a
/// quasiconvex complex.
///
/// Two routes are provided. ricci_definition evaluates
///   Ric = <Delta w, w>(tau > sigma) - 1/2 |nabla w|^2 + 1/2 Delta_flat |w|^2
/// with <Delta w, w>(tau > sigma) = (w_sigma / w_tau)(Delta w)^tau_sigma w^tau_sigma
/// and Delta taken from the operator complex. ricci_closed_form evaluates
///   (2 - #0-neighbors)(w_sigma / w_tau)^2 (w^tau_sigma)^2 + cross terms.
/// The routes do NOT agree in general: at constant weights the difference is
///   (#0 + #2) a^2 - sum_{2-neighbors} b^2
/// (a the base value, b the 2-neighbor values). Gauss and scalar curvatures
/// are built on the closed form.
class RicciCurvature {
public:
    // Throws NotQuasiconvex.
    explicit RicciCurvature(const CellComplex& complex);

    const CellComplex& complex() const { return complex_; }
    const HodgeOperators& hodge() const { return hodge_; }

    const NeighborSets& neighbors(int vector) const { return neighbors_.at(vector); }
    const NeighborSets& neighbors(CellId tau, CellId sigma) const;

    double covariant_sq(const OneForm& omega, int base, WeightReading reading = WeightReading::Repaired) const;
    FlatLaplacianParts flat_laplacian_parts(const OneForm& omega, int base,
                                            WeightReading reading = WeightReading::Repaired) const;
    double flat_laplacian(const OneForm& omega, int base, WeightReading reading = WeightReading::Repaired) const {
        return flat_laplacian_parts(omega, base, reading).total();
    }

    // Delta omega in the omega^tau_sigma convention.
    OneForm apply_laplacian(const OneForm& omega) const;
    double pointwise_energy(const OneForm& omega, int base) const;
    double pointwise_energy(const OneForm& omega, const OneForm& laplacian_of_omega, int base) const;

    double ricci_definition(const OneForm& omega, int base) const;
    double ricci_closed_form(const OneForm& omega, int base) const;
    std::vector<double> ricci_definition_all(const OneForm& omega) const;
    std::vector<double> ricci_closed_form_all(const OneForm& omega) const;

private:
    double ratio(CellId num, CellId den) const { return complex_.weight(num) / complex_.weight(den); }
    double rho_factor(const TwoNeighbor& n, CellId tau, WeightReading reading) const;
    double ricci_definition(const OneForm& omega, const OneForm& lap, int base) const;

    CellComplex complex_;
    HodgeOperators hodge_;
    Eigen::MatrixXd laplacian_;  // degree 1, stored basis
    std::vector<NeighborSets> neighbors_;
};

enum class ComplexClass { Graph, ClosedSurface, Other };

// Graph: top dimension <= 1. ClosedSurface: top dimension 2 and
// is_closed_surface(). Quasiconvexity is checked separately.
ComplexClass classify(const CellComplex& complex);

// Graph: g_v = 2 - deg(v), S(v) = deg(v)(2 - deg(v)).
// Closed surface: g_v = 4 - deg(v), S(v) = deg(v)(4 - deg(v)).
// Throws UnsupportedComplexClass and NonConstantWeights.
int gauss_curvature_vertex(const CellComplex& complex, CellId v);
int scalar_curvature_vertex(const CellComplex& complex, CellId v);
// Closed surfaces only: g_f = 4 - deg(f), S(f) = deg(f)(4 - deg(f)).
int gauss_curvature_face(const CellComplex& complex, CellId f);
int scalar_curvature_face(const CellComplex& complex, CellId f);

// Trace of the localized closed-form quadratic form: sum over the vectors at
// the cell of (2 - #0-neighbors). Equals S from the degree formulas on
// graphs and closed surfaces.
int closed_form_trace(const RicciCurvature& ricci, CellId cell);

struct UnitTrace {
    double closed_form = 0.0;  // sum of ricci_closed_form over the vectors at the cell
    double definition = 0.0;   // same sum through ricci_definition (diagnostic)
};

// Sum of Ric over (e > v) for a vertex, or over (f > e) for a 2-cell, for a
// form normalized at that cell: sum (w_sigma / w_tau)^2 (omega^tau_sigma)^2 = 1.
// Throws NormalizationViolated (tolerance 1e-10) and UnsupportedDimension.
UnitTrace unit_form_trace_check(const RicciCurvature& ricci, const OneForm& omega, CellId cell);

struct CellCurvature {
    CellId cell;
    int degree = 0;
    int gauss = 0;
    int scalar = 0;
};

struct VectorRicci {
    int vector = -1;
    double definition = 0.0;
    double closed_form = 0.0;
};

struct CurvatureReport {
    ComplexClass kind = ComplexClass::Other;
    std::vector<CellCurvature> vertices;
    std::vector<CellCurvature> faces;
    std::int64_t total_vertex_gauss = 0;
    std::int64_t total_face_gauss = 0;
    std::int64_t euler_characteristic = 0;
    // 2 chi for graphs, 4 chi for closed surfaces.
    std::int64_t target = 0;
    bool gauss_bonnet_ok = false;

    std::vector<VectorRicci> ricci;
    double max_route_discrepancy = 0.0;

    std::int64_t total_gauss() const { return total_vertex_gauss + total_face_gauss; }
};

// Throws UnsupportedComplexClass, NotQuasiconvex, NotClosedSurface, NonConstantWeights.
CurvatureReport gauss_bonnet(const CellComplex& complex);
// Adds per-vector Ric by both routes and their largest difference.
void attach_ricci(CurvatureReport& report, const RicciCurvature& ricci, const OneForm& omega);

}  // namespace cellform
