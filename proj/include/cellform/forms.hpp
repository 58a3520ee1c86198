#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "cellform/complex.hpp"

namespace cellform {

// e^tau_sigma: sends tau to sigma, every other cell to zero.
struct FormBasisElement {
    CellId tau;
    CellId sigma;
};

/// Basis of combinatorial differential d-forms: every pair (tau, sigma) with
/// sigma in the closure of tau and dim tau - dim sigma = d, ordered by
/// (dim tau, index tau, index sigma).
///
/// Degree-1 elements carry the incidence sign, so the coefficient stored at
/// (tau, sigma) is the value omega^tau_sigma of the 1-form at that vector.
/// Degree 0 follows the flat cell order and degree 1 follows
/// CellComplex::vectors(), so CellFunction and OneForm values are directly
/// coefficient vectors.
class FormBasis {
public:
    FormBasis(const CellComplex& complex, int degree);

    int degree() const { return degree_; }
    int size() const { return static_cast<int>(elements_.size()); }
    const FormBasisElement& operator[](int i) const { return elements_[i]; }
    const std::vector<FormBasisElement>& elements() const { return elements_; }

    std::optional<int> find(CellId tau, CellId sigma) const;
    // Sign relating the stored basis element to the raw e^tau_sigma.
    double sign(int i) const { return signs_[i]; }
    // Squared L2 norm of the raw element: w_sigma / w_tau.
    double norm_sq(int i) const { return norm_sq_[i]; }
    // sqrt(w_sigma / w_tau): multiplies raw coefficients into the
    // orthonormalized basis sqrt(w_tau / w_sigma) e^tau_sigma.
    const Eigen::VectorXd& normalization() const { return normalization_; }

private:
    int degree_;
    int total_cells_;
    std::vector<int> offsets_;
    std::vector<FormBasisElement> elements_;
    std::vector<double> signs_;
    std::vector<double> norm_sq_;
    Eigen::VectorXd normalization_;
    std::unordered_map<std::int64_t, int> lookup_;
};

struct Form {
    int degree = 0;
    Eigen::VectorXd coefficients;
};

// Dense matrix in the orthonormalized bases of the two degrees.
struct OperatorMatrix {
    int from_degree = 0;
    int to_degree = 0;
    Eigen::MatrixXd matrix;
};

struct Spectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns
    double zero_tolerance = 1e-8;
};

// |lambda| <= zero_tolerance * max(1, lambda_max). Throws ToleranceAmbiguous
// when an eigenvalue sits within a factor 10 of that threshold.
int harmonic_dimension(const Spectrum& spectrum);

struct HodgeDecomposition {
    Form harmonic;  // u0
    Form potential; // u', degree d-1
    double residual = 0.0;  // |u - u0 - d u'| / |u|
};

/// The differential complex of combinatorial forms with the weighted L2
/// inner product <u, v> = sum_cells (1/w_c) <u(c), v(c)>.
///
/// All bases and the differential are assembled once; every query is const
/// and safe to call concurrently. Holds its own copy of the complex.
class HodgeOperators {
public:
    explicit HodgeOperators(const CellComplex& complex);

    const CellComplex& complex() const { return complex_; }
    int top_degree() const { return complex_.dimension(); }
    const FormBasis& basis(int d) const;

    // d: degree d -> d+1 in the stored (signed raw) basis.
    const Eigen::SparseMatrix<double>& d_raw(int d) const;

    OperatorMatrix d_op(int d) const;
    // Adjoint as the transpose of d_op(d-1).
    OperatorMatrix dstar_op(int d) const;
    // Adjoint assembled from p o (del* o w - (-1)^(d-1) w o del*), with p the
    // orthogonal projection onto local maps.
    OperatorMatrix dstar_op_projected(int d) const;
    OperatorMatrix laplacian(int d) const;
    // Delta assembled in the stored basis with d* = G^-1 d^T G.
    Eigen::MatrixXd laplacian_raw(int d) const;

    Spectrum spectrum(int d, double zero_tolerance = 1e-8) const;
    int harmonic_dimension(int d, double zero_tolerance = 1e-8) const;

    Form apply_d(const Form& u) const;
    Form apply_dstar(const Form& u) const;
    Form apply_laplacian(const Form& u) const;
    double inner_product(const Form& u, const Form& v) const;
    double norm(const Form& u) const;

    Eigen::VectorXd to_orthonormal(const Form& u) const;
    Form from_orthonormal(int degree, const Eigen::VectorXd& coefficients) const;

    // u = u0 + d u' for a closed u of degree d >= 1.
    HodgeDecomposition hodge_decompose(const Form& u, double zero_tolerance = 1e-8) const;

private:
    void require_degree(int d, int lo, int hi, const char* what) const;
    Eigen::SparseMatrix<double> normalize(int from, int to, const Eigen::SparseMatrix<double>& raw) const;

    CellComplex complex_;
    std::vector<FormBasis> bases_;
    std::vector<Eigen::SparseMatrix<double>> d_raw_;
    std::vector<Eigen::SparseMatrix<double>> d_hat_;
};

}  // namespace cellform
