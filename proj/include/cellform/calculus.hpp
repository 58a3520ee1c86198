#pragma once

#include <algorithm>
#include <map>

#include <Eigen/Core>

#include "cellform/complex.hpp"
#include "cellform/forms.hpp"

namespace cellform {

// f(sigma) = f_sigma sigma; values indexed by CellComplex::flat_index.
struct CellFunction {
    Eigen::VectorXd values;
};

// omega^tau_sigma on every incidence vector, indexed like CellComplex::vectors().
struct OneForm {
    Eigen::VectorXd values;
};

// X(sigma) = sum_{tau > sigma} X^tau_sigma [tau : sigma] tau, indexed like
// CellComplex::vectors().
struct VectorField {
    Eigen::VectorXd values;
};

// Functions are total: every cell needs a value.
CellFunction make_function(const CellComplex& complex, const std::map<CellId, double>& values);
CellFunction constant_function(const CellComplex& complex, double value);

Form as_form(const CellFunction& f);
Form as_form(const OneForm& omega);

// (df)^tau_sigma = f_tau - f_sigma.
OneForm derivative(const CellComplex& complex, const CellFunction& f);
bool is_locally_constant(const CellComplex& complex, const CellFunction& f);
// Independent check: f constant on every connected component, where two cells
// are connected when one is a face of the other.
bool constant_on_components(const CellComplex& complex, const CellFunction& f);

// The 2-form d(omega) in FormBasis(complex, 2) order.
Form exterior_derivative(const CellComplex& complex, const OneForm& omega);
// d(omega) = 0 up to tolerance * max(1, max |omega|).
bool is_closed(const CellComplex& complex, const OneForm& omega, double tolerance = 1e-12);
// omega^mu_tau + omega^tau_sigma = omega^mu_tau' + omega^tau'_sigma over every
// diamond mu > tau, tau' > sigma.
bool satisfies_diamond_identity(const CellComplex& complex, const OneForm& omega, double tolerance = 1e-12);

// d*(omega)(sigma) = -sum_{tau > sigma} (w_sigma / w_tau) omega^tau_sigma
//                    + sum_{rho < sigma} (w_rho / w_sigma) omega^sigma_rho
CellFunction codifferential(const CellComplex& complex, const OneForm& omega);

CellFunction pairing(const CellComplex& complex, const OneForm& omega, const VectorField& x);
// X(f) = df(X).
CellFunction directional_derivative(const CellComplex& complex, const CellFunction& f, const VectorField& x);

// grad(f)^tau_sigma = (w_sigma / w_tau)(f_tau - f_sigma)
VectorField grad(const CellComplex& complex, const CellFunction& f);
// div(X)(sigma) = -sum_{tau > sigma} X^tau_sigma + sum_{rho < sigma} X^sigma_rho
//
// Signs follow the combinatorial convention in which Green's identity reads
// int <grad f, X> = +int f div X (no minus sign, unlike the smooth case).
CellFunction div(const CellComplex& complex, const VectorField& x);
// <X, Y>(sigma) = sum_{tau > sigma} (w_tau / w_sigma) X^tau_sigma Y^tau_sigma
CellFunction inner_product(const CellComplex& complex, const VectorField& x, const VectorField& y);

double integrate(const CellFunction& f);

struct GreenResidual {
    double residual = 0.0;  // |int <grad f, X> - int f div X|
    double scale = 0.0;     // sum of |X^tau_sigma (f_tau - f_sigma)|
    double relative() const { return residual / std::max(1.0, scale); }
};
GreenResidual green_residual(const CellComplex& complex, const CellFunction& f, const VectorField& x);

// Delta f = div(grad f). Equals d*df whenever the weights are constant.
CellFunction laplacian_of_function(const CellComplex& complex, const CellFunction& f);

}  // namespace cellform
