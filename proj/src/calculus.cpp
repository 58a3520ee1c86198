#include "cellform/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cellform {

namespace {

void require_function(const CellComplex& complex, const CellFunction& f) {
    if (f.values.size() != complex.total_cells())
        throw Error(ErrorCode::MissingValue, "function has " + std::to_string(f.values.size()) + " values for " +
                                                 std::to_string(complex.total_cells()) + " cells");
}

void require_vectors(const CellComplex& complex, const Eigen::VectorXd& v, const char* what) {
    if (v.size() != static_cast<Eigen::Index>(complex.vectors().size()))
        throw Error(ErrorCode::BadParameter, std::string(what) + " has " + std::to_string(v.size()) +
                                                 " coefficients for " + std::to_string(complex.vectors().size()) +
                                                 " incidence vectors");
}

}  // namespace

CellFunction make_function(const CellComplex& complex, const std::map<CellId, double>& values) {
    CellFunction f{Eigen::VectorXd::Zero(complex.total_cells())};
    for (int i = 0; i < complex.total_cells(); ++i) {
        auto it = values.find(complex.cell_at(i));
        if (it == values.end()) throw Error(ErrorCode::MissingValue, "no value for " + to_string(complex.cell_at(i)));
        f.values[i] = it->second;
    }
    for (const auto& [id, value] : values)
        if (!complex.contains(id)) throw Error(ErrorCode::UnknownCell, to_string(id) + " is not a cell of the complex");
    return f;
}

CellFunction constant_function(const CellComplex& complex, double value) {
    return {Eigen::VectorXd::Constant(complex.total_cells(), value)};
}

Form as_form(const CellFunction& f) { return {0, f.values}; }
Form as_form(const OneForm& omega) { return {1, omega.values}; }

OneForm derivative(const CellComplex& complex, const CellFunction& f) {
    require_function(complex, f);
    const auto& vecs = complex.vectors();
    OneForm omega{Eigen::VectorXd(vecs.size())};
    for (std::size_t i = 0; i < vecs.size(); ++i)
        omega.values[i] = f.values[complex.flat_index(vecs[i].tau)] - f.values[complex.flat_index(vecs[i].sigma)];
    return omega;
}

bool is_locally_constant(const CellComplex& complex, const CellFunction& f) {
    const OneForm df = derivative(complex, f);
    return (df.values.array() == 0.0).all();
}

bool constant_on_components(const CellComplex& complex, const CellFunction& f) {
    require_function(complex, f);
    std::vector<int> parent(complex.total_cells());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& v : complex.vectors())
        parent[find(complex.flat_index(v.tau))] = find(complex.flat_index(v.sigma));
    std::vector<double> value(complex.total_cells(), std::nan(""));
    for (int i = 0; i < complex.total_cells(); ++i) {
        const int root = find(i);
        if (std::isnan(value[root]))
            value[root] = f.values[i];
        else if (value[root] != f.values[i])
            return false;
    }
    return true;
}

Form exterior_derivative(const CellComplex& complex, const OneForm& omega) {
    require_vectors(complex, omega.values, "1-form");
    const FormBasis basis(complex, 2);
    Form out{2, Eigen::VectorXd::Zero(basis.size())};
    // (d omega)(mu) = del(omega(mu)) + omega(del mu); the coefficient at sigma
    // is sum_tau [mu:tau][tau:sigma](omega^mu_tau + omega^tau_sigma), which on a
    // diamond is +-(omega^mu_tau + omega^tau_sigma - omega^mu_tau' - omega^tau'_sigma).
    for (int b = 0; b < basis.size(); ++b) {
        const auto [mu, sigma] = basis[b];
        double acc = 0.0;
        for (const auto& t : complex.faces(mu)) {
            const CellId tau{mu.dim - 1, t.cell};
            const int lower = complex.vector_index(tau, sigma);
            if (lower < 0) continue;
            const int upper = complex.vector_index(mu, tau);
            acc += t.sign * complex.vectors()[lower].sign * (omega.values[upper] + omega.values[lower]);
        }
        out.coefficients[b] = acc;
    }
    return out;
}

bool is_closed(const CellComplex& complex, const OneForm& omega, double tolerance) {
    const Form d = exterior_derivative(complex, omega);
    const double scale = std::max(1.0, omega.values.size() ? omega.values.cwiseAbs().maxCoeff() : 0.0);
    return d.coefficients.size() == 0 || d.coefficients.cwiseAbs().maxCoeff() <= tolerance * scale;
}

bool satisfies_diamond_identity(const CellComplex& complex, const OneForm& omega, double tolerance) {
    require_vectors(complex, omega.values, "1-form");
    const double scale = std::max(1.0, omega.values.size() ? omega.values.cwiseAbs().maxCoeff() : 0.0);
    for (int p = 2; p <= complex.dimension(); ++p) {
        for (int m = 0; m < complex.cell_count(p); ++m) {
            const CellId mu{p, m};
            const auto faces = complex.faces(mu);
            for (std::size_t a = 0; a < faces.size(); ++a) {
                for (std::size_t b = 0; b < faces.size(); ++b) {
                    if (a == b) continue;
                    const CellId tau{p - 1, faces[a].cell};
                    const CellId tau2{p - 1, faces[b].cell};
                    for (const auto& s : complex.faces(tau)) {
                        const CellId sigma{p - 2, s.cell};
                        const int lower2 = complex.vector_index(tau2, sigma);
                        if (lower2 < 0) continue;
                        const double lhs = omega.values[complex.vector_index(mu, tau)] +
                                           omega.values[complex.vector_index(tau, sigma)];
                        const double rhs = omega.values[complex.vector_index(mu, tau2)] + omega.values[lower2];
                        if (std::abs(lhs - rhs) > tolerance * scale) return false;
                    }
                }
            }
        }
    }
    return true;
}

CellFunction codifferential(const CellComplex& complex, const OneForm& omega) {
    require_vectors(complex, omega.values, "1-form");
    CellFunction out{Eigen::VectorXd::Zero(complex.total_cells())};
    const auto& vecs = complex.vectors();
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        const auto& v = vecs[i];
        const double ratio = complex.weight(v.sigma) / complex.weight(v.tau);
        out.values[complex.flat_index(v.sigma)] -= ratio * omega.values[i];
        out.values[complex.flat_index(v.tau)] += ratio * omega.values[i];
    }
    return out;
}

CellFunction pairing(const CellComplex& complex, const OneForm& omega, const VectorField& x) {
    require_vectors(complex, omega.values, "1-form");
    require_vectors(complex, x.values, "vector field");
    CellFunction out{Eigen::VectorXd::Zero(complex.total_cells())};
    const auto& vecs = complex.vectors();
    for (std::size_t i = 0; i < vecs.size(); ++i)
        out.values[complex.flat_index(vecs[i].sigma)] += omega.values[i] * x.values[i];
    return out;
}

CellFunction directional_derivative(const CellComplex& complex, const CellFunction& f, const VectorField& x) {
    return pairing(complex, derivative(complex, f), x);
}

VectorField grad(const CellComplex& complex, const CellFunction& f) {
    require_function(complex, f);
    const auto& vecs = complex.vectors();
    VectorField x{Eigen::VectorXd(vecs.size())};
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        const auto& v = vecs[i];
        x.values[i] = complex.weight(v.sigma) / complex.weight(v.tau) *
                      (f.values[complex.flat_index(v.tau)] - f.values[complex.flat_index(v.sigma)]);
    }
    return x;
}

CellFunction div(const CellComplex& complex, const VectorField& x) {
    require_vectors(complex, x.values, "vector field");
    CellFunction out{Eigen::VectorXd::Zero(complex.total_cells())};
    const auto& vecs = complex.vectors();
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        out.values[complex.flat_index(vecs[i].sigma)] -= x.values[i];
        out.values[complex.flat_index(vecs[i].tau)] += x.values[i];
    }
    return out;
}

CellFunction inner_product(const CellComplex& complex, const VectorField& x, const VectorField& y) {
    require_vectors(complex, x.values, "vector field");
    require_vectors(complex, y.values, "vector field");
    CellFunction out{Eigen::VectorXd::Zero(complex.total_cells())};
    const auto& vecs = complex.vectors();
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        const auto& v = vecs[i];
        out.values[complex.flat_index(v.sigma)] +=
            complex.weight(v.tau) / complex.weight(v.sigma) * x.values[i] * y.values[i];
    }
    return out;
}

double integrate(const CellFunction& f) { return f.values.sum(); }

GreenResidual green_residual(const CellComplex& complex, const CellFunction& f, const VectorField& x) {
    const double lhs = integrate(inner_product(complex, grad(complex, f), x));
    const double rhs = f.values.dot(div(complex, x).values);
    GreenResidual r;
    r.residual = std::abs(lhs - rhs);
    const auto& vecs = complex.vectors();
    for (std::size_t i = 0; i < vecs.size(); ++i)
        r.scale += std::abs(x.values[i]) *
                   (std::abs(f.values[complex.flat_index(vecs[i].tau)]) + std::abs(f.values[complex.flat_index(vecs[i].sigma)]));
    return r;
}

CellFunction laplacian_of_function(const CellComplex& complex, const CellFunction& f) {
    return div(complex, grad(complex, f));
}

}  // namespace cellform
