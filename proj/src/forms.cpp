#include "cellform/forms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace cellform {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

double parity(int d) { return d % 2 == 0 ? 1.0 : -1.0; }

Eigen::SparseMatrix<double> from_triplets(int rows, int cols, const Triplets& t) {
    Eigen::SparseMatrix<double> m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    m.prune(0.0);
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// FormBasis

FormBasis::FormBasis(const CellComplex& complex, int degree)
    : degree_(degree), total_cells_(complex.total_cells()) {
    for (int p = 0; p <= complex.dimension(); ++p) offsets_.push_back(complex.flat_index({p, 0}));
    for (int f = 0; f < complex.total_cells(); ++f) {
        const CellId tau = complex.cell_at(f);
        if (tau.dim < degree) continue;
        for (const CellId& sigma : complex.closure(tau)) {
            if (sigma.dim != tau.dim - degree) continue;
            const int i = static_cast<int>(elements_.size());
            elements_.push_back({tau, sigma});
            signs_.push_back(degree == 1 ? complex.incidence(tau, sigma) : 1.0);
            norm_sq_.push_back(complex.weight(sigma) / complex.weight(tau));
            lookup_.emplace(static_cast<std::int64_t>(f) * total_cells_ + complex.flat_index(sigma), i);
        }
    }
    normalization_.resize(size());
    for (int i = 0; i < size(); ++i) normalization_[i] = std::sqrt(norm_sq_[i]);
}

std::optional<int> FormBasis::find(CellId tau, CellId sigma) const {
    if (tau.dim - sigma.dim != degree_) return std::nullopt;
    if (tau.dim < 0 || tau.dim >= static_cast<int>(offsets_.size()) || sigma.dim < 0) return std::nullopt;
    const std::int64_t key =
        static_cast<std::int64_t>(offsets_[tau.dim] + tau.index) * total_cells_ + offsets_[sigma.dim] + sigma.index;
    auto it = lookup_.find(key);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Spectra

int harmonic_dimension(const Spectrum& spectrum) {
    const auto& ev = spectrum.eigenvalues;
    if (ev.size() == 0) return 0;
    const double threshold = spectrum.zero_tolerance * std::max(1.0, ev.maxCoeff());
    int count = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double a = std::abs(ev[i]);
        if (a > threshold / 10.0 && a < threshold * 10.0)
            throw Error(ErrorCode::ToleranceAmbiguous,
                        "eigenvalue " + std::to_string(ev[i]) + " lies within a factor 10 of the zero threshold " +
                            std::to_string(threshold));
        if (a <= threshold) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// HodgeOperators

HodgeOperators::HodgeOperators(const CellComplex& complex) : complex_(complex) {
    const int n = complex.dimension();
    for (int d = 0; d <= n; ++d) bases_.emplace_back(complex, d);

    // (d w) = del o w - (-1)^d w o del, evaluated on each basis element.
    for (int d = 0; d < n; ++d) {
        const FormBasis& from = bases_[d];
        const FormBasis& to = bases_[d + 1];
        Triplets t;
        const double sign_right = -parity(d);
        auto emit = [&](CellId tau, CellId sigma, double raw, int col) {
            auto row = to.find(tau, sigma);
            if (!row) throw std::logic_error("differential produced a non-local term at (" + to_string(tau) + ", " +
                                             to_string(sigma) + ")");
            t.emplace_back(*row, col, raw * to.sign(*row));
        };
        for (int b = 0; b < from.size(); ++b) {
            const auto [tau, sigma] = from[b];
            const double eps = from.sign(b);
            if (sigma.dim > 0)
                for (const auto& rho : complex.faces(sigma)) emit(tau, {sigma.dim - 1, rho.cell}, eps * rho.sign, b);
            for (const auto& mu : complex.cofaces(tau)) emit({tau.dim + 1, mu.cell}, sigma, sign_right * eps * mu.sign, b);
        }
        d_raw_.push_back(from_triplets(to.size(), from.size(), t));
        d_hat_.push_back(normalize(d, d + 1, d_raw_.back()));
    }
}

void HodgeOperators::require_degree(int d, int lo, int hi, const char* what) const {
    if (d < lo || d > hi)
        throw Error(ErrorCode::DimensionOutOfRange, std::string(what) + "(" + std::to_string(d) + ") needs " +
                                                        std::to_string(lo) + " <= d <= " + std::to_string(hi));
}

const FormBasis& HodgeOperators::basis(int d) const {
    require_degree(d, 0, top_degree(), "basis");
    return bases_[d];
}

const Eigen::SparseMatrix<double>& HodgeOperators::d_raw(int d) const {
    require_degree(d, 0, top_degree() - 1, "d_op");
    return d_raw_[d];
}

Eigen::SparseMatrix<double> HodgeOperators::normalize(int from, int to, const Eigen::SparseMatrix<double>& raw) const {
    const Eigen::VectorXd& n_to = bases_[to].normalization();
    const Eigen::VectorXd inv_from = bases_[from].normalization().cwiseInverse();
    Eigen::SparseMatrix<double> m = n_to.asDiagonal() * raw * inv_from.asDiagonal();
    return m;
}

OperatorMatrix HodgeOperators::d_op(int d) const {
    require_degree(d, 0, top_degree() - 1, "d_op");
    return {d, d + 1, Eigen::MatrixXd(d_hat_[d])};
}

OperatorMatrix HodgeOperators::dstar_op(int d) const {
    require_degree(d, 1, top_degree(), "dstar_op");
    return {d, d - 1, Eigen::MatrixXd(d_hat_[d - 1].transpose())};
}

OperatorMatrix HodgeOperators::dstar_op_projected(int d) const {
    require_degree(d, 1, top_degree(), "dstar_op");
    const FormBasis& from = bases_[d];
    const FormBasis& to = bases_[d - 1];
    const CellComplex& c = complex_;
    const double sign_right = -parity(d - 1);
    Triplets t;
    // Terms landing outside the local maps are dropped: that is the projection,
    // since the e^tau_sigma are mutually orthogonal.
    auto emit = [&](CellId tau, CellId sigma, double raw, int col) {
        if (auto row = to.find(tau, sigma)) t.emplace_back(*row, col, raw * to.sign(*row));
    };
    for (int b = 0; b < from.size(); ++b) {
        const auto [tau, sigma] = from[b];
        const double eps = from.sign(b);
        // del* x = sum_{y > x} [y : x] (w_x / w_y) y
        for (const auto& y : c.cofaces(sigma)) {
            const CellId up{sigma.dim + 1, y.cell};
            emit(tau, up, eps * y.sign * c.weight(sigma) / c.weight(up), b);
        }
        if (tau.dim > 0)
            for (const auto& x : c.faces(tau)) {
                const CellId down{tau.dim - 1, x.cell};
                emit(down, sigma, sign_right * eps * x.sign * c.weight(down) / c.weight(tau), b);
            }
    }
    const Eigen::SparseMatrix<double> raw = from_triplets(to.size(), from.size(), t);
    return {d, d - 1, Eigen::MatrixXd(normalize(d, d - 1, raw))};
}

OperatorMatrix HodgeOperators::laplacian(int d) const {
    require_degree(d, 0, top_degree(), "laplacian");
    const int size = bases_[d].size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    if (d >= 1) {
        const Eigen::MatrixXd down(d_hat_[d - 1]);
        m.noalias() += down * down.transpose();
    }
    if (d < top_degree()) {
        const Eigen::MatrixXd up(d_hat_[d]);
        m.noalias() += up.transpose() * up;
    }
    return {d, d, m};
}

Eigen::MatrixXd HodgeOperators::laplacian_raw(int d) const {
    require_degree(d, 0, top_degree(), "laplacian");
    auto gram = [&](int k) {
        Eigen::VectorXd g(bases_[k].size());
        for (int i = 0; i < g.size(); ++i) g[i] = bases_[k].norm_sq(i);
        return g;
    };
    const int size = bases_[d].size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    if (d >= 1) {
        const Eigen::MatrixXd down(d_raw_[d - 1]);
        const Eigen::MatrixXd dstar = gram(d - 1).cwiseInverse().asDiagonal() * down.transpose() * gram(d).asDiagonal();
        m += down * dstar;
    }
    if (d < top_degree()) {
        const Eigen::MatrixXd up(d_raw_[d]);
        const Eigen::MatrixXd dstar = gram(d).cwiseInverse().asDiagonal() * up.transpose() * gram(d + 1).asDiagonal();
        m += dstar * up;
    }
    return m;
}

Spectrum HodgeOperators::spectrum(int d, double zero_tolerance) const {
    const Eigen::MatrixXd lap = laplacian(d).matrix;
    Spectrum s;
    s.zero_tolerance = zero_tolerance;
    if (lap.rows() == 0) {
        s.eigenvalues.resize(0);
        s.eigenvectors.resize(0, 0);
        return s;
    }
    const Eigen::MatrixXd sym = 0.5 * (lap + lap.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::EigensolverFailure, "symmetric eigensolver did not converge in degree " + std::to_string(d));
    s.eigenvalues = solver.eigenvalues();
    s.eigenvectors = solver.eigenvectors();
    return s;
}

int HodgeOperators::harmonic_dimension(int d, double zero_tolerance) const {
    return cellform::harmonic_dimension(spectrum(d, zero_tolerance));
}

Eigen::VectorXd HodgeOperators::to_orthonormal(const Form& u) const {
    return u.coefficients.cwiseProduct(basis(u.degree).normalization());
}

Form HodgeOperators::from_orthonormal(int degree, const Eigen::VectorXd& coefficients) const {
    return {degree, coefficients.cwiseQuotient(basis(degree).normalization())};
}

Form HodgeOperators::apply_d(const Form& u) const {
    return {u.degree + 1, d_raw(u.degree) * u.coefficients};
}

Form HodgeOperators::apply_dstar(const Form& u) const {
    require_degree(u.degree, 1, top_degree(), "dstar_op");
    const Eigen::VectorXd hat = to_orthonormal(u);
    return from_orthonormal(u.degree - 1, d_hat_[u.degree - 1].transpose() * hat);
}

Form HodgeOperators::apply_laplacian(const Form& u) const {
    return from_orthonormal(u.degree, laplacian(u.degree).matrix * to_orthonormal(u));
}

double HodgeOperators::inner_product(const Form& u, const Form& v) const {
    if (u.degree != v.degree) throw Error(ErrorCode::BadParameter, "inner product of forms of different degree");
    const FormBasis& b = basis(u.degree);
    double acc = 0.0;
    for (int i = 0; i < b.size(); ++i) acc += b.norm_sq(i) * u.coefficients[i] * v.coefficients[i];
    return acc;
}

double HodgeOperators::norm(const Form& u) const { return std::sqrt(inner_product(u, u)); }

HodgeDecomposition HodgeOperators::hodge_decompose(const Form& u, double zero_tolerance) const {
    const int d = u.degree;
    require_degree(d, 1, top_degree(), "hodge_decompose");
    const double unorm = norm(u);
    if (d < top_degree()) {
        const double dnorm = norm(apply_d(u));
        if (dnorm > 1e-10 * unorm)
            throw Error(ErrorCode::NotClosed, "form is not closed: |du| = " + std::to_string(dnorm));
    }

    const Spectrum s = spectrum(d, zero_tolerance);
    const double threshold = zero_tolerance * std::max(1.0, s.eigenvalues.size() ? s.eigenvalues.maxCoeff() : 0.0);
    const Eigen::VectorXd hat = to_orthonormal(u);
    const Eigen::VectorXd alpha = s.eigenvectors.transpose() * hat;

    Eigen::VectorXd harmonic = Eigen::VectorXd::Zero(hat.size());
    Eigen::VectorXd exact_part = Eigen::VectorXd::Zero(hat.size());
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (std::abs(s.eigenvalues[i]) <= threshold)
            harmonic += alpha[i] * s.eigenvectors.col(i);
        else
            exact_part += (alpha[i] / s.eigenvalues[i]) * s.eigenvectors.col(i);
    }
    const Eigen::VectorXd potential = d_hat_[d - 1].transpose() * exact_part;

    HodgeDecomposition out;
    out.harmonic = from_orthonormal(d, harmonic);
    out.potential = from_orthonormal(d - 1, potential);
    const Eigen::VectorXd rest = hat - harmonic - d_hat_[d - 1] * potential;
    out.residual = unorm > 0.0 ? rest.norm() / unorm : rest.norm();
    return out;
}

}  // namespace cellform
