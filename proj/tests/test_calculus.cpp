#include <doctest.h>

#include "cellform/calculus.hpp"
#include "cellform/forms.hpp"
#include "support.hpp"

using namespace cellform;
using testing_support::random_vector;
using testing_support::random_weights;
using testing_support::single_edge;

namespace {

CellFunction random_function(const CellComplex& c, Rng& rng) { return {random_vector(rng, c.total_cells())}; }
VectorField random_field(const CellComplex& c, Rng& rng) { return {random_vector(rng, c.vectors().size())}; }
OneForm random_one_form(const CellComplex& c, Rng& rng) { return {random_vector(rng, c.vectors().size())}; }

}  // namespace

TEST_CASE("derivative of a function") {
    const CellComplex e = single_edge();
    CHECK(derivative(e, constant_function(e, 3.5)).values.cwiseAbs().maxCoeff() == 0.0);

    const CellFunction f = make_function(e, {{{0, 0}, 1.0}, {{0, 1}, -2.0}, {{1, 0}, 4.0}});
    const OneForm df = derivative(e, f);
    CHECK(df.values[0] == 3.0);
    CHECK(df.values[1] == 6.0);

    // Two isolated vertices, different constants.
    const CellComplex two = CellComplex::build({{{}, {}}});
    const CellFunction g{Eigen::Vector2d(1.0, 7.0)};
    CHECK(derivative(two, g).values.size() == 0);
    CHECK(is_locally_constant(two, g));

    CHECK_THROWS_AS(make_function(e, {{{0, 0}, 1.0}}), Error);
    CHECK_THROWS_AS(make_function(e, {{{0, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 0}, 1.0}, {{0, 5}, 1.0}}), Error);

    // Agreement with the degree-0 operator.
    Rng rng(1);
    const CellComplex c = cube();
    const HodgeOperators h(c);
    for (int t = 0; t < 10; ++t) {
        const CellFunction r = random_function(c, rng);
        CHECK((derivative(c, r).values - h.apply_d(as_form(r)).coefficients).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("local constancy") {
    const CellComplex e = single_edge();
    CHECK(is_locally_constant(e, constant_function(e, 2.0)));
    const CellFunction indicator{Eigen::Vector3d(1.0, 0.0, 0.0)};
    CHECK_FALSE(is_locally_constant(e, indicator));

    // Two components: an edge and a triangle.
    CellComplex::BoundaryLists b = {{{}, {}, {}, {}, {}},
                                    {{{0, -1}, {1, 1}}, {{2, -1}, {3, 1}}, {{3, -1}, {4, 1}}, {{2, -1}, {4, 1}}},
                                    {{{1, 1}, {2, 1}, {3, -1}}}};
    const CellComplex two = CellComplex::build(b);
    Eigen::VectorXd v(two.total_cells());
    for (int i = 0; i < two.total_cells(); ++i) {
        const CellId id = two.cell_at(i);
        const bool first = (id.dim == 0 && id.index < 2) || (id.dim == 1 && id.index == 0);
        v[i] = first ? -3.0 : 8.0;
    }
    const CellFunction f{v};
    CHECK(is_locally_constant(two, f));
    CHECK(constant_on_components(two, f));
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        CellFunction g = f;
        g.values[rng.below(g.values.size())] += 1.0;
        CHECK(is_locally_constant(two, g) == constant_on_components(two, g));
    }
}

TEST_CASE("closedness of 1-forms") {
    Rng rng(9);
    const CellComplex ico = icosahedron();
    for (int t = 0; t < 10; ++t) {
        const OneForm df = derivative(ico, random_function(ico, rng));
        CHECK(is_closed(ico, df));
        CHECK(satisfies_diamond_identity(ico, df));
    }
    for (int t = 0; t < 20; ++t) {
        const OneForm w = random_one_form(ico, rng);
        CHECK(is_closed(ico, w) == satisfies_diamond_identity(ico, w));
        CHECK_FALSE(is_closed(ico, w));
    }

    // Triangle: face components zero, edge-vertex values breaking one diamond.
    const CellComplex t = testing_support::triangle();
    OneForm w{Eigen::VectorXd::Zero(t.vectors().size())};
    w.values[t.vector_index({1, 0}, {0, 0})] = 1.0;
    CHECK_FALSE(satisfies_diamond_identity(t, w));
    CHECK_FALSE(is_closed(t, w));

    // Graphs have no diamonds.
    const CellComplex k4 = complete_graph(4);
    CHECK(is_closed(k4, random_one_form(k4, rng)));
    CHECK(exterior_derivative(k4, random_one_form(k4, rng)).coefficients.size() == 0);
}

TEST_CASE("codifferential") {
    const CellComplex e = single_edge();
    const CellFunction d = codifferential(e, {Eigen::Vector2d(2.0, 5.0)});
    CHECK(d.values[0] == -2.0);
    CHECK(d.values[1] == -5.0);
    CHECK(d.values[2] == 7.0);
    CHECK(codifferential(e, {Eigen::Vector2d::Zero()}).values.cwiseAbs().maxCoeff() == 0.0);

    // d* df on C3 at a vertex: -sum over its edges of (f_e - f_v).
    Rng rng(6);
    const CellComplex c3 = cycle_graph(3);
    const CellFunction f = random_function(c3, rng);
    const CellFunction ddf = codifferential(c3, derivative(c3, f));
    for (int v = 0; v < 3; ++v) {
        double expect = 0.0;
        for (const auto& x : c3.cofaces({0, v})) expect -= f.values[c3.flat_index({1, x.cell})] - f.values[v];
        CHECK(ddf.values[v] == doctest::Approx(expect).epsilon(1e-14));
    }

    // Agreement with the operator adjoint under random weights.
    for (auto& [name, base] : testing_support::property_complexes()) {
        const CellComplex c = base.with_weights(random_weights(base, rng));
        const HodgeOperators h(c);
        const OneForm w = random_one_form(c, rng);
        const double diff = (codifferential(c, w).values - h.apply_dstar(as_form(w)).coefficients).cwiseAbs().maxCoeff();
        INFO(name);
        CHECK(diff <= 1e-12);
    }
}

TEST_CASE("pairing, gradient, divergence") {
    const CellComplex e = single_edge();
    CHECK(pairing(e, {Eigen::Vector2d(1, 2)}, {Eigen::Vector2d::Zero()}).values.cwiseAbs().maxCoeff() == 0.0);
    const CellFunction p = pairing(e, {Eigen::Vector2d(3, 2)}, {Eigen::Vector2d(5, 7)});
    CHECK(p.values[0] == 15.0);
    CHECK(p.values[1] == 14.0);
    CHECK(p.values[2] == 0.0);

    CHECK(grad(e, constant_function(e, 1.0)).values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(grad(e, {Eigen::Vector3d(1.0, 0.0, 3.0)}).values[0] == 2.0);
    const CellComplex ew = single_edge({{2.0, 1.0}, {4.0}});
    CHECK(grad(ew, {Eigen::Vector3d(1.0, 0.0, 7.0)}).values[0] == 3.0);

    const CellFunction dv = div(e, {Eigen::Vector2d(0.5, -1.5)});
    CHECK(dv.values[0] == -0.5);
    CHECK(dv.values[1] == 1.5);
    CHECK(dv.values[2] == -1.0);

    const CellFunction ip = inner_product(e, {Eigen::Vector2d(2, 3)}, {Eigen::Vector2d(4, -1)});
    CHECK(ip.values[0] == 8.0);
    CHECK(ip.values[1] == -3.0);

    Rng rng(12);
    const CellComplex cu = cube();
    const CellComplex cw = cu.with_weights(random_weights(cu, rng));
    for (int t = 0; t < 20; ++t) {
        const CellFunction f = random_function(cu, rng);
        const VectorField x = random_field(cu, rng);
        CHECK(inner_product(cw, x, x).values.minCoeff() >= 0.0);
        // df(X) against the explicit sum over cofaces.
        const CellFunction a = directional_derivative(cu, f, x);
        for (int i = 0; i < cu.total_cells(); ++i) {
            const CellId s = cu.cell_at(i);
            double expect = 0.0;
            for (const auto& c : cu.cofaces(s)) {
                const CellId tau{s.dim + 1, c.cell};
                expect += x.values[cu.vector_index(tau, s)] * (f.values[cu.flat_index(tau)] - f.values[i]);
            }
            CHECK(a.values[i] == doctest::Approx(expect).epsilon(1e-13));
        }
        const CellFunction b = inner_product(cw, x, grad(cw, f));
        CHECK((directional_derivative(cw, f, x).values - b.values).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("integration and green identity") {
    CHECK(integrate(constant_function(complete_graph(4), 1.0)) == 10.0);
    CHECK(integrate(constant_function(cube(), 1.0)) == 26.0);
    CellFunction one{Eigen::VectorXd::Zero(26)};
    one.values[7] = 1.0;
    CHECK(integrate(one) == 1.0);

    Rng rng(13);
    const CellComplex t = torus_grid(4, 3);
    CHECK(green_residual(t, random_function(t, rng), {Eigen::VectorXd::Zero(t.vectors().size())}).residual == 0.0);
    for (const bool weighted : {false, true}) {
        for (auto& [name, base] : testing_support::property_complexes()) {
            const CellComplex c = weighted ? base.with_weights(random_weights(base, rng)) : base;
            for (int k = 0; k < 20; ++k) {
                const CellFunction f = random_function(c, rng);
                const VectorField x = random_field(c, rng);
                INFO(name << (weighted ? " weighted" : ""));
                CHECK(green_residual(c, f, x).relative() <= 1e-12);
                CHECK(std::abs(integrate(div(c, x))) <= 1e-12);
                CHECK(std::abs(integrate(laplacian_of_function(c, f))) <= 1e-12);
                CHECK(green_residual(c, constant_function(c, 1.0), x).residual <= 1e-12);
            }
        }
    }
}

TEST_CASE("laplacian of a function") {
    const CellComplex e = single_edge();
    CHECK(laplacian_of_function(e, constant_function(e, 5.0)).values.cwiseAbs().maxCoeff() == 0.0);
    const CellFunction l = laplacian_of_function(e, {Eigen::Vector3d(0.0, 0.0, 1.0)});
    CHECK(l.values[0] == -1.0);
    CHECK(l.values[1] == -1.0);
    CHECK(l.values[2] == 2.0);

    Rng rng(14);
    const CellComplex ico = icosahedron();
    const HodgeOperators h(ico);
    for (int t = 0; t < 100; ++t) {
        const CellFunction f = random_function(ico, rng);
        const CellFunction lf = laplacian_of_function(ico, f);
        CHECK(std::abs(integrate(lf)) <= 1e-12);
        // div grad = d* d at constant weights.
        const Form dd = h.apply_dstar(h.apply_d(as_form(f)));
        CHECK((lf.values - dd.coefficients).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("orientation does not change the calculus") {
    Rng rng(15);
    const CellComplex c = octahedron();
    const CellComplex r = c.reoriented({1, 4}).reoriented({2, 3}).reoriented({0, 2});
    for (int t = 0; t < 10; ++t) {
        const CellFunction f = random_function(c, rng);
        const VectorField x = random_field(c, rng);
        CHECK(green_residual(c, f, x).residual == doctest::Approx(green_residual(r, f, x).residual).epsilon(1e-10));
        CHECK((laplacian_of_function(c, f).values - laplacian_of_function(r, f).values).cwiseAbs().maxCoeff() <= 1e-14);
        const OneForm df = derivative(c, f);
        CHECK(is_closed(r, df));
        const OneForm w = random_one_form(c, rng);
        CHECK(is_closed(c, w) == is_closed(r, w));
    }
}
