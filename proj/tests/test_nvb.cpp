#include <random>

#include "multigraded/error.hpp"
#include "multigraded/nvb.hpp"
#include "random_transitions.hpp"
#include "support.hpp"

using namespace mg;
using namespace mg::testing;

namespace {

FactorAssignment double_bundle(int d10 = 2, int d01 = 3, int d11 = 5) {
    return FactorAssignment::generic(2, {{{1, 0}, d10}, {{0, 1}, d01}, {{1, 1}, d11}});
}

/// Subsets of fibre generators whose degrees add up to i.
long long count_fibre_monomials(const ChartPtr& chart, const MultiDegree& i) {
    std::vector<std::size_t> fibre;
    for (std::size_t g = 0; g < chart->size(); ++g)
        if (!chart->degree(g).is_zero()) fibre.push_back(g);
    long long count = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << fibre.size()); ++mask) {
        MultiDegree sum(i.size());
        for (std::size_t b = 0; b < fibre.size(); ++b)
            if (mask >> b & 1) sum += chart->degree(fibre[b]);
        count += sum == i;
    }
    return count;
}

}  // namespace

TEST_SUITE("nvb") {

TEST_CASE("assignments validate their shape") {
    CHECK_THROWS_AS(FactorAssignment({1, 2}, {"M", false, 1}, {{{1, 0}, {"A", false, 1}}}),
                    ValidationError);
    CHECK_THROWS_AS(FactorAssignment({2, 1}, {"M", false, 1}, {}), ValidationError);
    CHECK_THROWS_AS(FactorAssignment({1}, {"M", false, 1}, {{{2}, {"A", false, 1}}}),
                    ValidationError);
    CHECK(double_bundle().complement_label() == 3);
    CHECK(FactorAssignment({2, 3}, {"M", false, 1},
                           {{{1, 0}, {"A", false, 1}}, {{0, 1}, {"B", false, 1}},
                            {{1, 1}, {"C", false, 1}}})
              .complement_label() == 1);
}

TEST_CASE("characteristic diagrams") {
    auto line = FactorAssignment::generic(1, {});
    auto D1 = characteristic_diagram(line);
    CHECK(D1.nodes.size() == 2);
    CHECK(D1.arrows.size() == 1);

    auto D2 = characteristic_diagram(double_bundle());
    CHECK(D2.nodes.size() == 4);
    CHECK(D2.arrows.size() == 4);
    CHECK(D2.nodes.front().index == MultiDegree{1, 1});
    CHECK(D2.nodes.front().factors.size() == 3);

    auto D3 = characteristic_diagram(FactorAssignment::generic(3, {}));
    CHECK(D3.nodes.size() == 8);
    CHECK(D3.arrows.size() == 12);
    auto B3 = base_diagram(FactorAssignment::generic(3, {}));
    CHECK(B3.nodes.size() == 7);
    CHECK(B3.arrows.size() == 9);

    const std::string text = render_text(D2, double_bundle());
    CHECK(text.find("node F11: M x V10 x V01 x V11") != std::string::npos);
    CHECK(text.find("arrow F11 -> F01 [1]") != std::string::npos);
    CHECK(render_dot(D2, double_bundle()).find("digraph") == 0);
}

TEST_CASE("core and base product") {
    auto split = core_and_base_product(double_bundle());
    CHECK(split.core.str() == "V11");
    CHECK(split.base_product.size() == 2);
    auto line = core_and_base_product(FactorAssignment::generic(1, {}));
    CHECK(line.core.str() == "V1");
    CHECK(line.base_product.empty());
    // core of a dual of a double bundle is the dual of a side
    auto dual_split = core_and_base_product(dual(double_bundle(), 1));
    CHECK(dual_split.core == Factor{"V10", true, 2});
}

TEST_CASE("dual of a line bundle is the classical dual") {
    auto E = FactorAssignment::generic(1, {{{1}, 4}});
    auto D = dual(E, 1);
    CHECK(D.labels() == std::vector<int>{2});
    CHECK(D.factor({1}) == Factor{"V1", true, 4});
    CHECK(D.base() == E.base());
    CHECK_THROWS_AS(dual(E, 2), ValidationError);
}

TEST_CASE("dual of a double bundle at label 1, factor by factor") {
    auto D = dual(double_bundle(), 1);
    CHECK(D.labels() == std::vector<int>{2, 3});
    CHECK(D.factor({1, 0}) == Factor{"V01", false, 3});
    CHECK(D.factor({0, 1}) == Factor{"V11", true, 5});
    CHECK(D.factor({1, 1}) == Factor{"V10", true, 2});
}

TEST_CASE("dual followed by dual at the complement is the identity") {
    std::mt19937 rng(11);
    for (std::size_t n = 1; n <= 4; ++n) {
        auto F = random_assignment(rng, n, 0, 4);
        for (int l : F.labels()) CHECK(dual(dual(F, l), F.complement_label()) == F);
    }
}

TEST_CASE("duals closure and orbit size") {
    auto line = duals_closure_check(FactorAssignment::generic(1, {{{1}, 3}}));
    CHECK(line.closed);
    CHECK(line.orbit.size() == 2);
    CHECK(line.distinct_up_to_relabeling == 2);

    auto F = double_bundle();
    auto report = duals_closure_check(F);
    CHECK(report.closed);
    CHECK(report.failures.empty());
    CHECK(report.orbit.size() == 3);
    CHECK(report.distinct_up_to_relabeling == 3);
    CHECK(dual(dual(F, 1), 2) == dual(F, 2));

    std::mt19937 rng(5);
    for (std::size_t n = 1; n <= 4; ++n) {
        auto r = duals_closure_check(random_assignment(rng, n, 0, 3));
        CHECK(r.closed);
        CHECK(r.orbit.size() == n + 1);
    }
}

TEST_CASE("cotangent assignment and its sides") {
    auto E = FactorAssignment::generic(1, {{{1}, 2}});
    auto TE = cotangent_assignment(E);
    CHECK(TE.labels() == std::vector<int>{1, 2});
    CHECK(TE.factor({1, 0}) == Factor{"V1", false, 2});
    CHECK(TE.factor({0, 1}) == Factor{"V1", true, 2});
    CHECK(TE.factor({1, 1}) == Factor{"T*M", false, 1});

    std::mt19937 rng(17);
    for (std::size_t n = 1; n <= 3; ++n) {
        auto F = random_assignment(rng, n, 1, 3);
        auto T = cotangent_assignment(F);
        CHECK(T.size() == n + 1);
        CHECK(side_assignment(T, F.complement_label()) == F);
        for (int k : F.labels()) CHECK(side_assignment(T, k) == dual(F, k));
    }
}

TEST_CASE("homogeneous dimension") {
    auto F = double_bundle(2, 3, 5);
    CHECK(homogeneous_dimension(F, {0, 0}) == 1);
    CHECK(homogeneous_dimension(F, {1, 0}) == 2);
    CHECK(homogeneous_dimension(F, {0, 1}) == 3);
    CHECK(homogeneous_dimension(F, {1, 1}) == 2 * 3 + 5);
    CHECK_THROWS_AS(homogeneous_dimension(F, {2, 0}), ValidationError);

    std::mt19937 rng(23);
    for (std::size_t n = 1; n <= 3; ++n) {
        auto G = random_assignment(rng, n, 0, 2);
        auto chart = assignment_chart(G, ParityRule::graded);
        for (const MultiDegree& i : binary_degrees(n))
            CHECK(homogeneous_dimension(G, i) == count_fibre_monomials(chart, i));
    }
}

TEST_CASE("assignment charts") {
    auto chart = assignment_chart(double_bundle(1, 1, 2));
    CHECK(chart->size() == 5);
    CHECK(chart->name(0) == "x1");
    CHECK(chart->name(1) == "y10_1");
    CHECK(chart->name(4) == "y11_2");
    CHECK(chart->parity_rule() == ParityRule::even);
}

TEST_CASE("linear transitions compose like matrices") {
    auto chart = assignment_chart(FactorAssignment::generic(1, {{{1}, 2}}));
    auto y = [&](int a) { return std::size_t(a); };
    auto c = [&](int v) { return GradedPolynomial::constant(chart, v); };
    auto x = GradedPolynomial::generator(chart, "x1");
    // A = [[1, 2], [0, 1]], B = [[1, 0], [3, 1]]
    TransitionMap A(chart, chart, {{{x, {}}}, {{c(1), {y(1)}}, {c(2), {y(2)}}}, {{c(1), {y(2)}}}});
    TransitionMap B(chart, chart, {{{x, {}}}, {{c(1), {y(1)}}}, {{c(3), {y(1)}}, {c(1), {y(2)}}}});
    auto AB = compose_transitions(A, B);
    auto sub = AB.to_substitution();
    auto expected = [&](const char* text) { return poly(chart, text); };
    // image(t) for the composition: substitute A into B's expressions
    CHECK(sub.image(1) == expected("y1_1 + 2*y1_2"));
    CHECK(sub.image(2) == expected("3*y1_1 + 7*y1_2"));
    CHECK(determinant(linear_block(AB, {1}), chart) == c(1));
}

TEST_CASE("double bundle transitions with a coupling term keep their form") {
    auto chart = assignment_chart(double_bundle(1, 1, 1));
    auto x = GradedPolynomial::generator(chart, "x1");
    auto one = GradedPolynomial::constant(chart, 1);
    const std::size_t a = chart->index_of("y10_1"), b = chart->index_of("y01_1"),
                      c = chart->index_of("y11_1");
    TransitionMap A(chart, chart, {{{x, {}}}, {{one, {a}}}, {{one, {b}}}, {{one, {c}}, {x, {a, b}}}});
    auto AA = compose_transitions(A, A);
    CHECK(AA.terms()[c].size() == 2);
    CHECK(AA.to_substitution().image(c) == poly(chart, "y11_1 + 2*x1*y10_1*y01_1"));
    CHECK_NOTHROW(require_invertible(AA));
}

TEST_CASE("transition validation") {
    auto chart = assignment_chart(double_bundle(1, 1, 1));
    auto x = GradedPolynomial::generator(chart, "x1");
    auto one = GradedPolynomial::constant(chart, 1);
    auto zero = GradedPolynomial(chart);
    const std::size_t a = 1, b = 2, c = 3;
    // parts with the wrong total degree
    CHECK_THROWS_AS(TransitionMap(chart, chart, {{{x, {}}}, {{one, {a}}}, {{one, {b}}}, {{one, {a}}}}),
                    ValidationError);
    // coefficient involving a fibre coordinate
    CHECK_THROWS_AS(TransitionMap(chart, chart,
                                  {{{x, {}}}, {{GradedPolynomial::generator(chart, b), {a}}},
                                   {{one, {b}}}, {{one, {c}}}}),
                    ValidationError);
    // singular linear block
    TransitionMap singular(chart, chart, {{{x, {}}}, {{x - x, {a}}}, {{one, {b}}}, {{one, {c}}}});
    CHECK_THROWS_AS(require_invertible(singular), ValidationError);
    (void)zero;
}

TEST_CASE("determinant by Leibniz expansion") {
    auto chart = make_chart(1, {{"x", {0}}}, ParityRule::even);
    auto p = [&](const char* t) { return poly(chart, t); };
    CHECK(determinant({{p("x"), p("1")}, {p("1"), p("x")}}, chart) == p("x^2 - 1"));
    CHECK(determinant({{p("1"), p("2"), p("3")}, {p("0"), p("1"), p("4")}, {p("5"), p("6"), p("0")}},
                      chart) == p("1"));
}

TEST_CASE("cocycle check") {
    auto chart = assignment_chart(double_bundle(1, 2, 1));
    auto I = TransitionMap::identity(chart);
    CHECK(cocycle_check({I, I, I}));

    auto x = GradedPolynomial::generator(chart, "x1");
    auto one = GradedPolynomial::constant(chart, 1);
    const std::size_t a = chart->index_of("y10_1"), c = chart->index_of("y11_1");
    const std::size_t b1 = chart->index_of("y01_1"), b2 = chart->index_of("y01_2");
    TransitionMap A(chart, chart,
                    {{{x, {}}}, {{one, {a}}}, {{one, {b1}}}, {{one, {b2}}}, {{one, {c}}, {x, {a, b2}}}});
    TransitionMap Ainv(chart, chart,
                       {{{x, {}}}, {{one, {a}}}, {{one, {b1}}}, {{one, {b2}}}, {{one, {c}}, {-x, {a, b2}}}});
    CHECK(cocycle_check({A, Ainv, I}));
    CHECK_FALSE(cocycle_check({A, A, I}));
}

TEST_CASE("gradedize signs follow the listing order") {
    auto chart = assignment_chart(double_bundle(1, 1, 1));
    auto x = GradedPolynomial::generator(chart, "x1");
    auto one = GradedPolynomial::constant(chart, 1);
    const std::size_t a = 1, b = 2, c = 3;
    TransitionMap linear(chart, chart, {{{x, {}}}, {{one, {a}}}, {{one, {b}}}, {{one, {c}}}});
    auto graded = gradedize_transition(linear);
    CHECK(graded.from()->parity_rule() == ParityRule::graded);
    for (std::size_t t = 0; t < chart->size(); ++t)
        CHECK(graded.image(t) == GradedPolynomial::generator(graded.to(), t));

    TransitionMap ordered(chart, chart, {{{x, {}}}, {{one, {a}}}, {{one, {b}}}, {{x, {a, b}}}});
    TransitionMap reversed(chart, chart, {{{x, {}}}, {{one, {a}}}, {{one, {b}}}, {{x, {b, a}}}});
    CHECK(term_sign(ordered, ordered.terms()[c][0]) == 1);
    CHECK(term_sign(reversed, reversed.terms()[c][0]) == -1);
    auto g1 = gradedize_transition(ordered), g2 = gradedize_transition(reversed);
    CHECK(g1.image(c) == poly(g1.to(), "x1*y10_1*y01_1"));
    CHECK(g1 == g2);
}

TEST_CASE("graded cocycle on random transitions") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 2 + trial % 2;
        auto chart = assignment_chart(random_assignment(rng, n));
        auto A = random_transition(rng, chart);
        auto B = random_transition(rng, chart);
        CHECK_NOTHROW(require_invertible(A));
        auto lhs = gradedize_transition(compose_transitions(A, B));
        auto rhs = gradedize_transition(B).followed_by(gradedize_transition(A));
        CHECK(lhs == rhs);
    }
}

}  // TEST_SUITE
