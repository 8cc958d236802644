// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

// support.hpp pulls in doctest for its printers; no test registry here
#define DOCTEST_CONFIG_DISABLE

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include "higher_fixtures.hpp"
#include "oracles.hpp"
#include "random_transitions.hpp"
#include "support.hpp"

using namespace mg;
using namespace mg::testing;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && passed) detail = what;
        passed = passed && ok;
    }
};

int sign_of(int exponent) { return exponent % 2 ? -1 : 1; }
int parity(const GradedPolynomial& f) { return parity_of(f).value_or(0); }
int total_degree(const GradedPolynomial& f) { return multidegree_of(f)->total(); }

Outcome sign_cocycle() {
    Outcome out;
    std::size_t lists = 0;
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& parts : disjoint_part_lists(n)) {
            out.require(exchange_law_holds(parts), "exchange law fails for n = " + std::to_string(n));
            out.require(associativity_law_holds(parts), "associativity fails for n = " + std::to_string(n));
            ++lists;
        }
    out.detail = out.passed ? std::to_string(lists) + " part lists" : out.detail;
    return out;
}

std::vector<CotangentChart> poisson_charts() {
    return {
        cotangent_chart(make_chart(0, {{"x", {}}, {"y", {}}, {"z", {}}})),
        cotangent_chart(make_chart(1, {{"x", {0}}, {"xi", {1}}})),
        cotangent_chart(make_chart(1, {{"x", {0}}, {"xi", {1}}, {"eta", {1}}})),
        cotangent_chart(make_chart(2, {{"x", {0, 0}}, {"a", {1, 0}}, {"b", {0, 1}}})),
        cotangent_chart(make_chart(2, {{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}})),
        cotangent_chart(make_chart(1, {{"x", {0}}, {"y", {1}}}, ParityRule::even)),
    };
}

Outcome poisson_axioms() {
    Outcome out;
    std::mt19937 rng(2);
    const auto charts = poisson_charts();
    for (const auto& cot : charts) {
        const ChartPtr& c = cot.chart;
        for (std::size_t j = 0; j < cot.base->size(); ++j)
            for (std::size_t k = 0; k < cot.base->size(); ++k)
                out.require(canonical_poisson(GradedPolynomial::generator(c, cot.momentum(j)),
                                              GradedPolynomial::generator(c, k), cot) ==
                                GradedPolynomial::constant(c, j == k ? 1 : 0),
                            "{p_j, x^k} != delta");
    }
    for (int trial = 0; trial < 200; ++trial) {
        const CotangentChart& cot = charts[trial % charts.size()];
        const int e = bracket_parity(cot);
        const MultiDegree shift = MultiDegree::ones(cot.chart->gradings());
        auto a = random_homogeneous(rng, cot.chart), b = random_homogeneous(rng, cot.chart),
             c = random_homogeneous(rng, cot.chart);
        const int pa = parity(a) + e, pb = parity(b) + e;
        auto ab = canonical_poisson(a, b, cot);
        out.require(ab == Rational(-sign_of(pa * pb)) * canonical_poisson(b, a, cot), "antisymmetry");
        out.require(canonical_poisson(a, b * c, cot) ==
                        ab * c + Rational(sign_of(pa * parity(b))) * (b * canonical_poisson(a, c, cot)),
                    "Leibniz rule");
        out.require(canonical_poisson(ab, c, cot) ==
                        canonical_poisson(a, canonical_poisson(b, c, cot), cot) -
                            Rational(sign_of(pa * pb)) * canonical_poisson(b, canonical_poisson(a, c, cot), cot),
                    "Jacobi identity");
        if (!ab.is_zero())
            out.require(*multidegree_of(ab) == *multidegree_of(a) + *multidegree_of(b) - shift, "bracket degree");
    }
    if (out.passed) out.detail = "200 triples on " + std::to_string(charts.size()) + " charts";
    return out;
}

Outcome schouten() {
    Outcome out;
    std::mt19937 rng(3);
    std::optional<int> sign;
    for (int trial = 0; trial < 20; ++trial) {
        auto base = flat_base(1 + trial % 3);
        auto cot = cotangent_chart(base);
        auto X = random_field(rng, base, 2, 2), Y = random_field(rng, base, 2, 2);
        auto lhs = canonical_poisson(linear_function(X, cot), linear_function(Y, cot), cot);
        auto rhs = linear_function(super_bracket(X, Y), cot);
        if (rhs.is_zero()) {
            out.require(lhs.is_zero(), "bracket of commuting fields is nonzero");
            continue;
        }
        if (!sign) sign = lhs == rhs ? 1 : -1;
        out.require(lhs == Rational(*sign) * rhs, "trial " + std::to_string(trial) + " disagrees");
    }
    out.require(sign.has_value(), "no noncommuting pair drawn");
    if (out.passed) out.detail = "20 field pairs, global sign " + std::to_string(*sign);
    return out;
}

Outcome legendre() {
    Outcome out;
    std::vector<ChartPtr> bases{
        make_chart(1, {{"x", {0}}, {"y", {1}}}, ParityRule::even),
        make_chart(1, {{"x", {0}}, {"y", {1}}, {"z", {1}}}),
        make_chart(2, {{"x", {0, 0}}, {"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}}),
        make_chart(2, {{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}}, ParityRule::even),
        make_chart(2, {{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}, {"d", {1, 1}}}),
    };
    int maps = 0;
    for (const ChartPtr& base : bases) {
        auto cot = cotangent_chart(base);
        const GradedChart& N = *cot.chart;
        auto source = euler_fields(cot.chart);
        for (int label : base->labels()) {
            auto first = legendre_map(cot, label);
            out.require(is_symplectomorphism(first.pullback, cot, first.side), "not a symplectomorphism");
            auto target = euler_fields(first.side.chart);
            for (std::size_t k = 0; k < source.size(); ++k)
                out.require(relates_fields(first.pullback, source[k], target[k]), "Euler pair not related");
            auto second = legendre_map(first.side, cot.momentum_label);
            auto twice = second.pullback.followed_by(first.pullback);
            const std::size_t slot = *N.label_position(label);
            for (std::size_t u = 0; u < second.side.chart->size(); ++u) {
                const std::size_t v = N.index_of(second.side.chart->name(u));
                GradedPolynomial expected = GradedPolynomial::generator(cot.chart, v);
                const std::size_t coordinate = cot.is_momentum[v] ? cot.partner[v] : v;
                if (N.degree(coordinate)[slot] == 1 && N.parity(v) * N.parity(cot.partner[v]) == 0)
                    expected = -expected;
                out.require(twice.image(u) == expected, "double application is not the sign map");
            }
            ++maps;
        }
    }
    if (out.passed) out.detail = std::to_string(maps) + " maps";
    return out;
}

Outcome duality() {
    Outcome out;
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const auto indices = binary_degrees(n);
        std::vector<int> values(40);
        std::iota(values.begin(), values.end(), 1);
        std::shuffle(values.begin(), values.end(), rng);
        std::map<MultiDegree, int> dims;
        std::size_t next = 0;
        for (const auto& i : indices)
            if (!i.is_zero()) dims[i] = values[next++];
        auto r = duals_closure_check(FactorAssignment::generic(n, dims, values[next]));
        out.require(r.closed, "closure fails at n = " + std::to_string(n));
        out.require(r.orbit.size() == n + 1 && r.distinct_up_to_relabeling == n + 1,
                    "orbit size differs from n+1 at n = " + std::to_string(n));
    }
    if (out.passed) out.detail = "50 dimension vectors, n <= 4";
    return out;
}

Outcome graded_cocycle() {
    Outcome out;
    std::mt19937 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 2;
        auto chart = assignment_chart(random_assignment(rng, n));
        auto A = random_transition(rng, chart), B = random_transition(rng, chart);
        out.require(gradedize_transition(compose_transitions(A, B)) ==
                        gradedize_transition(B).followed_by(gradedize_transition(A)),
                    "trial " + std::to_string(trial));
    }
    if (out.passed) out.detail = "50 transition pairs, n = 2,3";
    return out;
}

Outcome algebroids() {
    Outcome out;
    std::mt19937 rng(7);
    int valid = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto data = random_algebroid(rng);
        const bool oracle = algebroid_axioms_hold(data);
        out.require(master_equation(algebroid_hamiltonian(data)).holds == oracle,
                    "master equation disagrees with the axioms, trial " + std::to_string(trial));
        valid += oracle;
    }
    out.require(master_equation(algebroid_hamiltonian(so3())).holds, "so(3) fails");
    auto bad = master_equation(algebroid_hamiltonian(non_jacobi()));
    out.require(!bad.holds && !bad.residual.is_zero(), "non-Jacobi tensor passes");
    if (out.passed) out.detail = "100 instances, " + std::to_string(valid) + " algebroids";
    return out;
}

Outcome bialgebroid_and_drinfeld() {
    Outcome out;
    auto f = double_fixture(2);
    for (const char* l : {"1", "-3", "1/2"}) {
        auto H12 = bivector_hamiltonian(f, planar_bivector(f.base, l));
        out.require(bialgebroid_check({f.cot, f.de_rham}, {f.cot, H12}).holds,
                    std::string("bialgebroid fails for lambda = ") + l);
    }
    auto t = triple_fixture();
    out.require(drinfeld_check(t.iota_q).passed, "iota_q is not a Drinfeld structure");
    auto report = drinfeld_check({t.iota_q.chart, t.iota_q.H + t.lambda_part});
    out.require(report.passed && report.parts.size() == 3, "triple Hamiltonian fails");
    if (out.passed) out.detail = "3 bivectors, triple with 3 parts";
    return out;
}

Outcome counterexample() {
    Outcome out;
    auto fx = counterexample_fixture();
    auto r = compatibility_check(fx.cot, fx.fields);
    out.require(r.masters.size() == 6, "expected six side master equations");
    for (const auto& [rk, m] : r.masters) out.require(m.holds, "a side master equation fails");
    for (const auto& [ks, p] : r.pairs) out.require(p.holds, "a pairwise bialgebroid check fails");
    out.require(!r.passed, "compatibility passes");
    out.require(r.conflicts.size() == 1 && r.conflicts[0].structure == 3, "no Q3 conflict reported");
    if (out.passed) {
        const auto& c = r.conflicts[0];
        out.detail = "Q3 lifts from sides " + std::to_string(c.first_side) + "," + std::to_string(c.second_side) +
                     ": " + render(c.first_lift) + " vs " + render(c.second_lift);
    }
    return out;
}

Outcome prolongation() {
    Outcome out;
    auto check = [&](const GradedVectorField& Q, const std::string& name) {
        auto P = tangent_prolongation(Q);
        auto r = nfold_check(P);
        const std::size_t n = Q.chart()->gradings();
        out.require(r.passed && P.chart()->gradings() == n + 1 && r.components.size() == n + 1,
                    name + " prolongation fails");
    };
    check(de_rham_field(tangent_chart(flat_base(1))), "de Rham on R");
    check(de_rham_field(tangent_chart(flat_base(2))), "de Rham on R^2");
    auto data = so3();
    check(algebroid_field(data, algebroid_chart(data)), "so(3)");
    if (out.passed) out.detail = "de Rham (R, R^2) and so(3)";
    return out;
}

Outcome derived_brackets() {
    Outcome out;
    auto f = double_fixture(2);
    std::mt19937 rng(11);
    HamiltonianStructure d{f.cot, f.de_rham};
    auto affine = [&] {
        std::vector<GradedPolynomial> v;
        for (int a = 0; a < 2; ++a) v.push_back(random_affine(rng, f.base, 3));
        return v;
    };
    for (int trial = 0; trial < 20; ++trial) {
        auto X = affine(), alpha = affine(), Y = affine(), beta = affine();
        auto [field, form] = dorfman(X, alpha, Y, beta);
        out.require(derived_bracket(d, encode_section(f, X, alpha), encode_section(f, Y, beta)) ==
                        encode_section(f, field, form),
                    "Dorfman pair " + std::to_string(trial));
    }
    HamiltonianStructure H{f.cot, f.de_rham + bivector_hamiltonian(f, planar_bivector(f.base, "x1 + 2"))};
    out.require(master_equation(H).holds, "H is not homological");
    int checked = 0;
    for (int attempt = 0; checked < 50 && attempt < 500; ++attempt) {
        auto X = random_homogeneous(rng, f.cot.chart, 2, 3), Y = random_homogeneous(rng, f.cot.chart, 2, 3),
             Z = random_homogeneous(rng, f.cot.chart, 2, 3);
        if (X.is_zero() || Y.is_zero() || Z.is_zero()) continue;
        auto b = [&](const GradedPolynomial& u, const GradedPolynomial& v) { return derived_bracket(H, u, v); };
        const int s = sign_of((total_degree(X) + 1) * (total_degree(Y) + 1));
        out.require(b(X, b(Y, Z)) == b(b(X, Y), Z) + Rational(s) * b(Y, b(X, Z)), "Loday identity");
        ++checked;
    }
    out.require(checked == 50, "too few nonzero triples");
    if (out.passed) out.detail = "20 Dorfman pairs, 50 Loday triples";
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"sign cocycle", sign_cocycle},
        {"graded Poisson axioms", poisson_axioms},
        {"Schouten oracle", schouten},
        {"Legendre maps", legendre},
        {"duality closure", duality},
        {"graded cocycle", graded_cocycle},
        {"algebroid equivalence", algebroids},
        {"bialgebroid and Drinfeld fixtures", bialgebroid_and_drinfeld},
        {"compatibility counterexample", counterexample},
        {"tangent prolongation", prolongation},
        {"derived bracket", derived_brackets},
    };
    int failures = 0, number = 0;
    for (const auto& [name, run] : criteria) {
        ++number;
        const auto start = std::chrono::steady_clock::now();
        Outcome result;
        try {
            result = run();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2d %s: %s (%.2fs)\n", result.passed ? "PASS" : "FAIL", number, name,
                    result.detail.c_str(), seconds);
        failures += !result.passed;
    }
    return failures ? 1 : 0;
}
