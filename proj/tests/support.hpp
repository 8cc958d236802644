#pragma once

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "multigraded/expression.hpp"
#include "multigraded/lifts.hpp"

namespace mg::testing {

inline GradedPolynomial poly(const ChartPtr& chart, const std::string& text) {
    return parse_polynomial(text, chart);
}

inline GradedVectorField field(const ChartPtr& chart,
                               std::initializer_list<std::pair<const char*, const char*>> terms) {
    GradedVectorField X(chart);
    for (const auto& [name, text] : terms)
        X.set_component(chart->index_of(name), X.component(chart->index_of(name)) + poly(chart, text));
    return X;
}

/// Random monomial with small exponents on even generators.
inline Exponents random_monomial(std::mt19937& rng, const GradedChart& chart, int max_factors) {
    Exponents e(chart.size(), 0);
    std::uniform_int_distribution<std::size_t> pick(0, chart.size() - 1);
    std::uniform_int_distribution<int> count(0, max_factors);
    for (int k = count(rng); k > 0; --k) {
        const std::size_t i = pick(rng);
        if (chart.is_odd(i))
            e[i] = 1;
        else if (e[i] < 2)
            ++e[i];
    }
    return e;
}

inline Rational random_coefficient(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    int n = num(rng);
    if (n == 0) n = 1;
    Rational q(n, den(rng));
    q.canonicalize();
    return q;
}

inline GradedPolynomial random_polynomial(std::mt19937& rng, const ChartPtr& chart, int terms = 3,
                                          int max_factors = 3) {
    GradedPolynomial f(chart);
    for (int t = 0; t < terms; ++t)
        f.add_term(random_monomial(rng, *chart, max_factors), random_coefficient(rng));
    return f;
}

/// Random polynomial all of whose terms have degree `degree`; zero if no
/// monomial of that degree turns up.
inline GradedPolynomial random_homogeneous(std::mt19937& rng, const ChartPtr& chart,
                                           const MultiDegree& degree, int terms = 3,
                                           int max_factors = 4, int attempts = 200) {
    GradedPolynomial f(chart);
    for (int a = 0; a < attempts && static_cast<int>(f.size()) < terms; ++a) {
        Exponents e = random_monomial(rng, *chart, max_factors);
        if (monomial_degree(*chart, e) == degree) f.add_term(e, random_coefficient(rng));
    }
    return f;
}

/// Random polynomial homogeneous of the degree of a randomly drawn monomial.
inline GradedPolynomial random_homogeneous(std::mt19937& rng, const ChartPtr& chart, int terms = 3,
                                           int max_factors = 3) {
    Exponents seed = random_monomial(rng, *chart, max_factors);
    GradedPolynomial f(chart);
    f.add_term(seed, random_coefficient(rng));
    return f + random_homogeneous(rng, chart, monomial_degree(*chart, seed), terms - 1,
                                  max_factors + 1);
}

inline GradedVectorField random_field(std::mt19937& rng, const ChartPtr& chart, int terms = 2,
                                      int max_factors = 2) {
    GradedVectorField X(chart);
    for (std::size_t j = 0; j < chart->size(); ++j)
        X.set_component(j, random_polynomial(rng, chart, terms, max_factors));
    return X;
}

/// Random field of one parity.
inline GradedVectorField random_field_of_parity(std::mt19937& rng, const ChartPtr& chart,
                                                int parity, int terms = 2, int max_factors = 2) {
    return split_by_parity(random_field(rng, chart, terms, max_factors))[parity];
}

}  // namespace mg::testing

namespace doctest {
template <>
struct StringMaker<mg::GradedPolynomial> {
    static String convert(const mg::GradedPolynomial& f) { return mg::render(f).c_str(); }
};
template <>
struct StringMaker<mg::GradedVectorField> {
    static String convert(const mg::GradedVectorField& X) { return mg::render(X).c_str(); }
};
}  // namespace doctest
