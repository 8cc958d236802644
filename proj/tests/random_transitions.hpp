#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "multigraded/nvb.hpp"

namespace mg::testing {

/// Set partitions of the support of a binary degree into nonzero blocks.
inline std::vector<std::vector<MultiDegree>> set_partitions(const MultiDegree& i) {
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < i.size(); ++k)
        if (i[k] == 1) support.push_back(k);
    std::vector<std::vector<MultiDegree>> out;
    std::vector<MultiDegree> blocks;
    auto place = [&](auto&& self, std::size_t at) -> void {
        if (at == support.size()) {
            out.push_back(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b][support[at]] = 1;
            self(self, at + 1);
            blocks[b][support[at]] = 0;
        }
        MultiDegree fresh(i.size());
        fresh[support[at]] = 1;
        blocks.push_back(fresh);
        self(self, at + 1);
        blocks.pop_back();
    };
    if (!support.empty()) place(place, 0);
    return out;
}

/// Small base polynomial of degree <= 1 with integer coefficients.
inline GradedPolynomial random_base_polynomial(std::mt19937& rng, const ChartPtr& chart,
                                               int constant) {
    std::uniform_int_distribution<int> coefficient(-2, 2);
    GradedPolynomial f = GradedPolynomial::constant(chart, constant);
    for (std::size_t g = 0; g < chart->size(); ++g)
        if (chart->degree(g).is_zero())
            f += GradedPolynomial::generator(chart, g) * Rational(coefficient(rng));
    return f;
}

/// A chart change on `chart` (even parity rule) whose linear blocks are
/// unipotent plus base-dependent corrections, with polynomial couplings
/// for every set partition into at least two blocks. Parts of coupling
/// terms are listed in random order.
inline TransitionMap random_transition(std::mt19937& rng, const ChartPtr& chart) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<std::vector<TransitionTerm>> terms(chart->size());
    auto of_degree = [&](const MultiDegree& d) {
        std::vector<std::size_t> out;
        for (std::size_t g = 0; g < chart->size(); ++g)
            if (chart->degree(g) == d) out.push_back(g);
        return out;
    };
    for (std::size_t t = 0; t < chart->size(); ++t) {
        const MultiDegree& degree = chart->degree(t);
        if (degree.is_zero()) {
            GradedPolynomial image = GradedPolynomial::generator(chart, t);
            image += random_base_polynomial(rng, chart, 0) * Rational(coin(rng));
            terms[t].push_back({image, {}});
            continue;
        }
        for (std::size_t s : of_degree(degree)) {
            if (s < t) continue;  // upper triangular, so the block stays invertible
            GradedPolynomial c = s == t ? GradedPolynomial::constant(chart, 1)
                                        : random_base_polynomial(rng, chart, 0);
            if (!c.is_zero()) terms[t].push_back({c, {s}});
        }
        for (const auto& blocks : set_partitions(degree)) {
            if (blocks.size() < 2) continue;
            std::vector<std::size_t> parts;
            for (const MultiDegree& b : blocks) {
                auto candidates = of_degree(b);
                if (candidates.empty()) {
                    parts.clear();
                    break;
                }
                parts.push_back(candidates[std::uniform_int_distribution<std::size_t>(
                    0, candidates.size() - 1)(rng)]);
            }
            if (parts.empty()) continue;
            std::shuffle(parts.begin(), parts.end(), rng);
            GradedPolynomial c = random_base_polynomial(rng, chart, 1 + coin(rng));
            if (!c.is_zero()) terms[t].push_back({c, parts});
        }
    }
    return TransitionMap(chart, chart, std::move(terms));
}

/// Generic assignment over 1..n with random fibre dimensions in [1, 2].
inline FactorAssignment random_assignment(std::mt19937& rng, std::size_t n, int low = 1,
                                          int high = 2) {
    std::uniform_int_distribution<int> dim(low, high);
    std::map<MultiDegree, int> dims;
    for (const MultiDegree& i : binary_degrees(n))
        if (!i.is_zero()) dims[i] = dim(rng);
    return FactorAssignment::generic(n, dims, std::uniform_int_distribution<int>(1, 2)(rng));
}

}  // namespace mg::testing
