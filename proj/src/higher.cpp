#include "multigraded/higher.hpp"

#include <sstream>

#include "multigraded/error.hpp"
#include "multigraded/expression.hpp"

namespace mg {

namespace {

std::optional<int> label_of_unit(const MultiDegree& w, const std::vector<int>& labels) {
    int position = -1;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] == 0) continue;
        if (w[k] != 1 || position >= 0) return std::nullopt;
        position = static_cast<int>(k);
    }
    if (position < 0) return std::nullopt;
    return labels[static_cast<std::size_t>(position)];
}

GradedPolynomial zero_on(const ChartPtr& chart) { return GradedPolynomial(chart); }

}  // namespace

AlgebroidData AlgebroidData::zero(ChartPtr base, std::size_t rank) {
    AlgebroidData data;
    data.rank = rank;
    data.anchor.assign(rank, std::vector<GradedPolynomial>(base->size(), zero_on(base)));
    data.structure.assign(rank, std::vector<std::vector<GradedPolynomial>>(
                                    rank, std::vector<GradedPolynomial>(rank, zero_on(base))));
    data.base = std::move(base);
    return data;
}

void validate(const AlgebroidData& data) {
    if (!data.base) throw ValidationError("algebroid data without a base chart");
    for (std::size_t a = 0; a < data.base->size(); ++a)
        if (!data.base->degree(a).is_zero())
            throw ValidationError("algebroid base coordinate " + data.base->name(a) +
                                  " must have degree 0");
    if (data.anchor.size() != data.rank)
        throw ValidationError("anchor needs one row per basis section");
    for (const auto& row : data.anchor) {
        if (row.size() != data.base->size())
            throw ValidationError("anchor row needs one entry per base coordinate");
        for (const auto& f : row) require_same_chart(f.chart(), data.base, "anchor coefficient");
    }
    if (data.structure.size() != data.rank)
        throw ValidationError("structure functions need rank^3 entries");
    for (std::size_t u = 0; u < data.rank; ++u) {
        if (data.structure[u].size() != data.rank)
            throw ValidationError("structure functions need rank^3 entries");
        for (std::size_t r = 0; r < data.rank; ++r) {
            if (data.structure[u][r].size() != data.rank)
                throw ValidationError("structure functions need rank^3 entries");
            for (std::size_t s = 0; s < data.rank; ++s) {
                const auto& c = data.structure[u][r][s];
                require_same_chart(c.chart(), data.base, "structure function");
                if (c != -data.structure[u][s][r])
                    throw ValidationError("structure functions C^" + std::to_string(u + 1) + "_" +
                                          std::to_string(r + 1) + std::to_string(s + 1) +
                                          " are not antisymmetric");
            }
        }
    }
}

AlgebroidData poisson_algebroid(const ChartPtr& base,
                                const std::vector<std::vector<GradedPolynomial>>& lambda) {
    const std::size_t m = base->size();
    if (lambda.size() != m) throw ValidationError("bivector needs one row per base coordinate");
    AlgebroidData data = AlgebroidData::zero(base, m);
    for (std::size_t r = 0; r < m; ++r) {
        if (lambda[r].size() != m)
            throw ValidationError("bivector needs one column per base coordinate");
        for (std::size_t s = 0; s < m; ++s) {
            if (lambda[r][s] != -lambda[s][r]) throw ValidationError("bivector is not antisymmetric");
            data.anchor[r][s] = lambda[r][s];
            for (std::size_t u = 0; u < m; ++u) data.structure[u][r][s] = left_partial(lambda[r][s], u);
        }
    }
    return data;
}

AlgebroidData lie_algebra(std::size_t rank,
                          const std::vector<std::vector<std::vector<Rational>>>& structure) {
    AlgebroidData data = AlgebroidData::zero(make_chart(0, {}), rank);
    if (structure.size() != rank) throw ValidationError("structure constants need rank^3 entries");
    for (std::size_t u = 0; u < rank; ++u) {
        if (structure[u].size() != rank) throw ValidationError("structure constants need rank^3 entries");
        for (std::size_t r = 0; r < rank; ++r) {
            if (structure[u][r].size() != rank)
                throw ValidationError("structure constants need rank^3 entries");
            for (std::size_t s = 0; s < rank; ++s)
                data.structure[u][r][s] = GradedPolynomial::constant(data.base, structure[u][r][s]);
        }
    }
    validate(data);
    return data;
}

HamiltonianStructure algebroid_hamiltonian(const AlgebroidData& data,
                                           std::vector<std::string> dual_names) {
    validate(data);
    if (dual_names.empty())
        for (std::size_t u = 0; u < data.rank; ++u) dual_names.push_back("th" + std::to_string(u + 1));
    if (dual_names.size() != data.rank) throw ValidationError("one dual name per basis section");
    std::vector<GeneratorSpec> gens;
    for (std::size_t a = 0; a < data.base->size(); ++a) gens.push_back({data.base->name(a), {0}});
    for (const auto& name : dual_names) gens.push_back({name, {1}});
    CotangentChart cot = cotangent_chart(make_chart(1, std::move(gens)));
    const ChartPtr& N = cot.chart;
    const std::size_t m = data.base->size();
    auto gen = [&](std::size_t i) { return GradedPolynomial::generator(N, i); };
    auto xi = [&](std::size_t r) { return gen(cot.momentum(m + r)); };

    GradedPolynomial H(N);
    for (std::size_t r = 0; r < data.rank; ++r)
        for (std::size_t a = 0; a < m; ++a)
            if (!data.anchor[r][a].is_zero())
                H += transfer(data.anchor[r][a], N) * xi(r) * gen(cot.momentum(a));
    GradedPolynomial cubic(N);
    for (std::size_t u = 0; u < data.rank; ++u)
        for (std::size_t r = 0; r < data.rank; ++r)
            for (std::size_t s = 0; s < data.rank; ++s)
                if (!data.structure[u][r][s].is_zero())
                    cubic += transfer(data.structure[u][r][s], N) * gen(m + u) * xi(r) * xi(s);
    H -= cubic * Rational(1, 2);
    return {std::move(cot), std::move(H)};
}

ChartPtr algebroid_chart(const AlgebroidData& data, std::vector<std::string> names) {
    validate(data);
    if (names.empty())
        for (std::size_t r = 0; r < data.rank; ++r) names.push_back("xi" + std::to_string(r + 1));
    if (names.size() != data.rank) throw ValidationError("one fibre name per basis section");
    std::vector<GeneratorSpec> gens;
    for (std::size_t a = 0; a < data.base->size(); ++a) gens.push_back({data.base->name(a), {0}});
    for (const auto& name : names) gens.push_back({name, {1}});
    return make_chart(1, std::move(gens));
}

GradedVectorField algebroid_field(const AlgebroidData& data, const ChartPtr& chart) {
    validate(data);
    const std::size_t m = data.base->size();
    if (chart->size() != m + data.rank) throw ValidationError("algebroid_field: chart has the wrong size");
    auto xi = [&](std::size_t r) { return GradedPolynomial::generator(chart, m + r); };
    GradedVectorField Q(chart);
    for (std::size_t a = 0; a < m; ++a) {
        GradedPolynomial c(chart);
        for (std::size_t r = 0; r < data.rank; ++r)
            if (!data.anchor[r][a].is_zero()) c += transfer(data.anchor[r][a], chart) * xi(r);
        Q.set_component(a, c);
    }
    for (std::size_t u = 0; u < data.rank; ++u) {
        GradedPolynomial c(chart);
        for (std::size_t r = 0; r < data.rank; ++r)
            for (std::size_t s = 0; s < data.rank; ++s)
                if (!data.structure[u][r][s].is_zero())
                    c += transfer(data.structure[u][r][s], chart) * xi(r) * xi(s);
        Q.set_component(m + u, c * Rational(-1, 2));
    }
    return Q;
}

MasterReport master_equation(const HamiltonianStructure& H) {
    require_same_chart(H.H.chart(), H.chart.chart, "master_equation");
    if (H.H.is_zero()) return {true, GradedPolynomial(H.chart.chart)};
    const auto parity = parity_of(H.H);
    if (!parity) throw ValidationError("master_equation: Hamiltonian has mixed parity");
    if ((*parity + bracket_parity(H.chart)) % 2 != 1)
        throw ValidationError("master_equation: Hamiltonian parity " + std::to_string(*parity) +
                              " is not homological for a bracket of parity " +
                              std::to_string(bracket_parity(H.chart)));
    MasterReport report{false, canonical_poisson(H.H, H.H, H.chart)};
    report.holds = report.residual.is_zero();
    return report;
}

BialgebroidReport bialgebroid_check(const HamiltonianStructure& H1, const HamiltonianStructure& H2) {
    require_same_chart(H1.chart.chart, H2.chart.chart, "bialgebroid_check");
    BialgebroidReport report{false, master_equation(H1), master_equation(H2),
                             canonical_poisson(H1.H, H2.H, H1.chart), multidegree_of(H1.H),
                             multidegree_of(H2.H)};
    report.holds = report.first.holds && report.second.holds && report.commutator.is_zero();
    return report;
}

GradedPolynomial derived_bracket(const HamiltonianStructure& H, const GradedPolynomial& X,
                                 const GradedPolynomial& Y) {
    require_same_chart(X.chart(), H.chart.chart, "derived_bracket");
    require_same_chart(Y.chart(), H.chart.chart, "derived_bracket");
    return canonical_poisson(canonical_poisson(X, H.H, H.chart), Y, H.chart);
}

NfoldReport nfold_check(const GradedVectorField& Q) {
    const ChartPtr& chart = Q.chart();
    const std::vector<int>& labels = chart->labels();
    NfoldReport report;
    for (int label : labels) report.components.emplace(label, GradedVectorField(chart));
    for (auto& [weight, part] : weight_components(Q)) {
        if (auto label = label_of_unit(weight, labels))
            report.components.at(*label) += part;
        else
            report.foreign_weights.push_back(weight);
    }
    report.unital = report.foreign_weights.empty();

    std::vector<std::pair<int, int>> pairs;
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = a; b < labels.size(); ++b) pairs.emplace_back(labels[a], labels[b]);
    std::vector<GradedVectorField> brackets(pairs.size(), GradedVectorField(chart));
#ifdef MULTIGRADED_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t p = 0; p < pairs.size(); ++p)
        brackets[p] = super_bracket(report.components.at(pairs[p].first),
                                    report.components.at(pairs[p].second));
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (!brackets[p].is_zero())
            report.failures.push_back({pairs[p].first, pairs[p].second, std::move(brackets[p])});
    report.passed = report.unital && report.failures.empty();
    return report;
}

DrinfeldReport drinfeld_check(const HamiltonianStructure& H) {
    require_same_chart(H.H.chart(), H.chart.chart, "drinfeld_check");
    const ChartPtr& N = H.chart.chart;
    const std::size_t n = N->gradings();
    const MultiDegree top = MultiDegree::ones(n);
    DrinfeldReport report{false, true, std::nullopt, {false, GradedPolynomial(N)}, {}, {}, {}};
    for (auto& [degree, part] : split_by_degree(H.H)) {
        if (degree.total() != static_cast<int>(n) + 1) {
            report.degree_ok = false;
            if (!report.total_degree_mismatch) report.total_degree_mismatch = degree;
        }
        const MultiDegree weight = degree - top;
        if (auto label = label_of_unit(weight, N->labels())) {
            auto [it, fresh] = report.parts.try_emplace(*label, part);
            if (!fresh) it->second += part;
        } else {
            report.quasi_weights.push_back(weight);
        }
    }
    try {
        report.master = master_equation(H);
    } catch (const ValidationError&) {
        report.master = {false, canonical_poisson(H.H, H.H, H.chart)};
    }
    report.field = nfold_check(hamiltonian_field(H.H, H.chart));
    report.passed = report.degree_ok && report.master.holds && report.field.passed &&
                    report.quasi_weights.empty();
    return report;
}

namespace {

std::string summarize(const NfoldReport& report) {
    std::ostringstream out;
    if (!report.unital) {
        out << "weights outside the unit degrees:";
        for (const auto& w : report.foreign_weights) out << " " << w.str();
    }
    for (const auto& f : report.failures)
        out << (out.tellp() > 0 ? "; " : "") << "[Q" << f.first << ", Q" << f.second
            << "] = " << render(f.bracket);
    return out.str();
}

}  // namespace

HamiltonianStructure drinfeld_from_nfold(const GradedVectorField& Q,
                                         std::vector<std::string> momentum_names) {
    const NfoldReport report = nfold_check(Q);
    if (!report.passed) throw ValidationError("not an n-fold algebroid field: " + summarize(report));
    CotangentChart cot = cotangent_chart(Q.chart(), std::move(momentum_names));
    GradedPolynomial H = linear_function(Q, cot);
    return {std::move(cot), std::move(H)};
}

GradedVectorField tangent_prolongation(const GradedVectorField& Q, const TangentChart& tan) {
    require_same_chart(Q.chart(), tan.base, "tangent_prolongation");
    const NfoldReport report = nfold_check(Q);
    if (!report.passed) throw ValidationError("not an n-fold algebroid field: " + summarize(report));
    return tangent_lift(Q, tan) + de_rham_field(tan);
}

GradedVectorField tangent_prolongation(const GradedVectorField& Q) {
    return tangent_prolongation(Q, tangent_chart(Q.chart()));
}

std::map<int, ChartPtr> side_charts(const CotangentChart& cot) {
    std::map<int, ChartPtr> sides;
    for (int label : cot.chart->labels()) sides.emplace(label, legendre_map(cot, label).side.base);
    return sides;
}

namespace {

/// Inverse of a substitution sending each generator to a nonzero multiple of
/// a generator.
Substitution invert_monomial_substitution(const Substitution& s) {
    const ChartPtr& from = s.from();
    const ChartPtr& to = s.to();
    std::vector<GradedPolynomial> images(to->size(), GradedPolynomial(from));
    std::vector<bool> seen(to->size(), false);
    for (std::size_t t = 0; t < from->size(); ++t) {
        const auto& image = s.image(t);
        if (image.size() != 1) throw ValidationError("substitution is not a signed relabeling");
        const auto& [e, c] = *image.terms().begin();
        std::size_t hit = to->size();
        for (std::size_t g = 0; g < e.size(); ++g) {
            if (e[g] == 0) continue;
            if (e[g] != 1 || hit != to->size())
                throw ValidationError("substitution is not a signed relabeling");
            hit = g;
        }
        if (hit == to->size() || seen[hit]) throw ValidationError("substitution is not a signed relabeling");
        seen[hit] = true;
        images[hit] = GradedPolynomial::generator(from, t) * Rational(1 / c);
    }
    return Substitution(to, from, std::move(images));
}

}  // namespace

std::map<std::pair<int, int>, GradedVectorField> side_fields(const HamiltonianStructure& H) {
    std::map<std::pair<int, int>, GradedVectorField> fields;
    const auto parts = drinfeld_check(H).parts;
    for (int k : H.chart.chart->labels()) {
        const LegendreMap lm = legendre_map(H.chart, k);
        const Substitution back = invert_monomial_substitution(lm.pullback);
        for (int r : H.chart.chart->labels()) {
            if (r == k) continue;
            auto it = parts.find(r);
            if (it == parts.end()) {
                fields.emplace(std::make_pair(r, k), GradedVectorField(lm.side.base));
                continue;
            }
            fields.emplace(std::make_pair(r, k), field_of_linear(back.apply(it->second), lm.side));
        }
    }
    return fields;
}

CompatibilityReport compatibility_check(const CotangentChart& cot,
                                        const std::map<std::pair<int, int>, GradedVectorField>& fields) {
    const std::vector<int>& labels = cot.chart->labels();
    std::map<int, LegendreMap> sides;
    for (int k : labels) sides.emplace(k, legendre_map(cot, k));
    for (const auto& [key, q] : fields) {
        const auto [r, k] = key;
        if (!sides.count(r) || !sides.count(k) || r == k)
            throw ValidationError("compatibility field q^" + std::to_string(r) + "_[" +
                                  std::to_string(k) + "] has invalid indices");
        require_same_chart(q.chart(), sides.at(k).side.base, "compatibility field");
    }
    auto field_at = [&](int r, int k) {
        auto it = fields.find({r, k});
        return it == fields.end() ? GradedVectorField(sides.at(k).side.base) : it->second;
    };

    CompatibilityReport report;
    std::map<std::pair<int, int>, GradedPolynomial> lifts;
    for (int r : labels) {
        for (int k : labels) {
            if (r == k) continue;
            const LegendreMap& lm = sides.at(k);
            GradedPolynomial lift = lm.pullback.apply(linear_function(field_at(r, k), lm.side));
            report.masters.emplace(std::make_pair(r, k), master_equation({cot, lift}));
            lifts.emplace(std::make_pair(r, k), std::move(lift));
        }
    }
    for (std::size_t a = 0; a < labels.size(); ++a) {
        for (std::size_t b = a + 1; b < labels.size(); ++b) {
            const int k = labels[a], s = labels[b];
            report.pairs.emplace(std::make_pair(k, s),
                                 bialgebroid_check({cot, lifts.at({k, s})}, {cot, lifts.at({s, k})}));
        }
    }
    for (std::size_t a = 0; a < labels.size(); ++a) {
        for (std::size_t b = a + 1; b < labels.size(); ++b) {
            const int k = labels[a], s = labels[b];
            const ChartPtr common = side_chart(sides.at(k).side.base, s);
            for (int r : labels) {
                if (r == k || r == s) continue;
                auto restricted = [&](int side, int drop) {
                    const ChartPtr& chart = sides.at(side).side.base;
                    MultiDegree i = MultiDegree::ones(chart->gradings());
                    i[*chart->label_position(drop)] = 0;
                    return transfer(restrict_field(field_at(r, side), i), common);
                };
                try {
                    if (restricted(k, s) != restricted(s, k))
                        report.restriction_failures.push_back(
                            "q^" + std::to_string(r) + "_[" + std::to_string(k) + "] and q^" +
                            std::to_string(r) + "_[" + std::to_string(s) + "] differ on the side [" +
                            std::to_string(k) + "," + std::to_string(s) + "]");
                } catch (const ValidationError& e) {
                    report.restriction_failures.push_back(e.what());
                }
            }
        }
    }
    for (int r : labels) {
        int first = 0;
        for (int k : labels) {
            if (k == r) continue;
            if (first == 0) {
                first = k;
                continue;
            }
            if (lifts.at({r, k}) != lifts.at({r, first}))
                report.conflicts.push_back({r, first, k, lifts.at({r, first}), lifts.at({r, k})});
        }
    }

    bool ok = report.conflicts.empty() && report.restriction_failures.empty();
    for (const auto& [key, m] : report.masters) ok = ok && m.holds;
    for (const auto& [key, p] : report.pairs) ok = ok && p.holds;
    if (report.conflicts.empty()) {
        GradedPolynomial H(cot.chart);
        for (int r : labels)
            for (int k : labels)
                if (k != r) {
                    H += lifts.at({r, k});
                    break;
                }
        report.assembled = HamiltonianStructure{cot, H};
        report.drinfeld = drinfeld_check(*report.assembled);
        ok = ok && report.drinfeld->passed;
    }
    report.passed = ok;
    return report;
}

}  // namespace mg
