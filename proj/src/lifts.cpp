#include "multigraded/lifts.hpp"

#include "multigraded/error.hpp"
#include "multigraded/expression.hpp"

namespace mg {

namespace {

std::size_t insertion_slot(const GradedChart& base, int label) {
    std::size_t slot = 0;
    while (slot < base.labels().size() && base.labels()[slot] < label) ++slot;
    return slot;
}

std::vector<int> labels_with(const GradedChart& base, std::size_t slot, int label) {
    std::vector<int> labels = base.labels();
    labels.insert(labels.begin() + static_cast<std::ptrdiff_t>(slot), label);
    return labels;
}

int sign_power(int exponent) { return exponent % 2 ? -1 : 1; }

}  // namespace

CotangentChart cotangent_chart(const ChartPtr& base, std::vector<std::string> momentum_names) {
    const std::size_t m = base->size();
    if (momentum_names.empty())
        for (std::size_t j = 0; j < m; ++j) momentum_names.push_back("p_" + base->name(j));
    if (momentum_names.size() != m)
        throw ValidationError("cotangent_chart: need one momentum name per base generator");

    CotangentChart cot;
    cot.base = base;
    cot.momentum_label = base->missing_label();
    cot.momentum_slot = insertion_slot(*base, cot.momentum_label);
    std::vector<GeneratorSpec> gens;
    for (std::size_t j = 0; j < m; ++j)
        gens.push_back({base->name(j), base->degree(j).insert(cot.momentum_slot, 0)});
    for (std::size_t j = 0; j < m; ++j)
        gens.push_back({momentum_names[j], base->degree(j).complement().insert(cot.momentum_slot, 1)});
    cot.chart = make_chart(base->gradings() + 1, std::move(gens), base->parity_rule(),
                           labels_with(*base, cot.momentum_slot, cot.momentum_label));
    for (std::size_t j = 0; j < m; ++j) {
        cot.partner.push_back(m + j);
        cot.is_momentum.push_back(false);
    }
    for (std::size_t j = 0; j < m; ++j) {
        cot.partner.push_back(j);
        cot.is_momentum.push_back(true);
    }
    return cot;
}

TangentChart tangent_chart(const ChartPtr& base, std::vector<std::string> velocity_names) {
    const std::size_t m = base->size();
    TangentChart tan;
    tan.base = base;
    tan.velocity_label = base->missing_label();
    tan.velocity_slot = insertion_slot(*base, tan.velocity_label);
    if (velocity_names.empty())
        for (std::size_t j = 0; j < m; ++j)
            velocity_names.push_back("d" + std::to_string(tan.velocity_label) + base->name(j));
    if (velocity_names.size() != m)
        throw ValidationError("tangent_chart: need one velocity name per base generator");
    std::vector<GeneratorSpec> gens;
    for (std::size_t j = 0; j < m; ++j)
        gens.push_back({base->name(j), base->degree(j).insert(tan.velocity_slot, 0)});
    for (std::size_t j = 0; j < m; ++j)
        gens.push_back({velocity_names[j], base->degree(j).insert(tan.velocity_slot, 1)});
    tan.chart = make_chart(base->gradings() + 1, std::move(gens), base->parity_rule(),
                           labels_with(*base, tan.velocity_slot, tan.velocity_label));
    return tan;
}

int bracket_parity(const CotangentChart& cot) {
    return cot.chart->parity_rule() == ParityRule::graded
               ? static_cast<int>((cot.base->gradings() + 1) % 2)
               : 0;
}

namespace {

/// {F, z} for one parity-homogeneous F of parity a and chart generator z.
GradedPolynomial bracket_with_generator(const GradedPolynomial& F, int a, std::size_t z,
                                        const CotangentChart& cot, int e) {
    const GradedChart& chart = *cot.chart;
    const std::size_t w = cot.partner[z];
    if (!cot.is_momentum[z]) {
        // z = x^j, w = p_j
        const int px = chart.parity(z), pp = chart.parity(w);
        GradedPolynomial d = left_partial(F, w);
        if (sign_power((a + e) * pp + px * pp) < 0) d = -d;
        return d;
    }
    // z = p_j, w = x^j
    const int px = chart.parity(w);
    GradedPolynomial d = left_partial(F, w);
    if (sign_power((a + e) * px) > 0) d = -d;
    return d;
}

}  // namespace

GradedPolynomial canonical_poisson(const GradedPolynomial& F, const GradedPolynomial& G,
                                   const CotangentChart& cot) {
    require_same_chart(F.chart(), cot.chart, "canonical_poisson");
    require_same_chart(G.chart(), cot.chart, "canonical_poisson");
    const int e = bracket_parity(cot);
    GradedPolynomial out(cot.chart);
    if (F.is_zero() || G.is_zero()) return out;
    auto parts = split_by_parity(F);
    for (std::size_t z = 0; z < cot.chart->size(); ++z) {
        if (!contains_generator(G, z)) continue;
        const GradedPolynomial dG = left_partial(G, z);
        for (int a = 0; a < 2; ++a) {
            if (parts[a].is_zero()) continue;
            GradedPolynomial c = bracket_with_generator(parts[a], a, z, cot, e);
            if (!c.is_zero()) out += c * dG;
        }
    }
    return out;
}

GradedVectorField hamiltonian_field(const GradedPolynomial& H, const CotangentChart& cot) {
    require_same_chart(H.chart(), cot.chart, "hamiltonian_field");
    const int e = bracket_parity(cot);
    auto parts = split_by_parity(H);
    GradedVectorField X(cot.chart);
    for (std::size_t z = 0; z < cot.chart->size(); ++z) {
        GradedPolynomial c(cot.chart);
        for (int a = 0; a < 2; ++a)
            if (!parts[a].is_zero()) c += bracket_with_generator(parts[a], a, z, cot, e);
        X.set_component(z, std::move(c));
    }
    return X;
}

GradedPolynomial linear_function(const GradedVectorField& X, const CotangentChart& cot) {
    require_same_chart(X.chart(), cot.base, "linear_function");
    GradedPolynomial out(cot.chart);
    for (std::size_t j = 0; j < cot.base->size(); ++j) {
        if (X.component(j).is_zero()) continue;
        out += transfer(X.component(j), cot.chart) *
               GradedPolynomial::generator(cot.chart, cot.momentum(j));
    }
    return out;
}

GradedVectorField field_of_linear(const GradedPolynomial& f, const CotangentChart& cot) {
    require_same_chart(f.chart(), cot.chart, "field_of_linear");
    for (const auto& [e, c] : f.terms()) {
        if (monomial_degree(*cot.chart, e)[cot.momentum_slot] != 1)
            throw ValidationError("field_of_linear: " + render(f) +
                                  " is not linear in the momenta");
    }
    const int e = bracket_parity(cot);
    auto parts = split_by_parity(f);
    GradedVectorField X(cot.base);
    for (std::size_t j = 0; j < cot.base->size(); ++j) {
        GradedPolynomial c(cot.chart);
        for (int a = 0; a < 2; ++a)
            if (!parts[a].is_zero()) c += bracket_with_generator(parts[a], a, j, cot, e);
        X.set_component(j, transfer(c, cot.base));
    }
    return X;
}

GradedVectorField cotangent_lift(const GradedVectorField& X, const CotangentChart& cot) {
    return hamiltonian_field(linear_function(X, cot), cot);
}

GradedVectorField phase_lift(const GradedVectorField& X, const CotangentChart& cot) {
    return cotangent_lift(X, cot) + euler_fields(cot.chart).at(cot.momentum_slot);
}

GradedVectorField de_rham_field(const TangentChart& tan) {
    GradedVectorField d(tan.chart);
    for (std::size_t a = 0; a < tan.base->size(); ++a)
        d.set_component(tan.coordinate(a), GradedPolynomial::generator(tan.chart, tan.velocity(a)));
    return d;
}

GradedVectorField tangent_lift(const GradedVectorField& X, const TangentChart& tan) {
    require_same_chart(X.chart(), tan.base, "tangent_lift");
    const GradedVectorField d = de_rham_field(tan);
    auto parts = split_by_parity(X);
    GradedVectorField out(tan.chart);
    for (int a = 0; a < 2; ++a) {
        for (std::size_t j = 0; j < tan.base->size(); ++j) {
            const GradedPolynomial& f = parts[a].component(j);
            if (f.is_zero()) continue;
            GradedPolynomial lifted = transfer(f, tan.chart);
            GradedPolynomial df = apply_field(d, lifted);
            if (a == 1) df = -df;
            out.set_component(tan.coordinate(j), out.component(tan.coordinate(j)) + lifted);
            out.set_component(tan.velocity(j), out.component(tan.velocity(j)) + df);
        }
    }
    return out;
}

ChartPtr side_chart(const ChartPtr& chart, int label) {
    auto slot = chart->label_position(label);
    if (!slot)
        throw ValidationError("structure label " + std::to_string(label) + " is not used by the chart");
    std::vector<GeneratorSpec> gens;
    for (const GeneratorSpec& g : chart->generators())
        if (g.degree[*slot] == 0) gens.push_back({g.name, g.degree.drop(*slot)});
    std::vector<int> labels = chart->labels();
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(*slot));
    return make_chart(chart->gradings() - 1, std::move(gens), chart->parity_rule(),
                      std::move(labels));
}

LegendreMap legendre_map(const CotangentChart& cot, int label) {
    const GradedChart& N = *cot.chart;
    ChartPtr side = side_chart(cot.chart, label);
    std::vector<std::size_t> origin;  // side generator -> index in N
    std::vector<std::string> names;
    for (std::size_t u = 0; u < side->size(); ++u) {
        origin.push_back(N.index_of(side->name(u)));
        names.push_back(N.name(cot.partner[origin.back()]));
    }
    CotangentChart side_cot = cotangent_chart(side, names);
    if (side_cot.momentum_label != label)
        throw ValidationError("legendre_map: side chart does not reproduce the structure labels");

    std::vector<GradedPolynomial> images;
    for (std::size_t u = 0; u < side->size(); ++u)
        images.push_back(GradedPolynomial::generator(cot.chart, origin[u]));
    for (std::size_t u = 0; u < side->size(); ++u) {
        const std::size_t v = origin[u];
        const std::size_t w = cot.partner[v];
        GradedPolynomial image = GradedPolynomial::generator(cot.chart, w);
        if (cot.is_momentum[v] && sign_power(N.parity(v) * N.parity(w)) > 0) image = -image;
        images.push_back(std::move(image));
    }
    Substitution pullback(side_cot.chart, cot.chart, std::move(images));
    return LegendreMap{std::move(side_cot), std::move(pullback)};
}

bool is_symplectomorphism(const Substitution& sigma, const CotangentChart& source,
                          const CotangentChart& target) {
    require_same_chart(sigma.from(), target.chart, "is_symplectomorphism (target)");
    require_same_chart(sigma.to(), source.chart, "is_symplectomorphism (source)");
    const std::size_t m = target.chart->size();
    for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t v = 0; v < m; ++v) {
            const GradedPolynomial lhs = canonical_poisson(sigma.image(u), sigma.image(v), source);
            const GradedPolynomial rhs = sigma.apply(canonical_poisson(
                GradedPolynomial::generator(target.chart, u),
                GradedPolynomial::generator(target.chart, v), target));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

}  // namespace mg
