#include "multigraded/vector_field.hpp"

#include "multigraded/error.hpp"
#include "multigraded/expression.hpp"

namespace mg {

GradedVectorField::GradedVectorField(ChartPtr chart) : chart_(std::move(chart)) {
    if (!chart_) throw ValidationError("vector field without chart");
    components_.assign(chart_->size(), GradedPolynomial(chart_));
}

GradedVectorField::GradedVectorField(ChartPtr chart, std::vector<GradedPolynomial> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
    if (components_.size() != chart_->size())
        throw ValidationError("vector field needs one component per generator");
    for (const GradedPolynomial& c : components_)
        require_same_chart(c.chart(), chart_, "vector field component");
}

GradedVectorField GradedVectorField::partial(ChartPtr chart, std::size_t i) {
    GradedVectorField X(chart);
    X.set_component(i, GradedPolynomial::constant(chart, 1));
    return X;
}

void GradedVectorField::set_component(std::size_t i, GradedPolynomial coefficient) {
    require_same_chart(coefficient.chart(), chart_, "vector field component");
    components_.at(i) = std::move(coefficient);
}

bool GradedVectorField::is_zero() const {
    for (const GradedPolynomial& c : components_)
        if (!c.is_zero()) return false;
    return true;
}

GradedVectorField& GradedVectorField::operator+=(const GradedVectorField& other) {
    require_same_chart(chart_, other.chart_, "add fields");
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
    return *this;
}

GradedVectorField& GradedVectorField::operator-=(const GradedVectorField& other) {
    require_same_chart(chart_, other.chart_, "subtract fields");
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= other.components_[i];
    return *this;
}

GradedVectorField& GradedVectorField::operator*=(const Rational& scale) {
    for (GradedPolynomial& c : components_) c *= scale;
    return *this;
}

GradedVectorField GradedVectorField::operator-() const {
    GradedVectorField X = *this;
    for (GradedPolynomial& c : X.components_) c = -c;
    return X;
}

bool operator==(const GradedVectorField& a, const GradedVectorField& b) {
    return same_chart(a.chart_, b.chart_) && a.components_ == b.components_;
}

GradedVectorField operator*(const GradedPolynomial& f, const GradedVectorField& X) {
    GradedVectorField out(X.chart());
    for (std::size_t i = 0; i < X.components().size(); ++i)
        out.set_component(i, f * X.component(i));
    return out;
}

GradedPolynomial apply_field(const GradedVectorField& X, const GradedPolynomial& f) {
    require_same_chart(X.chart(), f.chart(), "apply_field");
    GradedPolynomial out(f.chart());
    for (std::size_t j = 0; j < X.components().size(); ++j) {
        const GradedPolynomial& a = X.component(j);
        if (a.is_zero()) continue;
        GradedPolynomial d = left_partial(f, j);
        if (!d.is_zero()) out += a * d;
    }
    return out;
}

std::array<GradedVectorField, 2> split_by_parity(const GradedVectorField& X) {
    std::array<GradedVectorField, 2> out{GradedVectorField(X.chart()), GradedVectorField(X.chart())};
    const GradedChart& chart = *X.chart();
    for (std::size_t j = 0; j < chart.size(); ++j) {
        auto parts = split_by_parity(X.component(j));
        const int pj = chart.parity(j);
        for (int p = 0; p < 2; ++p)
            if (!parts[p].is_zero()) out[p ^ pj].set_component(j, parts[p]);
    }
    return out;
}

std::optional<int> parity_of(const GradedVectorField& X) {
    auto parts = split_by_parity(X);
    if (parts[0].is_zero() && !parts[1].is_zero()) return 1;
    if (parts[1].is_zero() && !parts[0].is_zero()) return 0;
    return std::nullopt;
}

namespace {

GradedVectorField homogeneous_bracket(const GradedVectorField& X, int px,
                                      const GradedVectorField& Y, int py) {
    GradedVectorField out(X.chart());
    const bool plus = (px & py) == 1;  // -(-1)^{pX pY} = +1 for two odd fields
    for (std::size_t j = 0; j < X.components().size(); ++j) {
        GradedPolynomial c = apply_field(X, Y.component(j));
        if (plus)
            c += apply_field(Y, X.component(j));
        else
            c -= apply_field(Y, X.component(j));
        out.set_component(j, std::move(c));
    }
    return out;
}

}  // namespace

GradedVectorField super_bracket(const GradedVectorField& X, const GradedVectorField& Y) {
    require_same_chart(X.chart(), Y.chart(), "super_bracket");
    auto xs = split_by_parity(X);
    auto ys = split_by_parity(Y);
    GradedVectorField out(X.chart());
    for (int a = 0; a < 2; ++a) {
        if (xs[a].is_zero()) continue;
        for (int b = 0; b < 2; ++b) {
            if (ys[b].is_zero()) continue;
            out += homogeneous_bracket(xs[a], a, ys[b], b);
        }
    }
    return out;
}

std::vector<GradedVectorField> euler_fields(const ChartPtr& chart) {
    std::vector<GradedVectorField> out;
    for (std::size_t k = 0; k < chart->gradings(); ++k) {
        GradedVectorField D(chart);
        for (std::size_t j = 0; j < chart->size(); ++j) {
            const int g = chart->degree(j)[k];
            if (g != 0)
                D.set_component(j, GradedPolynomial::generator(chart, j) * Rational(g));
        }
        out.push_back(std::move(D));
    }
    return out;
}

std::map<MultiDegree, GradedVectorField> weight_components(const GradedVectorField& X) {
    std::map<MultiDegree, GradedVectorField> out;
    const GradedChart& chart = *X.chart();
    for (std::size_t j = 0; j < chart.size(); ++j) {
        for (const auto& [e, c] : X.component(j).terms()) {
            MultiDegree w = monomial_degree(chart, e) - chart.degree(j);
            auto it = out.try_emplace(w, X.chart()).first;
            GradedPolynomial coefficient = it->second.component(j);
            coefficient.add_term(e, c);
            it->second.set_component(j, std::move(coefficient));
        }
    }
    return out;
}

HomologicalReport is_homological(const GradedVectorField& Q) {
    auto parts = split_by_parity(Q);
    if (!parts[0].is_zero())
        throw ValidationError("is_homological: field has even-parity terms: " + render(parts[0]));
    HomologicalReport report{false, super_bracket(Q, Q), std::nullopt};
    for (std::size_t j = 0; j < report.square.components().size(); ++j) {
        if (!report.square.component(j).is_zero()) {
            report.witness = j;
            break;
        }
    }
    report.homological = !report.witness.has_value();
    return report;
}

bool is_unital(const GradedVectorField& Q) {
    for (const auto& [w, part] : weight_components(Q)) {
        if (w.total() != 1 || !w.is_binary()) return false;
    }
    return true;
}

bool relates_fields(const Substitution& phi, const GradedVectorField& X,
                    const GradedVectorField& Y) {
    require_same_chart(phi.from(), Y.chart(), "relates_fields (target field)");
    require_same_chart(phi.to(), X.chart(), "relates_fields (source field)");
    for (std::size_t u = 0; u < phi.from()->size(); ++u) {
        if (apply_field(X, phi.image(u)) != phi.apply(Y.component(u))) return false;
    }
    return true;
}

GradedVectorField restrict_field(const GradedVectorField& Q, const MultiDegree& i) {
    const ChartPtr& chart = Q.chart();
    require_same_length(i, MultiDegree(chart->gradings()));
    ChartPtr sub = sub_chart(chart, i);
    std::vector<bool> outside(chart->size());
    for (std::size_t j = 0; j < chart->size(); ++j) outside[j] = !chart->degree(j).leq(i);
    GradedVectorField out(sub);
    for (std::size_t j = 0; j < chart->size(); ++j) {
        if (outside[j]) continue;
        const GradedPolynomial& c = Q.component(j);
        for (std::size_t k = 0; k < chart->size(); ++k) {
            if (outside[k] && contains_generator(c, k))
                throw ValidationError("restrict_field: coefficient of d/d" + chart->name(j) +
                                      " = " + render(c) + " involves '" + chart->name(k) +
                                      "' of degree " + chart->degree(k).str() +
                                      ", not tangent to degree <= " + i.str());
        }
        out.set_component(sub->index_of(chart->name(j)), transfer(c, sub));
    }
    return out;
}

ChartPtr parity_shifted_chart(const ChartPtr& chart, int label) {
    auto pos = chart->label_position(label);
    if (!pos) throw ValidationError("structure label " + std::to_string(label) + " not in chart");
    std::vector<GeneratorSpec> gens;
    for (const GeneratorSpec& g : chart->generators()) gens.push_back({g.name, g.degree.drop(*pos)});
    std::vector<int> labels = chart->labels();
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(*pos));
    return make_chart(chart->gradings() - 1, std::move(gens), chart->parity_rule(),
                      std::move(labels));
}

GradedVectorField parity_change_linear(const GradedVectorField& X, const std::vector<bool>& fibre,
                                       const ChartPtr& target) {
    const GradedChart& source = *X.chart();
    if (fibre.size() != source.size() || target->size() != source.size())
        throw ValidationError("parity_change_linear: generator count mismatch");
    for (std::size_t j = 0; j < source.size(); ++j) {
        if (target->name(j) != source.name(j))
            throw ValidationError("parity_change_linear: target renames '" + source.name(j) + "'");
        const bool flipped = target->parity(j) != source.parity(j);
        if (flipped != fibre[j])
            throw ValidationError("parity_change_linear: parity of '" + source.name(j) +
                                  "' must flip exactly on fibre generators");
    }
    auto fibre_degree = [&](const Exponents& e) {
        std::uint32_t d = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (fibre[i]) d += e[i];
        return d;
    };

    GradedVectorField out(target);
    for (std::size_t j = 0; j < source.size(); ++j) {
        GradedPolynomial mapped(target);
        for (const auto& [e, c] : X.component(j).terms()) {
            const std::uint32_t fd = fibre_degree(e);
            if (!fibre[j]) {
                if (fd != 0)
                    throw ValidationError("parity_change_linear: base component d/d" +
                                          source.name(j) + " is not fibre-constant");
                mapped.add_term(e, c);
                continue;
            }
            if (fd != 1)
                throw ValidationError("parity_change_linear: component d/d" + source.name(j) +
                                      " is not fibre-linear");
            std::size_t i = 0;
            while (!(fibre[i] && e[i] == 1)) ++i;
            // Write the monomial as f * eta_i with eta_i moved to the right end.
            Rational coefficient = c;
            if (source.is_odd(i)) {
                int after = 0;
                for (std::size_t k = i + 1; k < e.size(); ++k)
                    if (e[k] != 0 && source.is_odd(k)) ++after;
                if (after % 2) coefficient = -coefficient;
            }
            if ((source.parity(i) + source.parity(j)) % 2) coefficient = -coefficient;
            Exponents rest = e;
            rest[i] = 0;
            GradedPolynomial f(target);
            f.add_term(rest, coefficient);
            mapped += f * GradedPolynomial::generator(target, i);
        }
        out.set_component(j, std::move(mapped));
    }
    return out;
}

GradedVectorField parity_change_linear(const GradedVectorField& X, int label) {
    ChartPtr target = parity_shifted_chart(X.chart(), label);
    const std::size_t pos = *X.chart()->label_position(label);
    std::vector<bool> fibre(X.chart()->size());
    for (std::size_t j = 0; j < fibre.size(); ++j) fibre[j] = X.chart()->degree(j)[pos] == 1;
    if (X.chart()->parity_rule() == ParityRule::even)
        throw ValidationError("parity_change_linear: needs a graded chart");
    return parity_change_linear(X, fibre, target);
}

GradedVectorField transfer(const GradedVectorField& X, const ChartPtr& target) {
    if (same_chart(X.chart(), target)) return X;
    GradedVectorField out(target);
    for (std::size_t j = 0; j < X.chart()->size(); ++j) {
        if (X.component(j).is_zero()) continue;
        out.set_component(target->index_of(X.chart()->name(j)), transfer(X.component(j), target));
    }
    return out;
}

std::string render(const GradedVectorField& X) {
    std::string out;
    for (std::size_t j = 0; j < X.components().size(); ++j) {
        const GradedPolynomial& c = X.component(j);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        const std::string body = render(c);
        if (c.size() == 1 && body.find(' ') == std::string::npos)
            out += (body == "1" ? std::string() : body + "*") + "d/d" + X.chart()->name(j);
        else
            out += "(" + body + ")*d/d" + X.chart()->name(j);
    }
    return out.empty() ? "0" : out;
}

}  // namespace mg
