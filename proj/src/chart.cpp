#include "multigraded/chart.hpp"

#include <algorithm>
#include <set>

#include "multigraded/error.hpp"

namespace mg {

GradedChart::GradedChart(std::size_t n, std::vector<GeneratorSpec> generators, ParityRule rule,
                         std::vector<int> labels)
    : n_(n), generators_(std::move(generators)), rule_(rule), labels_(std::move(labels)) {
    if (labels_.empty()) {
        for (std::size_t k = 1; k <= n_; ++k) labels_.push_back(static_cast<int>(k));
    }
    if (labels_.size() != n_)
        throw ValidationError("chart has " + std::to_string(n_) + " gradings but " +
                              std::to_string(labels_.size()) + " structure labels");
    for (std::size_t k = 0; k < labels_.size(); ++k) {
        if (labels_[k] < 1) throw ValidationError("structure labels must be positive");
        if (k > 0 && labels_[k] <= labels_[k - 1])
            throw ValidationError("structure labels must be strictly increasing");
    }
    std::set<std::string> names;
    for (const GeneratorSpec& g : generators_) {
        if (g.name.empty()) throw ValidationError("empty generator name");
        if (!names.insert(g.name).second)
            throw ValidationError("duplicate generator name '" + g.name + "'");
        if (g.degree.size() != n_)
            throw ValidationError("generator '" + g.name + "' has degree " + g.degree.str() +
                                  " but the chart has " + std::to_string(n_) + " gradings");
        for (int e : g.degree.entries()) {
            if (e < 0) throw ValidationError("generator '" + g.name + "': negative degree");
            if (e > 1)
                throw ValidationError("generator '" + g.name + "': degree " + g.degree.str() +
                                      " exceeds 1^n");
        }
        parities_.push_back(parity_of_degree(g.degree));
    }
    if (generators_.size() > 64) throw ValidationError("charts are limited to 64 generators");
}

std::optional<std::size_t> GradedChart::find(const std::string& name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name) return i;
    return std::nullopt;
}

std::size_t GradedChart::index_of(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw ValidationError("unknown generator '" + name + "'");
}

std::optional<std::size_t> GradedChart::label_position(int label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

int GradedChart::missing_label() const {
    for (int l = 1; l <= static_cast<int>(n_) + 1; ++l)
        if (!label_position(l)) return l;
    throw ValidationError("chart labels do not leave a free label in 1..n+1");
}

ChartPtr make_chart(std::size_t n, std::vector<GeneratorSpec> generators, ParityRule rule,
                    std::vector<int> labels) {
    return std::make_shared<const GradedChart>(n, std::move(generators), rule, std::move(labels));
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what) {
    if (!same_chart(a, b)) throw ValidationError(std::string(what) + ": chart mismatch");
}

ChartPtr sub_chart(const ChartPtr& chart, const MultiDegree& i) {
    std::vector<GeneratorSpec> gens;
    for (const GeneratorSpec& g : chart->generators())
        if (g.degree.leq(i)) gens.push_back(g);
    return make_chart(chart->gradings(), std::move(gens), chart->parity_rule(), chart->labels());
}

ChartPtr with_parity_rule(const ChartPtr& chart, ParityRule rule) {
    if (chart->parity_rule() == rule) return chart;
    return make_chart(chart->gradings(), chart->generators(), rule, chart->labels());
}

}  // namespace mg
