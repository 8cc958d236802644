#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "multigraded/degrees.hpp"

namespace mg {

struct GeneratorSpec {
    std::string name;
    MultiDegree degree;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// How generator parity is derived from the degree.
///  - graded: parity = total degree mod 2 (supercommutative coordinates of an
///    n-graded manifold);
///  - even:   every generator commutes (linear coordinates of the underlying
///    n-vector bundle, degrees recorded only as Euler weights).
enum class ParityRule { graded, even };

/// Ordered list of homogeneous generators with degrees in {0,1}^n. The
/// declaration order is the canonical monomial order. Each degree entry is
/// tied to a structure label; labels are strictly increasing and default to
/// 1..n.
class GradedChart {
public:
    GradedChart(std::size_t n, std::vector<GeneratorSpec> generators,
                ParityRule rule = ParityRule::graded, std::vector<int> labels = {});

    std::size_t gradings() const noexcept { return n_; }
    std::size_t size() const noexcept { return generators_.size(); }
    const std::vector<GeneratorSpec>& generators() const noexcept { return generators_; }
    const GeneratorSpec& generator(std::size_t i) const { return generators_.at(i); }
    const MultiDegree& degree(std::size_t i) const { return generators_.at(i).degree; }
    const std::string& name(std::size_t i) const { return generators_.at(i).name; }
    ParityRule parity_rule() const noexcept { return rule_; }
    const std::vector<int>& labels() const noexcept { return labels_; }

    int parity(std::size_t i) const { return parities_.at(i); }
    bool is_odd(std::size_t i) const { return parities_.at(i) == 1; }
    /// Parity of an arbitrary multi-degree under this chart's rule.
    int parity_of_degree(const MultiDegree& d) const {
        return rule_ == ParityRule::graded ? d.parity() : 0;
    }

    std::optional<std::size_t> find(const std::string& name) const;
    /// Throws ValidationError for unknown names.
    std::size_t index_of(const std::string& name) const;

    /// Position of structure label `label` among the degree entries.
    std::optional<std::size_t> label_position(int label) const;
    /// The unique label of {1,...,n+1} not used by this chart (the label a
    /// cotangent or tangent extension introduces).
    int missing_label() const;

    friend bool operator==(const GradedChart& a, const GradedChart& b) {
        return a.n_ == b.n_ && a.rule_ == b.rule_ && a.labels_ == b.labels_ &&
               a.generators_ == b.generators_;
    }

private:
    std::size_t n_;
    std::vector<GeneratorSpec> generators_;
    ParityRule rule_;
    std::vector<int> labels_;
    std::vector<int> parities_;
};

using ChartPtr = std::shared_ptr<const GradedChart>;

ChartPtr make_chart(std::size_t n, std::vector<GeneratorSpec> generators,
                    ParityRule rule = ParityRule::graded, std::vector<int> labels = {});

inline bool same_chart(const ChartPtr& a, const ChartPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Throws ValidationError("<what>: chart mismatch") unless the charts agree.
void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what);

/// Sub-chart of generators with degree <= i (keeps order and labels).
ChartPtr sub_chart(const ChartPtr& chart, const MultiDegree& i);

/// Same generators with parity forced even (or graded); the n-vector bundle
/// and n-graded manifold pictures of one chart.
ChartPtr with_parity_rule(const ChartPtr& chart, ParityRule rule);

}  // namespace mg
