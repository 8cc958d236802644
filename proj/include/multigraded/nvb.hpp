#pragma once

#include <map>
#include <string>
#include <vector>

#include "multigraded/polynomial.hpp"

namespace mg {

/// One local factor V(i) of an n-vector bundle chart.
struct Factor {
    std::string space;
    bool dual = false;
    int dimension = 0;

    Factor dualized() const { return {space, !dual, dimension}; }
    /// "V", "V*"
    std::string str() const { return space + (dual ? "*" : ""); }
    friend bool operator==(const Factor&, const Factor&) = default;
};

/// Chart-level model of an n-vector bundle: structure labels S (|S| = n,
/// drawn from 1..n+1), a factor for every nonzero index of {0,1}^S and the
/// base factor V(0). Index entries follow the sorted order of S.
class FactorAssignment {
public:
    FactorAssignment(std::vector<int> labels, Factor base, std::map<MultiDegree, Factor> factors);

    /// Labels 1..n, factor V(i) named "V<compact i>" with the given dimension.
    static FactorAssignment generic(std::size_t n, const std::map<MultiDegree, int>& dimensions,
                                    int base_dimension = 1);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<int>& labels() const noexcept { return labels_; }
    const Factor& base() const noexcept { return base_; }
    const std::map<MultiDegree, Factor>& factors() const noexcept { return factors_; }
    const Factor& factor(const MultiDegree& i) const;
    /// The label of 1..n+1 not in S.
    int complement_label() const;
    /// Position of a label in S; throws for labels not in S.
    std::size_t position(int label) const;

    friend bool operator==(const FactorAssignment&, const FactorAssignment&) = default;

private:
    std::vector<int> labels_;
    Factor base_;
    std::map<MultiDegree, Factor> factors_;
};

/// Same factors positionally, ignoring the label names.
bool same_up_to_relabeling(const FactorAssignment& a, const FactorAssignment& b);

std::string describe(const FactorAssignment& F);

struct DiagramNode {
    MultiDegree index;
    std::vector<MultiDegree> factors;  // nonzero j <= index
};

struct DiagramArrow {
    MultiDegree from;
    MultiDegree to;
    int label;  // structure whose projection this is
};

/// The 2^n nodes F_i and the projections F_i -> F_{i - delta^k}.
struct CharacteristicDiagram {
    std::vector<int> labels;
    std::vector<DiagramNode> nodes;  // top node first
    std::vector<DiagramArrow> arrows;
};

CharacteristicDiagram characteristic_diagram(const FactorAssignment& F);
/// The diagram without its total space (the top node and its arrows).
CharacteristicDiagram base_diagram(const FactorAssignment& F);
std::string render_text(const CharacteristicDiagram& D, const FactorAssignment& F);
std::string render_dot(const CharacteristicDiagram& D, const FactorAssignment& F);

struct CoreSplit {
    Factor core;                               // V(1^n)
    std::map<MultiDegree, Factor> base_product;  // every other nonzero index
};

CoreSplit core_and_base_product(const FactorAssignment& F);

/// Dual at label l: S' = (S \ {l}) + {complement}. Factors with i_l = 0 keep
/// their index (0 at the new label); factors with i_l = 1 are dualized and
/// indexed by 1 - i_s for s != l and 1 at the new label.
FactorAssignment dual(const FactorAssignment& F, int label);

struct DualsReport {
    bool closed = true;                  // (F*_(k))*_(l) = F*_(l) for all k, l
    std::vector<FactorAssignment> orbit;  // F*_(k), ordered by the dropped label
    std::size_t distinct_up_to_relabeling = 0;
    std::vector<std::string> failures;
};

DualsReport duals_closure_check(const FactorAssignment& F);

/// (i,0) -> V(i), (i,1) -> V(1^n - i)*, (1^n,1) -> T*V(0).
FactorAssignment cotangent_assignment(const FactorAssignment& F);

/// The side bundle obtained by dropping structure `label`: factors whose
/// index has entry 0 there.
FactorAssignment side_assignment(const FactorAssignment& F, int label);

/// sum over set partitions {j^1..j^r} of the support of i of prod dim V(j^a).
long long homogeneous_dimension(const FactorAssignment& F, const MultiDegree& i);

/// Base coordinates "x<a>" (degree 0) and fibre coordinates "y<compact i>_<a>"
/// of degree i, in index order.
ChartPtr assignment_chart(const FactorAssignment& F, ParityRule rule = ParityRule::even);

/// One summand T(x) * y_{part 1} ... y_{part r} of a coordinate change.
/// `parts` lists source fibre generators in the order the data was given.
struct TransitionTerm {
    GradedPolynomial coefficient;  // in source base coordinates
    std::vector<std::size_t> parts;
};

/// A chart change in normal form: every target generator is a sum of terms.
/// Base generators use terms without parts; a fibre generator of degree i
/// uses terms whose parts have disjoint nonzero degrees adding up to i.
class TransitionMap {
public:
    TransitionMap(ChartPtr source, ChartPtr target, std::vector<std::vector<TransitionTerm>> terms);

    /// Reads a substitution (target generators -> source polynomials) back
    /// into normal form, parts listed in the order of `precedes`.
    static TransitionMap from_substitution(const Substitution& s);
    static TransitionMap identity(ChartPtr chart);

    const ChartPtr& source() const noexcept { return source_; }
    const ChartPtr& target() const noexcept { return target_; }
    const std::vector<std::vector<TransitionTerm>>& terms() const noexcept { return terms_; }

    /// Commuting coordinates: target generator -> polynomial over the source.
    Substitution to_substitution() const;

private:
    ChartPtr source_;
    ChartPtr target_;
    std::vector<std::vector<TransitionTerm>> terms_;
};

/// permutation_sign of the degrees of a term's parts as listed.
int term_sign(const TransitionMap& T, const TransitionTerm& term);

/// First A, then B.
TransitionMap compose_transitions(const TransitionMap& A, const TransitionMap& B);

/// Matrix of the linear block of degree j: entry (alpha, beta) is the
/// coefficient of y_{j,beta} in y'_{j,alpha}.
std::vector<std::vector<GradedPolynomial>> linear_block(const TransitionMap& T,
                                                        const MultiDegree& j);
GradedPolynomial determinant(const std::vector<std::vector<GradedPolynomial>>& matrix,
                             const ChartPtr& chart);
/// Throws ValidationError when some linear block has zero determinant.
void require_invertible(const TransitionMap& T);

/// True iff the chain composes to the identity.
bool cocycle_check(const std::vector<TransitionMap>& chain);

/// Graded coordinate change: y'_i = sum [i^1,...,i^r] T theta_{i^1}...theta_{i^r}
/// on the graded versions of the charts.
Substitution gradedize_transition(const TransitionMap& T);

}  // namespace mg
