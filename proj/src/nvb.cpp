#include "multigraded/nvb.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "multigraded/error.hpp"
#include "multigraded/expression.hpp"

namespace mg {

FactorAssignment::FactorAssignment(std::vector<int> labels, Factor base,
                                   std::map<MultiDegree, Factor> factors)
    : labels_(std::move(labels)), base_(std::move(base)), factors_(std::move(factors)) {
    const std::size_t n = labels_.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (labels_[k] < 1 || labels_[k] > static_cast<int>(n) + 1)
            throw ValidationError("structure label " + std::to_string(labels_[k]) +
                                  " outside 1.." + std::to_string(n + 1));
        if (k > 0 && labels_[k] <= labels_[k - 1])
            throw ValidationError("structure labels must be strictly increasing");
    }
    if (base_.dimension < 0) throw ValidationError("negative base dimension");
    for (const auto& [i, f] : factors_) {
        if (i.size() != n) throw ValidationError("factor index " + i.str() + " has wrong length");
        if (!i.is_binary() || i.is_zero())
            throw ValidationError("factor index " + i.str() + " must be a nonzero element of {0,1}^n");
        if (f.dimension < 0)
            throw ValidationError("factor " + i.compact() + " has negative dimension");
    }
    const std::size_t expected = (std::size_t{1} << n) - 1;
    if (factors_.size() != expected)
        throw ValidationError("an assignment over " + std::to_string(n) + " structures needs " +
                              std::to_string(expected) + " factors, got " +
                              std::to_string(factors_.size()));
}

FactorAssignment FactorAssignment::generic(std::size_t n, const std::map<MultiDegree, int>& dimensions,
                                           int base_dimension) {
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    std::map<MultiDegree, Factor> factors;
    for (const MultiDegree& i : binary_degrees(n)) {
        if (i.is_zero()) continue;
        auto it = dimensions.find(i);
        factors[i] = Factor{"V" + i.compact(), false, it == dimensions.end() ? 1 : it->second};
    }
    return FactorAssignment(std::move(labels), Factor{"M", false, base_dimension},
                            std::move(factors));
}

const Factor& FactorAssignment::factor(const MultiDegree& i) const {
    if (i.is_zero() && i.size() == size()) return base_;
    auto it = factors_.find(i);
    if (it == factors_.end()) throw ValidationError("no factor at index " + i.str());
    return it->second;
}

int FactorAssignment::complement_label() const {
    for (int l = 1; l <= static_cast<int>(size()) + 1; ++l)
        if (std::find(labels_.begin(), labels_.end(), l) == labels_.end()) return l;
    throw ValidationError("assignment labels leave no complement");
}

std::size_t FactorAssignment::position(int label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw ValidationError("structure label " + std::to_string(label) + " is not in S");
    return static_cast<std::size_t>(it - labels_.begin());
}

bool same_up_to_relabeling(const FactorAssignment& a, const FactorAssignment& b) {
    return a.base() == b.base() && a.factors() == b.factors();
}

std::string describe(const FactorAssignment& F) {
    std::ostringstream out;
    out << "S = {";
    for (std::size_t k = 0; k < F.labels().size(); ++k) out << (k ? "," : "") << F.labels()[k];
    out << "}\n";
    out << "  base " << F.base().str() << " [" << F.base().dimension << "]\n";
    for (const MultiDegree& i : binary_degrees(F.size())) {
        if (i.is_zero()) continue;
        const Factor& f = F.factor(i);
        out << "  " << i.compact() << " " << f.str() << " [" << f.dimension << "]\n";
    }
    return out.str();
}

CharacteristicDiagram characteristic_diagram(const FactorAssignment& F) {
    CharacteristicDiagram D;
    D.labels = F.labels();
    auto all = binary_degrees(F.size());
    std::reverse(all.begin(), all.end());
    for (const MultiDegree& i : all) {
        DiagramNode node{i, {}};
        for (const MultiDegree& j : binary_degrees(F.size()))
            if (!j.is_zero() && j.leq(i)) node.factors.push_back(j);
        D.nodes.push_back(std::move(node));
        for (std::size_t k = 0; k < i.size(); ++k) {
            if (i[k] != 1) continue;
            MultiDegree to = i;
            to[k] = 0;
            D.arrows.push_back({i, to, F.labels()[k]});
        }
    }
    return D;
}

CharacteristicDiagram base_diagram(const FactorAssignment& F) {
    CharacteristicDiagram D = characteristic_diagram(F);
    const MultiDegree top = MultiDegree::ones(F.size());
    std::erase_if(D.nodes, [&](const DiagramNode& n) { return n.index == top; });
    std::erase_if(D.arrows, [&](const DiagramArrow& a) { return a.from == top; });
    return D;
}

namespace {

std::string node_name(const MultiDegree& i) {
    return i.size() == 0 ? "F" : "F" + i.compact();
}

std::string node_factors(const DiagramNode& node, const FactorAssignment& F) {
    std::string out = F.base().str();
    for (const MultiDegree& j : node.factors) out += " x " + F.factor(j).str();
    return out;
}

}  // namespace

std::string render_text(const CharacteristicDiagram& D, const FactorAssignment& F) {
    std::ostringstream out;
    for (const DiagramNode& node : D.nodes)
        out << "node " << node_name(node.index) << ": " << node_factors(node, F) << "\n";
    for (const DiagramArrow& a : D.arrows)
        out << "arrow " << node_name(a.from) << " -> " << node_name(a.to) << " [" << a.label << "]\n";
    return out.str();
}

std::string render_dot(const CharacteristicDiagram& D, const FactorAssignment& F) {
    std::ostringstream out;
    out << "digraph characteristic {\n  rankdir=BT;\n";
    for (const DiagramNode& node : D.nodes)
        out << "  " << node_name(node.index) << " [label=\"" << node_name(node.index) << "\\n"
            << node_factors(node, F) << "\"];\n";
    for (const DiagramArrow& a : D.arrows)
        out << "  " << node_name(a.from) << " -> " << node_name(a.to) << " [label=\"" << a.label
            << "\"];\n";
    out << "}\n";
    return out.str();
}

CoreSplit core_and_base_product(const FactorAssignment& F) {
    CoreSplit split{F.factor(MultiDegree::ones(F.size())), {}};
    for (const auto& [i, f] : F.factors())
        if (i != MultiDegree::ones(F.size())) split.base_product.emplace(i, f);
    return split;
}

FactorAssignment dual(const FactorAssignment& F, int label) {
    const std::size_t dropped = F.position(label);
    const int added = F.complement_label();
    std::vector<int> labels;
    for (int s : F.labels())
        if (s != label) labels.push_back(s);
    labels.push_back(added);
    std::sort(labels.begin(), labels.end());
    const std::size_t added_pos =
        static_cast<std::size_t>(std::find(labels.begin(), labels.end(), added) - labels.begin());

    std::map<MultiDegree, Factor> factors;
    for (const auto& [i, f] : F.factors()) {
        const bool flip = i[dropped] == 1;
        MultiDegree j(F.size());
        for (std::size_t k = 0; k < F.size(); ++k) {
            if (k == dropped) continue;
            const std::size_t target = static_cast<std::size_t>(
                std::find(labels.begin(), labels.end(), F.labels()[k]) - labels.begin());
            j[target] = flip ? 1 - i[k] : i[k];
        }
        j[added_pos] = flip ? 1 : 0;
        factors.emplace(j, flip ? f.dualized() : f);
    }
    return FactorAssignment(std::move(labels), F.base(), std::move(factors));
}

DualsReport duals_closure_check(const FactorAssignment& F) {
    DualsReport report;
    std::vector<int> all = F.labels();
    all.push_back(F.complement_label());
    std::sort(all.begin(), all.end());
    std::map<int, FactorAssignment> star;
    for (int k : all) star.emplace(k, k == F.complement_label() ? F : dual(F, k));
    for (int k : all) report.orbit.push_back(star.at(k));
    for (int k : all) {
        for (int l : star.at(k).labels()) {
            if (dual(star.at(k), l) != star.at(l)) {
                report.closed = false;
                report.failures.push_back("(F*_(" + std::to_string(k) + "))*_(" +
                                          std::to_string(l) + ") != F*_(" + std::to_string(l) + ")");
            }
        }
    }
    for (std::size_t a = 0; a < report.orbit.size(); ++a) {
        bool fresh = true;
        for (std::size_t b = 0; b < a && fresh; ++b)
            if (same_up_to_relabeling(report.orbit[a], report.orbit[b])) fresh = false;
        report.distinct_up_to_relabeling += fresh;
    }
    return report;
}

FactorAssignment cotangent_assignment(const FactorAssignment& F) {
    const int added = F.complement_label();
    std::vector<int> labels = F.labels();
    labels.push_back(added);
    std::sort(labels.begin(), labels.end());
    const std::size_t slot =
        static_cast<std::size_t>(std::find(labels.begin(), labels.end(), added) - labels.begin());
    const MultiDegree top = MultiDegree::ones(F.size());
    std::map<MultiDegree, Factor> factors;
    for (const MultiDegree& i : binary_degrees(F.size())) {
        if (!i.is_zero()) factors.emplace(i.insert(slot, 0), F.factor(i));
        if (i == top)
            factors.emplace(i.insert(slot, 1),
                            Factor{"T*" + F.base().space, false, F.base().dimension});
        else
            factors.emplace(i.insert(slot, 1), F.factor(i.complement()).dualized());
    }
    return FactorAssignment(std::move(labels), F.base(), std::move(factors));
}

FactorAssignment side_assignment(const FactorAssignment& F, int label) {
    const std::size_t pos = F.position(label);
    std::vector<int> labels = F.labels();
    labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(pos));
    std::map<MultiDegree, Factor> factors;
    for (const auto& [i, f] : F.factors())
        if (i[pos] == 0) factors.emplace(i.drop(pos), f);
    return FactorAssignment(std::move(labels), F.base(), std::move(factors));
}

long long homogeneous_dimension(const FactorAssignment& F, const MultiDegree& i) {
    if (i.size() != F.size() || !i.is_binary())
        throw ValidationError("homogeneous_dimension: degree " + i.str() + " is not <= 1^" +
                              std::to_string(F.size()));
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < i.size(); ++k)
        if (i[k] == 1) support.push_back(k);

    std::function<long long(std::vector<std::size_t>)> count = [&](std::vector<std::size_t> rest) {
        if (rest.empty()) return 1LL;
        const std::size_t first = rest.front();
        const std::vector<std::size_t> others(rest.begin() + 1, rest.end());
        long long total = 0;
        // the block containing `first` plus any subset of the others
        for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
            MultiDegree block(F.size());
            block[first] = 1;
            std::vector<std::size_t> remaining;
            for (std::size_t b = 0; b < others.size(); ++b) {
                if (mask >> b & 1)
                    block[others[b]] = 1;
                else
                    remaining.push_back(others[b]);
            }
            const long long d = F.factor(block).dimension;
            if (d != 0) total += d * count(remaining);
        }
        return total;
    };
    return count(support);
}

ChartPtr assignment_chart(const FactorAssignment& F, ParityRule rule) {
    std::vector<GeneratorSpec> gens;
    const MultiDegree zero(F.size());
    for (int a = 1; a <= F.base().dimension; ++a) gens.push_back({"x" + std::to_string(a), zero});
    for (const MultiDegree& i : binary_degrees(F.size())) {
        if (i.is_zero()) continue;
        for (int a = 1; a <= F.factor(i).dimension; ++a)
            gens.push_back({"y" + i.compact() + "_" + std::to_string(a), i});
    }
    return make_chart(F.size(), std::move(gens), rule, F.labels());
}

TransitionMap::TransitionMap(ChartPtr source, ChartPtr target,
                             std::vector<std::vector<TransitionTerm>> terms)
    : source_(std::move(source)), target_(std::move(target)), terms_(std::move(terms)) {
    if (source_->gradings() != target_->gradings())
        throw ValidationError("transition between charts with different gradings");
    if (terms_.size() != target_->size())
        throw ValidationError("transition needs terms for every target generator");
    const std::size_t n = source_->gradings();
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        const MultiDegree& degree = target_->degree(t);
        for (const TransitionTerm& term : terms_[t]) {
            require_same_chart(term.coefficient.chart(), source_, "transition coefficient");
            for (std::size_t g = 0; g < source_->size(); ++g)
                if (!source_->degree(g).is_zero() && contains_generator(term.coefficient, g))
                    throw ValidationError("transition coefficient " + render(term.coefficient) +
                                          " involves the fibre coordinate " + source_->name(g));
            MultiDegree sum(n);
            for (std::size_t part : term.parts) {
                if (part >= source_->size())
                    throw ValidationError("transition part index out of range");
                const MultiDegree& d = source_->degree(part);
                if (d.is_zero())
                    throw ValidationError("transition part " + source_->name(part) +
                                          " is a base coordinate");
                sum += d;
            }
            if (!sum.is_binary())
                throw ValidationError("transition parts for " + target_->name(t) +
                                      " overlap: total degree " + sum.str());
            if (sum != degree)
                throw ValidationError("transition parts for " + target_->name(t) +
                                      " have total degree " + sum.str() + ", expected " +
                                      degree.str());
        }
    }
}

TransitionMap TransitionMap::identity(ChartPtr chart) {
    std::vector<std::vector<TransitionTerm>> terms(chart->size());
    for (std::size_t t = 0; t < chart->size(); ++t) {
        if (chart->degree(t).is_zero())
            terms[t].push_back({GradedPolynomial::generator(chart, t), {}});
        else
            terms[t].push_back({GradedPolynomial::constant(chart, 1), {t}});
    }
    return TransitionMap(chart, chart, std::move(terms));
}

Substitution TransitionMap::to_substitution() const {
    std::vector<GradedPolynomial> images;
    for (const auto& list : terms_) {
        GradedPolynomial image(source_);
        for (const TransitionTerm& term : list) {
            GradedPolynomial product = term.coefficient;
            for (std::size_t part : term.parts)
                product = product * GradedPolynomial::generator(source_, part);
            image += product;
        }
        images.push_back(std::move(image));
    }
    return Substitution(target_, source_, std::move(images));
}

TransitionMap TransitionMap::from_substitution(const Substitution& s) {
    const ChartPtr& source = s.to();
    const ChartPtr& target = s.from();
    std::vector<std::vector<TransitionTerm>> terms(target->size());
    for (std::size_t t = 0; t < target->size(); ++t) {
        std::map<std::vector<std::size_t>, GradedPolynomial> grouped;
        for (const auto& [e, c] : s.image(t).terms()) {
            Exponents base(e.size(), 0);
            std::vector<std::size_t> parts;
            for (std::size_t g = 0; g < e.size(); ++g) {
                if (e[g] == 0) continue;
                if (source->degree(g).is_zero()) {
                    base[g] = e[g];
                } else {
                    if (e[g] > 1)
                        throw ValidationError("not a transition: " + source->name(g) +
                                              " appears squared in the image of " +
                                              target->name(t));
                    parts.push_back(g);
                }
            }
            std::stable_sort(parts.begin(), parts.end(), [&](std::size_t a, std::size_t b) {
                return precedes(source->degree(a), source->degree(b));
            });
            auto it = grouped.try_emplace(parts, source).first;
            it->second.add_term(base, c);
        }
        for (auto& [parts, coefficient] : grouped)
            if (!coefficient.is_zero()) terms[t].push_back({std::move(coefficient), parts});
    }
    return TransitionMap(source, target, std::move(terms));
}

int term_sign(const TransitionMap& T, const TransitionTerm& term) {
    std::vector<MultiDegree> degrees;
    for (std::size_t part : term.parts) degrees.push_back(T.source()->degree(part));
    return permutation_sign(degrees);
}

TransitionMap compose_transitions(const TransitionMap& A, const TransitionMap& B) {
    require_same_chart(A.target(), B.source(), "compose_transitions");
    Substitution composite = B.to_substitution().followed_by(A.to_substitution());
    return TransitionMap::from_substitution(composite);
}

std::vector<std::vector<GradedPolynomial>> linear_block(const TransitionMap& T,
                                                        const MultiDegree& j) {
    std::vector<std::size_t> rows, columns;
    for (std::size_t t = 0; t < T.target()->size(); ++t)
        if (T.target()->degree(t) == j) rows.push_back(t);
    for (std::size_t s = 0; s < T.source()->size(); ++s)
        if (T.source()->degree(s) == j) columns.push_back(s);
    std::vector<std::vector<GradedPolynomial>> block(
        rows.size(), std::vector<GradedPolynomial>(columns.size(), GradedPolynomial(T.source())));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const TransitionTerm& term : T.terms()[rows[r]])
            if (term.parts.size() == 1)
                for (std::size_t c = 0; c < columns.size(); ++c)
                    if (term.parts[0] == columns[c]) block[r][c] += term.coefficient;
    return block;
}

GradedPolynomial determinant(const std::vector<std::vector<GradedPolynomial>>& matrix,
                             const ChartPtr& chart) {
    const std::size_t n = matrix.size();
    if (n == 0) return GradedPolynomial::constant(chart, 1);
    for (const auto& row : matrix)
        if (row.size() != n) throw ValidationError("determinant of a non-square block");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    GradedPolynomial det(chart);
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (perm[a] > perm[b]) ++inversions;
        GradedPolynomial product = GradedPolynomial::constant(chart, inversions % 2 ? -1 : 1);
        for (std::size_t a = 0; a < n && !product.is_zero(); ++a) product = product * matrix[a][perm[a]];
        det += product;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

void require_invertible(const TransitionMap& T) {
    for (const MultiDegree& j : binary_degrees(T.target()->gradings())) {
        if (j.is_zero()) continue;
        auto block = linear_block(T, j);
        std::size_t columns = 0;
        for (std::size_t s = 0; s < T.source()->size(); ++s)
            if (T.source()->degree(s) == j) ++columns;
        if (block.size() != columns)
            throw ValidationError("linear block " + j.compact() + " is not square");
        if (determinant(block, T.source()).is_zero())
            throw ValidationError("linear block " + j.compact() + " is not invertible");
    }
}

bool cocycle_check(const std::vector<TransitionMap>& chain) {
    if (chain.empty()) return true;
    for (const TransitionMap& T : chain) require_invertible(T);
    TransitionMap total = chain.front();
    for (std::size_t k = 1; k < chain.size(); ++k) total = compose_transitions(total, chain[k]);
    if (!same_chart(total.source(), total.target())) return false;
    Substitution s = total.to_substitution();
    for (std::size_t t = 0; t < total.target()->size(); ++t)
        if (s.image(t) != GradedPolynomial::generator(total.source(), t)) return false;
    return true;
}

Substitution gradedize_transition(const TransitionMap& T) {
    ChartPtr source = with_parity_rule(T.source(), ParityRule::graded);
    ChartPtr target = with_parity_rule(T.target(), ParityRule::graded);
    std::vector<GradedPolynomial> images;
    for (const auto& list : T.terms()) {
        GradedPolynomial image(source);
        for (const TransitionTerm& term : list) {
            GradedPolynomial product = transfer(term.coefficient, source);
            for (std::size_t part : term.parts)
                product = product * GradedPolynomial::generator(source, part);
            if (term_sign(T, term) < 0) product = -product;
            image += product;
        }
        images.push_back(std::move(image));
    }
    return Substitution(target, source, std::move(images));
}

}  // namespace mg
