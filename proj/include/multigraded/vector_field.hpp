#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multigraded/polynomial.hpp"

namespace mg {

/// Derivation X = sum_j a^j d/dx^j of a chart's polynomial algebra, with the
/// coefficients a^j on the left. Components are stored for every generator.
class GradedVectorField {
public:
    explicit GradedVectorField(ChartPtr chart);
    GradedVectorField(ChartPtr chart, std::vector<GradedPolynomial> components);

    /// d/dx^i.
    static GradedVectorField partial(ChartPtr chart, std::size_t i);

    const ChartPtr& chart() const noexcept { return chart_; }
    const std::vector<GradedPolynomial>& components() const noexcept { return components_; }
    const GradedPolynomial& component(std::size_t i) const { return components_.at(i); }
    void set_component(std::size_t i, GradedPolynomial coefficient);
    bool is_zero() const;

    GradedVectorField& operator+=(const GradedVectorField& other);
    GradedVectorField& operator-=(const GradedVectorField& other);
    GradedVectorField& operator*=(const Rational& scale);
    GradedVectorField operator-() const;
    friend GradedVectorField operator+(GradedVectorField a, const GradedVectorField& b) {
        return a += b;
    }
    friend GradedVectorField operator-(GradedVectorField a, const GradedVectorField& b) {
        return a -= b;
    }
    friend GradedVectorField operator*(const Rational& s, GradedVectorField a) { return a *= s; }
    friend bool operator==(const GradedVectorField& a, const GradedVectorField& b);

private:
    ChartPtr chart_;
    std::vector<GradedPolynomial> components_;
};

/// f X (left multiplication of every coefficient).
GradedVectorField operator*(const GradedPolynomial& f, const GradedVectorField& X);

/// X(f) = sum_j a^j * d_j f.
GradedPolynomial apply_field(const GradedVectorField& X, const GradedPolynomial& f);

/// Parity of the term c*m*d/dx^j is p(m) + p(x^j). {even part, odd part}.
std::array<GradedVectorField, 2> split_by_parity(const GradedVectorField& X);
/// Common parity of all terms, nullopt when mixed or zero.
std::optional<int> parity_of(const GradedVectorField& X);

/// [X,Y] = X o Y - (-1)^{p(X)p(Y)} Y o X, evaluated per generator and summed
/// over the parity-homogeneous parts of X and Y.
GradedVectorField super_bracket(const GradedVectorField& X, const GradedVectorField& Y);

/// Delta^k = sum_j g_k(x^j) x^j d/dx^j for k = 1..n.
std::vector<GradedVectorField> euler_fields(const ChartPtr& chart);

/// Weight of c*m*d/dx^j is deg(m) - deg(x^j).
std::map<MultiDegree, GradedVectorField> weight_components(const GradedVectorField& X);

struct HomologicalReport {
    bool homological = false;
    GradedVectorField square;          // [Q,Q]
    std::optional<std::size_t> witness;  // a generator with nonzero [Q,Q] component
};

/// [Q,Q] = 0 test for an odd field. Even terms throw ValidationError.
HomologicalReport is_homological(const GradedVectorField& Q);

/// Every weight component has weight delta^k for some k (zero field: true).
bool is_unital(const GradedVectorField& Q);

/// `phi` is the pullback of a chart map: phi.from() is Y's chart, phi.to() is
/// X's chart. True iff X(phi(u)) = phi(Y(u)) for every generator u.
bool relates_fields(const Substitution& phi, const GradedVectorField& X,
                    const GradedVectorField& Y);

/// Restriction of Q to the sub-chart of generators with degree <= i. Throws
/// ValidationError naming the offending coefficient when Q is not tangent.
GradedVectorField restrict_field(const GradedVectorField& Q, const MultiDegree& i);

/// Lie algebra isomorphism between linear fields on a bundle and on its
/// parity-shifted bundle: eta_i d/deta_j -> (-1)^{p(i)+p(j)} mu_i d/dmu_j,
/// identity on base components. `target` declares the same generator names
/// with the fibre parities flipped.
GradedVectorField parity_change_linear(const GradedVectorField& X,
                                       const std::vector<bool>& fibre,
                                       const ChartPtr& target);

/// Fibres are the generators with entry 1 at structure label `label`; the
/// target chart forgets that grading, which flips exactly the fibre parities.
GradedVectorField parity_change_linear(const GradedVectorField& X, int label);
/// The chart used by the label form above.
ChartPtr parity_shifted_chart(const ChartPtr& chart, int label);

/// Rewrites a field into a chart with the same generator names and parities.
GradedVectorField transfer(const GradedVectorField& X, const ChartPtr& target);

/// "a*d/dx + (b + c)*d/dy"; "0" for the zero field.
std::string render(const GradedVectorField& X);

}  // namespace mg
