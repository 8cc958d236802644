#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multigraded/lifts.hpp"

namespace mg {

/// A Lie algebroid of rank `rank` over a chart of degree-0 coordinates, in a
/// local basis e_1..e_rank: rho(e_r) = sum_a anchor[r][a] d/dx^a and
/// [e_r, e_s] = sum_u structure[u][r][s] e_u. Coefficients live on `base`.
struct AlgebroidData {
    ChartPtr base;
    std::size_t rank = 0;
    std::vector<std::vector<GradedPolynomial>> anchor;                  // [r][a]
    std::vector<std::vector<std::vector<GradedPolynomial>>> structure;  // [u][r][s]

    /// Zero anchor and bracket.
    static AlgebroidData zero(ChartPtr base, std::size_t rank);
};

/// Throws unless the shapes match and structure[u] is antisymmetric.
void validate(const AlgebroidData& data);

/// The cotangent algebroid of a bivector: rho(dx^r) = sum_a lambda[r][a]
/// d/dx^a, [dx^r, dx^s] = sum_u d_u(lambda[r][s]) dx^u.
AlgebroidData poisson_algebroid(const ChartPtr& base,
                                const std::vector<std::vector<GradedPolynomial>>& lambda);

/// The structure constants of a Lie algebra (empty base).
AlgebroidData lie_algebra(std::size_t rank,
                          const std::vector<std::vector<std::vector<Rational>>>& structure);

struct HamiltonianStructure {
    CotangentChart chart;
    GradedPolynomial H;
};

/// H = sum rho^r_a xi^r p_a - 1/2 sum C^u_rs th_u xi^r xi^s on T*(E*[1]):
/// base coordinates x^a (degree (0,0)), dual fibre coordinates th_u (degree
/// (1,0)), momenta p_a (degree (1,1)) and xi^r = momentum of th_r (degree
/// (0,1)). Dual fibre names default to "th<u>"; momentum names follow
/// cotangent_chart.
HamiltonianStructure algebroid_hamiltonian(const AlgebroidData& data,
                                           std::vector<std::string> dual_names = {});

/// The chart of E[1]: base coordinates and xi^r of degree (1); names default
/// to "xi<r>".
ChartPtr algebroid_chart(const AlgebroidData& data, std::vector<std::string> names = {});
/// Q = sum rho^r_a xi^r d/dx^a - 1/2 sum C^u_rs xi^r xi^s d/dxi^u.
GradedVectorField algebroid_field(const AlgebroidData& data, const ChartPtr& chart);

struct MasterReport {
    bool holds = false;
    GradedPolynomial residual;  // {H, H}
};

/// {H,H} = 0. Throws ValidationError unless p(H) + bracket parity is odd.
MasterReport master_equation(const HamiltonianStructure& H);

struct BialgebroidReport {
    bool holds = false;
    MasterReport first;
    MasterReport second;
    GradedPolynomial commutator;  // {H1, H2}
    std::optional<MultiDegree> first_degree;
    std::optional<MultiDegree> second_degree;
};

/// Both master equations and {H1,H2} = 0. Degrees are reported, not enforced.
BialgebroidReport bialgebroid_check(const HamiltonianStructure& H1, const HamiltonianStructure& H2);

/// {{X, H}, Y}.
GradedPolynomial derived_bracket(const HamiltonianStructure& H, const GradedPolynomial& X,
                                 const GradedPolynomial& Y);

struct PairResidual {
    int first;   // structure labels
    int second;
    GradedVectorField bracket;  // [Q_first, Q_second]
};

struct NfoldReport {
    bool passed = false;
    bool unital = false;
    std::vector<MultiDegree> foreign_weights;  // weights outside {delta^k}
    std::map<int, GradedVectorField> components;  // Q_k by structure label
    std::vector<PairResidual> failures;  // nonzero [Q_k, Q_l], k <= l
};

/// Weight decomposition, unitality, and [Q_k, Q_l] = 0 for all k <= l (pairs
/// run in parallel).
NfoldReport nfold_check(const GradedVectorField& Q);

struct DrinfeldReport {
    bool passed = false;
    bool degree_ok = false;
    std::optional<MultiDegree> total_degree_mismatch;  // a summand of the wrong total degree
    MasterReport master;
    NfoldReport field;
    std::map<int, GradedPolynomial> parts;  // H_k generating Q_k
    std::vector<MultiDegree> quasi_weights;  // weights of Q outside {delta^k}
};

/// Total degree n+1 on the n-graded chart, {H,H} = 0, unital hamiltonian field.
DrinfeldReport drinfeld_check(const HamiltonianStructure& H);

/// The cotangent-lift Hamiltonian of an n-fold algebroid field; throws when
/// nfold_check fails.
HamiltonianStructure drinfeld_from_nfold(const GradedVectorField& Q,
                                         std::vector<std::string> momentum_names = {});

/// tangent_lift(Q) + de_rham_field on `tan`; throws when nfold_check fails.
GradedVectorField tangent_prolongation(const GradedVectorField& Q, const TangentChart& tan);
GradedVectorField tangent_prolongation(const GradedVectorField& Q);

/// The side charts N_[k] of N = cot.chart on which compatibility fields live.
std::map<int, ChartPtr> side_charts(const CotangentChart& cot);

/// q^r_[k] for r != k: the part H_r of H read in the coordinates of
/// T*(N_[k]) through the Legendre identification, as a field on N_[k].
std::map<std::pair<int, int>, GradedVectorField> side_fields(const HamiltonianStructure& H);

struct LiftComparison {
    int structure;  // r
    int first_side;
    int second_side;
    GradedPolynomial first_lift;
    GradedPolynomial second_lift;
};

struct CompatibilityReport {
    bool passed = false;
    std::map<std::pair<int, int>, MasterReport> masters;       // (r, k)
    std::map<std::pair<int, int>, BialgebroidReport> pairs;    // (k, s), k < s
    std::vector<std::string> restriction_failures;
    std::vector<LiftComparison> conflicts;
    std::optional<HamiltonianStructure> assembled;
    std::optional<DrinfeldReport> drinfeld;
};

/// fields[(r, k)] = q^r_[k] on side_charts(cot)[k]; missing entries are zero.
/// Lifts every field to N through the Legendre identification at k, checks
/// lift coincidence for each r, pairwise bialgebroid conditions and
/// agreement on the double sides N_[k,s]; on success sums the lifts and runs
/// drinfeld_check.
CompatibilityReport compatibility_check(const CotangentChart& cot,
                                        const std::map<std::pair<int, int>, GradedVectorField>& fields);

}  // namespace mg
