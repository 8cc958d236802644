#pragma once

#include <string>
#include <vector>

#include "multigraded/vector_field.hpp"

namespace mg {

/// A chart of T*M: the base generators x^j (degree (g(x^j),0)) followed by
/// momenta p_j (degree (1^n - g(x^j),1)). The new entry sits at the position
/// of the base chart's missing structure label.
struct CotangentChart {
    ChartPtr base;
    ChartPtr chart;
    int momentum_label = 0;
    /// Position of the momentum label among the chart's degree entries.
    std::size_t momentum_slot = 0;
    /// For every generator of `chart`: the index of its conjugate partner.
    std::vector<std::size_t> partner;
    /// For every generator of `chart`: true for momenta.
    std::vector<bool> is_momentum;

    std::size_t coordinate(std::size_t j) const { return j; }
    std::size_t momentum(std::size_t j) const { return base->size() + j; }
};

/// Momentum names default to "p_<name>".
CotangentChart cotangent_chart(const ChartPtr& base, std::vector<std::string> momentum_names = {});

/// A chart of TM: base generators followed by velocities of degree (g(x^j),1).
struct TangentChart {
    ChartPtr base;
    ChartPtr chart;
    int velocity_label = 0;
    std::size_t velocity_slot = 0;

    std::size_t coordinate(std::size_t j) const { return j; }
    std::size_t velocity(std::size_t j) const { return base->size() + j; }
};

/// Velocity names default to "d<label><name>", e.g. "d1x", then "d2d1x".
TangentChart tangent_chart(const ChartPtr& base, std::vector<std::string> velocity_names = {});

/// Parity of the canonical bracket: (n+1) mod 2 on graded charts, 0 on even
/// ones.
int bracket_parity(const CotangentChart& cot);

/// Canonical bracket of degree -1^{n+1}, normalised by {p_j, x^k} = delta_j^k.
/// With e = bracket_parity and F of parity a:
///   {F, x^j} = (-1)^{(a+e)p(p_j) + p(x^j)p(p_j)} d_{p_j} F
///   {F, p_j} = -(-1)^{(a+e)p(x^j)} d_{x^j} F
///   {F, G}   = sum_z {F, z} d_z G.
GradedPolynomial canonical_poisson(const GradedPolynomial& F, const GradedPolynomial& G,
                                   const CotangentChart& cot);

/// f -> {H, f}.
GradedVectorField hamiltonian_field(const GradedPolynomial& H, const CotangentChart& cot);

/// sum_j a^j p_j for X = sum_j a^j d/dx^j; {iota_X, x^j} = a^j.
GradedPolynomial linear_function(const GradedVectorField& X, const CotangentChart& cot);
/// Inverse of linear_function on functions linear in the momenta.
GradedVectorField field_of_linear(const GradedPolynomial& f, const CotangentChart& cot);

GradedVectorField cotangent_lift(const GradedVectorField& X, const CotangentChart& cot);
/// Cotangent lift plus the Euler field of the momentum structure.
GradedVectorField phase_lift(const GradedVectorField& X, const CotangentChart& cot);

/// d_T X = sum f^a d/dx^a + (-1)^{p(X)} sum d(f^a) d/dxdot^a, the unique lift
/// restricting to X on the base that commutes with the de Rham field.
GradedVectorField tangent_lift(const GradedVectorField& X, const TangentChart& tan);

/// d = sum xdot^a d/dx^a.
GradedVectorField de_rham_field(const TangentChart& tan);

/// Generators of N with entry 0 at structure label `label`, that entry
/// dropped.
ChartPtr side_chart(const ChartPtr& chart, int label);

/// The identification T*(N_[k]) = N for N = T*M. The side chart's momenta are
/// named after their partners in N.
struct LegendreMap {
    CotangentChart side;      // T*(N_[k])
    Substitution pullback;    // from side.chart to N
};

/// Pullback of the Legendre map at structure label k of N = cot.chart: side
/// coordinates are fixed, the momentum of an original coordinate x goes to
/// its partner p, and the momentum of an original momentum pi goes to
/// -(-1)^{p(y)p(pi)} y. On even charts this is (x,y,p,pi) -> (x,pi,p,-y).
/// k = the momentum label gives the identity.
LegendreMap legendre_map(const CotangentChart& cot, int label);

/// sigma.from() = target.chart, sigma.to() = source.chart; true iff
/// {sigma(u), sigma(v)} = sigma({u, v}) for all generator pairs.
bool is_symplectomorphism(const Substitution& sigma, const CotangentChart& source,
                          const CotangentChart& target);

}  // namespace mg
