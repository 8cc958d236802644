#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "multigraded/higher.hpp"
#include "multigraded/nvb.hpp"

namespace mg {

/// Line-oriented manifest. '#' starts a comment. Top-level statements:
///
///   gradings 2
///   labels 2 3                       (optional, default 1..n)
///   parity graded | even             (optional, default graded)
///   generator x (0,0)
///   function f = x^2                 (on the chart)
///   hamiltonian H = d1x*p_x          (on T* of the chart, momenta p_<name>)
///   field X                          (on the chart)
///     x = xi
///   end
///   sidefield 3 1                    (q^3_[1] on the side chart N_[1] of T* of the chart)
///     t011 = t010*t001a*t001b
///   end
///   assignment F
///     labels 1 2                     (optional)
///     base M 1
///     factor (1,0) A 2
///     factor (1,1) C* 1              (a trailing * marks a dual factor)
///   end
///   transition T on F                (coordinates of assignment_chart(F))
///     term y11_1 = x1 | y10_1 y01_1  (coefficient, then source parts)
///   end
///
/// Generators a transition never mentions map to themselves.
struct Manifest {
    ChartPtr chart;  // null when no generators are declared
    std::map<std::string, GradedPolynomial> functions;
    std::map<std::string, GradedPolynomial> hamiltonians;
    std::map<std::string, GradedVectorField> fields;
    std::map<std::pair<int, int>, GradedVectorField> side_fields;
    std::map<std::string, FactorAssignment> assignments;
    std::map<std::string, TransitionMap> transitions;

    /// Throws ValidationError without generators.
    const ChartPtr& require_chart() const;
    /// T* of the chart with default momentum names.
    const CotangentChart& phase() const;

private:
    mutable std::optional<CotangentChart> phase_;
};

/// Throws ParseError with the manifest line and column.
Manifest parse_manifest(std::string_view text);

/// "(1,0)", "(0)" or "()"; ParseError positions are relative to line/column.
MultiDegree parse_degree(std::string_view text, int line = 1, int column = 1);

}  // namespace mg
