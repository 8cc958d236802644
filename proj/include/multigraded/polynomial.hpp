#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "multigraded/chart.hpp"

namespace mg {

using Rational = mpq_class;
/// Exponent of each chart generator, in declaration order. Odd generators
/// carry exponent 0 or 1.
using Exponents = std::vector<std::uint32_t>;
/// Canonical monomial -> nonzero coefficient. Ordered, so iteration and
/// rendering are deterministic.
using TermMap = std::map<Exponents, Rational>;

struct Monomial {
    Rational coefficient;
    Exponents exponents;
};

/// Brings an unordered product of generator powers into canonical order,
/// collecting one sign per transposition of two odd generators. A repeated
/// odd generator gives the zero monomial (coefficient 0).
Monomial normalize_monomial(const GradedChart& chart,
                            const std::vector<std::pair<std::size_t, std::uint32_t>>& factors,
                            Rational coefficient);

/// Sign of a*b relative to the canonical monomial a+b: +1, -1, or 0 when the
/// two share an odd generator.
int monomial_product_sign(const GradedChart& chart, const Exponents& a, const Exponents& b);

/// Exact rational combination of canonical monomials over one chart.
class GradedPolynomial {
public:
    explicit GradedPolynomial(ChartPtr chart);

    static GradedPolynomial constant(ChartPtr chart, const Rational& value);
    static GradedPolynomial generator(ChartPtr chart, std::size_t index);
    static GradedPolynomial generator(ChartPtr chart, const std::string& name);
    static GradedPolynomial from_monomial(ChartPtr chart, const Monomial& m);

    const ChartPtr& chart() const noexcept { return chart_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Adds c * monomial (already canonical), dropping zero coefficients.
    void add_term(const Exponents& exponents, const Rational& coefficient);

    GradedPolynomial& operator+=(const GradedPolynomial& other);
    GradedPolynomial& operator-=(const GradedPolynomial& other);
    GradedPolynomial& operator*=(const Rational& scale);
    GradedPolynomial operator-() const;

    friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) {
        return a += b;
    }
    friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) {
        return a -= b;
    }
    friend GradedPolynomial operator*(GradedPolynomial a, const Rational& s) { return a *= s; }
    friend GradedPolynomial operator*(const Rational& s, GradedPolynomial a) { return a *= s; }

    friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b);

private:
    ChartPtr chart_;
    TermMap terms_;
};

/// Graded-commutative product; chart mismatch throws.
GradedPolynomial multiply(const GradedPolynomial& f, const GradedPolynomial& g);
GradedPolynomial operator*(const GradedPolynomial& f, const GradedPolynomial& g);
GradedPolynomial power(const GradedPolynomial& f, std::uint32_t exponent);

/// Multi-degree of a monomial.
MultiDegree monomial_degree(const GradedChart& chart, const Exponents& e);
/// Parity of a monomial under the chart's rule.
int monomial_parity(const GradedChart& chart, const Exponents& e);

/// Common degree of all terms; nullopt when inhomogeneous or zero (use
/// is_zero() to tell the two apart).
std::optional<MultiDegree> multidegree_of(const GradedPolynomial& f);
/// Common parity of all terms; nullopt when mixed or zero.
std::optional<int> parity_of(const GradedPolynomial& f);
/// {even part, odd part}.
std::array<GradedPolynomial, 2> split_by_parity(const GradedPolynomial& f);
/// Homogeneous components keyed by multi-degree.
std::map<MultiDegree, GradedPolynomial> split_by_degree(const GradedPolynomial& f);

/// Left partial derivative: d_x(fg) = d_x(f) g + (-1)^{p(x)p(f)} f d_x(g).
GradedPolynomial left_partial(const GradedPolynomial& f, std::size_t generator);
GradedPolynomial left_partial(const GradedPolynomial& f, const std::string& generator);

/// True iff some term of f contains generator i.
bool contains_generator(const GradedPolynomial& f, std::size_t i);

/// Rewrites f into another chart that declares every generator of f under the
/// same name and parity (sign-correct when the orders differ).
GradedPolynomial transfer(const GradedPolynomial& f, const ChartPtr& target);

/// An algebra morphism given on generators: generator i of `from` goes to
/// images[i], a polynomial over `to`. This is the pullback of a chart map
/// to -> from, so it acts on functions of `from`.
class Substitution {
public:
    Substitution(ChartPtr from, ChartPtr to, std::vector<GradedPolynomial> images);

    static Substitution identity(ChartPtr chart);

    const ChartPtr& from() const noexcept { return from_; }
    const ChartPtr& to() const noexcept { return to_; }
    const std::vector<GradedPolynomial>& images() const noexcept { return images_; }
    const GradedPolynomial& image(std::size_t i) const { return images_.at(i); }

    GradedPolynomial apply(const GradedPolynomial& f) const;
    /// u -> next(this(u)): a substitution from `from()` to `next.to()`.
    Substitution followed_by(const Substitution& next) const;

    /// True when every image is a homogeneous polynomial of the source
    /// generator's degree (zero images allowed).
    bool preserves_degrees() const;

    friend bool operator==(const Substitution& a, const Substitution& b);

private:
    ChartPtr from_;
    ChartPtr to_;
    std::vector<GradedPolynomial> images_;
};

GradedPolynomial substitute(const GradedPolynomial& f, const Substitution& map);

}  // namespace mg
