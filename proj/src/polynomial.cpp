#include "multigraded/polynomial.hpp"

#include <bit>

#include "multigraded/error.hpp"
#include "multigraded/kernels.hpp"

namespace mg {

namespace {

std::uint64_t odd_mask(const GradedChart& chart, const Exponents& e) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0 && chart.is_odd(i)) mask |= std::uint64_t{1} << i;
    return mask;
}

}  // namespace

int monomial_product_sign(const GradedChart& chart, const Exponents& a, const Exponents& b) {
    const std::uint64_t oa = odd_mask(chart, a);
    const std::uint64_t ob = odd_mask(chart, b);
    if (oa & ob) return 0;
    // Each odd factor of b moves left past the odd factors of a with a larger
    // index.
    int swaps = 0;
    for (std::uint64_t rest = ob; rest != 0; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        const std::uint64_t above = (j >= 63) ? 0 : (~std::uint64_t{0} << (j + 1));
        swaps += std::popcount(oa & above);
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

Monomial normalize_monomial(const GradedChart& chart,
                            const std::vector<std::pair<std::size_t, std::uint32_t>>& factors,
                            Rational coefficient) {
    Monomial m{std::move(coefficient), Exponents(chart.size(), 0)};
    for (const auto& [index, exponent] : factors) {
        if (index >= chart.size())
            throw ValidationError("generator index " + std::to_string(index) + " not in chart");
        if (exponent == 0) continue;
        Exponents single(chart.size(), 0);
        single[index] = exponent;
        if (chart.is_odd(index) && exponent > 1) {
            m.coefficient = 0;
            break;
        }
        const int sign = monomial_product_sign(chart, m.exponents, single);
        if (sign == 0) {
            m.coefficient = 0;
            break;
        }
        if (sign < 0) m.coefficient = -m.coefficient;
        m.exponents[index] += exponent;
    }
    if (sgn(m.coefficient) == 0) m.exponents.assign(chart.size(), 0);
    return m;
}

GradedPolynomial::GradedPolynomial(ChartPtr chart) : chart_(std::move(chart)) {
    if (!chart_) throw ValidationError("polynomial without chart");
}

GradedPolynomial GradedPolynomial::constant(ChartPtr chart, const Rational& value) {
    GradedPolynomial p(std::move(chart));
    p.add_term(Exponents(p.chart_->size(), 0), value);
    return p;
}

GradedPolynomial GradedPolynomial::generator(ChartPtr chart, std::size_t index) {
    GradedPolynomial p(std::move(chart));
    if (index >= p.chart_->size()) throw ValidationError("generator index out of range");
    Exponents e(p.chart_->size(), 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

GradedPolynomial GradedPolynomial::generator(ChartPtr chart, const std::string& name) {
    const std::size_t i = chart->index_of(name);
    return generator(std::move(chart), i);
}

GradedPolynomial GradedPolynomial::from_monomial(ChartPtr chart, const Monomial& m) {
    GradedPolynomial p(std::move(chart));
    if (m.exponents.size() != p.chart_->size())
        throw ValidationError("monomial length does not match chart");
    p.add_term(m.exponents, m.coefficient);
    return p;
}

void GradedPolynomial::add_term(const Exponents& exponents, const Rational& coefficient) {
    if (sgn(coefficient) == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& other) {
    require_same_chart(chart_, other.chart_, "add");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& other) {
    require_same_chart(chart_, other.chart_, "subtract");
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

GradedPolynomial& GradedPolynomial::operator*=(const Rational& scale) {
    if (sgn(scale) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= scale;
    return *this;
}

GradedPolynomial GradedPolynomial::operator-() const {
    GradedPolynomial p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
    return same_chart(a.chart_, b.chart_) && a.terms_ == b.terms_;
}

GradedPolynomial multiply(const GradedPolynomial& f, const GradedPolynomial& g) {
    require_same_chart(f.chart(), g.chart(), "multiply");
    GradedPolynomial out(f.chart());
    if (f.is_zero() || g.is_zero()) return out;
    const std::size_t pairs = f.size() * g.size();
    TermMap terms = pairs >= kernels::parallel_threshold()
                        ? kernels::multiply_parallel(*f.chart(), f.terms(), g.terms())
                        : kernels::multiply_serial(*f.chart(), f.terms(), g.terms());
    for (const auto& [e, c] : terms) out.add_term(e, c);
    return out;
}

GradedPolynomial operator*(const GradedPolynomial& f, const GradedPolynomial& g) {
    return multiply(f, g);
}

GradedPolynomial power(const GradedPolynomial& f, std::uint32_t exponent) {
    GradedPolynomial result = GradedPolynomial::constant(f.chart(), 1);
    for (std::uint32_t k = 0; k < exponent; ++k) result = result * f;
    return result;
}

MultiDegree monomial_degree(const GradedChart& chart, const Exponents& e) {
    MultiDegree d(chart.gradings());
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) d += chart.degree(i) * static_cast<int>(e[i]);
    return d;
}

int monomial_parity(const GradedChart& chart, const Exponents& e) {
    int p = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] % 2 == 1 && chart.is_odd(i)) p ^= 1;
    return p;
}

std::optional<MultiDegree> multidegree_of(const GradedPolynomial& f) {
    std::optional<MultiDegree> common;
    for (const auto& [e, c] : f.terms()) {
        MultiDegree d = monomial_degree(*f.chart(), e);
        if (!common)
            common = std::move(d);
        else if (*common != d)
            return std::nullopt;
    }
    return common;
}

std::optional<int> parity_of(const GradedPolynomial& f) {
    std::optional<int> common;
    for (const auto& [e, c] : f.terms()) {
        const int p = monomial_parity(*f.chart(), e);
        if (!common)
            common = p;
        else if (*common != p)
            return std::nullopt;
    }
    return common;
}

std::array<GradedPolynomial, 2> split_by_parity(const GradedPolynomial& f) {
    std::array<GradedPolynomial, 2> out{GradedPolynomial(f.chart()), GradedPolynomial(f.chart())};
    for (const auto& [e, c] : f.terms()) out[monomial_parity(*f.chart(), e)].add_term(e, c);
    return out;
}

std::map<MultiDegree, GradedPolynomial> split_by_degree(const GradedPolynomial& f) {
    std::map<MultiDegree, GradedPolynomial> out;
    for (const auto& [e, c] : f.terms()) {
        auto it = out.try_emplace(monomial_degree(*f.chart(), e), f.chart()).first;
        it->second.add_term(e, c);
    }
    return out;
}

GradedPolynomial left_partial(const GradedPolynomial& f, std::size_t generator) {
    const GradedChart& chart = *f.chart();
    if (generator >= chart.size()) throw ValidationError("left_partial: unknown generator");
    GradedPolynomial out(f.chart());
    const bool odd = chart.is_odd(generator);
    for (const auto& [e, c] : f.terms()) {
        if (e[generator] == 0) continue;
        Exponents d = e;
        d[generator] -= 1;
        Rational coefficient = c;
        if (odd) {
            // Move the odd generator to the front past the odd factors before it.
            int before = 0;
            for (std::size_t i = 0; i < generator; ++i)
                if (e[i] != 0 && chart.is_odd(i)) ++before;
            if (before % 2) coefficient = -coefficient;
        } else {
            coefficient *= e[generator];
        }
        out.add_term(d, coefficient);
    }
    return out;
}

GradedPolynomial left_partial(const GradedPolynomial& f, const std::string& generator) {
    return left_partial(f, f.chart()->index_of(generator));
}

bool contains_generator(const GradedPolynomial& f, std::size_t i) {
    for (const auto& [e, c] : f.terms())
        if (e.at(i) != 0) return true;
    return false;
}

GradedPolynomial transfer(const GradedPolynomial& f, const ChartPtr& target) {
    if (same_chart(f.chart(), target)) return f;
    const GradedChart& source = *f.chart();
    std::vector<bool> used(source.size(), false);
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) used[i] = true;
    std::vector<std::size_t> where(source.size(), 0);
    bool monotone = true;
    std::optional<std::size_t> previous;
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (!used[i]) continue;
        auto j = target->find(source.name(i));
        if (!j) throw ValidationError("transfer: generator '" + source.name(i) + "' missing");
        if (target->parity(*j) != source.parity(i))
            throw ValidationError("transfer: parity of '" + source.name(i) + "' differs");
        where[i] = *j;
        if (previous && *j < *previous) monotone = false;
        previous = *j;
    }
    GradedPolynomial out(target);
    for (const auto& [e, c] : f.terms()) {
        if (monotone) {
            Exponents mapped(target->size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) mapped[where[i]] = e[i];
            out.add_term(mapped, c);
        } else {
            std::vector<std::pair<std::size_t, std::uint32_t>> factors;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) factors.emplace_back(where[i], e[i]);
            Monomial m = normalize_monomial(*target, factors, c);
            out.add_term(m.exponents, m.coefficient);
        }
    }
    return out;
}

Substitution::Substitution(ChartPtr from, ChartPtr to, std::vector<GradedPolynomial> images)
    : from_(std::move(from)), to_(std::move(to)), images_(std::move(images)) {
    if (images_.size() != from_->size())
        throw ValidationError("substitution: expected " + std::to_string(from_->size()) +
                              " images, got " + std::to_string(images_.size()));
    for (std::size_t i = 0; i < images_.size(); ++i) {
        const GradedPolynomial& img = images_[i];
        require_same_chart(img.chart(), to_, "substitution image");
        if (img.is_zero()) continue;
        auto p = parity_of(img);
        if (!p || *p != from_->parity(i))
            throw ValidationError("substitution: parity mismatch for generator '" +
                                  from_->name(i) + "'");
    }
}

Substitution Substitution::identity(ChartPtr chart) {
    std::vector<GradedPolynomial> images;
    for (std::size_t i = 0; i < chart->size(); ++i)
        images.push_back(GradedPolynomial::generator(chart, i));
    return Substitution(chart, chart, std::move(images));
}

GradedPolynomial Substitution::apply(const GradedPolynomial& f) const {
    require_same_chart(f.chart(), from_, "substitute");
    GradedPolynomial out(to_);
    for (const auto& [e, c] : f.terms()) {
        GradedPolynomial term = GradedPolynomial::constant(to_, c);
        for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) term = term * images_[i];
        out += term;
    }
    return out;
}

Substitution Substitution::followed_by(const Substitution& next) const {
    require_same_chart(to_, next.from_, "compose substitutions");
    std::vector<GradedPolynomial> images;
    images.reserve(images_.size());
    for (const GradedPolynomial& img : images_) images.push_back(next.apply(img));
    return Substitution(from_, next.to_, std::move(images));
}

bool Substitution::preserves_degrees() const {
    if (from_->gradings() != to_->gradings()) return false;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i].is_zero()) continue;
        auto d = multidegree_of(images_[i]);
        if (!d || *d != from_->degree(i)) return false;
    }
    return true;
}

bool operator==(const Substitution& a, const Substitution& b) {
    return same_chart(a.from_, b.from_) && same_chart(a.to_, b.to_) && a.images_ == b.images_;
}

GradedPolynomial substitute(const GradedPolynomial& f, const Substitution& map) {
    return map.apply(f);
}

}  // namespace mg
