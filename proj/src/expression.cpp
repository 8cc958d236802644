#include "multigraded/expression.hpp"

#include <cctype>

#include "multigraded/error.hpp"

namespace mg {

namespace {

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_ident_char(unsigned char c) { return is_ident_start(c) || std::isdigit(c); }

class Parser {
public:
    Parser(std::string_view text, const ChartPtr& chart, int line, int column)
        : text_(text), chart_(chart), line_(line), column_(column) {}

    GradedPolynomial parse() {
        GradedPolynomial value = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, line_, column_ + static_cast<int>(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string integer_token() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::string(text_.substr(start, pos_ - start));
    }

    GradedPolynomial expr() {
        GradedPolynomial value = term();
        for (;;) {
            if (accept('+'))
                value += term();
            else if (accept('-'))
                value -= term();
            else
                return value;
        }
    }

    GradedPolynomial term() {
        GradedPolynomial value = unary();
        while (accept('*')) value = value * unary();
        return value;
    }

    GradedPolynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power_expr();
    }

    GradedPolynomial power_expr() {
        GradedPolynomial base = primary();
        if (accept('^')) {
            const std::string digits = integer_token();
            if (digits.size() > 6) fail("exponent too large");
            base = power(base, static_cast<std::uint32_t>(std::stoul(digits)));
        }
        return base;
    }

    GradedPolynomial primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const unsigned char c = static_cast<unsigned char>(text_[pos_]);
        if (c == '(') {
            ++pos_;
            GradedPolynomial inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(c)) {
            Rational value(integer_token());
            if (accept('/')) {
                const std::size_t at = pos_;
                Rational denominator(integer_token());
                if (sgn(denominator) == 0) {
                    pos_ = at;
                    fail("zero denominator");
                }
                value /= denominator;
            }
            value.canonicalize();
            return GradedPolynomial::constant(chart_, value);
        }
        if (is_ident_start(c)) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            auto index = chart_->find(name);
            if (!index) {
                pos_ = start;
                fail("undeclared generator '" + name + "'");
            }
            return GradedPolynomial::generator(chart_, *index);
        }
        fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
    }

    std::string_view text_;
    const ChartPtr& chart_;
    int line_;
    int column_;
    std::size_t pos_ = 0;
};

}  // namespace

GradedPolynomial parse_polynomial(std::string_view text, const ChartPtr& chart, int line,
                                  int column) {
    return Parser(text, chart, line, column).parse();
}

std::string render_rational(const Rational& q) {
    return q.get_str();
}

std::string render(const GradedPolynomial& f) {
    if (f.is_zero()) return "0";
    const GradedChart& chart = *f.chart();
    std::string out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        std::string monomial;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!monomial.empty()) monomial += "*";
            monomial += chart.name(i);
            if (e[i] > 1) monomial += "^" + std::to_string(e[i]);
        }
        const bool negative = sgn(c) < 0;
        const Rational magnitude = abs(c);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (monomial.empty())
            out += render_rational(magnitude);
        else if (magnitude == 1)
            out += monomial;
        else
            out += render_rational(magnitude) + "*" + monomial;
    }
    return out;
}

}  // namespace mg
