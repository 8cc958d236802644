#include "multigraded/manifest.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <vector>

#include "multigraded/error.hpp"
#include "multigraded/expression.hpp"

namespace mg {

const ChartPtr& Manifest::require_chart() const {
    if (!chart) throw ValidationError("the manifest declares no generators");
    return chart;
}

const CotangentChart& Manifest::phase() const {
    if (!phase_) phase_ = cotangent_chart(require_chart());
    return *phase_;
}

MultiDegree parse_degree(std::string_view text, int line, int column) {
    std::size_t at = 0;
    auto skip = [&] {
        while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
    };
    auto fail = [&](const std::string& what) -> MultiDegree {
        throw ParseError(what, line, column + static_cast<int>(at));
    };
    skip();
    if (at == text.size() || text[at] != '(') return fail("expected '(' to open a degree");
    ++at;
    std::vector<int> entries;
    skip();
    if (at < text.size() && text[at] == ')') {
        ++at;
    } else {
        for (;;) {
            skip();
            bool negative = false;
            if (at < text.size() && text[at] == '-') {
                negative = true;
                ++at;
            }
            int value = 0;
            auto [end, ec] = std::from_chars(text.data() + at, text.data() + text.size(), value);
            if (ec != std::errc()) return fail("expected an integer degree entry");
            at = static_cast<std::size_t>(end - text.data());
            entries.push_back(negative ? -value : value);
            skip();
            if (at < text.size() && text[at] == ',') {
                ++at;
                continue;
            }
            if (at < text.size() && text[at] == ')') {
                ++at;
                break;
            }
            return fail("expected ',' or ')' in a degree");
        }
    }
    skip();
    if (at != text.size()) return fail("unexpected text after a degree");
    return MultiDegree(std::move(entries));
}

namespace {

struct Line {
    int number;
    std::string text;  // comment stripped
    std::vector<std::pair<std::string, int>> words;  // word, 1-based column
};

Line split_line(int number, std::string text) {
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    Line line{number, text, {}};
    std::size_t at = 0;
    while (at < text.size()) {
        while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
        if (at == text.size()) break;
        const std::size_t start = at;
        if (text[at] == '(') {
            while (at < text.size() && text[at] != ')') ++at;
            if (at < text.size()) ++at;
        } else {
            while (at < text.size() && !std::isspace(static_cast<unsigned char>(text[at]))) ++at;
        }
        line.words.emplace_back(text.substr(start, at - start), static_cast<int>(start) + 1);
    }
    return line;
}

int parse_int(const std::pair<std::string, int>& word, int line, const char* what) {
    int value = 0;
    const std::string& s = word.first;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end != s.data() + s.size())
        throw ParseError(std::string("expected an integer ") + what, line, word.second);
    return value;
}

/// Text after the first '=' of the line, with its column.
std::pair<std::string, int> after_equals(const Line& line) {
    const auto eq = line.text.find('=');
    if (eq == std::string::npos) throw ParseError("expected '='", line.number, 1);
    return {line.text.substr(eq + 1), static_cast<int>(eq) + 2};
}

class Parser {
public:
    explicit Parser(std::string_view text) {
        int number = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string raw(text.substr(start, end - start));
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            lines_.push_back(split_line(++number, std::move(raw)));
            if (end == text.size()) break;
            start = end + 1;
        }
    }

    Manifest run() {
        while (at_ < lines_.size()) {
            const Line& line = lines_[at_++];
            if (line.words.empty()) continue;
            statement(line);
        }
        if (!chart_frozen_ && !generators_.empty()) freeze(lines_.empty() ? 1 : lines_.back().number);
        return std::move(manifest_);
    }

private:
    void statement(const Line& line) {
        const std::string& keyword = line.words[0].first;
        if (keyword == "gradings") {
            expect_words(line, 2);
            if (chart_frozen_ || !generators_.empty())
                throw ParseError("gradings must precede the generators", line.number, line.words[0].second);
            const int n = parse_int(line.words[1], line.number, "number of gradings");
            if (n < 0) throw ParseError("gradings must be nonnegative", line.number, line.words[1].second);
            gradings_ = n;
        } else if (keyword == "labels") {
            before_chart(line);
            labels_.clear();
            for (std::size_t k = 1; k < line.words.size(); ++k)
                labels_.push_back(parse_int(line.words[k], line.number, "structure label"));
        } else if (keyword == "parity") {
            before_chart(line);
            expect_words(line, 2);
            if (line.words[1].first == "graded")
                rule_ = ParityRule::graded;
            else if (line.words[1].first == "even")
                rule_ = ParityRule::even;
            else
                throw ParseError("parity must be 'graded' or 'even'", line.number, line.words[1].second);
        } else if (keyword == "generator") {
            before_chart(line);
            expect_words(line, 3);
            if (!gradings_) throw ParseError("declare gradings before generators", line.number, 1);
            const auto& [name, column] = line.words[1];
            if (!valid_name(name)) throw ParseError("invalid generator name '" + name + "'", line.number, column);
            if (!generator_names_.insert(name).second)
                throw ParseError("duplicate generator '" + name + "'", line.number, column);
            MultiDegree d = parse_degree(line.words[2].first, line.number, line.words[2].second);
            if (d.size() != static_cast<std::size_t>(*gradings_))
                throw ParseError("degree " + d.str() + " has " + std::to_string(d.size()) + " entries, expected " +
                                     std::to_string(*gradings_),
                                 line.number, line.words[2].second);
            if (!d.is_binary())
                throw ParseError("degree " + d.str() + " exceeds 1^" + std::to_string(*gradings_), line.number,
                                 line.words[2].second);
            generators_.push_back({name, d});
        } else if (keyword == "function") {
            named_polynomial(line, manifest_.functions, [&] { return chart(line); });
        } else if (keyword == "hamiltonian") {
            named_polynomial(line, manifest_.hamiltonians, [&] {
                chart(line);
                return manifest_.phase().chart;
            });
        } else if (keyword == "field") {
            expect_words(line, 2);
            const auto& [name, column] = line.words[1];
            if (manifest_.fields.count(name)) throw ParseError("duplicate field '" + name + "'", line.number, column);
            manifest_.fields.emplace(name, field_block(chart(line)));
        } else if (keyword == "sidefield") {
            expect_words(line, 3);
            const int r = parse_int(line.words[1], line.number, "structure label");
            const int k = parse_int(line.words[2], line.number, "side label");
            chart(line);
            const auto sides = side_charts(manifest_.phase());
            if (!sides.count(k) || !sides.count(r) || r == k)
                throw ParseError("side field indices must be distinct labels of the cotangent chart", line.number,
                                 line.words[1].second);
            if (manifest_.side_fields.count({r, k}))
                throw ParseError("duplicate side field", line.number, line.words[1].second);
            manifest_.side_fields.emplace(std::make_pair(r, k), field_block(sides.at(k)));
        } else if (keyword == "assignment") {
            expect_words(line, 2);
            const auto& [name, column] = line.words[1];
            if (manifest_.assignments.count(name))
                throw ParseError("duplicate assignment '" + name + "'", line.number, column);
            manifest_.assignments.emplace(name, assignment_block(line));
        } else if (keyword == "transition") {
            expect_words(line, 4);
            const auto& [name, column] = line.words[1];
            if (manifest_.transitions.count(name))
                throw ParseError("duplicate transition '" + name + "'", line.number, column);
            if (line.words[2].first != "on")
                throw ParseError("expected 'on <assignment>'", line.number, line.words[2].second);
            auto it = manifest_.assignments.find(line.words[3].first);
            if (it == manifest_.assignments.end())
                throw ParseError("unknown assignment '" + line.words[3].first + "'", line.number, line.words[3].second);
            manifest_.transitions.emplace(name, transition_block(line, assignment_chart(it->second)));
        } else {
            throw ParseError("unknown statement '" + keyword + "'", line.number, line.words[0].second);
        }
    }

    static bool valid_name(const std::string& name) {
        if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) return false;
        for (unsigned char c : name)
            if (!(std::isalnum(c) || c == '_' || c >= 0x80)) return false;
        return true;
    }

    static void expect_words(const Line& line, std::size_t count) {
        if (line.words.size() < count)
            throw ParseError("'" + line.words[0].first + "' needs " + std::to_string(count - 1) + " argument(s)",
                             line.number, static_cast<int>(line.text.size()) + 1);
        if (line.words.size() > count)
            throw ParseError("unexpected '" + line.words[count].first + "'", line.number, line.words[count].second);
    }

    void before_chart(const Line& line) const {
        if (chart_frozen_)
            throw ParseError("chart declarations must precede functions, fields and hamiltonians", line.number,
                             line.words[0].second);
    }

    void freeze(int line) {
        try {
            manifest_.chart = make_chart(static_cast<std::size_t>(gradings_.value_or(0)), generators_, rule_, labels_);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), line, 1);
        }
        chart_frozen_ = true;
    }

    const ChartPtr& chart(const Line& line) {
        if (!chart_frozen_) {
            if (generators_.empty()) throw ParseError("declare generators first", line.number, 1);
            freeze(line.number);
        }
        return manifest_.chart;
    }

    template <class ChartOf>
    void named_polynomial(const Line& line, std::map<std::string, GradedPolynomial>& into, ChartOf chart_of) {
        if (line.words.size() < 4 || line.words[2].first != "=")
            throw ParseError("expected '" + line.words[0].first + " NAME = POLYNOMIAL'", line.number,
                             line.words[0].second);
        const auto& [name, column] = line.words[1];
        if (into.count(name)) throw ParseError("duplicate " + line.words[0].first + " '" + name + "'", line.number, column);
        const ChartPtr chart = chart_of();
        auto [text, offset] = after_equals(line);
        into.emplace(name, parse_polynomial(text, chart, line.number, offset));
    }

    /// Lines up to `end`; returns them and advances past `end`.
    std::vector<const Line*> block(const Line& opening) {
        std::vector<const Line*> body;
        while (at_ < lines_.size()) {
            const Line& line = lines_[at_++];
            if (line.words.empty()) continue;
            if (line.words[0].first == "end") {
                if (line.words.size() > 1)
                    throw ParseError("unexpected text after 'end'", line.number, line.words[1].second);
                return body;
            }
            body.push_back(&line);
        }
        throw ParseError("'" + opening.words[0].first + "' block is missing 'end'", opening.number, 1);
    }

    GradedVectorField field_block(const ChartPtr& chart) {
        const Line& opening = lines_[at_ - 1];
        GradedVectorField X(chart);
        std::set<std::string> seen;
        for (const Line* line : block(opening)) {
            const auto& [name, column] = line->words[0];
            if (line->words.size() < 3 || line->words[1].first != "=")
                throw ParseError("expected 'GENERATOR = POLYNOMIAL'", line->number, column);
            auto index = chart->find(name);
            if (!index) throw ParseError("undeclared generator '" + name + "'", line->number, column);
            if (!seen.insert(name).second)
                throw ParseError("duplicate component for '" + name + "'", line->number, column);
            auto [text, offset] = after_equals(*line);
            X.set_component(*index, parse_polynomial(text, chart, line->number, offset));
        }
        return X;
    }

    FactorAssignment assignment_block(const Line& opening) {
        std::vector<int> labels;
        std::optional<Factor> base;
        std::map<MultiDegree, Factor> factors;
        for (const Line* line : block(opening)) {
            const std::string& keyword = line->words[0].first;
            if (keyword == "labels") {
                labels.clear();
                for (std::size_t k = 1; k < line->words.size(); ++k)
                    labels.push_back(parse_int(line->words[k], line->number, "structure label"));
            } else if (keyword == "base") {
                expect_words(*line, 3);
                base = Factor{line->words[1].first, false, parse_int(line->words[2], line->number, "dimension")};
            } else if (keyword == "factor") {
                expect_words(*line, 4);
                MultiDegree i = parse_degree(line->words[1].first, line->number, line->words[1].second);
                std::string space = line->words[2].first;
                bool dual = false;
                if (space.size() > 1 && space.back() == '*') {
                    dual = true;
                    space.pop_back();
                }
                const int dim = parse_int(line->words[3], line->number, "dimension");
                if (!factors.emplace(i, Factor{space, dual, dim}).second)
                    throw ParseError("duplicate factor at " + i.str(), line->number, line->words[1].second);
            } else {
                throw ParseError("unknown assignment entry '" + keyword + "'", line->number, line->words[0].second);
            }
        }
        if (!base) throw ParseError("assignment needs a 'base' line", opening.number, 1);
        std::size_t n = labels.size();
        if (labels.empty() && !factors.empty()) {
            n = factors.begin()->first.size();
            for (std::size_t k = 1; k <= n; ++k) labels.push_back(static_cast<int>(k));
        }
        try {
            return FactorAssignment(labels, *base, factors);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), opening.number, opening.words[1].second);
        }
    }

    TransitionMap transition_block(const Line& opening, const ChartPtr& chart) {
        std::vector<std::vector<TransitionTerm>> terms(chart->size());
        std::vector<bool> mentioned(chart->size(), false);
        for (const Line* line : block(opening)) {
            if (line->words[0].first != "term" || line->words.size() < 4 || line->words[2].first != "=")
                throw ParseError("expected 'term TARGET = COEFFICIENT | PARTS'", line->number, line->words[0].second);
            const auto& [target, column] = line->words[1];
            auto t = chart->find(target);
            if (!t) throw ParseError("undeclared generator '" + target + "'", line->number, column);
            auto [rest, offset] = after_equals(*line);
            std::string coefficient = rest;
            std::vector<std::size_t> parts;
            if (auto bar = rest.find('|'); bar != std::string::npos) {
                coefficient = rest.substr(0, bar);
                const Line part_line = split_line(line->number, rest.substr(bar + 1));
                for (const auto& [name, c] : part_line.words) {
                    auto index = chart->find(name);
                    if (!index)
                        throw ParseError("undeclared generator '" + name + "'", line->number,
                                         offset + static_cast<int>(bar) + c);
                    parts.push_back(*index);
                }
            }
            mentioned[*t] = true;
            terms[*t].push_back({parse_polynomial(coefficient, chart, line->number, offset), parts});
        }
        for (std::size_t t = 0; t < chart->size(); ++t) {
            if (mentioned[t]) continue;
            if (chart->degree(t).is_zero())
                terms[t].push_back({GradedPolynomial::generator(chart, t), {}});
            else
                terms[t].push_back({GradedPolynomial::constant(chart, 1), {t}});
        }
        try {
            return TransitionMap(chart, chart, std::move(terms));
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), opening.number, opening.words[1].second);
        }
    }

    std::vector<Line> lines_;
    std::size_t at_ = 0;
    Manifest manifest_;
    std::optional<int> gradings_;
    std::vector<int> labels_;
    ParityRule rule_ = ParityRule::graded;
    std::vector<GeneratorSpec> generators_;
    std::set<std::string> generator_names_;
    bool chart_frozen_ = false;
};

}  // namespace

Manifest parse_manifest(std::string_view text) { return Parser(text).run(); }

}  // namespace mg
