#include "multigraded/commands.hpp"

#include <sstream>

#include "multigraded/error.hpp"
#include "multigraded/expression.hpp"

namespace mg {

namespace {

using Json = nlohmann::ordered_json;
using Args = std::vector<std::string>;

/// A lookup or usage failure: exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json field_json(const GradedVectorField& X) {
    Json out = Json::object();
    for (std::size_t i = 0; i < X.chart()->size(); ++i)
        if (!X.component(i).is_zero()) out[X.chart()->name(i)] = render(X.component(i));
    return out;
}

Json substitution_json(const Substitution& s) {
    Json out = Json::object();
    for (std::size_t i = 0; i < s.from()->size(); ++i) out[s.from()->name(i)] = render(s.image(i));
    return out;
}

std::string substitution_text(const Substitution& s) {
    std::string text;
    for (std::size_t i = 0; i < s.from()->size(); ++i)
        text += s.from()->name(i) + " -> " + render(s.image(i)) + "\n";
    return text;
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& name, const char* kind) {
    auto it = map.find(name);
    if (it == map.end()) throw UsageError(std::string("unknown ") + kind + " '" + name + "'");
    return it->second;
}

void arity(const Args& args, std::size_t count, const char* usage) {
    if (args.size() != count) throw UsageError(std::string("usage: ") + usage);
}

int parse_label(const std::string& text) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(text, &used);
        if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
    throw UsageError("expected an integer label, got '" + text + "'");
}

CommandResult success(std::string text, Json json) { return {0, std::move(text), std::move(json)}; }

CommandResult verdict(bool holds, std::string text, Json json) {
    json["holds"] = holds;
    return {holds ? 0 : 1, (holds ? "true\n" : "false\n") + text, std::move(json)};
}

HamiltonianStructure hamiltonian(const Manifest& m, const std::string& name) {
    return {m.phase(), lookup(m.hamiltonians, name, "hamiltonian")};
}

Json master_json(const MasterReport& r) { return {{"holds", r.holds}, {"residual", render(r.residual)}}; }

Json nfold_json(const NfoldReport& r) {
    Json out{{"passed", r.passed}, {"unital", r.unital}};
    Json weights = Json::array();
    for (const auto& w : r.foreign_weights) weights.push_back(w.str());
    out["foreign_weights"] = weights;
    Json components = Json::object();
    for (const auto& [k, Q] : r.components) components[std::to_string(k)] = field_json(Q);
    out["components"] = components;
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"first", f.first}, {"second", f.second}, {"bracket", field_json(f.bracket)}});
    out["failures"] = failures;
    return out;
}

std::string nfold_text(const NfoldReport& r) {
    std::ostringstream out;
    out << "unital: " << (r.unital ? "yes" : "no") << "\n";
    for (const auto& w : r.foreign_weights) out << "foreign weight " << w.str() << "\n";
    for (const auto& [k, Q] : r.components) out << "Q" << k << " = " << render(Q) << "\n";
    for (const auto& f : r.failures)
        out << "[Q" << f.first << ", Q" << f.second << "] = " << render(f.bracket) << "\n";
    return out.str();
}

CommandResult check(const Manifest& m, const Args& args) {
    if (args.size() < 2) throw UsageError("usage: check homological|unital|nfold|master|drinfeld|bialgebroid|compat");
    const std::string& what = args[1];
    if (what == "homological") {
        arity(args, 3, "check homological FIELD");
        const auto r = is_homological(lookup(m.fields, args[2], "field"));
        Json json{{"square", field_json(r.square)}};
        std::string text;
        if (r.witness) {
            json["witness"] = r.square.chart()->name(*r.witness);
            text = "[Q,Q] = " + render(r.square) + "\n";
        }
        return verdict(r.homological, text, json);
    }
    if (what == "unital") {
        arity(args, 3, "check unital FIELD");
        const auto& Q = lookup(m.fields, args[2], "field");
        Json weights = Json::array();
        std::string text;
        for (const auto& [w, part] : weight_components(Q)) {
            weights.push_back(w.str());
            text += "weight " + w.str() + ": " + render(part) + "\n";
        }
        return verdict(is_unital(Q), text, {{"weights", weights}});
    }
    if (what == "nfold") {
        arity(args, 3, "check nfold FIELD");
        const auto r = nfold_check(lookup(m.fields, args[2], "field"));
        return verdict(r.passed, nfold_text(r), nfold_json(r));
    }
    if (what == "master") {
        arity(args, 3, "check master HAMILTONIAN");
        const auto r = master_equation(hamiltonian(m, args[2]));
        return verdict(r.holds, "{H,H} = " + render(r.residual) + "\n", master_json(r));
    }
    if (what == "drinfeld") {
        arity(args, 3, "check drinfeld HAMILTONIAN");
        const auto r = drinfeld_check(hamiltonian(m, args[2]));
        Json parts = Json::object();
        std::string text = "total degree: " + std::string(r.degree_ok ? "ok" : "wrong") + "\n";
        if (r.total_degree_mismatch) text += "summand of degree " + r.total_degree_mismatch->str() + "\n";
        text += "{H,H} = " + render(r.master.residual) + "\n";
        for (const auto& [k, H] : r.parts) {
            parts[std::to_string(k)] = render(H);
            text += "H" + std::to_string(k) + " = " + render(H) + "\n";
        }
        text += nfold_text(r.field);
        Json json{{"degree_ok", r.degree_ok}, {"master", master_json(r.master)}, {"parts", parts},
                  {"field", nfold_json(r.field)}};
        return verdict(r.passed, text, json);
    }
    if (what == "bialgebroid") {
        arity(args, 4, "check bialgebroid H1 H2");
        const auto r = bialgebroid_check(hamiltonian(m, args[2]), hamiltonian(m, args[3]));
        std::string text = "{H1,H1} = " + render(r.first.residual) + "\n{H2,H2} = " +
                           render(r.second.residual) + "\n{H1,H2} = " + render(r.commutator) + "\n";
        Json json{{"first", master_json(r.first)},
                  {"second", master_json(r.second)},
                  {"commutator", render(r.commutator)}};
        return verdict(r.holds, text, json);
    }
    if (what == "compat") {
        arity(args, 2, "check compat");
        const auto r = compatibility_check(m.phase(), m.side_fields);
        std::ostringstream text;
        Json masters = Json::array(), pairs = Json::array(), conflicts = Json::array();
        for (const auto& [rk, report] : r.masters) {
            masters.push_back({{"structure", rk.first}, {"side", rk.second}, {"holds", report.holds}});
            if (!report.holds)
                text << "master q" << rk.first << "[" << rk.second << "] fails: " << render(report.residual) << "\n";
        }
        for (const auto& [ks, report] : r.pairs) {
            pairs.push_back({{"first", ks.first}, {"second", ks.second}, {"holds", report.holds}});
            if (!report.holds)
                text << "bialgebroid on sides " << ks.first << "," << ks.second
                     << " fails: {H1,H2} = " << render(report.commutator) << "\n";
        }
        for (const auto& c : r.conflicts) {
            conflicts.push_back({{"structure", c.structure},
                                 {"first_side", c.first_side},
                                 {"second_side", c.second_side},
                                 {"first_lift", render(c.first_lift)},
                                 {"second_lift", render(c.second_lift)}});
            text << "Q" << c.structure << " conflict: lift from side " << c.first_side << " = "
                 << render(c.first_lift) << ", lift from side " << c.second_side << " = "
                 << render(c.second_lift) << "\n";
        }
        for (const auto& f : r.restriction_failures) text << f << "\n";
        Json json{{"masters", masters},
                  {"pairs", pairs},
                  {"restriction_failures", r.restriction_failures},
                  {"conflicts", conflicts}};
        if (r.assembled) {
            json["assembled"] = render(r.assembled->H);
            text << "H = " << render(r.assembled->H) << "\n";
        }
        if (r.drinfeld) json["drinfeld"] = r.drinfeld->passed;
        return verdict(r.passed, text.str(), json);
    }
    throw UsageError("unknown check '" + what + "'");
}

CommandResult lift(const Manifest& m, const Args& args) {
    arity(args, 3, "lift tangent|cotangent|phase FIELD");
    const auto& X = lookup(m.fields, args[2], "field");
    GradedVectorField out(m.require_chart());
    if (args[1] == "tangent")
        out = tangent_lift(X, tangent_chart(m.require_chart()));
    else if (args[1] == "cotangent")
        out = cotangent_lift(X, m.phase());
    else if (args[1] == "phase")
        out = phase_lift(X, m.phase());
    else
        throw UsageError("unknown lift '" + args[1] + "'");
    return success(render(out) + "\n", {{"field", field_json(out)}});
}

CommandResult legendre(const Manifest& m, const Args& args) {
    arity(args, 2, "legendre LABEL");
    const auto L = legendre_map(m.phase(), parse_label(args[1]));
    const bool symplectic = is_symplectomorphism(L.pullback, m.phase(), L.side);
    return success(substitution_text(L.pullback) + "symplectomorphism: " + (symplectic ? "yes" : "no") + "\n",
                   {{"pullback", substitution_json(L.pullback)}, {"symplectomorphism", symplectic}});
}

Json assignment_json(const FactorAssignment& F) {
    Json factors = Json::object();
    for (const auto& [i, f] : F.factors()) factors[i.str()] = {{"space", f.str()}, {"dimension", f.dimension}};
    return {{"labels", F.labels()},
            {"base", {{"space", F.base().str()}, {"dimension", F.base().dimension}}},
            {"factors", factors}};
}

std::vector<TransitionMap> chain(const Manifest& m, const Args& args, std::size_t from) {
    std::vector<TransitionMap> out;
    for (std::size_t k = from; k < args.size(); ++k) out.push_back(lookup(m.transitions, args[k], "transition"));
    return out;
}

CommandResult dispatch(const Manifest& m, const Args& args) {
    if (args.empty()) throw UsageError("missing command");
    const std::string& command = args[0];
    if (command == "bracket") {
        arity(args, 3, "bracket X Y");
        const auto out = super_bracket(lookup(m.fields, args[1], "field"), lookup(m.fields, args[2], "field"));
        return success(render(out) + "\n", {{"field", field_json(out)}});
    }
    if (command == "poisson") {
        arity(args, 3, "poisson F G");
        const auto out = canonical_poisson(lookup(m.hamiltonians, args[1], "hamiltonian"),
                                           lookup(m.hamiltonians, args[2], "hamiltonian"), m.phase());
        return success(render(out) + "\n", {{"result", render(out)}});
    }
    if (command == "apply") {
        arity(args, 3, "apply X f");
        const auto out = apply_field(lookup(m.fields, args[1], "field"), lookup(m.functions, args[2], "function"));
        return success(render(out) + "\n", {{"result", render(out)}});
    }
    if (command == "lift") return lift(m, args);
    if (command == "legendre") return legendre(m, args);
    if (command == "derham") {
        arity(args, 1, "derham");
        const auto d = de_rham_field(tangent_chart(m.require_chart()));
        return success(render(d) + "\n", {{"field", field_json(d)}});
    }
    if (command == "check") return check(m, args);
    if (command == "derived-bracket") {
        arity(args, 4, "derived-bracket H F G");
        const auto out = derived_bracket(hamiltonian(m, args[1]), lookup(m.hamiltonians, args[2], "hamiltonian"),
                                         lookup(m.hamiltonians, args[3], "hamiltonian"));
        return success(render(out) + "\n", {{"result", render(out)}});
    }
    if (command == "dual") {
        arity(args, 3, "dual F LABEL");
        const auto D = dual(lookup(m.assignments, args[1], "assignment"), parse_label(args[2]));
        return success(describe(D) + "\n", {{"assignment", assignment_json(D)}});
    }
    if (command == "duals-orbit") {
        arity(args, 2, "duals-orbit F");
        const auto r = duals_closure_check(lookup(m.assignments, args[1], "assignment"));
        std::string text;
        Json orbit = Json::array();
        for (const auto& F : r.orbit) {
            text += describe(F) + "\n";
            orbit.push_back(assignment_json(F));
        }
        text += std::to_string(r.orbit.size()) + " assignments, " + std::to_string(r.distinct_up_to_relabeling) +
                " distinct up to relabeling\n";
        for (const auto& f : r.failures) text += f + "\n";
        Json json{{"orbit", orbit},
                  {"distinct_up_to_relabeling", r.distinct_up_to_relabeling},
                  {"failures", r.failures}};
        return verdict(r.closed, text, json);
    }
    if (command == "diagram") {
        if (args.size() != 2 && args.size() != 3) throw UsageError("usage: diagram F [dot|base]");
        const auto& F = lookup(m.assignments, args[1], "assignment");
        const std::string style = args.size() == 3 ? args[2] : "text";
        if (style != "text" && style != "dot" && style != "base") throw UsageError("unknown diagram style '" + style + "'");
        const auto D = style == "base" ? base_diagram(F) : characteristic_diagram(F);
        const std::string text = style == "dot" ? render_dot(D, F) : render_text(D, F);
        Json nodes = Json::array(), arrows = Json::array();
        for (const auto& node : D.nodes) nodes.push_back(node.index.compact());
        for (const auto& a : D.arrows)
            arrows.push_back({{"from", a.from.compact()}, {"to", a.to.compact()}, {"label", a.label}});
        return success(text, {{"nodes", nodes}, {"arrows", arrows}});
    }
    if (command == "dim") {
        arity(args, 3, "dim F (i)");
        const auto i = parse_degree(args[2]);
        const long long d = homogeneous_dimension(lookup(m.assignments, args[1], "assignment"), i);
        return success(std::to_string(d) + "\n", {{"degree", i.str()}, {"dimension", d}});
    }
    if (command == "cocycle") {
        if (args.size() < 2) throw UsageError("usage: cocycle T1 [T2 ...]");
        const auto transitions = chain(m, args, 1);
        const bool holds = cocycle_check(transitions);
        TransitionMap total = transitions.front();
        for (std::size_t k = 1; k < transitions.size(); ++k) total = compose_transitions(total, transitions[k]);
        const auto s = total.to_substitution();
        return verdict(holds, holds ? "" : substitution_text(s), {{"composite", substitution_json(s)}});
    }
    if (command == "gradedize") {
        arity(args, 2, "gradedize T");
        const auto s = gradedize_transition(lookup(m.transitions, args[1], "transition"));
        return success(substitution_text(s), {{"substitution", substitution_json(s)}});
    }
    throw UsageError("unknown command '" + command + "'");
}

CommandResult failure(const std::string& what) { return {2, "error: " + what + "\n", {{"error", what}}}; }

}  // namespace

CommandResult run_command(const Manifest& manifest, const std::vector<std::string>& args) {
    try {
        return dispatch(manifest, args);
    } catch (const UsageError& e) {
        return failure(e.what());
    } catch (const ValidationError& e) {
        return failure(e.what());
    } catch (const ParseError& e) {
        return failure(e.what());
    }
}

}  // namespace mg
