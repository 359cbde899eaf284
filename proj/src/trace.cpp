#include "qbfi/trace.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qbfi {

bool is_expansion(Calculus c) { return c == Calculus::IRCalc || c == Calculus::IRMCalc; }

std::string to_string(Calculus c) {
    switch (c) {
    case Calculus::QRes: return "qres";
    case Calculus::QURes: return "qures";
    case Calculus::LDQRes: return "ldqres";
    case Calculus::LQUPlus: return "lquplus";
    case Calculus::IRCalc: return "ircalc";
    case Calculus::IRMCalc: return "irmcalc";
    }
    return "?";
}

std::string to_string(Rule r) {
    switch (r) {
    case Rule::Axiom: return "AX";
    case Rule::URed: return "URED";
    case Rule::URedStar: return "URED*";
    case Rule::Res: return "RES";
    case Rule::Inst: return "INST";
    case Rule::Merge: return "MERGE";
    }
    return "?";
}

Calculus parse_calculus(std::string_view name) {
    for (Calculus c : {Calculus::QRes, Calculus::QURes, Calculus::LDQRes, Calculus::LQUPlus,
                       Calculus::IRCalc, Calculus::IRMCalc})
        if (to_string(c) == name) return c;
    throw Error(Errc::Syntax, "unknown calculus '" + std::string(name) + "'");
}

bool is_empty_line(const Line& l) {
    return std::visit([](const auto& c) { return c.empty(); }, l);
}

std::string to_string(const Line& l) {
    return std::visit([](const auto& c) { return to_string(c); }, l);
}

int ProofTrace::position(int id) const {
    auto it = std::lower_bound(steps.begin(), steps.end(), id,
                               [](const ProofStep& s, int v) { return s.id < v; });
    if (it == steps.end() || it->id != id) return -1;
    return static_cast<int>(it - steps.begin());
}

const ProofStep& ProofTrace::step(int id) const {
    int p = position(id);
    if (p < 0) throw Error(Errc::ForwardReference, "no step " + std::to_string(id));
    return steps[p];
}

namespace {

class TraceParser {
public:
    TraceParser(const Qbf& f) : f_(f) {}

    ProofTrace parse(std::string_view text) {
        ProofTrace trace;
        bool header = false;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            if (nl == std::string_view::npos) nl = text.size();
            std::string_view line = text.substr(pos, nl - pos);
            pos = nl + 1;
            ++line_no_;
            tokens_ = split(line);
            next_ = 0;
            if (tokens_.empty() || tokens_[0] == "c") continue;
            if (tokens_[0] == "s") {
                if (header || tokens_.size() != 3 || tokens_[1] != "qrtf") fail("bad header line");
                trace.calculus = parse_calculus(tokens_[2]);
                expansion_ = is_expansion(trace.calculus);
                header = true;
                continue;
            }
            if (!header) fail("step before 's qrtf' header");
            ProofStep step = parse_step();
            if (!trace.steps.empty() && step.id <= trace.steps.back().id)
                fail("step ids must increase");
            for (int a : step.antecedents)
                if (a >= step.id || trace.position(a) < 0)
                    throw Error(Errc::ForwardReference,
                                "step " + std::to_string(step.id) + " cites " + std::to_string(a));
            trace.steps.push_back(std::move(step));
        }
        if (!header) fail("missing header");
        if (trace.steps.empty()) throw Error(Errc::Syntax, "trace has no steps, hence no root");
        return trace;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::Syntax, "line " + std::to_string(line_no_) + ": " + msg);
    }

    static std::vector<std::string_view> split(std::string_view line) {
        std::vector<std::string_view> out;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j > i) out.push_back(line.substr(i, j - i));
            i = j;
        }
        return out;
    }

    std::string_view take() {
        if (next_ >= tokens_.size()) fail("unexpected end of line");
        return tokens_[next_++];
    }

    int number(std::string_view tok) const {
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0)
            fail("bad number '" + std::string(tok) + "'");
        return v;
    }

    Annotation annotation(std::string_view list) const {
        Annotation a;
        while (!list.empty()) {
            std::size_t comma = list.find(',');
            std::string_view entry = list.substr(0, comma);
            list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
            std::size_t eq = entry.find('=');
            if (eq == std::string_view::npos || eq + 2 != entry.size()) fail("bad annotation entry");
            int u = number(entry.substr(0, eq));
            if (!f_.has_variable(u) || !f_.is_universal(u))
                fail("annotation key " + std::to_string(u) + " is not a universal variable");
            char c = entry[eq + 1];
            AnnValue v = c == '0' ? AnnValue::Zero : c == '1' ? AnnValue::One
                       : c == '*' ? AnnValue::Star : (fail("bad annotation value"), AnnValue::Zero);
            if (!a.emplace(u, v).second) fail("duplicate annotation key");
        }
        return a;
    }

    AnnotatedLiteral literal(std::string_view tok) const {
        std::size_t colon = tok.find(':');
        std::string_view head = tok.substr(0, colon);
        if (colon != std::string_view::npos && !expansion_)
            throw Error(Errc::AnnotationInCdclTrace, "line " + std::to_string(line_no_));
        bool star = !head.empty() && head.back() == '*';
        if (star) {
            if (expansion_)
                throw Error(Errc::StarInExpansionLiteral, "line " + std::to_string(line_no_));
            head.remove_suffix(1);
        }
        bool neg = !head.empty() && head.front() == '-';
        if (neg) head.remove_prefix(1);
        if (neg && star) fail("merged literal cannot be negated");
        int var = number(head);
        if (var == 0) fail("variable 0");
        if (!f_.has_variable(var)) throw Error(Errc::UnboundVariable, std::to_string(var));
        if (expansion_ && f_.is_universal(var))
            fail("universal literal " + std::to_string(var) + " in expansion trace");
        AnnotatedLiteral al{{var, star ? Polarity::Star : neg ? Polarity::Neg : Polarity::Pos}, {}};
        if (colon != std::string_view::npos) al.annotation = annotation(tok.substr(colon + 1));
        return al;
    }

    ProofStep parse_step() {
        ProofStep step;
        step.id = number(take());
        if (step.id == 0) fail("step id 0");

        std::vector<AnnotatedLiteral> lits;
        for (std::string_view t = take(); t != "0"; t = take()) lits.push_back(literal(t));
        if (expansion_) {
            step.conclusion = make_annotated_clause(std::move(lits));
        } else {
            std::vector<Literal> plain;
            for (auto& al : lits) plain.push_back(al.literal);
            step.conclusion = make_clause(std::move(plain));
        }

        std::string_view rule = take();
        std::size_t arity = 0;
        if (rule == "AX") step.rule = Rule::Axiom;
        else if (rule == "URED") step.rule = Rule::URed, arity = 1;
        else if (rule == "URED*") step.rule = Rule::URedStar, arity = 1;
        else if (rule == "RES") step.rule = Rule::Res, arity = 2;
        else if (rule == "INST") step.rule = Rule::Inst, arity = 1;
        else if (rule == "MERGE") step.rule = Rule::Merge, arity = 1;
        else fail("unknown rule '" + std::string(rule) + "'");

        for (std::string_view t = take(); t != "0"; t = take()) step.antecedents.push_back(number(t));
        if (step.antecedents.size() != arity)
            throw Error(Errc::BadArity, "step " + std::to_string(step.id) + ": " + std::string(rule) +
                                            " takes " + std::to_string(arity) + " antecedent(s)");

        if (step.rule == Rule::Axiom) {
            if (next_ != tokens_.size()) fail("trailing tokens after axiom");
            return step;
        }
        std::vector<std::string_view> aux;
        for (std::string_view t = take(); t != "0"; t = take()) aux.push_back(t);
        if (next_ != tokens_.size()) fail("trailing tokens");

        if (step.rule == Rule::Inst) {
            for (std::string_view t : aux)
                for (auto& [u, v] : annotation(t))
                    if (!step.aux_annotation.emplace(u, v).second) fail("duplicate annotation key");
            return step;
        }
        std::size_t want_min = step.rule == Rule::Merge ? 3 : 1;
        std::size_t want_max = step.rule == Rule::Res ? 3 : want_min;
        if (aux.size() < want_min || aux.size() > want_max || aux.size() == 2)
            fail("wrong number of auxiliary literals for " + std::string(rule));
        if (!expansion_ && aux.size() != want_min) fail("CDCL resolution takes a single pivot literal");
        for (std::string_view t : aux) step.aux_literals.push_back(literal(t));
        return step;
    }

    const Qbf& f_;
    bool expansion_ = false;
    int line_no_ = 0;
    std::vector<std::string_view> tokens_;
    std::size_t next_ = 0;
};

}  // namespace

ProofTrace parse_trace(std::string_view text, const Qbf& formula) {
    return TraceParser(formula).parse(text);
}

std::string write_trace(const ProofTrace& trace) {
    std::ostringstream out;
    out << "s qrtf " << to_string(trace.calculus) << '\n';
    for (const ProofStep& s : trace.steps) {
        out << s.id;
        std::visit([&](const auto& c) {
            for (const auto& l : c) out << ' ' << to_string(l);
        }, s.conclusion);
        out << " 0 " << to_string(s.rule);
        for (int a : s.antecedents) out << ' ' << a;
        out << " 0";
        if (s.rule == Rule::Inst) {
            if (!s.aux_annotation.empty()) out << ' ' << to_string(s.aux_annotation);
            out << " 0";
        } else if (s.rule != Rule::Axiom) {
            for (const auto& l : s.aux_literals) out << ' ' << to_string(l);
            out << " 0";
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace qbfi
