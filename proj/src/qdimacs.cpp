#include <charconv>
#include <map>
#include <sstream>

#include "qbfi/trace.hpp"

namespace qbfi {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
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

int to_int(std::string_view tok, int line_no) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw Error(Errc::Syntax, "line " + std::to_string(line_no) + ": bad integer '" +
                                      std::string(tok) + "'");
    return v;
}

std::map<int, Side> parse_partition(const std::vector<std::string_view>& toks, int line_no) {
    std::map<int, Side> labels;
    Side current = Side::None;
    for (std::size_t i = 2; i < toks.size(); ++i) {
        std::string_view t = toks[i];
        if (t == "p:") current = Side::P;
        else if (t == "q:") current = Side::Q;
        else if (t == "r:") current = Side::R;
        else if (t == "b:") current = Side::B;
        else {
            if (current == Side::None)
                throw Error(Errc::Syntax, "line " + std::to_string(line_no) + ": id before label");
            int id = to_int(t, line_no);
            if (id <= 0 || !labels.emplace(id, current).second)
                throw Error(Errc::Syntax,
                            "line " + std::to_string(line_no) + ": bad or repeated id " + std::string(t));
        }
    }
    return labels;
}

}  // namespace

Qbf parse_qdimacs(std::string_view text) {
    std::vector<std::pair<int, Quantifier>> prefix;
    std::vector<Clause> matrix;
    std::map<int, Side> partition;
    bool has_partition = false;
    bool seen_header = false;
    std::vector<Literal> pending;
    int pending_line = 0;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "c") {
            if (toks.size() >= 2 && toks[1] == "partition") {
                partition = parse_partition(toks, line_no);
                has_partition = true;
            }
            continue;
        }
        if (toks[0] == "p") {
            if (seen_header || toks.size() != 4 || toks[1] != "cnf")
                throw Error(Errc::Syntax, "line " + std::to_string(line_no) + ": bad header");
            to_int(toks[2], line_no);
            to_int(toks[3], line_no);
            seen_header = true;
            continue;
        }
        if (!seen_header)
            throw Error(Errc::Syntax, "line " + std::to_string(line_no) + ": missing 'p cnf' header");
        if (toks[0] == "e" || toks[0] == "a") {
            if (!matrix.empty() || !pending.empty())
                throw Error(Errc::Syntax, "line " + std::to_string(line_no) + ": quantifier after clauses");
            Quantifier q = toks[0] == "e" ? Quantifier::Exists : Quantifier::Forall;
            if (toks.back() != "0")
                throw Error(Errc::Syntax, "line " + std::to_string(line_no) + ": unterminated prefix block");
            for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
                int id = to_int(toks[i], line_no);
                if (id <= 0) throw Error(Errc::Syntax, "line " + std::to_string(line_no) + ": bad variable");
                prefix.emplace_back(id, q);
            }
            continue;
        }
        for (std::string_view t : toks) {
            int lit = to_int(t, line_no);
            if (pending.empty()) pending_line = line_no;
            if (lit != 0) {
                pending.push_back(Literal::from_dimacs(lit));
                continue;
            }
            Clause c = make_clause(std::move(pending));
            pending.clear();
            if (is_tautological(c))
                throw Error(Errc::TautologicalClause, "line " + std::to_string(pending_line));
            matrix.push_back(std::move(c));
        }
    }
    if (!pending.empty()) throw Error(Errc::Syntax, "unterminated clause at end of input");
    if (!seen_header) throw Error(Errc::Syntax, "missing 'p cnf' header");

    Qbf f(std::move(prefix), std::move(matrix));
    if (has_partition) f.set_partition(partition);
    return f;
}

std::string write_qdimacs(const Qbf& f) {
    std::ostringstream out;
    if (f.has_partition()) {
        out << "c partition";
        for (Side s : {Side::P, Side::Q, Side::R, Side::B}) {
            auto vars = f.variables_on(s);
            if (vars.empty() && s == Side::B) continue;
            out << ' ' << to_string(s) << ':';
            for (int v : vars) out << ' ' << v;
        }
        out << '\n';
    }
    out << "p cnf " << f.max_id() << ' ' << f.matrix().size() << '\n';
    const auto& prefix = f.prefix();
    for (std::size_t i = 0; i < prefix.size();) {
        Quantifier q = prefix[i].quantifier;
        out << (q == Quantifier::Exists ? 'e' : 'a');
        for (; i < prefix.size() && prefix[i].quantifier == q; ++i) out << ' ' << prefix[i].id;
        out << " 0\n";
    }
    for (const Clause& c : f.matrix()) {
        for (const Literal& l : c) out << to_string(l) << ' ';
        out << "0\n";
    }
    return out.str();
}

}  // namespace qbfi
