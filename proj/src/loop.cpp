#include "polyinv/loop.hpp"

#include "polyinv/errors.hpp"
#include "polyinv/parse.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace polyinv {

const std::vector<Rational>& LoopProgram::concrete_init() const {
    if (!init) throw SymbolicInitRequiredConcrete();
    return *init;
}

std::vector<Polynomial> LoopProgram::guards_of(GuardKind kind) const {
    std::vector<Polynomial> out;
    for (const auto& g : guards)
        if (g.kind == kind) out.push_back(g.poly);
    return out;
}

bool LoopProgram::has_inequality_guards() const {
    for (const auto& g : guards)
        if (g.kind == GuardKind::Positive || g.kind == GuardKind::NonNegative) return true;
    return false;
}

bool is_reserved_name(const std::string& name) {
    static const std::regex reserved("^(z|t|[ya][0-9]+)$");
    return std::regex_match(name, reserved);
}

namespace {

struct Line {
    std::size_t number;
    std::string text;  // comment stripped
};

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

std::vector<std::pair<std::string, std::size_t>> words(const std::string& s, std::size_t from) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = from;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i == s.size()) break;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        out.emplace_back(s.substr(start, i - start), start);
    }
    return out;
}

std::size_t first_non_space(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return i;
}

}  // namespace

LoopProgram parse_loop(std::string_view text) {
    std::vector<Line> lines;
    {
        std::string all(text);
        std::istringstream in(all);
        std::string raw;
        std::size_t no = 0;
        while (std::getline(in, raw)) {
            ++no;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            if (first_non_space(raw) == raw.size()) continue;
            lines.push_back({no, raw});
        }
    }
    LoopProgram L;
    bool have_init = false;
    std::size_t i = 0;
    auto keyword = [&](const Line& ln) {
        auto w = words(ln.text, 0);
        return w.empty() ? std::string() : w[0].first;
    };
    if (lines.empty()) throw ParseError("empty loop file", 1, 1);
    if (keyword(lines[0]) != "vars") throw ParseError("expected 'vars' line first", lines[0].number, 1);
    {
        auto w = words(lines[0].text, 0);
        std::vector<std::string> names;
        for (std::size_t k = 1; k < w.size(); ++k) {
            const auto& [name, col] = w[k];
            if (!is_identifier(name)) throw ParseError("invalid variable name '" + name + "'", lines[0].number, col + 1);
            if (is_reserved_name(name))
                throw ParseError("variable name '" + name + "' is reserved for extension variables", lines[0].number,
                                 col + 1);
            names.push_back(name);
        }
        if (names.empty()) throw ParseError("no variables declared", lines[0].number, 1);
        try {
            L.vars = make_context(std::move(names));
        } catch (const Error& e) {
            throw ParseError(e.what(), lines[0].number, 1);
        }
        i = 1;
    }
    const std::size_t n = L.vars->size();
    static const std::regex guard_rel(R"(^(.*?)\s*(!=|==|>=|>)\s*0\s*$)");
    for (; i < lines.size(); ++i) {
        const Line& ln = lines[i];
        std::string kw = keyword(ln);
        std::size_t kw_col = first_non_space(ln.text);
        if (kw == "init") {
            if (have_init) throw ParseError("duplicate 'init' line", ln.number, kw_col + 1);
            have_init = true;
            auto w = words(ln.text, kw_col + 4);
            if (w.size() == 1 && w[0].first == "symbolic") continue;
            if (w.size() != n)
                throw ParseError("'init' needs " + std::to_string(n) + " values, got " + std::to_string(w.size()),
                                 ln.number, kw_col + 1);
            std::vector<Rational> vals;
            for (const auto& [tok, col] : w) {
                try {
                    vals.push_back(parse_rational(tok));
                } catch (const Error& e) {
                    throw ParseError(e.what(), ln.number, col + 1);
                }
            }
            L.init = std::move(vals);
        } else if (kw == "guard") {
            std::size_t start = kw_col + 5;
            std::string body = ln.text.substr(start);
            GuardKind kind = GuardKind::NonZero;
            std::smatch m;
            if (std::regex_match(body, m, guard_rel)) {
                std::string op = m[2];
                kind = op == "!=" ? GuardKind::NonZero
                       : op == "==" ? GuardKind::Zero
                       : op == ">"  ? GuardKind::Positive
                                    : GuardKind::NonNegative;
                body = m[1];
            }
            L.guards.push_back({parse_poly(body, L.vars, ln.number, start), kind});
        } else if (kw == "branch:" || kw == "branch") {
            PolyMap F(n, Polynomial(L.vars));
            std::vector<bool> seen(n, false);
            std::size_t assigned = 0;
            std::size_t header = ln.number;
            while (assigned < n) {
                if (++i == lines.size())
                    throw ParseError("branch has " + std::to_string(assigned) + " assignments, expected " +
                                         std::to_string(n),
                                     header, 1);
                const Line& as = lines[i];
                auto arrow = as.text.find("<-");
                if (arrow == std::string::npos)
                    throw ParseError("expected '<var> <- <poly>' inside a branch", as.number, first_non_space(as.text) + 1);
                auto lhs = words(as.text.substr(0, arrow), 0);
                if (lhs.size() != 1) throw ParseError("expected a single variable before '<-'", as.number, 1);
                auto idx = L.vars->index_of(lhs[0].first);
                if (!idx) throw ParseError("unknown variable '" + lhs[0].first + "'", as.number, lhs[0].second + 1);
                if (seen[*idx]) throw ParseError("variable assigned twice in one branch", as.number, lhs[0].second + 1);
                seen[*idx] = true;
                F[*idx] = parse_poly(std::string_view(as.text).substr(arrow + 2), L.vars, as.number, arrow + 2);
                ++assigned;
            }
            L.branches.push_back(std::move(F));
        } else {
            throw ParseError("unexpected line starting with '" + kw + "'", ln.number, kw_col + 1);
        }
    }
    if (!have_init) throw ParseError("missing 'init' line", lines.back().number, 1);
    if (L.branches.empty()) throw ParseError("no 'branch:' block", lines.back().number, 1);
    return L;
}

LoopProgram load_loop(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open loop file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_loop(ss.str());
}

std::string print_loop(const LoopProgram& L) {
    std::string out = "vars";
    for (const auto& n : L.vars->names()) out += " " + n;
    out += "\ninit";
    if (!L.init)
        out += " symbolic";
    else
        for (const auto& v : *L.init) out += " " + to_string(v);
    out += "\n";
    for (const auto& g : L.guards) {
        out += "guard " + g.poly.to_string();
        switch (g.kind) {
            case GuardKind::NonZero: out += " != 0"; break;
            case GuardKind::Zero: out += " == 0"; break;
            case GuardKind::Positive: out += " > 0"; break;
            case GuardKind::NonNegative: out += " >= 0"; break;
        }
        out += "\n";
    }
    for (const auto& F : L.branches) {
        out += "branch:\n";
        for (std::size_t i = 0; i < F.size(); ++i) out += "  " + L.vars->name(i) + " <- " + F[i].to_string() + "\n";
    }
    return out;
}

std::vector<Rational> apply_map(const PolyMap& F, const std::vector<Rational>& point) {
    std::vector<Rational> out;
    out.reserve(F.size());
    for (const auto& f : F) out.push_back(f.evaluate(point));
    return out;
}

Trajectory unroll(const LoopProgram& L, const std::vector<Rational>& a, const std::vector<std::size_t>& schedule) {
    if (a.size() != L.n()) throw ArityError("initial point has the wrong number of entries");
    auto hs = L.guards_of(GuardKind::NonZero);
    auto guard_value = [&](const std::vector<Rational>& p) {
        Rational v = 1;
        for (const auto& h : hs) v *= h.evaluate(p);
        return v;
    };
    Trajectory T;
    T.points.push_back(a);
    T.guard_values.push_back(guard_value(a));
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (schedule[k] >= L.branches.size()) throw Error("branch index out of range in schedule");
        if (T.guard_values.back() == 0) {
            T.exited = true;
            break;
        }
        T.points.push_back(apply_map(L.branches[schedule[k]], T.points.back()));
        T.guard_values.push_back(guard_value(T.points.back()));
    }
    return T;
}

}  // namespace polyinv
