#include "polyinv/cli.hpp"

#include "polyinv/errors.hpp"
#include "polyinv/general.hpp"
#include "polyinv/generate.hpp"
#include "polyinv/loop.hpp"
#include "polyinv/parse.hpp"
#include "polyinv/termination.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>

namespace polyinv {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string command;
    std::string loop_path;
    int degree = -1;
    std::string gens_path;
    std::string poly;
    std::vector<std::string> init;
    bool random_init = false;
    std::size_t max_iter = kDefaultMaxIter;
    std::string format = "text";
    std::uint64_t seed = 1;
    std::size_t word_cap = 10000;
    std::size_t oracle_depth = 0;
};

// Exit status for a failed runtime self-check; distinct from "False".
constexpr int kError = 2;

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

std::string point_string(const std::vector<Rational>& a) {
    std::vector<std::string> xs;
    for (const auto& v : a) xs.push_back(to_string(v));
    return "(" + join(xs, ", ") + ")";
}

std::vector<Polynomial> candidate_space(const RunConfig& cfg, const LoopProgram& L) {
    if (!cfg.gens_path.empty()) {
        std::ifstream in(cfg.gens_path);
        if (!in) throw Error("cannot open generator file '" + cfg.gens_path + "'");
        std::vector<Polynomial> gs;
        std::string line;
        std::size_t no = 0;
        while (std::getline(in, line)) {
            ++no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            gs.push_back(parse_poly(line, L.vars, no));
        }
        if (gs.empty()) throw Error("generator file is empty");
        if (rank(coefficient_matrix(gs)) != gs.size()) throw Error("generators are linearly dependent");
        return gs;
    }
    if (cfg.degree < 0) throw Error("--degree or --gens is required");
    return monomial_polys(L.vars, L.n(), static_cast<unsigned>(cfg.degree));
}

std::vector<Rational> initial_values(const RunConfig& cfg, const LoopProgram& L) {
    if (cfg.random_init) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<int> U(-100, 100);
        std::vector<Rational> a;
        for (std::size_t i = 0; i < L.n(); ++i) a.push_back(U(rng));
        return a;
    }
    if (!cfg.init.empty()) {
        if (cfg.init.size() != L.n())
            throw ArityError("--init needs " + std::to_string(L.n()) + " values, got " + std::to_string(cfg.init.size()));
        std::vector<Rational> a;
        for (const auto& s : cfg.init) a.push_back(parse_rational(s));
        return a;
    }
    return L.concrete_init();
}

void note_ignored_guards(const LoopProgram& L, std::ostream& err) {
    for (const auto& g : L.guards)
        if (g.kind != GuardKind::NonZero)
            err << "note: guard '" << g.poly.to_string()
                << "' is not an inequation and is ignored; results over-approximate the reachable states\n";
}

// Unrolls random branch schedules and reports the first polynomial that does not vanish.
bool unrolling_oracle(const LoopProgram& L, const std::vector<Rational>& a, const std::vector<Polynomial>& ps,
                      const RunConfig& cfg, std::ostream& err) {
    if (cfg.oracle_depth == 0) return true;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, L.branches.size() - 1);
    for (int run = 0; run < 5; ++run) {
        std::vector<std::size_t> schedule(cfg.oracle_depth);
        for (auto& s : schedule) s = pick(rng);
        auto T = unroll(L, a, schedule);
        for (std::size_t k = 0; k < T.points.size(); ++k)
            for (const auto& p : ps)
                if (p.evaluate(T.points[k]) != 0) {
                    err << "oracle violation: " << p.to_string() << " is nonzero at step " << k << " "
                        << point_string(T.points[k]) << "\n";
                    return false;
                }
    }
    return true;
}

int cmd_check(const RunConfig& cfg, const LoopProgram& L, std::ostream& out, std::ostream& err) {
    if (cfg.poly.empty()) throw Error("--poly is required for check");
    note_ignored_guards(L, err);
    auto a = initial_values(cfg, L);
    Polynomial g = parse_poly(cfg.poly, L.vars);
    auto R = check_pi_branch(a, g, L.guards_of(GuardKind::NonZero), L.branches, cfg.max_iter);
    if (cfg.format == "json") {
        json j{{"holds", R.holds}, {"iterations", R.iterations}};
        if (!R.holds) {
            if (R.violated)
                j["violated"] = {{"polynomial", R.violated->to_string()}, {"value", to_string(R.violated_value)}};
            if (R.witness_word) j["witness"] = {{"word", *R.witness_word}, {"value", to_string(R.witness_value)}};
        }
        out << j.dump(2) << "\n";
    } else {
        out << (R.holds ? "True" : "False") << "\n";
        if (!R.holds) {
            if (R.violated)
                out << "violated: " << R.violated->to_string() << " = " << to_string(R.violated_value) << " at (a, 1)\n";
            if (R.witness_word) {
                std::vector<std::string> w;
                for (auto b : *R.witness_word) w.push_back(std::to_string(b));
                out << "witness: branch word [" << join(w, " ") << "] gives g = " << to_string(R.witness_value) << "\n";
            }
        }
    }
    return R.holds ? 0 : 1;
}

int cmd_generate(const RunConfig& cfg, const LoopProgram& L, std::ostream& out, std::ostream& err) {
    if (L.symbolic() && !cfg.random_init && cfg.init.empty()) throw SymbolicInitRequiredConcrete();
    note_ignored_guards(L, err);
    auto a = initial_values(cfg, L);
    auto gs = candidate_space(cfg, L);
    TruncatedOptions opts;
    opts.max_iter = cfg.max_iter;
    opts.word_cap = cfg.word_cap;
    auto R = truncated_ideal_branch(a, gs, L.guards_of(GuardKind::NonZero), L.branches, opts);
    if (cfg.format == "json") {
        std::vector<std::string> basis;
        for (const auto& p : R.basis) basis.push_back(p.to_string());
        json j{{"degree", cfg.degree >= 0 ? json(cfg.degree) : json(nullptr)},
               {"dimension", R.dimension()},
               {"basis", basis},
               {"stage3_used", R.stage3_used},
               {"iterations", R.iterations}};
        out << j.dump(2) << "\n";
    } else {
        out << "initial values: " << point_string(a) << "\n";
        out << "dimension: " << R.dimension() << "\n";
        for (const auto& p : R.basis) out << "  " << p.to_string() << "\n";
    }
    return unrolling_oracle(L, a, R.basis, cfg, err) ? 0 : kError;
}

int cmd_general(const RunConfig& cfg, const LoopProgram& L, std::ostream& out, std::ostream& err) {
    for (const auto& g : L.guards)
        if (g.kind == GuardKind::NonZero && g.poly.is_zero())
            throw Error("guard is identically zero: the loop body never runs, so every polynomial vanishing at the "
                        "initial values is an invariant (the maximal ideal of the initial point)");
    note_ignored_guards(L, err);
    auto gs = candidate_space(cfg, L);
    auto invs = general_invariants(gs, L.branches);
    if (cfg.format == "json") {
        std::vector<std::string> xs;
        for (const auto& f : invs) xs.push_back(f.presentation());
        json j{{"degree", cfg.degree >= 0 ? json(cfg.degree) : json(nullptr)}, {"dimension", invs.size()}, {"invariants", xs}};
        out << j.dump(2) << "\n";
    } else {
        out << "dimension: " << invs.size() << "\n";
        for (const auto& f : invs) out << "  " << f.presentation() << "\n";
    }
    if (cfg.oracle_depth > 0) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<int> U(-100, 100);
        for (int k = 0; k < 3; ++k) {
            std::vector<Rational> a;
            for (std::size_t i = 0; i < L.n(); ++i) a.push_back(U(rng));
            std::vector<Polynomial> ps;
            for (const auto& f : invs) ps.push_back(f.instantiate(a));
            if (!unrolling_oracle(L, a, ps, cfg, err)) return kError;
        }
    }
    return 0;
}

json matrix_json(const PolyMatrix& M) {
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j) r.push_back(M.entry_string(i, j));
        rows.push_back(r);
    }
    return rows;
}

std::vector<std::string> printed(const std::vector<Polynomial>& ps) {
    std::vector<std::string> xs;
    for (const auto& p : ps) xs.push_back(p.to_string());
    return xs;
}

int cmd_matrix(const RunConfig& cfg, const LoopProgram& L, std::ostream& out, std::ostream& err) {
    note_ignored_guards(L, err);
    auto gs = candidate_space(cfg, L);
    auto A = compute_matrix_branch(gs, L.guards_of(GuardKind::NonZero), L.branches, cfg.max_iter);
    if (cfg.format == "json") {
        json j{{"rows", A.matrix.rows()},
               {"cols", A.matrix.cols()},
               {"gens", printed(gs)},
               {"iterations", A.iterations},
               {"matrix", matrix_json(A.matrix)}};
        out << j.dump(2) << "\n";
    } else {
        out << "matrix " << A.matrix.rows() << " x " << A.matrix.cols() << "\n";
        out << "columns: " << join(printed(gs), ", ") << "\n";
        for (std::size_t i = 0; i < A.matrix.rows(); ++i) {
            std::vector<std::string> r;
            for (std::size_t j = 0; j < A.matrix.cols(); ++j) r.push_back(A.matrix.entry_string(i, j));
            out << "  [" << join(r, ", ") << "]\n";
        }
    }
    return 0;
}

int cmd_classify(const RunConfig& cfg, const LoopProgram& L, std::ostream& out, std::ostream& err) {
    note_ignored_guards(L, err);
    auto gs = candidate_space(cfg, L);
    auto C = truncated_class(gs, L.guards_of(GuardKind::NonZero), L.branches, cfg.max_iter);
    if (cfg.format == "json") {
        json cells = json::array();
        for (const auto& c : C.cells)
            cells.push_back({{"equations", printed(c.equations)},
                             {"inequation", c.inequation.to_string()},
                             {"rank", c.rank},
                             {"kernel", matrix_json(c.kernel)},
                             {"templates", printed(c.templates)}});
        out << json{{"gens", printed(gs)}, {"cells", cells}}.dump(2) << "\n";
    } else {
        out << "cells: " << C.cells.size() << "\n";
        for (std::size_t k = 0; k < C.cells.size(); ++k) {
            const auto& c = C.cells[k];
            out << "cell " << k + 1 << ": rank " << c.rank << ", dimension " << c.templates.size() << "\n";
            for (const auto& e : c.equations) out << "  " << e.to_string() << " = 0\n";
            out << "  " << c.inequation.to_string() << " != 0\n";
            for (const auto& t : c.templates) out << "  basis: " << t.to_string() << "\n";
        }
    }
    return 0;
}

int cmd_terminate(const RunConfig& cfg, const LoopProgram& L, std::ostream& out, std::ostream&) {
    if (L.has_inequality_guards()) {
        out << "not supported: requires quantifier elimination\n";
        return kError;
    }
    if (!L.guards_of(GuardKind::NonZero).empty())
        throw Error("terminate decides loops guarded by equations only (guard <poly> == 0)");
    if (L.branches.size() != 1) throw Error("terminate needs a single-branch loop");
    auto a = initial_values(cfg, L);
    auto V = never_terminates_algebraic(a, L.guards_of(GuardKind::Zero), L.branches[0], cfg.max_iter);
    if (cfg.format == "json") {
        json w = nullptr;
        if (V.witness) w = {{"polynomial", V.witness->to_string()}, {"value", to_string(V.witness_value)}};
        out << json{{"verdict", to_string(V.verdict)}, {"witness", w}}.dump(2) << "\n";
    } else {
        out << to_string(V.verdict) << "\n";
        if (V.witness) out << "witness: " << V.witness->to_string() << " = " << to_string(V.witness_value) << "\n";
    }
    return V.verdict == Verdict::NeverTerminates ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polynomial invariants of polynomial loops"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool with_degree) {
        sub->add_option("loop", cfg.loop_path, "loop file")->required();
        if (with_degree) {
            sub->add_option("--degree,-d", cfg.degree, "candidate space: all monomials up to this degree")
                ->check(CLI::NonNegativeNumber);
            sub->add_option("--gens", cfg.gens_path, "candidate space: file with one generator per line");
        }
        sub->add_option("--max-iter", cfg.max_iter, "fixpoint iteration limit")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_init = [&](CLI::App* sub) {
        sub->add_option("--init", cfg.init, "initial values overriding the loop file")->delimiter(',');
        sub->add_flag("--random-init", cfg.random_init, "random integer initial values in [-100, 100]");
        sub->add_option("--seed", cfg.seed, "random seed");
    };

    auto* check = app.add_subcommand("check", "decide whether a polynomial is an invariant");
    add_common(check, false);
    add_init(check);
    check->add_option("--poly,-p", cfg.poly, "candidate polynomial")->required();

    auto* generate = app.add_subcommand("generate", "basis of the invariants in a candidate space");
    add_common(generate, true);
    add_init(generate);
    generate->add_option("--word-cap", cfg.word_cap, "limit on branch words explored");
    generate->add_option("--oracle-depth", cfg.oracle_depth, "cross-check against unrolled trajectories");

    auto* general = app.add_subcommand("general", "invariants f(x) - f(a) valid for all initial values");
    add_common(general, true);
    general->add_option("--seed", cfg.seed, "random seed for the oracle");
    general->add_option("--oracle-depth", cfg.oracle_depth, "cross-check against unrolled trajectories");

    auto* matrix = app.add_subcommand("matrix", "polynomial matrix whose kernel gives the invariants at each a");
    add_common(matrix, true);

    auto* classify = app.add_subcommand("classify", "invariants as a function of the initial values");
    add_common(classify, true);

    auto* terminate = app.add_subcommand("terminate", "decide non-termination of a loop guarded by equations");
    add_common(terminate, false);
    add_init(terminate);

    std::vector<std::string> argv_store{"polyinv"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : kError;
    }

    try {
        LoopProgram L = load_loop(cfg.loop_path);
        if (*check) return cmd_check(cfg, L, out, err);
        if (*generate) return cmd_generate(cfg, L, out, err);
        if (*general) return cmd_general(cfg, L, out, err);
        if (*matrix) return cmd_matrix(cfg, L, out, err);
        if (*classify) return cmd_classify(cfg, L, out, err);
        return cmd_terminate(cfg, L, out, err);
    } catch (const IterationLimitExceeded& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& p : e.partial_chain()) err << "  " << p << "\n";
        return kError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

}  // namespace polyinv
