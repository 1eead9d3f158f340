#include "polyinv/termination.hpp"

#include "polyinv/errors.hpp"

namespace polyinv {

TerminationVerdict never_terminates_algebraic(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                                              const PolyMap& F, std::size_t max_iter) {
    TerminationVerdict out;
    std::vector<Polynomial> nz;
    for (const auto& g : gs)
        if (!g.is_zero()) nz.push_back(g);
    if (nz.empty()) return out;  // the guard holds everywhere
    if (a.size() != nz[0].ctx()->size()) throw ArityError("initial point has the wrong number of entries");
    auto R = invariant_set(nz, F, max_iter);
    out.iterations = R.iterations;
    out.invariant_set = R.polynomials();
    for (const auto& p : out.invariant_set) {
        Rational v = p.evaluate(a);
        if (v != 0) {
            out.verdict = Verdict::Terminates;
            out.witness = p;
            out.witness_value = v;
            break;
        }
    }
    return out;
}

const char* to_string(Verdict v) { return v == Verdict::NeverTerminates ? "NeverTerminates" : "Terminates"; }

}  // namespace polyinv
