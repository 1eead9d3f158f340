#pragma once

#include "polyinv/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyinv {

// An invariant f(x) - f(a) valid for every initial value a.
struct GeneralInvariant {
    Polynomial f;

    // "f(x) - (f(a))" with the initial values printed as a1..an.
    std::string presentation() const;
    // f(x) - f(a) for a concrete a.
    Polynomial instantiate(std::span<const Rational> a) const;
};

struct GeneralReport {
    std::vector<GeneralInvariant> invariants;
    std::size_t forms = 0;       // extracted linear forms, all branches together
    std::size_t raw_kernel = 0;  // kernel dimension before constants are factored out
};

// All f in span(gs) with f(F_i(x)) = f(x) for every branch, modulo constants. Output is
// in reduced echelon form over the monomials, each scaled to primitive integer coefficients.
GeneralReport general_invariants_report(const std::vector<Polynomial>& gs, const std::vector<PolyMap>& Fs);
std::vector<GeneralInvariant> general_invariants(const std::vector<Polynomial>& gs, const std::vector<PolyMap>& Fs);

bool check_fixed_identity(const Polynomial& f, const std::vector<PolyMap>& Fs);

// If g = P*f with f fixed by every branch, P(a)f(x) - g(a) is an invariant for every a;
// returns f in that case.
std::optional<GeneralInvariant> reduce_scaled_form(const Polynomial& P, const Polynomial& g,
                                                   const std::vector<PolyMap>& Fs);

}  // namespace polyinv
