#pragma once

#include "gradedq/geometry.hpp"

namespace gradedq {

// {f,g} on a cotangent lift, even bracket
SuperPolynomial canonical_poisson(const SuperPolynomial& f, const SuperPolynomial& g);
// {f,g} on an anticotangent lift, odd bracket
SuperPolynomial canonical_schouten(const SuperPolynomial& f, const SuperPolynomial& g);
// dispatches on the kind of chart
SuperPolynomial canonical_bracket(const SuperPolynomial& f, const SuperPolynomial& g);

// parity of the canonical bracket of the chart: 0 on T*M, 1 on PiT*M
int bracket_parity(const Chart& lift);

// {f,{T,g}}; T must make {T,.} an odd operator
SuperPolynomial derived_bracket(const SuperPolynomial& T, const SuperPolynomial& f,
                                const SuperPolynomial& g);

// {p(Q),T} on a cotangent lift, (-1)^Q {theta(Q),T} on an anticotangent lift
SuperPolynomial lie_derivative(const VectorField& Q, const SuperPolynomial& T);

// X_H = {H, .} as a field on the lift
VectorField hamiltonian_vector_field(const SuperPolynomial& H);

}
