#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gradedq/constants.hpp"

namespace gradedq {

// pass iff every residue component is zero
struct CheckReport {
	std::string name;
	bool pass = true;
	std::vector<std::pair<std::string, SuperPolynomial>> residue;
	std::string context;

	void add(std::string label, SuperPolynomial r);
	// "0", a single polynomial, or "label: poly; ..." for the nonzero components
	std::string residue_text() const;
};

// residue 1/2 [Q,Q], one component per coordinate
CheckReport check_homological(const VectorField& Q);
// same condition via {p(Q),p(Q)} on the cotangent lift
CheckReport check_homological_hamiltonian(const VectorField& Q);
// {T,T} under the canonical bracket of T's chart; P even on PiT*M, S odd on T*M
CheckReport check_tensor(const SuperPolynomial& T, std::string name = "tensor");

enum class StructureKind { QS, QP };
// {p(Q),S} or {theta(Q),P}
CheckReport check_compatibility(const VectorField& Q, const SuperPolynomial& T, StructureKind kind);

// super case through {Q,Q}, {S,S}, {Q,S} on T*Pi g; even case also through the 5-term identity
CheckReport check_bialgebra(const StructureConstants& c, const StructureConstants& b);
// c_jk^i b_i^{nm} - c_ji^n b_k^{im} + c_ji^m b_k^{in} + c_ki^n b_j^{im} - c_ki^m b_j^{in}, indexed (j,k,n,m)
std::vector<Rational> cocycle_identity(const StructureConstants& c, const StructureConstants& b);

// {r,r}_Q = {r,{Q,r}} and {Q,{r,r}_Q}; r even, constant coefficients, momenta only
std::pair<CheckReport, CheckReport> yang_baxter(const SuperPolynomial& r, const SuperPolynomial& Q);

// weight-zero variables form the base, the rest the fiber
struct AlgebroidData {
	std::vector<std::size_t> base, fiber;
	// anchor[i][a]: Q^a = xi^i Q_i^a
	std::vector<std::vector<SuperPolynomial>> anchor;
	// bracket[i][j][k] = Q_ij^k with Q^k = 1/2 xi^j xi^i Q_ij^k
	std::vector<std::vector<std::vector<SuperPolynomial>>> bracket;
	ChartPtr chart;

	// [e_i,e_j]_E = (-1)^j Q_ij^k e_k and a(e_i) = Q_i^a d/dx^a
	std::string render() const;
};
AlgebroidData algebroid_extract(const VectorField& Q);

// components of 1/2 [Q,Q] by fiber degree of the coefficients
std::map<unsigned, VectorField> linf_components(const VectorField& Q);
CheckReport check_linf(const VectorField& Q);

}
