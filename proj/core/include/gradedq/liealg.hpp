#pragma once

#include <array>
#include <string>
#include <vector>

#include "gradedq/doubles.hpp"

namespace gradedq {

// S(g) with generators of parity p_i, or Lambda(g) with parity p_i+1; one generator per basis name
ChartPtr product_chart(const StructureConstants& c, bool wedge);

// delta(E_k) for every basis vector, as quadratic polynomials on product_chart
struct Cobracket {
	ChartPtr chart;
	std::vector<SuperPolynomial> delta;

	// "delta(e) = ..." per basis vector, zero lines included
	std::string render() const;
	bool operator==(const Cobracket& o) const { return delta == o.delta; }
};

// (ad u)(rho) for every basis vector u, ad acting as a derivation of the product
Cobracket coboundary(const StructureConstants& c, const SuperPolynomial& rho);

// delta(E_K) = (-1)^K P^{IJ}_K E_J E_I for a linear Poisson tensor on PiT*(Pi d),
// where P^{IJ}_K z^K = (-1)^{z^I} {z^I,z^J}_P
Cobracket odd_cobracket(const SuperPolynomial& P);

// Drinfeld double of an (even or super) Lie bialgebra; b holds [e^i,e^j] = b^{ij}_k e^k
struct DrinfeldDouble {
	StructureConstants g, b;
	ChartPtr pi, lift, second;
	DoubleModel model;
	// basis e_i then e^i (named dual_<name>)
	StructureConstants d;
	SuperPolynomial r, S_D;
	// [E_A,E_B]_(2) read off {z_A,z_B}_{S_D} with z(e_i) = xi_i and z(e^i) = xi^i
	StructureConstants second_bracket;
	CheckReport bialgebra;
	InnerProduct pairing;
	std::string invariance;
	std::pair<CheckReport, CheckReport> yang_baxter;
};
DrinfeldDouble drinfeld_double(const StructureConstants& g, const StructureConstants& b);

// odd double of g with [eps^i,eps^j] = dual^{ij}_k eps^k on Pi g*
struct OddDouble {
	StructureConstants g, dual;
	ChartPtr pi, anti, second;
	SuperPolynomial Q, P;
	CheckReport conditions;
	DoubleModel model;
	// basis e_i then eps^i (named eps_<name>)
	StructureConstants d;
	OddDoubleTensor tensor;
	Cobracket delta;
	// cobracket of g alone from P
	Cobracket delta_g;
	InnerProduct pairing;
	std::string invariance;
};
OddDouble odd_double(const StructureConstants& g, const StructureConstants& dual);

// constants for Pi g* with P^{ij}_k = (-1)^{i+1} d^{ij}_k read from a linear Poisson tensor
StructureConstants odd_dual_from_poisson(const SuperPolynomial& P, const StructureConstants& g);

// [e_i,e^j] = s1 B^{jk}_i e_k + s2 C_ki^j e^k + s3 H_{i mu}^j g^{mu lambda} e_lambda with [e_mu,e_i] = H_{i mu}^k e_k,
// each sign (-1)^{a0 + a1 i + a2 j + a3 k} over the parities of i, j and the output index
struct SignFit {
	std::string family;
	std::vector<std::array<int, 4>> solutions;
	bool vacuous = false;
};

struct RelativeDouble {
	StructureConstants d;
	std::vector<int> part;
	InnerProduct form;
	// dual basis: e^i = sum_b dual[i][b] E_b over the b part, for the a part in order
	std::vector<std::size_t> a_index, h_index, b_index;
	std::vector<std::vector<Rational>> dual;
	std::vector<SignFit> signs;
	CheckReport checks;
	Cobracket delta;
	SuperPolynomial rho;
};
// known holds the brackets inside a+h and b+h; part is +1 on a, 0 on h, -1 on b
RelativeDouble relative_double(const StructureConstants& known, const std::vector<int>& part,
                               const InnerProduct& form);

}
