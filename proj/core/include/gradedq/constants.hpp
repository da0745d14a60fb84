#pragma once

#include <string>
#include <vector>

#include "gradedq/brackets.hpp"

namespace gradedq {

// dense rational matrix, row major
struct Matrix {
	std::size_t rows = 0, cols = 0;
	std::vector<Rational> a;

	Matrix() = default;
	Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
	Rational& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
	const Rational& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
	bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// throws Error on singular input
Matrix inverse(const Matrix& m);
// basis of the right kernel, one vector per free column
std::vector<std::vector<Rational>> nullspace(const Matrix& m);

// [e_i,e_j] = c_ij^k e_k for a Lie superalgebra with basis parities p_i
class StructureConstants {
public:
	StructureConstants() = default;
	StructureConstants(std::vector<int> parities, std::vector<std::string> names = {});

	std::size_t dim() const { return par_.size(); }
	int parity(std::size_t i) const { return par_[i]; }
	const std::vector<int>& parities() const { return par_; }
	const std::string& name(std::size_t i) const { return names_[i]; }
	const std::vector<std::string>& names() const { return names_; }
	void set_names(std::vector<std::string> n);

	const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const
	{
		return t_[(i * dim() + j) * dim() + k];
	}
	Rational& at(std::size_t i, std::size_t j, std::size_t k) { return t_[(i * dim() + j) * dim() + k]; }
	// sets c_ij^k and the partner c_ji^k = -(-1)^{ij} c_ij^k
	void set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& v);

	bool is_zero() const;
	bool operator==(const StructureConstants& o) const;

	// empty when super-antisymmetric and parity consistent, else a description
	std::string validate() const;
	void require_valid() const;

	// [u,v] for coordinate vectors in this basis
	std::vector<Rational> bracket(const std::vector<Rational>& u, const std::vector<Rational>& v) const;
	// [a,[b,c]] - [[a,b],c] - (-1)^{ab} [b,[a,c]] on basis vectors
	std::vector<Rational> jacobi_defect(std::size_t i, std::size_t j, std::size_t k) const;
	bool satisfies_jacobi() const;

	std::string to_json() const;
	static StructureConstants from_json(const std::string& text);

	// lines "[a,b] = ..." for nonzero brackets with i <= j
	std::string render_table() const;

private:
	std::vector<int> par_;
	std::vector<std::string> names_;
	std::vector<Rational> t_;
};

// bilinear form (u,v) on a basis; parity 1 for odd forms
struct InnerProduct {
	Matrix gram;
	int parity = 0;

	const Rational& operator()(std::size_t i, std::size_t j) const { return gram(i, j); }
};

// ([u,v],w) + (-1)^{u(v+a)} (v,[u,w]) on basis triples; returns the first failure or empty
std::string invariance_failure(const StructureConstants& c, const InnerProduct& g);

// Pi g with coordinate xi^i of parity p_i+1 and weight 1; names default to xi_<basis name>
ChartPtr pi_chart(const StructureConstants& c, std::vector<std::string> names = {},
                  std::string chart_name = {});

// Q = 1/2 (-1)^j xi^j xi^i c_ij^k d/dxi^k
VectorField q_from_sc(const StructureConstants& c, const ChartPtr& pi);
// constants from [i_{e_i},[Q,i_{e_j}]] with i_{e_i} = (-1)^i d/dxi^i; throws on non-quadratic Q
StructureConstants sc_from_q(const VectorField& Q);

// Hamiltonian from coordinate brackets B^{ab} = {x^a,x^b}: Poisson tensor on an antilift,
// Schouten tensor on a cotangent lift
SuperPolynomial tensor_from_brackets(const ChartPtr& lift, const std::vector<std::vector<SuperPolynomial>>& B);

struct LieTensors {
	ChartPtr dual;         // g* with coordinates x_i, parity p_i
	ChartPtr dual_antilift;
	SuperPolynomial P;     // {x_i,x_j} = c_ij^k x_k
	ChartPtr pidual;       // Pi g* with coordinates xi_i, parity p_i+1
	ChartPtr pidual_lift;
	SuperPolynomial S;     // {xi_i,xi_j} = c_ij^k xi_k
};
LieTensors lie_tensors(const StructureConstants& c);

// linear Schouten tensor on T*Pi g with {xi^i,xi^j}_S = b^{ij}_k xi^k
SuperPolynomial schouten_from_dual(const StructureConstants& b, const ChartPtr& pi_lift);
// linear Poisson tensor on PiT*Pi g with [eps^i,eps^j] = d^{ij}_k eps^k in Pi g*
SuperPolynomial poisson_from_odd_dual(const StructureConstants& d, const ChartPtr& pi_antilift);

// builtins
StructureConstants gl_algebra(unsigned n);
StructureConstants sl_algebra(unsigned n);
StructureConstants susy1_algebra();

struct QAlgebra {
	unsigned n = 0;
	StructureConstants c;
	InnerProduct pairing;             // (x,y) = (-1)^x otr(xy)
	std::vector<int> part;            // +1 for n+, 0 for h, -1 for n-
	std::size_t e(unsigned i, unsigned j) const { return i * n + j; }
	std::size_t eps(unsigned i, unsigned j) const { return n * n + i * n + j; }
};
QAlgebra q_algebra(unsigned n);

// otr of a (2n x 2n) supermatrix, 1/2 str(I x)
Rational odd_trace(const Matrix& x);

}
