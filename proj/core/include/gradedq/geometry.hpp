#pragma once

#include <string>
#include <vector>

#include "gradedq/superpoly.hpp"

namespace gradedq {

// Weights (w_a, q, s or p, lambda) of a graded QS- or QP-manifold.
struct GradingSystem {
	enum class Kind { QS, QP };
	Kind kind = Kind::QS;
	int q = 0;
	int s_or_p = 0;
	Rational lambda = 1;

	int shift() const { return q - s_or_p; }
	static GradingSystem induced() { return {}; }
};

// momentum names default to p_<name> / ast_<name>; an empty lift name becomes T*<chart> or PiT*<chart>
ChartPtr cotangent_lift(const ChartPtr& chart, const GradingSystem& g,
                        const std::vector<std::string>& names = {}, std::string lift_name = {});
ChartPtr anticotangent_lift(const ChartPtr& chart, const GradingSystem& g,
                            const std::vector<std::string>& names = {}, std::string lift_name = {});

// base polynomial viewed on a lift of its chart
SuperPolynomial pull_to_lift(const SuperPolynomial& f, const ChartPtr& lift);
// inverse of pull_to_lift; throws if f carries momenta
SuperPolynomial push_to_base(const SuperPolynomial& f);
bool momentum_free(const SuperPolynomial& f);

// Sum of X^a d/dx^a with the coefficients on the left.
class VectorField {
public:
	VectorField() = default;
	explicit VectorField(ChartPtr chart);
	VectorField(ChartPtr chart, std::vector<SuperPolynomial> coefficients);

	const ChartPtr& chart() const { return chart_; }
	std::size_t size() const { return coef_.size(); }
	const SuperPolynomial& operator[](std::size_t a) const { return coef_.at(a); }
	const SuperPolynomial& coefficient(std::string_view var) const;
	void set(std::size_t a, SuperPolynomial c);
	const std::vector<SuperPolynomial>& coefficients() const { return coef_; }

	bool is_zero() const;
	bool operator==(const VectorField& o) const;
	bool operator!=(const VectorField& o) const { return !(*this == o); }

	VectorField& operator+=(const VectorField& o);
	VectorField& operator-=(const VectorField& o);
	VectorField& operator*=(const Rational& c);

	// homogeneous parity; throws on mixed fields, 0 for the zero field
	int parity() const;
	// even and odd parts
	std::pair<VectorField, VectorField> split_parity() const;
	WeightGrade weight() const;

	VectorField rechart(ChartPtr target) const;

	// "(X^a) d/dx^a + ..." in chart order
	std::string render() const;

private:
	ChartPtr chart_;
	std::vector<SuperPolynomial> coef_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(const Rational& c, VectorField a);

SuperPolynomial apply(const VectorField& X, const SuperPolynomial& f);
VectorField commutator(const VectorField& X, const VectorField& Y);

SuperPolynomial hamiltonian_lift_p(const VectorField& X, const ChartPtr& cotangent);
SuperPolynomial multivector_lift_theta(const VectorField& X, const ChartPtr& anticotangent);

}
