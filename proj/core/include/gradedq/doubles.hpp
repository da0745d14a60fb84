#pragma once

#include <string>
#include <vector>

#include "gradedq/structures.hpp"

namespace gradedq {

// Gamma_ab^c on a base chart, flat when all entries vanish
class Connection {
public:
	Connection() = default;
	explicit Connection(ChartPtr chart);

	const ChartPtr& chart() const { return chart_; }
	std::size_t dim() const { return n_; }
	const SuperPolynomial& operator()(std::size_t a, std::size_t b, std::size_t c) const;
	void set(std::size_t a, std::size_t b, std::size_t c, SuperPolynomial g);
	bool flat() const;
	// empty when every entry has weight w_c - w_a - w_b
	std::string weight_failure() const;

private:
	ChartPtr chart_;
	std::size_t n_ = 0;
	std::vector<SuperPolynomial> g_;
};

struct DoubleModel {
	StructureKind kind = StructureKind::QS;
	GradingSystem grading;
	VectorField Q;
	// S on T*M or P on PiT*M
	SuperPolynomial tensor;
	ChartPtr lift;
	// Q + lambda S, or theta(Q) + lambda P
	SuperPolynomial hamiltonian;
	VectorField Q_D;
	CheckReport compatibility;
	bool forced = false;

	std::vector<int> total_weights() const;
	std::string render() const;
};

// Q_D = X_{Q + lambda S} on the cotangent lift carrying S
DoubleModel build_double_QS(const VectorField& Q, const SuperPolynomial& S, const GradingSystem& g,
                            bool force = false);
// Q_D = X_{theta(Q) + lambda P} on the anticotangent lift carrying P
DoubleModel build_double_QP(const VectorField& Q, const SuperPolynomial& P, const GradingSystem& g,
                            bool force = false);

// T*DM (resp. PiT*DM for a QP double) with the weight shift 0; momenta default to pi_<name> / star_<name>
ChartPtr second_lift(const DoubleModel& d, const std::vector<std::string>& names = {},
                     std::string lift_name = {});

// r = p_a q^a + Gamma_ab^c y_c q^b q^a on the second lift
SuperPolynomial long_momentum_r(const DoubleModel& d, const ChartPtr& second, const Connection& gamma);
// 1/2 {p(Q_D), r}; checks fiber degree 2 and weight s
SuperPolynomial almost_schouten_SD(const DoubleModel& d, const SuperPolynomial& r);

struct OddDoubleTensor {
	SuperPolynomial rho;
	SuperPolynomial P_D;
	CheckReport poisson;
	CheckReport invariance;
};
// rho = sum (momentum of y_a)(momentum of x^a), P_D = 1/2 {-theta(Q_D), rho}
OddDoubleTensor odd_rho_PD(const DoubleModel& d, const ChartPtr& second);

enum class DualityKind { Even, Odd };
// even case only: the standard map (x, p_i, p_a, -(-1)^i y) or its left-coordinate form (x, (-1)^i p_i, p_a, -y)
enum class DualityCoordinates { Standard, Left };

// F: T*E -> T*E* or PiT*E -> PiT*(Pi E*); weight zero variables form the base of E
struct DualityMap {
	DualityKind kind = DualityKind::Even;
	DualityCoordinates coordinates = DualityCoordinates::Standard;
	ChartPtr E, dual;
	ChartPtr source, target;
	// image of every target variable, on source
	std::vector<SuperPolynomial> images;
	CheckReport preservation;

	SuperPolynomial pull(const SuperPolynomial& f) const;
	std::string render() const;
};
ChartPtr dual_bundle_chart(const ChartPtr& E, DualityKind kind);
DualityMap duality_map(const ChartPtr& E, DualityKind kind,
                       DualityCoordinates coords = DualityCoordinates::Standard);

// I o F_{E*} o F_E on the source lift, compared with -1 on the fibers
struct DualitySquare {
	ChartPtr source;
	std::vector<SuperPolynomial> images;
	CheckReport report;
};
DualitySquare duality_square(const ChartPtr& E, DualityKind kind,
                             DualityCoordinates coords = DualityCoordinates::Standard);

}
