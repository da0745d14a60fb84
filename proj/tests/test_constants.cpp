#include <gtest/gtest.h>

#include "gradedq/constants.hpp"
#include "support.hpp"

using namespace gq_test;

namespace {

std::vector<StructureConstants> zoo()
{
	return {gl_algebra(1), gl_algebra(2), sl_algebra(2), sl_algebra(3), susy1_algebra(), q_algebra(1).c,
	        q_algebra(2).c};
}

}

TEST(Constants, BuiltinsAreLieSuperalgebras)
{
	for (auto& c : zoo()) {
		EXPECT_EQ(c.validate(), "");
		EXPECT_TRUE(c.satisfies_jacobi());
	}
	EXPECT_TRUE(gl_algebra(1).is_zero());
}

TEST(Constants, Susy1Field)
{
	auto c = susy1_algebra();
	auto pi = pi_chart(c, {"xi", "x"});
	EXPECT_EQ(pi->parity(0), 1);
	EXPECT_EQ(pi->parity(1), 0);
	auto Q = q_from_sc(c, pi);
	EXPECT_EQ(Q[0], -(v(pi, "x") * v(pi, "x")));
	EXPECT_TRUE(Q[1].is_zero());
	EXPECT_EQ(apply(Q, v(pi, "xi")), -(v(pi, "x") * v(pi, "x")));
}

TEST(Constants, Q1IsSusy1)
{
	auto q = q_algebra(1);
	EXPECT_EQ(q.c(1, 1, 0), 2);
	EXPECT_EQ(q.c, susy1_algebra());
}

TEST(Constants, GlFieldMatchesMatrixFormula)
{
	auto c = gl_algebra(2);
	auto pi = pi_chart(c);
	auto Q = q_from_sc(c, pi);
	VectorField want(pi);
	auto xi = [&](int i, int j) { return v(pi, ("xi_e" + std::to_string(i) + std::to_string(j)).c_str()); };
	for (int i = 1; i <= 2; ++i)
		for (int j = 1; j <= 2; ++j) {
			SuperPolynomial s(pi);
			for (int k = 1; k <= 2; ++k)
				s -= xi(i, k) * xi(k, j);
			want.set(pi->index("xi_e" + std::to_string(i) + std::to_string(j)), s);
		}
	EXPECT_EQ(Q, want) << Q.render();
	EXPECT_TRUE(commutator(Q, Q).is_zero());
}

TEST(Constants, GlFieldTangentToDiagonal)
{
	// the diagonal subalgebra is the zero locus of the off-diagonal coordinates
	auto c = gl_algebra(2);
	auto pi = pi_chart(c);
	auto Q = q_from_sc(c, pi);
	std::vector<SuperPolynomial> img;
	for (std::size_t i = 0; i < pi->size(); ++i) {
		const auto& n = pi->var(i).name;
		bool diag = n[4] == n[5];
		img.push_back(diag ? SuperPolynomial::variable(pi, i) : SuperPolynomial(pi));
	}
	for (auto off : {"xi_e12", "xi_e21"})
		EXPECT_TRUE(substitute(Q.coefficient(off), img, pi).is_zero());
}

TEST(Constants, RoundTrip)
{
	for (auto& c : zoo()) {
		auto Q = q_from_sc(c, pi_chart(c));
		EXPECT_EQ(sc_from_q(Q), c) << c.render_table();
	}
	StructureConstants ab({0, 1, 1});
	auto Q = q_from_sc(ab, pi_chart(ab));
	EXPECT_TRUE(Q.is_zero());
	EXPECT_TRUE(sc_from_q(Q).is_zero());
}

TEST(Constants, SquareZeroIffJacobi)
{
	auto c = sl_algebra(2);
	auto pi = pi_chart(c);
	EXPECT_TRUE(commutator(q_from_sc(c, pi), q_from_sc(c, pi)).is_zero());
	// break [h,e] only
	auto bad = c;
	std::size_t e12 = 0, h = 2;
	bad.set_bracket(h, e12, e12, 3);
	EXPECT_FALSE(bad.satisfies_jacobi());
	auto Q = q_from_sc(bad, pi);
	EXPECT_FALSE(commutator(Q, Q).is_zero());
}

TEST(Constants, RejectsBadConstants)
{
	StructureConstants c({0, 0});
	c.at(0, 1, 0) = 1;
	EXPECT_NE(c.validate(), "");
	EXPECT_THROW(q_from_sc(c, pi_chart(StructureConstants({0, 0}))), Error);
	StructureConstants d({0, 1});
	d.set_bracket(0, 1, 0, 1);
	EXPECT_NE(d.validate(), "");
	EXPECT_THROW(StructureConstants({0}).set_bracket(0, 0, 0, 1), Error);
}

TEST(Constants, NonQuadraticFieldRejected)
{
	auto c = susy1_algebra();
	auto pi = pi_chart(c);
	VectorField X(pi);
	X.set(0, SuperPolynomial::variable(pi, 1));
	EXPECT_THROW(sc_from_q(X), Error);
}

TEST(Constants, LieTensorsDerivedBrackets)
{
	for (auto& c : {sl_algebra(2), susy1_algebra(), q_algebra(2).c}) {
		auto t = lie_tensors(c);
		EXPECT_EQ(parity(t.P), 0);
		EXPECT_EQ(parity(t.S), 1);
		EXPECT_TRUE(canonical_schouten(t.P, t.P).is_zero());
		EXPECT_TRUE(canonical_poisson(t.S, t.S).is_zero());
		std::size_t n = c.dim();
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j) {
				SuperPolynomial wp(t.dual_antilift), ws(t.pidual_lift);
				for (std::size_t k = 0; k < n; ++k) {
					wp += c(i, j, k) * SuperPolynomial::variable(t.dual_antilift, k);
					ws += c(i, j, k) * SuperPolynomial::variable(t.pidual_lift, k);
				}
				auto xi = SuperPolynomial::variable(t.dual_antilift, i);
				auto xj = SuperPolynomial::variable(t.dual_antilift, j);
				EXPECT_EQ(derived_bracket(t.P, xi, xj), wp);
				auto yi = SuperPolynomial::variable(t.pidual_lift, i);
				auto yj = SuperPolynomial::variable(t.pidual_lift, j);
				EXPECT_EQ(derived_bracket(t.S, yi, yj), ws);
			}
	}
	auto t = lie_tensors(gl_algebra(1));
	EXPECT_TRUE(t.P.is_zero());
	EXPECT_TRUE(t.S.is_zero());
}

TEST(Constants, QPairing)
{
	for (unsigned n : {1u, 2u, 3u}) {
		auto q = q_algebra(n);
		for (unsigned i = 0; i < n; ++i)
			for (unsigned j = 0; j < n; ++j) {
				EXPECT_EQ(q.pairing(q.e(i, j), q.eps(j, i)), 1);
				EXPECT_EQ(q.pairing(q.eps(i, j), q.e(j, i)), -1);
			}
		Rational nonzero = 0;
		for (auto& x : q.pairing.gram.a)
			if (x != 0)
				nonzero += 1;
		EXPECT_EQ(nonzero, 2 * n * n);
		EXPECT_EQ(invariance_failure(q.c, q.pairing), "");
	}
}

TEST(Constants, OddTraceIsTraceOfB)
{
	Matrix x(4, 4);
	x(0, 2) = 3;
	x(1, 3) = -1;
	x(2, 0) = 3;
	x(3, 1) = -1;
	x(0, 0) = 5;
	x(2, 2) = 5;
	EXPECT_EQ(odd_trace(x), 2);
}

TEST(Constants, InvarianceDetectsBrokenForm)
{
	auto q = q_algebra(2);
	auto g = q.pairing;
	g.gram(q.e(0, 0), q.eps(0, 0)) = 2;
	EXPECT_NE(invariance_failure(q.c, g), "");
}

TEST(Constants, JsonRoundTrip)
{
	for (auto& c : zoo()) {
		auto back = StructureConstants::from_json(c.to_json());
		EXPECT_EQ(back, c);
		EXPECT_EQ(back.names(), c.names());
	}
	EXPECT_THROW(StructureConstants::from_json("{"), Error);
	EXPECT_THROW(StructureConstants::from_json(R"({"dim":1,"parities":[0],"entries":[[0,0,3,1,1]]})"), Error);
}

TEST(Constants, LinearAlgebra)
{
	Matrix m(2, 2);
	m(0, 0) = 2;
	m(0, 1) = 1;
	m(1, 0) = 1;
	m(1, 1) = 1;
	auto inv = inverse(m);
	EXPECT_EQ(inv(0, 0), 1);
	EXPECT_EQ(inv(0, 1), -1);
	EXPECT_EQ(inv(1, 1), 2);
	Matrix s(2, 2);
	s(0, 0) = 1;
	s(0, 1) = 2;
	s(1, 0) = 2;
	s(1, 1) = 4;
	EXPECT_THROW(inverse(s), Error);
	auto ns = nullspace(s);
	ASSERT_EQ(ns.size(), 1u);
	EXPECT_EQ(ns[0][0], -2);
	EXPECT_EQ(ns[0][1], 1);
}

TEST(Constants, Tables)
{
	EXPECT_EQ(susy1_algebra().render_table(), "[eps,eps] = 2*e\n");
}
