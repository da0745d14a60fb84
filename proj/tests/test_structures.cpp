#include <gtest/gtest.h>

#include "gradedq/structures.hpp"
#include "support.hpp"

using namespace gq_test;

namespace {

// [e1,e2] = e2
StructureConstants two_dim()
{
	StructureConstants c({0, 0});
	c.set_bracket(0, 1, 1, 1);
	return c;
}

// susy1 data on Pi g: xi for e, x for eps
struct Susy {
	ChartPtr pi, anti;
	VectorField Q;
	SuperPolynomial P;
};

Susy susy()
{
	Susy s;
	auto c = susy1_algebra();
	s.pi = pi_chart(c, {"xi", "x"});
	s.anti = anticotangent_lift(s.pi, {}, {"ast_xi", "ast_x"});
	s.Q = q_from_sc(c, s.pi);
	auto x = v(s.anti, "x"), xs = v(s.anti, "ast_xi");
	s.P = -(x * xs * xs);
	return s;
}

SuperPolynomial homogeneous(RandomPolys& rp, const ChartPtr& c, unsigned deg, int par, unsigned terms)
{
	SuperPolynomial r(c);
	for (unsigned t = 0; t < terms; ++t)
		for (int tries = 0; tries < 30; ++tries) {
			auto m = rp.monomial(*c, deg);
			if (monomial_parity(m, *c) != par)
				continue;
			r.add_term(m, rp.coeff());
			break;
		}
	return r;
}

}

TEST(Structures, HomologicalExamples)
{
	auto c = r13_chart();
	auto Q = r13_field(c);
	auto rep = check_homological(Q);
	EXPECT_TRUE(rep.pass) << rep.residue_text();
	EXPECT_EQ(rep.residue_text(), "0");
	EXPECT_TRUE(check_homological_hamiltonian(Q).pass);
	EXPECT_TRUE(check_homological(susy().Q).pass);
	auto g = gl_algebra(2);
	EXPECT_TRUE(check_homological(q_from_sc(g, pi_chart(g))).pass);
}

TEST(Structures, HomologicalFailureAgreesAcrossPaths)
{
	auto c = r13_chart();
	auto Q = r13_field(c);
	Q.set(1, Q[1] + v(c, "xi2") * v(c, "xi3"));
	auto a = check_homological(Q);
	auto b = check_homological_hamiltonian(Q);
	EXPECT_FALSE(a.pass);
	EXPECT_FALSE(b.pass);
	EXPECT_NE(a.residue_text(), "0");
	VectorField E(c);
	E.set(0, v(c, "x"));
	EXPECT_THROW(check_homological(E), ParityMismatch);
}

TEST(Structures, TensorChecks)
{
	auto s = susy();
	EXPECT_TRUE(check_tensor(s.P, "P").pass);
	auto t = lie_tensors(sl_algebra(2));
	EXPECT_TRUE(check_tensor(t.S, "S").pass);
	EXPECT_TRUE(check_tensor(t.P, "P").pass);
	EXPECT_THROW(check_tensor(s.P * v(s.anti, "ast_x")), ParityMismatch);
	EXPECT_THROW(check_tensor(v(s.pi, "x")), ChartMismatch);
}

TEST(Structures, PoissonTensorFailureIsReported)
{
	// a non-Lie bracket [e1,e2]=e3, [e2,e3]=e2, [e1,e3]=e1 has nonzero {S,S}
	StructureConstants c({0, 0, 0});
	c.set_bracket(0, 1, 2, 1);
	c.set_bracket(1, 2, 1, 1);
	c.set_bracket(0, 2, 0, 1);
	ASSERT_FALSE(c.satisfies_jacobi());
	auto t = lie_tensors(c);
	auto r = check_tensor(t.S, "S");
	EXPECT_FALSE(r.pass);
	EXPECT_FALSE(check_tensor(t.P, "P").pass);
}

TEST(Structures, Q1Compatibility)
{
	auto s = susy();
	EXPECT_TRUE(check_compatibility(s.Q, s.P, StructureKind::QP).pass);
	EXPECT_TRUE(check_compatibility(s.Q, SuperPolynomial(s.anti), StructureKind::QP).pass);
	EXPECT_THROW(check_compatibility(s.Q, s.P, StructureKind::QS), ChartMismatch);
	// Q = -x^2 d/dxi: theta(Q) = x^2 ast_xi
	EXPECT_EQ(multivector_lift_theta(s.Q, s.anti).render(), "x^2*ast_xi");
}

TEST(Structures, PerturbedBialgebraFails)
{
	auto c = sl_algebra(2);
	auto all = brute_force_bialgebras(c);
	StructureConstants b;
	for (auto& x : all)
		if (!x.is_zero()) {
			b = x;
			break;
		}
	ASSERT_FALSE(b.is_zero());
	auto pi = pi_chart(c);
	auto lift = cotangent_lift(pi, {});
	auto Q = q_from_sc(c, pi);
	EXPECT_TRUE(check_compatibility(Q, schouten_from_dual(b, lift), StructureKind::QS).pass);
	auto bad = b;
	for (std::size_t k = 0; k < 3; ++k)
		if (bad(0, 1, k) == 0) {
			bad.set_bracket(0, 1, k, 1);
			break;
		}
	auto r = check_compatibility(Q, schouten_from_dual(bad, lift), StructureKind::QS);
	EXPECT_FALSE(r.pass);
	EXPECT_FALSE(check_bialgebra(c, bad).pass);
}

TEST(Structures, BialgebraTrivialCobracket)
{
	for (auto& c : {two_dim(), sl_algebra(2), gl_algebra(2)}) {
		StructureConstants b(c.parities());
		EXPECT_TRUE(check_bialgebra(c, b).pass);
	}
}

TEST(Structures, CocycleIdentityAgreesWithBracketPath)
{
	// every 2-dim (c,b) with entries in {-1,0,1}; check_bialgebra itself throws on disagreement
	int pass = 0, fail = 0;
	for (int c0 = -1; c0 <= 1; ++c0)
		for (int c1 = -1; c1 <= 1; ++c1)
			for (int b0 = -1; b0 <= 1; ++b0)
				for (int b1 = -1; b1 <= 1; ++b1) {
					StructureConstants c({0, 0}), b({0, 0});
					c.set_bracket(0, 1, 0, c0);
					c.set_bracket(0, 1, 1, c1);
					b.set_bracket(0, 1, 0, b0);
					b.set_bracket(0, 1, 1, b1);
					auto r = check_bialgebra(c, b);
					bool coord = true;
					for (auto& x : cocycle_identity(c, b))
						coord = coord && x == 0;
					EXPECT_EQ(r.pass, coord);
					(r.pass ? pass : fail)++;
				}
	// Lambda^2 of a plane is a line, so every cobracket is a cocycle
	EXPECT_EQ(pass, 81);
	EXPECT_EQ(fail, 0);
}

TEST(Structures, TwoDimExample)
{
	// [e1,e2]=e2 with [e^1,e^2] = e^2 or e^1 on the dual
	auto c = two_dim();
	for (std::size_t k = 0; k < 2; ++k) {
		StructureConstants b({0, 0});
		b.set_bracket(0, 1, k, 1);
		auto r = check_bialgebra(c, b);
		EXPECT_TRUE(r.pass) << r.residue_text();
		EXPECT_EQ(r.residue_text(), "0");
	}
}

TEST(Structures, Sl2BruteForceBialgebras)
{
	auto c = sl_algebra(2);
	auto all = brute_force_bialgebras(c);
	EXPECT_GT(all.size(), 2u);
	for (auto& b : all)
		EXPECT_TRUE(check_bialgebra(c, b).pass) << b.render_table();
}

TEST(Structures, YangBaxterTrivialCases)
{
	auto c = sl_algebra(2);
	auto pi = pi_chart(c);
	auto lift = cotangent_lift(pi, {});
	auto Q = hamiltonian_lift_p(q_from_sc(c, pi), lift);
	auto [cy, gy] = yang_baxter(SuperPolynomial(lift), Q);
	EXPECT_TRUE(cy.pass);
	EXPECT_TRUE(gy.pass);
	// abelian: Q = 0
	StructureConstants ab({0, 0});
	auto pa = pi_chart(ab);
	auto la = cotangent_lift(pa, {});
	auto r = v(la, "p_xi_e1") * v(la, "p_xi_e2");
	auto res = yang_baxter(r, SuperPolynomial(la));
	EXPECT_TRUE(res.first.pass);
	EXPECT_TRUE(res.second.pass);
	EXPECT_THROW(yang_baxter(v(la, "xi_e1") * r, SuperPolynomial(la)), Error);
}

TEST(Structures, AlgebroidOfLieAlgebra)
{
	auto c = sl_algebra(2);
	auto pi = pi_chart(c);
	auto d = algebroid_extract(q_from_sc(c, pi));
	EXPECT_TRUE(d.base.empty());
	ASSERT_EQ(d.fiber.size(), 3u);
	for (std::size_t i = 0; i < 3; ++i)
		for (std::size_t j = 0; j < 3; ++j)
			for (std::size_t m = 0; m < 3; ++m) {
				// [e_i,e_j] = (-1)^j Q_ij^k e_k
				auto q = d.bracket[i][j][m];
				EXPECT_EQ(q, k(pi, c(i, j, m)));
			}
}

TEST(Structures, AlgebroidOfSuperAlgebraRecoversBracket)
{
	auto c = susy1_algebra();
	auto pi = pi_chart(c);
	auto d = algebroid_extract(q_from_sc(c, pi));
	for (std::size_t i = 0; i < 2; ++i)
		for (std::size_t j = 0; j < 2; ++j)
			for (std::size_t m = 0; m < 2; ++m)
				EXPECT_EQ(Rational(sgn(c.parity(j))) * d.bracket[i][j][m], k(pi, c(i, j, m)));
	EXPECT_EQ(d.render(), "[e_xi_eps,e_xi_eps] = (2)*e_xi_e\n");
}

TEST(Structures, AlgebroidDeRham)
{
	auto c = chart("R11", {{"x", 0, 0}, {"xi", 1, 1}});
	VectorField Q(c);
	Q.set(0, v(c, "xi"));
	auto d = algebroid_extract(Q);
	ASSERT_EQ(d.base.size(), 1u);
	ASSERT_EQ(d.fiber.size(), 1u);
	EXPECT_EQ(d.anchor[0][0], k(c, 1));
	EXPECT_TRUE(d.bracket[0][0][0].is_zero());
}

TEST(Structures, AlgebroidRejectsCubicTerm)
{
	auto c = r13_chart();
	try {
		algebroid_extract(r13_field(c));
		FAIL() << "expected an error";
	} catch (const Error& e) {
		EXPECT_NE(std::string(e.what()).find("cubic"), std::string::npos) << e.what();
	}
}

class LinfProperty : public ::testing::TestWithParam<unsigned> {};

TEST_P(LinfProperty, ResidueSplitsByDegree)
{
	RandomPolys rp(GetParam());
	auto c = chart("V", {{"a", 1, 1}, {"b", 1, 1}, {"u", 0, 1}, {"w", 0, 1}});
	std::vector<VectorField> parts;
	for (unsigned d = 0; d <= 3; ++d) {
		VectorField X(c);
		for (std::size_t k = 0; k < c->size(); ++k)
			X.set(k, homogeneous(rp, c, d, 1 - c->parity(k), 2));
		parts.push_back(X);
	}
	VectorField Q(c);
	for (auto& p : parts)
		Q += p;
	auto comps = linf_components(Q);
	// sum of components is the full residue
	VectorField sum(c);
	for (auto& [d, X] : comps)
		sum += X;
	auto full = commutator(Q, Q);
	full *= Rational(1, 2);
	EXPECT_EQ(sum, full);
	// degree d collects 1/2 [Q_m,Q_n] with m + n - 1 = d
	for (unsigned d = 0; d <= 5; ++d) {
		VectorField want(c);
		for (unsigned m = 0; m <= 3; ++m)
			for (unsigned n = 0; n <= 3; ++n)
				if (m + n == d + 1) {
					auto t = commutator(parts[m], parts[n]);
					t *= Rational(1, 2);
					want += t;
				}
		auto it = comps.find(d);
		EXPECT_EQ(it == comps.end() ? VectorField(c) : it->second, want) << "degree " << d;
	}
	// without constant and linear parts the lowest component is the Jacobi part of Q_2
	VectorField high = parts[2] + parts[3];
	auto hc = linf_components(high);
	auto jac = commutator(parts[2], parts[2]);
	jac *= Rational(1, 2);
	auto it = hc.find(3);
	EXPECT_EQ(it == hc.end() ? VectorField(c) : it->second, jac);
	EXPECT_EQ(hc.count(0) + hc.count(1) + hc.count(2), 0u);
}

INSTANTIATE_TEST_SUITE_P(Seeds, LinfProperty, ::testing::Values(1u, 2u, 3u));

TEST(Structures, LinfJacobiComponentVanishesForLieAlgebras)
{
	auto c = sl_algebra(2);
	auto pi = pi_chart(c);
	auto Q2 = q_from_sc(c, pi);
	RandomPolys rp(5);
	VectorField Q3(pi);
	for (std::size_t k = 0; k < pi->size(); ++k)
		Q3.set(k, homogeneous(rp, pi, 3, 0, 2));
	auto comps = linf_components(Q2 + Q3);
	EXPECT_EQ(comps.count(3), 0u);
	auto rep = check_linf(Q2 + Q3);
	for (auto& [label, r] : rep.residue)
		if (label.rfind("degree 3", 0) == 0)
			EXPECT_TRUE(r.is_zero());
}
