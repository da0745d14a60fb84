#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gradedq/dsl.hpp"
#include "support.hpp"

using namespace gq_test;

namespace {

std::string slurp(const std::string& p)
{
	std::ifstream in(p);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

Model r13_model()
{
	return load_model(GQ_MODELS_DIR "/r13.gq");
}

const char* small = "chart C {\n"
                    "\tvar x : even, weight 0;\n"
                    "\tvar xi : odd, weight 1;\n"
                    "}\n";

}

TEST(Dsl, R13ParsesToTheFixture)
{
	auto m = r13_model();
	ASSERT_EQ(m.charts.size(), 1u);
	auto c = m.charts[0];
	EXPECT_EQ(c->size(), 4u);
	EXPECT_EQ(m.field("Q")->field.render(), r13_field(r13_chart()).render());
	EXPECT_EQ(m.grading("g")->grading.q, 1);
	EXPECT_EQ(m.grading("g")->grading.s_or_p, -1);
	EXPECT_TRUE(m.tensor("S")->value.is_zero());
}

TEST(Dsl, RoundTrip)
{
	auto m = r13_model();
	auto text = print_model(m);
	auto again = parse_model(text, m.source, GQ_MODELS_DIR);
	EXPECT_TRUE(again == m) << text;
	EXPECT_EQ(print_model(again), text);
}

TEST(Dsl, RoundTripEveryDeclarationKind)
{
	std::string src = std::string(small) +
	                  "grading h { q=1; p=3; lambda=1/2; }\n"
	                  "field X on C = 2/3*x*xi d/dx - xi d/dxi;\n"
	                  "tensor P on antilift(C) : odd = ast_x*ast_xi;\n"
	                  "connection G on C { Gamma[x,x,x] = 2*x; }\n"
	                  "algebra A = q(2);\n"
	                  "algebra B = gl(1);\n";
	auto m = parse_model(src);
	auto again = parse_model(print_model(m));
	EXPECT_TRUE(again == m) << print_model(m);
}

TEST(Dsl, OddSquareNormalizesToZero)
{
	auto m = parse_model(std::string(small) + "field X on C = xi^2 d/dx + x d/dx;\n");
	EXPECT_EQ(m.field("X")->field.render(), "(x) d/dx");
	auto z = parse_model(std::string(small) + "field Z on C = xi^2 d/dx;\n");
	EXPECT_TRUE(z.field("Z")->field.is_zero());
}

TEST(Dsl, UnicodeAliases)
{
	auto m = parse_model("chart C { var x : even, weight 0; var \xce\xbe : odd, weight 1; }\n"
	                     "field X on C = \xe2\x88\x92x\xc2\xb7\xce\xbe d/d\xce\xbe;\n");
	EXPECT_EQ(m.field("X")->field.render(), "(-x*xi) d/dxi");
}

TEST(Dsl, MissingSemicolonIsLocated)
{
	std::string src = std::string(small) + "field X on C = x d/dx\nfield Y on C = 0;\n";
	try {
		parse_model(src, "m.gq");
		FAIL() << "accepted";
	} catch (const ParseError& e) {
		EXPECT_EQ(e.line(), 5);
		EXPECT_EQ(e.column(), 22);
		EXPECT_NE(std::string(e.what()).find("m.gq:5:22: error: expected ';'"), std::string::npos) << e.what();
	}
}

TEST(Dsl, Errors)
{
	auto located = [](const std::string& src, int line, int col, const std::string& frag) {
		try {
			parse_model(src);
			ADD_FAILURE() << "accepted: " << src;
		} catch (const ParseError& e) {
			EXPECT_EQ(e.line(), line) << e.what();
			EXPECT_EQ(e.column(), col) << e.what();
			EXPECT_NE(std::string(e.what()).find(frag), std::string::npos) << e.what();
		}
	};
	std::string s = small;
	located(s + "field X on C = y d/dx;\n", 5, 16, "unknown variable 'y'");
	located(s + "field X on C = x d/dz;\n", 5, 18, "unknown variable 'z'");
	located(s + "field X on C : odd = x d/dx;\n", 5, 7, "declared odd but is even");
	located(s + "field X on C : even = (x + xi) d/dx;\n", 5, 7, "mixed parity");
	located(s + "field X on D = x d/dx;\n", 5, 12, "unknown chart 'D'");
	located(s + "chart C { var y : even, weight 0; }\n", 5, 7, "already declared");
	located(s + "grading g { q=1; }\n", 5, 9, "needs q and one of s or p");
	located(s + "algebra A = foo(2);\n", 5, 13, "unknown algebra");
	located(s + "algebra A = sc \"missing.json\";\n", 5, 13, "cannot open");
	located(s + "field X on C = x @ d/dx;\n", 5, 18, "unexpected character");
	located("chart C { var x : even, weight 0 }\n", 1, 33, "expected ';'");
}

TEST(Dsl, DegreeCap)
{
	std::string s = std::string(small) + "field X on C = x^70 d/dx;\n";
	EXPECT_THROW(parse_model(s), ParseError);
	setenv("GRADEDQ_DEGREE_CAP", "100", 1);
	EXPECT_NO_THROW(parse_model(s));
	setenv("GRADEDQ_DEGREE_CAP", "junk", 1);
	EXPECT_THROW(parse_model(s), UsageError);
	unsetenv("GRADEDQ_DEGREE_CAP");
}

TEST(Dsl, CheckQPasses)
{
	auto r = run({"check-q", "Q"}, r13_model());
	EXPECT_TRUE(r.pass()) << r.text();
}

TEST(Dsl, SdReportsTheJacobiResidue)
{
	auto r = run({"sd", "Q", "S", "g", "--connection", "flat", "--momenta", "p,pi1,pi2,pi3,q,k1,k2,k3"}, r13_model());
	EXPECT_FALSE(r.pass());
	ASSERT_FALSE(r.checks.empty());
	auto c = r.checks[0];
	ASSERT_EQ(c.residue.size(), 1u);
	auto ch = c.residue[0].second.chart();
	auto y = v(ch, "y"), x3 = v(ch, "xi3"), h2 = v(ch, "eta2"), q = v(ch, "q");
	auto k1 = v(ch, "k1"), k2 = v(ch, "k2"), k3 = v(ch, "k3");
	auto want = 2 * ((y * x3 + h2) * k1 * k2 * k3 - y * q * k1 * k3);
	EXPECT_EQ(c.residue[0].second, want) << c.residue[0].second.render();
}

TEST(Dsl, ReportsAreDeterministic)
{
	auto m = r13_model();
	std::vector<std::string> cmd = {"double", "Q", "S", "g"};
	EXPECT_EQ(run(cmd, m).text(), run(cmd, r13_model()).text());
	EXPECT_EQ(run(cmd, m).json(), run(cmd, m).json());
}

TEST(Dsl, UsageErrors)
{
	auto m = r13_model();
	EXPECT_THROW(run({"nope"}, m), UsageError);
	EXPECT_THROW(run({"check-q"}, m), UsageError);
	EXPECT_THROW(run({"check-q", "Nope"}, m), UsageError);
	EXPECT_THROW(run({"sd", "Q", "S", "g"}, m), UsageError);
	EXPECT_THROW(run({"check-q", "Q", "--bogus"}, m), UsageError);
}

TEST(Dsl, AlgebraReportOnQ2)
{
	Model m;
	auto r = run({"algebra-report", "q(2)", "--cobracket"}, m);
	EXPECT_TRUE(r.pass()) << r.text();
	bool found = false;
	for (auto& o : r.objects)
		found |= o.kind == "cobracket";
	EXPECT_TRUE(found);
}
