#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gradedq/constants.hpp"
#include "gradedq/structures.hpp"

namespace gq_test {

using namespace gradedq;

struct Var {
	std::string name;
	int parity;
	int weight;
};

inline ChartPtr chart(std::string name, std::vector<Var> vs)
{
	std::vector<VariableDecl> d;
	for (auto& v : vs)
		d.push_back({v.name, v.parity, v.weight});
	return Chart::base(std::move(name), std::move(d));
}

inline SuperPolynomial v(const ChartPtr& c, const char* n)
{
	return SuperPolynomial::variable(c, n);
}

inline SuperPolynomial k(const ChartPtr& c, Rational q)
{
	return SuperPolynomial::constant(c, q);
}

// Word oracle: a term is an unsorted word of variable indices; normal form by bubble sort,
// one sign flip per transposition of two odd letters.
struct Word {
	Rational c;
	std::vector<std::uint32_t> letters;
};

inline SuperPolynomial word_normal_form(const ChartPtr& ch, const std::vector<Word>& ws)
{
	SuperPolynomial r(ch);
	for (auto w : ws) {
		auto& l = w.letters;
		bool dead = false;
		for (std::size_t i = 0; i < l.size(); ++i)
			for (std::size_t j = 0; j + 1 < l.size() - i; ++j)
				if (l[j] > l[j + 1]) {
					if (ch->parity(l[j]) && ch->parity(l[j + 1]))
						w.c = -w.c;
					std::swap(l[j], l[j + 1]);
				}
		for (std::size_t j = 0; j + 1 < l.size(); ++j)
			if (l[j] == l[j + 1] && ch->parity(l[j]))
				dead = true;
		if (dead)
			continue;
		std::vector<Monomial::Factor> f;
		for (auto x : l)
			f.push_back({x, 1});
		r.add_term(Monomial(f), w.c);
	}
	return r;
}

inline std::vector<Word> words_of(const SuperPolynomial& f)
{
	std::vector<Word> out;
	for (auto& [m, c] : f.terms()) {
		Word w{c, {}};
		for (auto& x : m.factors())
			for (std::uint32_t e = 0; e < x.second; ++e)
				w.letters.push_back(x.first);
		out.push_back(w);
	}
	return out;
}

inline SuperPolynomial oracle_product(const SuperPolynomial& f, const SuperPolynomial& g)
{
	std::vector<Word> ws;
	for (auto& a : words_of(f))
		for (auto& b : words_of(g)) {
			Word w{a.c * b.c, a.letters};
			w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
			ws.push_back(w);
		}
	return word_normal_form(f.chart(), ws);
}

// left derivative by walking each occurrence of v to the front of the word
inline SuperPolynomial oracle_partial(const SuperPolynomial& f, std::uint32_t var)
{
	std::vector<Word> ws;
	const auto& ch = f.chart();
	for (auto& w : words_of(f)) {
		for (std::size_t pos = 0; pos < w.letters.size(); ++pos) {
			if (w.letters[pos] != var)
				continue;
			Rational c = w.c;
			if (ch->parity(var))
				for (std::size_t j = 0; j < pos; ++j)
					if (ch->parity(w.letters[j]))
						c = -c;
			Word d{c, {}};
			for (std::size_t j = 0; j < w.letters.size(); ++j)
				if (j != pos)
					d.letters.push_back(w.letters[j]);
			ws.push_back(d);
		}
	}
	return word_normal_form(ch, ws);
}

class RandomPolys {
public:
	explicit RandomPolys(unsigned seed) : rng_(seed) {}

	int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

	Rational coeff()
	{
		int n = 0;
		while (n == 0)
			n = uniform(-5, 5);
		Rational q(n, uniform(1, 3));
		q.canonicalize();
		return q;
	}

	Monomial monomial(const Chart& c, unsigned deg)
	{
		std::vector<Monomial::Factor> f;
		for (unsigned i = 0; i < deg; ++i)
			f.push_back({static_cast<std::uint32_t>(uniform(0, int(c.size()) - 1)), 1});
		return Monomial(f);
	}

	// random polynomial; parity < 0 means mixed
	SuperPolynomial poly(const ChartPtr& c, unsigned maxdeg, unsigned terms, int parity = -1)
	{
		SuperPolynomial r(c);
		for (unsigned t = 0; t < terms; ++t) {
			for (int tries = 0; tries < 20; ++tries) {
				auto m = monomial(*c, uniform(0, int(maxdeg)));
				if (parity >= 0 && monomial_parity(m, *c) != parity)
					continue;
				r.add_term(m, coeff());
				break;
			}
		}
		return r;
	}

	VectorField field(const ChartPtr& c, unsigned maxdeg, unsigned terms, int parity)
	{
		VectorField X(c);
		for (std::size_t a = 0; a < c->size(); ++a)
			X.set(a, poly(c, maxdeg, terms, (parity + c->parity(a)) & 1));
		return X;
	}

	std::mt19937& rng() { return rng_; }

private:
	std::mt19937 rng_;
};

inline int sgn(int e)
{
	return (e & 1) ? -1 : 1;
}

// x even weight 2, xi1..xi3 odd weight 1
inline ChartPtr r13_chart()
{
	return chart("R13", {{"x", 0, 2}, {"xi1", 1, 1}, {"xi2", 1, 1}, {"xi3", 1, 1}});
}

// (x xi1 + xi1 xi2 xi3) d/dx + xi1 xi3 d/dxi1 + (x + xi1 xi2) d/dxi2
inline VectorField r13_field(const ChartPtr& c)
{
	VectorField Q(c);
	Q.set(0, v(c, "x") * v(c, "xi1") + v(c, "xi1") * v(c, "xi2") * v(c, "xi3"));
	Q.set(1, v(c, "xi1") * v(c, "xi3"));
	Q.set(2, v(c, "x") + v(c, "xi1") * v(c, "xi2"));
	return Q;
}

// every dual bracket b with entries in {-1,0,1} making (c,b) an even bialgebra,
// filtered by Jacobi for b and the 5-term cocycle identity only
inline std::vector<StructureConstants> brute_force_bialgebras(const StructureConstants& c)
{
	std::size_t n = c.dim();
	std::vector<std::array<std::size_t, 3>> slots;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			for (std::size_t k = 0; k < n; ++k)
				slots.push_back({i, j, k});
	std::vector<StructureConstants> out;
	std::size_t total = 1;
	for (std::size_t s = 0; s < slots.size(); ++s)
		total *= 3;
	for (std::size_t code = 0; code < total; ++code) {
		StructureConstants b(c.parities(), c.names());
		std::size_t x = code;
		for (auto& sl : slots) {
			int val = int(x % 3) - 1;
			x /= 3;
			if (val)
				b.set_bracket(sl[0], sl[1], sl[2], val);
		}
		if (!b.satisfies_jacobi())
			continue;
		bool ok = true;
		for (std::size_t j = 0; j < n && ok; ++j)
			for (std::size_t k = 0; k < n && ok; ++k)
				for (std::size_t a = 0; a < n && ok; ++a)
					for (std::size_t m = 0; m < n && ok; ++m) {
						Rational s = 0;
						for (std::size_t i = 0; i < n; ++i)
							s += c(j, k, i) * b(a, m, i) - c(j, i, a) * b(i, m, k) + c(j, i, m) * b(i, a, k) +
							     c(k, i, a) * b(i, m, j) - c(k, i, m) * b(i, a, j);
						ok = s == 0;
					}
		if (ok)
			out.push_back(b);
	}
	return out;
}

// gl(1|1) with basis E11, E22 even and E12, E21 odd
inline StructureConstants gl11()
{
	StructureConstants c({0, 0, 1, 1}, {"E11", "E22", "E12", "E21"});
	c.set_bracket(0, 2, 2, 1);
	c.set_bracket(0, 3, 3, -1);
	c.set_bracket(1, 2, 2, -1);
	c.set_bracket(1, 3, 3, 1);
	c.set_bracket(2, 3, 0, 1);
	c.set_bracket(2, 3, 1, 1);
	return c;
}

// brackets on Pi g* solving {Q,P} = 0 (a linear system) and {P,P} = 0, with the
// nullspace coefficients drawn from {-1,0,1}
inline std::vector<StructureConstants> brute_force_odd_bialgebras(const StructureConstants& g)
{
	std::size_t n = g.dim();
	std::vector<int> par;
	for (std::size_t i = 0; i < n; ++i)
		par.push_back(1 - g.parity(i));
	std::vector<std::array<std::size_t, 3>> slots;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i; j < n; ++j)
			for (std::size_t m = 0; m < n; ++m) {
				if (((par[i] + par[j] + par[m]) & 1) != 0)
					continue;
				// odd elements only have a nonzero square
				if (i == j && par[i] == 0)
					continue;
				slots.push_back({i, j, m});
			}
	auto pi = pi_chart(g);
	auto anti = anticotangent_lift(pi, {});
	auto Q = q_from_sc(g, pi);
	auto dual_of = [&](const std::vector<Rational>& x) {
		StructureConstants d(par);
		for (std::size_t s = 0; s < slots.size(); ++s)
			if (x[s] != 0)
				d.set_bracket(slots[s][0], slots[s][1], slots[s][2], x[s]);
		return d;
	};
	// columns: residue coefficients of {theta(Q),P} per slot
	std::vector<std::map<std::string, Rational>> cols;
	std::map<std::string, std::size_t> rowid;
	for (std::size_t s = 0; s < slots.size(); ++s) {
		std::vector<Rational> x(slots.size());
		x[s] = 1;
		auto r = check_compatibility(Q, poisson_from_odd_dual(dual_of(x), anti), StructureKind::QP);
		std::map<std::string, Rational> col;
		for (auto& [label, f] : r.residue)
			for (auto& [m, c] : f.terms()) {
				std::string key = label + "|";
				for (auto& fa : m.factors())
					key += std::to_string(fa.first) + "^" + std::to_string(fa.second) + ",";
				col[key] += c;
				rowid.emplace(key, rowid.size());
			}
		cols.push_back(col);
	}
	Matrix M(rowid.size(), slots.size());
	for (std::size_t s = 0; s < slots.size(); ++s)
		for (auto& [key, c] : cols[s])
			M(rowid[key], s) = c;
	auto ns = nullspace(M);
	std::vector<StructureConstants> out;
	std::size_t total = 1;
	for (std::size_t b = 0; b < ns.size(); ++b)
		total *= 3;
	for (std::size_t code = 1; code < total; ++code) {
		std::vector<Rational> x(slots.size());
		std::size_t y = code;
		for (auto& vec : ns) {
			int a = int(y % 3) - 1;
			y /= 3;
			for (std::size_t s = 0; s < slots.size(); ++s)
				x[s] += a * vec[s];
		}
		auto d = dual_of(x);
		if (!check_tensor(poisson_from_odd_dual(d, anti)).pass)
			continue;
		out.push_back(d);
	}
	return out;
}

}
