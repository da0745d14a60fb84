#include "gradedq/liealg.hpp"

#include <sstream>

#include "gradedq/brackets.hpp"

namespace gradedq {

namespace {

int sgn(int e)
{
	return (e & 1) ? -1 : 1;
}

std::string strip_xi(const std::string& nm)
{
	return nm.rfind("xi_", 0) == 0 && nm.size() > 3 ? nm.substr(3) : nm;
}

// linear polynomial in the generators of ch
SuperPolynomial linear(const ChartPtr& ch, const std::vector<Rational>& v)
{
	SuperPolynomial f(ch);
	for (std::size_t k = 0; k < v.size(); ++k)
		if (v[k] != 0)
			f += v[k] * SuperPolynomial::variable(ch, k);
	return f;
}

// coefficient of variable k in a linear polynomial
Rational linear_coeff(const SuperPolynomial& f, std::size_t k)
{
	return f.coefficient(Monomial::single(static_cast<std::uint32_t>(k)));
}

void require_linear(const SuperPolynomial& f, const std::string& what)
{
	for (auto& [m, c] : f.terms())
		if (m.degree() != 1)
			throw Error(what + " is not linear");
}

CheckReport merge(std::string name, std::initializer_list<const CheckReport*> parts)
{
	CheckReport r{std::move(name), true, {}, {}};
	for (auto* p : parts)
		for (auto& [l, f] : p->residue)
			r.add(p->name + ": " + l, f);
	return r;
}

// coordinate brackets B^{ab} = {z^a,{T,z^b}} of a tensor on a lift, pushed to the base
std::vector<std::vector<SuperPolynomial>> coordinate_brackets(const SuperPolynomial& T)
{
	const auto& lift = T.chart();
	std::size_t n = lift->base_size();
	std::vector<std::vector<SuperPolynomial>> B(n);
	for (std::size_t a = 0; a < n; ++a)
		for (std::size_t b = 0; b < n; ++b) {
			auto f = derived_bracket(T, SuperPolynomial::variable(lift, a), SuperPolynomial::variable(lift, b));
			B[a].push_back(push_to_base(f));
		}
	return B;
}

}

ChartPtr product_chart(const StructureConstants& c, bool wedge)
{
	std::vector<VariableDecl> d;
	for (std::size_t i = 0; i < c.dim(); ++i)
		d.push_back({c.name(i), (c.parity(i) + (wedge ? 1 : 0)) & 1, 1});
	return Chart::base(wedge ? "Lambda(g)" : "S(g)", std::move(d));
}

std::string Cobracket::render() const
{
	std::ostringstream os;
	for (std::size_t k = 0; k < delta.size(); ++k)
		os << "delta(" << chart->var(k).name << ") = " << delta[k].render() << "\n";
	return os.str();
}

Cobracket coboundary(const StructureConstants& c, const SuperPolynomial& rho)
{
	const auto& ch = rho.chart();
	if (!ch || ch->size() != c.dim())
		throw ChartMismatch("coboundary: rho does not live on a product chart of the algebra");
	std::size_t n = c.dim();
	Cobracket out;
	out.chart = ch;
	for (std::size_t u = 0; u < n; ++u) {
		VectorField ad(ch);
		for (std::size_t a = 0; a < n; ++a) {
			std::vector<Rational> col(n);
			for (std::size_t b = 0; b < n; ++b)
				col[b] = c(u, a, b);
			ad.set(a, linear(ch, col));
		}
		out.delta.push_back(apply(ad, rho));
	}
	return out;
}

Cobracket odd_cobracket(const SuperPolynomial& P)
{
	const auto& lift = P.chart();
	if (!lift || lift->chart_kind() != ChartKind::AntiCotangent)
		throw ChartMismatch("odd_cobracket: P must live on an anticotangent lift");
	const auto& base = lift->source();
	std::size_t n = base->size();
	std::vector<int> par;
	std::vector<std::string> names;
	for (std::size_t i = 0; i < n; ++i) {
		par.push_back(1 - base->parity(i));
		names.push_back(strip_xi(base->var(i).name));
	}
	StructureConstants basis(par, names);
	Cobracket out;
	out.chart = product_chart(basis, false);
	out.delta.assign(n, SuperPolynomial(out.chart));
	auto B = coordinate_brackets(P);
	for (std::size_t I = 0; I < n; ++I)
		for (std::size_t J = 0; J < n; ++J) {
			require_linear(B[I][J], "odd_cobracket: coordinate bracket");
			auto EJI = SuperPolynomial::variable(out.chart, J) * SuperPolynomial::variable(out.chart, I);
			for (std::size_t K = 0; K < n; ++K) {
				Rational p = sgn(base->parity(I)) * linear_coeff(B[I][J], K);
				if (p != 0)
					out.delta[K] += Rational(sgn(par[K])) * p * EJI;
			}
		}
	return out;
}

DrinfeldDouble drinfeld_double(const StructureConstants& g, const StructureConstants& b)
{
	g.require_valid();
	b.require_valid();
	if (g.dim() != b.dim() || g.parities() != b.parities())
		throw Error("drinfeld double: the dual bracket must live on a space of the same dimension and parities");
	DrinfeldDouble D;
	D.g = g;
	D.b = b;
	D.bialgebra = check_bialgebra(g, b);
	if (!D.bialgebra.pass)
		throw Error("drinfeld double: not a Lie bialgebra: " + D.bialgebra.residue_text());
	std::size_t n = g.dim();
	GradingSystem gr;
	gr.q = 1;
	gr.s_or_p = -1;
	D.pi = pi_chart(g);
	std::vector<std::string> mom;
	for (auto& s : g.names())
		mom.push_back("xi_dual_" + s);
	D.lift = cotangent_lift(D.pi, gr, mom, "Pi d");
	D.model = build_double_QS(q_from_sc(g, D.pi), schouten_from_dual(b, D.lift), gr);
	D.d = sc_from_q(D.model.Q_D);
	D.second = second_lift(D.model);
	D.r = long_momentum_r(D.model, D.second, Connection(D.pi));
	D.S_D = almost_schouten_SD(D.model, D.r);

	// xi_i sits at n+i on Pi d, xi^i at i
	auto z = [&](std::size_t A) {
		return SuperPolynomial::variable(D.second, A < n ? n + A : A - n);
	};
	D.second_bracket = StructureConstants(D.d.parities(), D.d.names());
	for (std::size_t A = 0; A < 2 * n; ++A)
		for (std::size_t B = 0; B < 2 * n; ++B) {
			auto f = derived_bracket(D.S_D, z(A), z(B));
			require_linear(f, "drinfeld double: second bracket");
			for (std::size_t C = 0; C < 2 * n; ++C)
				D.second_bracket.at(A, B, C) = linear_coeff(f, C < n ? n + C : C - n);
		}

	D.pairing.parity = 0;
	D.pairing.gram = Matrix(2 * n, 2 * n);
	for (std::size_t i = 0; i < n; ++i) {
		D.pairing.gram(i, n + i) = 1;
		D.pairing.gram(n + i, i) = sgn(g.parity(i));
	}
	D.invariance = invariance_failure(D.d, D.pairing);
	D.yang_baxter = yang_baxter(D.r, hamiltonian_lift_p(D.model.Q_D, D.second));
	return D;
}

StructureConstants odd_dual_from_poisson(const SuperPolynomial& P, const StructureConstants& g)
{
	const auto& lift = P.chart();
	if (!lift || lift->chart_kind() != ChartKind::AntiCotangent || lift->base_size() != g.dim())
		throw ChartMismatch("odd_dual_from_poisson: P must live on PiT*(Pi g)");
	std::size_t n = g.dim();
	std::vector<int> par;
	std::vector<std::string> names;
	for (std::size_t i = 0; i < n; ++i) {
		par.push_back(1 - g.parity(i));
		names.push_back("eps_" + g.name(i));
	}
	StructureConstants d(par, names);
	auto B = coordinate_brackets(P);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			require_linear(B[i][j], "odd_dual_from_poisson: coordinate bracket");
			for (std::size_t k = 0; k < n; ++k)
				d.at(i, j, k) = linear_coeff(B[i][j], k);
		}
	return d;
}

OddDouble odd_double(const StructureConstants& g, const StructureConstants& dual)
{
	g.require_valid();
	dual.require_valid();
	std::size_t n = g.dim();
	if (dual.dim() != n)
		throw Error("odd double: the dual bracket has the wrong dimension");
	for (std::size_t i = 0; i < n; ++i)
		if (dual.parity(i) != 1 - g.parity(i))
			throw ParityMismatch("odd double: eps^" + g.name(i) + " must have the opposite parity of " + g.name(i));
	OddDouble D;
	D.g = g;
	D.dual = dual;
	{
		std::vector<std::string> nm;
		for (auto& s : g.names())
			nm.push_back("eps_" + s);
		D.dual.set_names(nm);
	}
	GradingSystem gr;
	gr.kind = GradingSystem::Kind::QP;
	gr.q = 1;
	gr.s_or_p = -1;
	D.pi = pi_chart(g);
	std::vector<std::string> mom;
	for (auto& s : g.names())
		mom.push_back("xi_eps_" + s);
	D.anti = anticotangent_lift(D.pi, gr, mom, "Pi d");
	auto Qf = q_from_sc(g, D.pi);
	D.Q = multivector_lift_theta(Qf, D.anti);
	D.P = poisson_from_odd_dual(dual, D.anti);
	auto h = check_homological(Qf);
	auto pp = check_tensor(D.P, "P");
	auto qp = check_compatibility(Qf, D.P, StructureKind::QP);
	D.conditions = merge("odd bialgebra", {&h, &pp, &qp});
	if (!D.conditions.pass)
		throw Error("odd double: not an odd Lie bialgebra: " + D.conditions.residue_text());
	D.model = build_double_QP(Qf, D.P, gr);
	// the double field is -X_{theta(Q)+P}, which restricts to Q on the zero section
	D.model.hamiltonian = -D.model.hamiltonian;
	D.model.Q_D *= Rational(-1);
	D.d = sc_from_q(D.model.Q_D);
	D.second = second_lift(D.model);
	D.tensor = odd_rho_PD(D.model, D.second);
	D.delta = odd_cobracket(D.tensor.P_D);
	D.delta_g = odd_cobracket(D.P);
	D.pairing.parity = 1;
	D.pairing.gram = Matrix(2 * n, 2 * n);
	for (std::size_t i = 0; i < n; ++i) {
		D.pairing.gram(i, n + i) = 1;
		D.pairing.gram(n + i, i) = -1;
	}
	D.invariance = invariance_failure(D.d, D.pairing);
	return D;
}

RelativeDouble relative_double(const StructureConstants& known, const std::vector<int>& part,
                               const InnerProduct& form)
{
	known.require_valid();
	std::size_t N = known.dim();
	if (part.size() != N || form.gram.rows != N || form.gram.cols != N)
		throw Error("relative double: part labels and form must match the algebra dimension");
	RelativeDouble R;
	R.part = part;
	R.form = form;
	for (std::size_t i = 0; i < N; ++i) {
		if (part[i] > 0)
			R.a_index.push_back(i);
		else if (part[i] == 0)
			R.h_index.push_back(i);
		else
			R.b_index.push_back(i);
	}
	std::size_t m = R.a_index.size();
	if (R.b_index.size() != m)
		throw Error("relative double: a and b must have the same dimension");
	auto inA = [&](std::size_t i) { return part[i] > 0; };
	auto inB = [&](std::size_t i) { return part[i] < 0; };

	// a+h and b+h must close
	for (std::size_t u = 0; u < N; ++u)
		for (std::size_t v = 0; v < N; ++v) {
			if ((inA(u) && inB(v)) || (inB(u) && inA(v)))
				continue;
			for (std::size_t w = 0; w < N; ++w)
				if (known(u, v, w) != 0 && ((inB(w) && !inB(u) && !inB(v)) || (inA(w) && !inA(u) && !inA(v))))
					throw Error("relative double: [" + known.name(u) + "," + known.name(v) +
					            "] leaves its subalgebra");
		}

	// dual basis of b: (a_i, e^j) = delta
	Matrix G(m, m);
	for (std::size_t i = 0; i < m; ++i)
		for (std::size_t j = 0; j < m; ++j)
			G(i, j) = form(R.a_index[i], R.b_index[j]);
	auto Gi = inverse(G);
	R.dual.assign(m, std::vector<Rational>(m));
	for (std::size_t i = 0; i < m; ++i)
		for (std::size_t j = 0; j < m; ++j)
			R.dual[i][j] = Gi(j, i);

	// cross brackets from invariance of the form
	Matrix GT(N, N);
	for (std::size_t i = 0; i < N; ++i)
		for (std::size_t j = 0; j < N; ++j)
			GT(i, j) = form(j, i);
	auto GTi = inverse(GT);
	int al = form.parity;
	R.d = known;
	for (auto u : R.a_index)
		for (auto v : R.b_index)
			for (std::size_t w = 0; w < N; ++w)
				R.d.at(u, v, w) = R.d.at(v, u, w) = 0;
	auto unit = [&](std::size_t i) {
		std::vector<Rational> e(N);
		e[i] = 1;
		return e;
	};
	auto pair = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
		Rational s = 0;
		for (std::size_t i = 0; i < N; ++i)
			if (x[i] != 0)
				for (std::size_t j = 0; j < N; ++j)
					if (y[j] != 0)
						s += x[i] * form(i, j) * y[j];
		return s;
	};
	for (auto u : R.a_index)
		for (auto v : R.b_index) {
			int pu = known.parity(u), pv = known.parity(v);
			std::vector<Rational> rhs(N);
			for (std::size_t w = 0; w < N; ++w) {
				if (inB(w))
					rhs[w] = sgn(pv * al) * pair(unit(u), known.bracket(unit(v), unit(w)));
				else
					rhs[w] = -sgn(pu * (pv + al)) * pair(unit(v), known.bracket(unit(u), unit(w)));
			}
			for (std::size_t w = 0; w < N; ++w) {
				Rational x = 0;
				for (std::size_t k = 0; k < N; ++k)
					x += GTi(w, k) * rhs[k];
				if (x != 0)
					R.d.set_bracket(u, v, w, x);
			}
		}

	auto pc = product_chart(R.d, al == 0);
	R.checks = CheckReport{"relative double", true, {}, {}};
	auto bad = R.d.validate();
	if (!bad.empty())
		R.checks.add("constants: " + bad, SuperPolynomial::constant(pc, 1));
	for (std::size_t i = 0; i < N; ++i)
		for (std::size_t j = 0; j < N; ++j)
			for (std::size_t k = 0; k < N; ++k) {
				auto J = R.d.jacobi_defect(i, j, k);
				auto f = linear(pc, J);
				if (!f.is_zero())
					R.checks.add("jacobi(" + R.d.name(i) + "," + R.d.name(j) + "," + R.d.name(k) + ")", f);
			}
	auto inv = invariance_failure(R.d, form);
	if (!inv.empty())
		R.checks.add("invariance " + inv, SuperPolynomial::constant(pc, 1));

	// e^j as a vector of the full space
	auto dualvec = [&](std::size_t j) {
		std::vector<Rational> e(N);
		for (std::size_t b = 0; b < m; ++b)
			e[R.b_index[b]] = R.dual[j][b];
		return e;
	};
	// coordinate of x along e^k
	auto along_dual = [&](const std::vector<Rational>& x, std::size_t k) {
		std::vector<Rational> xb(N);
		for (auto b : R.b_index)
			xb[b] = x[b];
		return pair(unit(R.a_index[k]), xb);
	};
	std::size_t nh = R.h_index.size();
	Matrix H(nh, nh);
	for (std::size_t i = 0; i < nh; ++i)
		for (std::size_t j = 0; j < nh; ++j)
			H(i, j) = form(R.h_index[i], R.h_index[j]);
	Matrix Hi = nh ? inverse(H) : H;
	auto pa = [&](std::size_t i) { return known.parity(R.a_index[i]); };

	// family, predicted coefficient, actual coefficient, output parity
	struct Entry {
		std::size_t i, j;
		int pk;
		Rational pred, actual;
	};
	std::vector<std::vector<Entry>> fam(3);
	for (std::size_t i = 0; i < m; ++i)
		for (std::size_t j = 0; j < m; ++j) {
			auto x = R.d.bracket(unit(R.a_index[i]), dualvec(j));
			for (std::size_t k = 0; k < m; ++k) {
				// e_k: B^{jk}_i is the e^i coordinate of [e^j,e^k]
				Rational B = along_dual(R.d.bracket(dualvec(j), dualvec(k)), i);
				fam[0].push_back({i, j, pa(k), B, x[R.a_index[k]]});
				// e^k: C_ki^j is the e_j coordinate of [e_k,e_i]
				Rational C = R.d(R.a_index[k], R.a_index[i], R.a_index[j]);
				fam[1].push_back({i, j, pa(k), C, along_dual(x, k)});
			}
			for (std::size_t l = 0; l < nh; ++l) {
				Rational s = 0;
				for (std::size_t mu = 0; mu < nh; ++mu)
					s += R.d(R.h_index[mu], R.a_index[i], R.a_index[j]) * Hi(mu, l);
				fam[2].push_back({i, j, known.parity(R.h_index[l]), s, x[R.h_index[l]]});
			}
		}
	const char* names[] = {"a", "b", "h"};
	for (std::size_t f = 0; f < 3; ++f) {
		SignFit sf;
		sf.family = names[f];
		sf.vacuous = true;
		for (auto& e : fam[f])
			if (e.pred != 0 || e.actual != 0)
				sf.vacuous = false;
		for (int mask = 0; mask < 16; ++mask) {
			std::array<int, 4> al4{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
			bool ok = true;
			for (auto& e : fam[f]) {
				int s = sgn(al4[0] + al4[1] * pa(e.i) + al4[2] * pa(e.j) + al4[3] * e.pk);
				if (e.actual != s * e.pred) {
					ok = false;
					break;
				}
			}
			if (ok)
				sf.solutions.push_back(al4);
		}
		R.signs.push_back(sf);
	}

	R.rho = SuperPolynomial(pc);
	for (std::size_t i = 0; i < m; ++i)
		R.rho += SuperPolynomial::variable(pc, R.a_index[i]) * linear(pc, dualvec(i));
	R.delta = coboundary(R.d, R.rho);
	return R;
}

}
