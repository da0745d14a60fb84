#include "gradedq/structures.hpp"

#include <sstream>

namespace gradedq {

namespace {

int sgn(int e)
{
	return (e & 1) ? -1 : 1;
}

unsigned fiber_degree(const Monomial& m, const Chart& c)
{
	unsigned d = 0;
	for (auto& [i, e] : m.factors())
		if (c.var(i).weight != 0)
			d += e;
	return d;
}

const char* degree_word(unsigned d)
{
	switch (d) {
	case 0: return "constant";
	case 1: return "linear";
	case 2: return "quadratic";
	case 3: return "cubic";
	case 4: return "quartic";
	default: return "higher";
	}
}

void field_components(CheckReport& r, const VectorField& X)
{
	for (std::size_t a = 0; a < X.size(); ++a)
		r.add("d/d" + X.chart()->var(a).name, X[a]);
}

}

void CheckReport::add(std::string label, SuperPolynomial r)
{
	if (!r.is_zero())
		pass = false;
	residue.emplace_back(std::move(label), std::move(r));
}

std::string CheckReport::residue_text() const
{
	std::vector<const std::pair<std::string, SuperPolynomial>*> nz;
	for (auto& c : residue)
		if (!c.second.is_zero())
			nz.push_back(&c);
	if (nz.empty())
		return "0";
	if (residue.size() == 1)
		return nz[0]->second.render();
	std::string s;
	for (auto* c : nz) {
		if (!s.empty())
			s += "; ";
		s += c->first + ": " + c->second.render();
	}
	return s;
}

CheckReport check_homological(const VectorField& Q)
{
	if (Q.parity() != 1 && !Q.is_zero())
		throw ParityMismatch("check_homological: field is even");
	CheckReport r{"homological", true, {}, "chart " + Q.chart()->name()};
	auto sq = commutator(Q, Q);
	sq *= Rational(1, 2);
	field_components(r, sq);
	return r;
}

CheckReport check_homological_hamiltonian(const VectorField& Q)
{
	if (Q.parity() != 1 && !Q.is_zero())
		throw ParityMismatch("check_homological: field is even");
	auto lift = cotangent_lift(Q.chart(), {});
	auto H = hamiltonian_lift_p(Q, lift);
	CheckReport r{"homological via {p(Q),p(Q)}", true, {}, "chart " + lift->name()};
	r.add("{p(Q),p(Q)}", canonical_poisson(H, H));
	return r;
}

CheckReport check_tensor(const SuperPolynomial& T, std::string name)
{
	const auto& c = T.chart();
	if (!c || !c->is_lift())
		throw ChartMismatch("check_tensor: '" + name + "' does not live on a lift");
	int want = c->chart_kind() == ChartKind::Cotangent ? 1 : 0;
	if (!T.is_zero() && parity(T) != want)
		throw ParityMismatch("check_tensor: '" + name + "' must be " + (want ? "odd" : "even") +
		                     " on " + c->name());
	CheckReport r{"{" + name + "," + name + "}", true, {}, "chart " + c->name()};
	r.add("{" + name + "," + name + "}", canonical_bracket(T, T));
	return r;
}

CheckReport check_compatibility(const VectorField& Q, const SuperPolynomial& T, StructureKind kind)
{
	const auto& c = T.chart();
	ChartKind want = kind == StructureKind::QS ? ChartKind::Cotangent : ChartKind::AntiCotangent;
	if (!c || c->chart_kind() != want)
		throw ChartMismatch(std::string("check_compatibility: tensor is not on the ") +
		                    (kind == StructureKind::QS ? "cotangent" : "anticotangent") + " lift");
	if (!compatible(c->source(), Q.chart()))
		throw ChartMismatch("check_compatibility: field and tensor charts differ");
	CheckReport r;
	r.context = "chart " + c->name();
	if (kind == StructureKind::QS) {
		r.name = "{p(Q),S}";
		r.add(r.name, canonical_poisson(hamiltonian_lift_p(Q, c), T));
	} else {
		r.name = "{theta(Q),P}";
		r.add(r.name, canonical_schouten(multivector_lift_theta(Q, c), T));
	}
	return r;
}

std::vector<Rational> cocycle_identity(const StructureConstants& c, const StructureConstants& b)
{
	std::size_t n = c.dim();
	std::vector<Rational> out(n * n * n * n);
	for (std::size_t j = 0; j < n; ++j)
		for (std::size_t k = 0; k < n; ++k)
			for (std::size_t nn = 0; nn < n; ++nn)
				for (std::size_t m = 0; m < n; ++m) {
					Rational s = 0;
					for (std::size_t i = 0; i < n; ++i)
						s += c(j, k, i) * b(nn, m, i) - c(j, i, nn) * b(i, m, k) + c(j, i, m) * b(i, nn, k) +
						     c(k, i, nn) * b(i, m, j) - c(k, i, m) * b(i, nn, j);
					s.canonicalize();
					out[((j * n + k) * n + nn) * n + m] = s;
				}
	return out;
}

CheckReport check_bialgebra(const StructureConstants& c, const StructureConstants& b)
{
	if (c.dim() != b.dim() || c.parities() != b.parities())
		throw Error("check_bialgebra: algebra and dual have different dimensions or parities");
	auto pi = pi_chart(c);
	auto lift = cotangent_lift(pi, {});
	auto Q = hamiltonian_lift_p(q_from_sc(c, pi), lift);
	auto S = schouten_from_dual(b, lift);
	CheckReport r{"bialgebra", true, {}, "chart " + lift->name()};
	r.add("{Q,Q}", canonical_poisson(Q, Q));
	r.add("{S,S}", canonical_poisson(S, S));
	auto qs = canonical_poisson(Q, S);
	r.add("{Q,S}", qs);
	bool even = true;
	for (auto p : c.parities())
		even = even && p == 0;
	if (even) {
		Rational bad = 0;
		for (auto& x : cocycle_identity(c, b))
			if (x != 0)
				bad += 1;
		if ((bad == 0) != qs.is_zero())
			throw Error("check_bialgebra: cocycle identity and {Q,S} disagree");
		r.add("cocycle identity failures", SuperPolynomial::constant(pi, bad));
	}
	return r;
}

std::pair<CheckReport, CheckReport> yang_baxter(const SuperPolynomial& r, const SuperPolynomial& Q)
{
	const auto& c = r.chart();
	if (!c || c->chart_kind() != ChartKind::Cotangent)
		throw ChartMismatch("yang_baxter: r must live on a cotangent lift");
	for (auto& [m, k] : r.terms())
		for (auto& f : m.factors())
			if (f.first < c->base_size())
				throw Error("yang_baxter: r carries the base variable " + c->var(f.first).name);
	if (!r.is_zero() && parity(r) != 0)
		throw ParityMismatch("yang_baxter: r must be even");
	auto rr = canonical_poisson(r, canonical_poisson(Q, r));
	CheckReport cybe{"classical Yang-Baxter {r,r}_Q", true, {}, "chart " + c->name()};
	cybe.add("{r,r}_Q", rr);
	CheckReport gybe{"generalized Yang-Baxter {Q,{r,r}_Q}", true, {}, "chart " + c->name()};
	gybe.add("{Q,{r,r}_Q}", canonical_poisson(Q, rr));
	if (cybe.pass && !gybe.pass)
		throw Error("yang_baxter: classical equation holds but the generalized one fails");
	return {cybe, gybe};
}

AlgebroidData algebroid_extract(const VectorField& Q)
{
	const auto& ch = Q.chart();
	AlgebroidData d;
	d.chart = ch;
	for (std::size_t a = 0; a < ch->size(); ++a)
		(ch->var(a).weight == 0 ? d.base : d.fiber).push_back(a);
	for (std::size_t a = 0; a < ch->size(); ++a) {
		unsigned want = ch->var(a).weight == 0 ? 1 : 2;
		for (auto& [m, k] : Q[a].terms()) {
			unsigned deg = fiber_degree(m, *ch);
			if (deg != want)
				throw Error(std::string("algebroid_extract: ") + degree_word(deg) + " term " +
				            SuperPolynomial::monomial(ch, m, k).render() + " in the coefficient of d/d" +
				            ch->var(a).name);
		}
	}
	for (auto f : d.fiber)
		if (ch->var(f).weight != 1)
			throw Error("algebroid_extract: fiber variable " + ch->var(f).name + " has weight " +
			            std::to_string(ch->var(f).weight));
	std::size_t nf = d.fiber.size();
	d.anchor.assign(nf, std::vector<SuperPolynomial>(d.base.size(), SuperPolynomial(ch)));
	d.bracket.assign(nf, std::vector<std::vector<SuperPolynomial>>(
	                         nf, std::vector<SuperPolynomial>(nf, SuperPolynomial(ch))));
	for (std::size_t i = 0; i < nf; ++i) {
		for (std::size_t a = 0; a < d.base.size(); ++a)
			d.anchor[i][a] = left_partial(Q[d.base[a]], d.fiber[i]);
		for (std::size_t j = 0; j < nf; ++j)
			for (std::size_t k = 0; k < nf; ++k)
				d.bracket[i][j][k] = left_partial(left_partial(Q[d.fiber[k]], d.fiber[j]), d.fiber[i]);
	}
	return d;
}

std::string AlgebroidData::render() const
{
	std::ostringstream os;
	auto e = [&](std::size_t i) { return "e_" + chart->var(fiber[i]).name; };
	for (std::size_t i = 0; i < fiber.size(); ++i) {
		VectorField X(chart);
		for (std::size_t a = 0; a < base.size(); ++a)
			X.set(base[a], anchor[i][a]);
		if (!X.is_zero())
			os << "a(" << e(i) << ") = " << X.render() << "\n";
	}
	for (std::size_t i = 0; i < fiber.size(); ++i)
		for (std::size_t j = i; j < fiber.size(); ++j) {
			std::string s;
			int sj = sgn(1 + chart->parity(fiber[j]));
			for (std::size_t k = 0; k < fiber.size(); ++k) {
				const auto& q = bracket[i][j][k];
				if (q.is_zero())
					continue;
				if (!s.empty())
					s += " + ";
				s += "(" + (Rational(sj) * q).render() + ")*" + e(k);
			}
			if (!s.empty())
				os << "[" << e(i) << "," << e(j) << "] = " << s << "\n";
		}
	return os.str();
}

std::map<unsigned, VectorField> linf_components(const VectorField& Q)
{
	const auto& ch = Q.chart();
	auto sq = commutator(Q, Q);
	sq *= Rational(1, 2);
	std::map<unsigned, VectorField> out;
	for (std::size_t a = 0; a < sq.size(); ++a)
		for (auto& [m, k] : sq[a].terms()) {
			unsigned d = fiber_degree(m, *ch);
			auto it = out.try_emplace(d, VectorField(ch)).first;
			VectorField& X = it->second;
			X.set(a, X[a] + SuperPolynomial::monomial(ch, m, k));
		}
	return out;
}

CheckReport check_linf(const VectorField& Q)
{
	if (Q.parity() != 1 && !Q.is_zero())
		throw ParityMismatch("check_linf: field is even");
	CheckReport r{"L-infinity identities", true, {}, "chart " + Q.chart()->name()};
	for (auto& [d, X] : linf_components(Q))
		for (std::size_t a = 0; a < X.size(); ++a)
			r.add("degree " + std::to_string(d) + " d/d" + X.chart()->var(a).name, X[a]);
	return r;
}

}
