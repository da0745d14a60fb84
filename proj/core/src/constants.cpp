#include "gradedq/constants.hpp"

#include <sstream>

#include "json.hpp"

namespace gradedq {

namespace {

int sgn(int e)
{
	return (e & 1) ? -1 : 1;
}

Rational canon(Rational q)
{
	q.canonicalize();
	return q;
}

// reduced row echelon form in place, returns pivot columns
std::vector<std::size_t> rref(Matrix& m)
{
	std::vector<std::size_t> piv;
	std::size_t r = 0;
	for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
		std::size_t p = r;
		while (p < m.rows && m(p, c) == 0)
			++p;
		if (p == m.rows)
			continue;
		if (p != r)
			for (std::size_t j = 0; j < m.cols; ++j)
				std::swap(m(p, j), m(r, j));
		Rational inv = 1 / m(r, c);
		for (std::size_t j = 0; j < m.cols; ++j)
			m(r, j) = canon(m(r, j) * inv);
		for (std::size_t i = 0; i < m.rows; ++i) {
			if (i == r || m(i, c) == 0)
				continue;
			Rational f = m(i, c);
			for (std::size_t j = 0; j < m.cols; ++j)
				m(i, j) = canon(m(i, j) - f * m(r, j));
		}
		piv.push_back(c);
		++r;
	}
	return piv;
}

std::string combination(const std::vector<Rational>& v, const std::vector<std::string>& names)
{
	std::string s;
	for (std::size_t k = 0; k < v.size(); ++k) {
		if (v[k] == 0)
			continue;
		Rational c = v[k];
		if (s.empty()) {
			if (c < 0) {
				s += "-";
				c = -c;
			}
		} else {
			s += c < 0 ? " - " : " + ";
			if (c < 0)
				c = -c;
		}
		if (c != 1)
			s += render_rational(c) + "*";
		s += names[k];
	}
	return s.empty() ? "0" : s;
}

}

Matrix inverse(const Matrix& m)
{
	if (m.rows != m.cols)
		throw Error("inverse: matrix is not square");
	std::size_t n = m.rows;
	if (n == 0)
		return m;
	Matrix w(n, 2 * n);
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = 0; j < n; ++j)
			w(i, j) = m(i, j);
		w(i, n + i) = 1;
	}
	auto piv = rref(w);
	if (piv.size() < n || piv[n - 1] != n - 1)
		throw Error("inverse: matrix is singular");
	Matrix r(n, n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			r(i, j) = w(i, n + j);
	return r;
}

std::vector<std::vector<Rational>> nullspace(const Matrix& m)
{
	Matrix w = m;
	auto piv = rref(w);
	std::vector<bool> is_piv(m.cols, false);
	for (auto p : piv)
		is_piv[p] = true;
	std::vector<std::vector<Rational>> out;
	for (std::size_t f = 0; f < m.cols; ++f) {
		if (is_piv[f])
			continue;
		std::vector<Rational> v(m.cols);
		v[f] = 1;
		for (std::size_t r = 0; r < piv.size(); ++r)
			v[piv[r]] = -w(r, f);
		out.push_back(std::move(v));
	}
	return out;
}

/* StructureConstants */

StructureConstants::StructureConstants(std::vector<int> parities, std::vector<std::string> names)
    : par_(std::move(parities)), names_(std::move(names))
{
	for (auto& p : par_)
		p &= 1;
	if (names_.empty())
		for (std::size_t i = 0; i < par_.size(); ++i)
			names_.push_back("e" + std::to_string(i + 1));
	if (names_.size() != par_.size())
		throw Error("structure constants: " + std::to_string(names_.size()) + " names for dimension " +
		            std::to_string(par_.size()));
	t_.assign(par_.size() * par_.size() * par_.size(), Rational(0));
}

void StructureConstants::set_names(std::vector<std::string> n)
{
	if (n.size() != dim())
		throw Error("structure constants: wrong number of names");
	names_ = std::move(n);
}

void StructureConstants::set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& v)
{
	if (i == j && !(par_[i] & 1) && v != 0)
		throw Error("structure constants: [" + names_[i] + "," + names_[i] + "] must vanish");
	at(i, j, k) = canon(v);
	at(j, i, k) = canon(-sgn(par_[i] * par_[j]) * v);
}

bool StructureConstants::is_zero() const
{
	for (auto& x : t_)
		if (x != 0)
			return false;
	return true;
}

bool StructureConstants::operator==(const StructureConstants& o) const
{
	return par_ == o.par_ && t_ == o.t_;
}

std::string StructureConstants::validate() const
{
	std::size_t n = dim();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			for (std::size_t k = 0; k < n; ++k) {
				const Rational& v = (*this)(i, j, k);
				if (v != (-sgn(par_[i] * par_[j])) * (*this)(j, i, k))
					return "super-antisymmetry fails for [" + names_[i] + "," + names_[j] + "]";
				if (v != 0 && ((par_[i] + par_[j] + par_[k]) & 1))
					return "parity of [" + names_[i] + "," + names_[j] + "] has a component along " +
					       names_[k];
			}
	return {};
}

void StructureConstants::require_valid() const
{
	auto e = validate();
	if (!e.empty())
		throw Error("structure constants: " + e);
}

std::vector<Rational> StructureConstants::bracket(const std::vector<Rational>& u,
                                                  const std::vector<Rational>& v) const
{
	std::size_t n = dim();
	std::vector<Rational> r(n);
	for (std::size_t i = 0; i < n; ++i) {
		if (u[i] == 0)
			continue;
		for (std::size_t j = 0; j < n; ++j) {
			if (v[j] == 0)
				continue;
			Rational f = u[i] * v[j];
			for (std::size_t k = 0; k < n; ++k)
				if ((*this)(i, j, k) != 0)
					r[k] += f * (*this)(i, j, k);
		}
	}
	for (auto& x : r)
		x.canonicalize();
	return r;
}

std::vector<Rational> StructureConstants::jacobi_defect(std::size_t i, std::size_t j, std::size_t k) const
{
	std::size_t n = dim();
	auto unit = [n](std::size_t a) {
		std::vector<Rational> v(n);
		v[a] = 1;
		return v;
	};
	auto a = unit(i), b = unit(j), c = unit(k);
	auto lhs = bracket(a, bracket(b, c));
	auto t1 = bracket(bracket(a, b), c);
	auto t2 = bracket(b, bracket(a, c));
	int s = sgn(par_[i] * par_[j]);
	for (std::size_t x = 0; x < n; ++x)
		lhs[x] = canon(lhs[x] - t1[x] - s * t2[x]);
	return lhs;
}

bool StructureConstants::satisfies_jacobi() const
{
	std::size_t n = dim();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			for (std::size_t k = 0; k < n; ++k)
				for (auto& x : jacobi_defect(i, j, k))
					if (x != 0)
						return false;
	return true;
}

std::string StructureConstants::to_json() const
{
	nlohmann::ordered_json j;
	j["dim"] = dim();
	j["parities"] = par_;
	j["names"] = names_;
	auto entries = nlohmann::ordered_json::array();
	auto num = [](const mpz_class& z) -> nlohmann::ordered_json {
		if (z.fits_slong_p())
			return z.get_si();
		return z.get_str();
	};
	std::size_t n = dim();
	for (std::size_t a = 0; a < n; ++a)
		for (std::size_t b = 0; b < n; ++b)
			for (std::size_t c = 0; c < n; ++c) {
				const Rational& v = (*this)(a, b, c);
				if (v != 0)
					entries.push_back({a, b, c, num(v.get_num()), num(v.get_den())});
			}
	j["entries"] = entries;
	return j.dump(1, '\t');
}

StructureConstants StructureConstants::from_json(const std::string& text)
{
	nlohmann::json j;
	try {
		j = nlohmann::json::parse(text);
	} catch (const std::exception& e) {
		throw Error(std::string("structure constants json: ") + e.what());
	}
	auto num = [](const nlohmann::json& v) -> mpz_class {
		if (v.is_string())
			return mpz_class(v.get<std::string>());
		return mpz_class(v.get<long>());
	};
	try {
		std::size_t n = j.at("dim").get<std::size_t>();
		auto par = j.at("parities").get<std::vector<int>>();
		if (par.size() != n)
			throw Error("structure constants json: parities do not match dim");
		std::vector<std::string> names;
		if (j.contains("names"))
			names = j["names"].get<std::vector<std::string>>();
		StructureConstants c(par, names);
		for (auto& e : j.at("entries")) {
			if (e.size() != 5)
				throw Error("structure constants json: entries need [i,j,k,num,den]");
			std::size_t a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>(), k = e[2].get<std::size_t>();
			if (a >= n || b >= n || k >= n)
				throw Error("structure constants json: index out of range");
			mpz_class d = num(e[4]);
			if (d == 0)
				throw Error("structure constants json: zero denominator");
			c.at(a, b, k) = canon(Rational(num(e[3]), d));
		}
		return c;
	} catch (const nlohmann::json::exception& e) {
		throw Error(std::string("structure constants json: ") + e.what());
	}
}

std::string StructureConstants::render_table() const
{
	std::ostringstream os;
	std::size_t n = dim();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i; j < n; ++j) {
			std::vector<Rational> v(n);
			bool any = false;
			for (std::size_t k = 0; k < n; ++k) {
				v[k] = (*this)(i, j, k);
				any = any || v[k] != 0;
			}
			if (any)
				os << "[" << names_[i] << "," << names_[j] << "] = " << combination(v, names_) << "\n";
		}
	return os.str();
}

std::string invariance_failure(const StructureConstants& c, const InnerProduct& g)
{
	std::size_t n = c.dim();
	auto col = [&](std::size_t i, std::size_t j) {
		std::vector<Rational> v(n);
		for (std::size_t k = 0; k < n; ++k)
			v[k] = c(i, j, k);
		return v;
	};
	auto pair = [&](const std::vector<Rational>& x, std::size_t w) {
		Rational s = 0;
		for (std::size_t k = 0; k < n; ++k)
			if (x[k] != 0)
				s += x[k] * g(k, w);
		return s;
	};
	auto pair_l = [&](std::size_t v, const std::vector<Rational>& x) {
		Rational s = 0;
		for (std::size_t k = 0; k < n; ++k)
			if (x[k] != 0)
				s += g(v, k) * x[k];
		return s;
	};
	for (std::size_t u = 0; u < n; ++u)
		for (std::size_t v = 0; v < n; ++v)
			for (std::size_t w = 0; w < n; ++w) {
				Rational lhs = pair(col(u, v), w) +
				               sgn(c.parity(u) * (c.parity(v) + g.parity)) * pair_l(v, col(u, w));
				if (lhs != 0)
					return "([" + c.name(u) + "," + c.name(v) + "]," + c.name(w) + ")";
			}
	return {};
}

/* Pi g and the homological field */

ChartPtr pi_chart(const StructureConstants& c, std::vector<std::string> names, std::string chart_name)
{
	if (names.empty())
		for (auto& s : c.names())
			names.push_back("xi_" + s);
	if (names.size() != c.dim())
		throw Error("pi_chart: wrong number of coordinate names");
	std::vector<VariableDecl> d;
	for (std::size_t i = 0; i < c.dim(); ++i)
		d.push_back({names[i], 1 - c.parity(i), 1});
	return Chart::base(chart_name.empty() ? "Pi g" : chart_name, std::move(d));
}

VectorField q_from_sc(const StructureConstants& c, const ChartPtr& pi)
{
	c.require_valid();
	if (pi->size() != c.dim())
		throw Error("q_from_sc: chart dimension differs from the algebra");
	std::size_t n = c.dim();
	VectorField Q(pi);
	std::vector<SuperPolynomial> co(n, SuperPolynomial(pi));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			auto xx = SuperPolynomial::variable(pi, j) * SuperPolynomial::variable(pi, i);
			if (xx.is_zero())
				continue;
			for (std::size_t k = 0; k < n; ++k)
				if (c(i, j, k) != 0)
					co[k] += Rational(sgn(c.parity(j)), 2) * c(i, j, k) * xx;
		}
	for (std::size_t k = 0; k < n; ++k)
		Q.set(k, co[k]);
	return Q;
}

StructureConstants sc_from_q(const VectorField& Q)
{
	const auto& ch = Q.chart();
	std::size_t n = ch->size();
	for (std::size_t k = 0; k < n; ++k)
		for (auto& [m, v] : Q[k].terms())
			if (m.degree() != 2)
				throw Error("sc_from_q: coefficient of d/d" + ch->var(k).name + " is not quadratic");
	std::vector<int> par;
	std::vector<std::string> names;
	for (std::size_t i = 0; i < n; ++i) {
		par.push_back(1 - ch->parity(i));
		const auto& nm = ch->var(i).name;
		names.push_back(nm.rfind("xi_", 0) == 0 && nm.size() > 3 ? nm.substr(3) : nm);
	}
	StructureConstants c(par, names);
	std::vector<VectorField> iota;
	for (std::size_t i = 0; i < n; ++i) {
		VectorField X(ch);
		X.set(i, SuperPolynomial::constant(ch, sgn(par[i])));
		iota.push_back(X);
	}
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			auto Z = commutator(iota[i], commutator(Q, iota[j]));
			for (std::size_t k = 0; k < n; ++k) {
				const auto& z = Z[k];
				if (z.is_zero())
					continue;
				if (z.size() != 1 || !z.terms().begin()->first.empty())
					throw Error("sc_from_q: non-constant bracket coefficient");
				c.at(i, j, k) = canon(sgn(par[k]) * z.terms().begin()->second);
			}
		}
	return c;
}

SuperPolynomial tensor_from_brackets(const ChartPtr& lift, const std::vector<std::vector<SuperPolynomial>>& B)
{
	if (!lift->is_lift())
		throw ChartMismatch("tensor_from_brackets: chart is not a lift");
	bool odd = lift->chart_kind() == ChartKind::AntiCotangent;
	std::size_t n = lift->base_size();
	SuperPolynomial T(lift);
	for (std::size_t a = 0; a < n; ++a)
		for (std::size_t b = 0; b < n; ++b) {
			if (B[a][b].is_zero())
				continue;
			int s = odd ? sgn(lift->parity(a)) : -sgn(lift->parity(a));
			auto mom = SuperPolynomial::variable(lift, n + b) * SuperPolynomial::variable(lift, n + a);
			T += Rational(s, 2) * (pull_to_lift(B[a][b], lift) * mom);
		}
	return T;
}

LieTensors lie_tensors(const StructureConstants& c)
{
	c.require_valid();
	std::size_t n = c.dim();
	LieTensors t;
	std::vector<VariableDecl> dv, pv;
	for (std::size_t i = 0; i < n; ++i) {
		dv.push_back({"x_" + c.name(i), c.parity(i), 1});
		pv.push_back({"xi_" + c.name(i), 1 - c.parity(i), 1});
	}
	t.dual = Chart::base("g*", dv);
	t.pidual = Chart::base("Pi g*", pv);
	t.dual_antilift = anticotangent_lift(t.dual, {});
	t.pidual_lift = cotangent_lift(t.pidual, {});
	std::vector<std::vector<SuperPolynomial>> BP(n, std::vector<SuperPolynomial>(n, SuperPolynomial(t.dual)));
	std::vector<std::vector<SuperPolynomial>> BS(n, std::vector<SuperPolynomial>(n, SuperPolynomial(t.pidual)));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			for (std::size_t k = 0; k < n; ++k)
				if (c(i, j, k) != 0) {
					BP[i][j] += c(i, j, k) * SuperPolynomial::variable(t.dual, k);
					BS[i][j] += c(i, j, k) * SuperPolynomial::variable(t.pidual, k);
				}
	t.P = tensor_from_brackets(t.dual_antilift, BP);
	t.S = tensor_from_brackets(t.pidual_lift, BS);
	return t;
}

// {xi^i,xi^j} = d^{ij}_k xi^k: the coordinates of Pi g are the basis of the dual
static SuperPolynomial linear_tensor(const StructureConstants& d, const ChartPtr& lift)
{
	d.require_valid();
	std::size_t n = d.dim();
	const auto& base = lift->source();
	if (!base || base->size() != n)
		throw Error("linear tensor: lift does not match the algebra dimension");
	std::vector<std::vector<SuperPolynomial>> B(n, std::vector<SuperPolynomial>(n, SuperPolynomial(base)));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			for (std::size_t k = 0; k < n; ++k)
				if (d(i, j, k) != 0)
					B[i][j] += d(i, j, k) * SuperPolynomial::variable(base, k);
	return tensor_from_brackets(lift, B);
}

SuperPolynomial schouten_from_dual(const StructureConstants& b, const ChartPtr& pi_lift)
{
	if (pi_lift->chart_kind() != ChartKind::Cotangent)
		throw ChartMismatch("schouten_from_dual: expected a cotangent lift of Pi g");
	return linear_tensor(b, pi_lift);
}

SuperPolynomial poisson_from_odd_dual(const StructureConstants& d, const ChartPtr& pi_antilift)
{
	if (pi_antilift->chart_kind() != ChartKind::AntiCotangent)
		throw ChartMismatch("poisson_from_odd_dual: expected an anticotangent lift of Pi g");
	return linear_tensor(d, pi_antilift);
}

/* builtins */

namespace {

// sum c_k basis_k = m, basis given as flattened matrices; solved by least index pivots
std::vector<Rational> decompose(const std::vector<Matrix>& basis, const Matrix& m)
{
	std::size_t n = basis.size(), len = m.a.size();
	Matrix a(len, n + 1);
	for (std::size_t r = 0; r < len; ++r) {
		for (std::size_t k = 0; k < n; ++k)
			a(r, k) = basis[k].a[r];
		a(r, n) = m.a[r];
	}
	auto piv = rref(a);
	if (!piv.empty() && piv.back() == n)
		throw Error("matrix is outside the span of the basis");
	std::vector<Rational> x(n);
	for (std::size_t r = 0; r < piv.size(); ++r)
		x[piv[r]] = a(r, n);
	return x;
}

Matrix mul(const Matrix& x, const Matrix& y)
{
	Matrix r(x.rows, y.cols);
	for (std::size_t i = 0; i < x.rows; ++i)
		for (std::size_t k = 0; k < x.cols; ++k) {
			if (x(i, k) == 0)
				continue;
			for (std::size_t j = 0; j < y.cols; ++j)
				r(i, j) += x(i, k) * y(k, j);
		}
	return r;
}

StructureConstants from_matrices(const std::vector<Matrix>& basis, std::vector<int> par,
                                 std::vector<std::string> names)
{
	StructureConstants c(par, std::move(names));
	std::size_t n = basis.size();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			Matrix xy = mul(basis[i], basis[j]), yx = mul(basis[j], basis[i]);
			int s = sgn(par[i] * par[j]);
			for (std::size_t t = 0; t < xy.a.size(); ++t)
				xy.a[t] -= s * yx.a[t];
			auto v = decompose(basis, xy);
			for (std::size_t k = 0; k < n; ++k)
				c.at(i, j, k) = canon(v[k]);
		}
	c.require_valid();
	return c;
}

Matrix unit(std::size_t n, std::size_t i, std::size_t j)
{
	Matrix m(n, n);
	m(i, j) = 1;
	return m;
}

std::string idx(unsigned i, unsigned j)
{
	return std::to_string(i + 1) + std::to_string(j + 1);
}

}

StructureConstants gl_algebra(unsigned n)
{
	if (n == 0)
		throw Error("gl(n): n must be positive");
	std::vector<Matrix> b;
	std::vector<std::string> names;
	for (unsigned i = 0; i < n; ++i)
		for (unsigned j = 0; j < n; ++j) {
			b.push_back(unit(n, i, j));
			names.push_back("e" + idx(i, j));
		}
	return from_matrices(b, std::vector<int>(b.size(), 0), names);
}

StructureConstants sl_algebra(unsigned n)
{
	if (n < 2)
		throw Error("sl(n): n must be at least 2");
	std::vector<Matrix> b;
	std::vector<std::string> names;
	for (unsigned i = 0; i < n; ++i)
		for (unsigned j = 0; j < n; ++j)
			if (i != j) {
				b.push_back(unit(n, i, j));
				names.push_back("e" + idx(i, j));
			}
	for (unsigned i = 0; i + 1 < n; ++i) {
		Matrix h(n, n);
		h(i, i) = 1;
		h(i + 1, i + 1) = -1;
		b.push_back(h);
		names.push_back("h" + std::to_string(i + 1));
	}
	return from_matrices(b, std::vector<int>(b.size(), 0), names);
}

StructureConstants susy1_algebra()
{
	StructureConstants c({0, 1}, {"e", "eps"});
	c.set_bracket(1, 1, 0, 2);
	return c;
}

Rational odd_trace(const Matrix& x)
{
	std::size_t n = x.rows / 2;
	Rational t = 0;
	for (std::size_t i = 0; i < n; ++i)
		t += x(i, n + i) + x(n + i, i);
	return canon(t / 2);
}

QAlgebra q_algebra(unsigned n)
{
	if (n == 0)
		throw Error("q(n): n must be positive");
	std::vector<Matrix> b;
	std::vector<std::string> names;
	std::vector<int> par;
	QAlgebra q;
	q.n = n;
	for (int odd = 0; odd < 2; ++odd)
		for (unsigned i = 0; i < n; ++i)
			for (unsigned j = 0; j < n; ++j) {
				Matrix m(2 * n, 2 * n);
				if (odd) {
					m(i, n + j) = 1;
					m(n + i, j) = 1;
				} else {
					m(i, j) = 1;
					m(n + i, n + j) = 1;
				}
				b.push_back(m);
				names.push_back((odd ? "eps" : "e") + idx(i, j));
				par.push_back(odd);
				q.part.push_back(i < j ? 1 : (i == j ? 0 : -1));
			}
	q.c = from_matrices(b, par, names);
	std::size_t d = b.size();
	q.pairing.parity = 1;
	q.pairing.gram = Matrix(d, d);
	for (std::size_t u = 0; u < d; ++u)
		for (std::size_t v = 0; v < d; ++v)
			q.pairing.gram(u, v) = sgn(par[u]) * odd_trace(mul(b[u], b[v]));
	return q;
}

}
