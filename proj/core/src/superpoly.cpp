#include "gradedq/superpoly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace gradedq {

std::string render_rational(const Rational& q)
{
	if (q.get_den() == 1)
		return q.get_num().get_str();
	return q.get_num().get_str() + "/" + q.get_den().get_str();
}

const char* chart_kind_name(ChartKind p)
{
	switch (p) {
	case ChartKind::Base: return "base";
	case ChartKind::Cotangent: return "cotangent";
	case ChartKind::AntiCotangent: return "anticotangent";
	}
	return "?";
}

/* Chart */

ChartPtr Chart::base(std::string name, std::vector<VariableDecl> vars)
{
	auto c = std::shared_ptr<Chart>(new Chart());
	c->name_ = std::move(name);
	for (auto& v : vars) {
		v.induced = v.weight;
		v.fiber = 0;
	}
	c->vars_ = std::move(vars);
	c->finish();
	return c;
}

ChartPtr Chart::lift(std::string name, ChartPtr source, ChartKind kind,
                     std::vector<VariableDecl> momenta, int shift)
{
	if (!source)
		throw Error("lift of a null chart");
	if (momenta.size() != source->size())
		throw Error("lift of chart '" + source->name() + "' needs one momentum per variable");
	auto c = std::shared_ptr<Chart>(new Chart());
	c->name_ = std::move(name);
	c->prov_ = kind;
	c->shift_ = shift;
	for (const auto& v : source->vars()) {
		VariableDecl b = v;
		b.fiber = 0;
		c->vars_.push_back(b);
	}
	for (auto& m : momenta)
		c->vars_.push_back(std::move(m));
	c->source_ = std::move(source);
	c->finish();
	return c;
}

void Chart::finish()
{
	parities_.clear();
	for (std::size_t i = 0; i < vars_.size(); ++i) {
		auto& v = vars_[i];
		if (v.parity != 0 && v.parity != 1)
			throw Error("variable '" + v.name + "' has parity outside Z2");
		v.order_index = i;
		for (std::size_t j = 0; j < i; ++j)
			if (vars_[j].name == v.name)
				throw Error("duplicate variable '" + v.name + "' in chart '" + name_ + "'");
		parities_.push_back(static_cast<std::uint8_t>(v.parity));
	}
}

std::optional<std::size_t> Chart::find(std::string_view name) const
{
	for (std::size_t i = 0; i < vars_.size(); ++i)
		if (vars_[i].name == name)
			return i;
	return std::nullopt;
}

std::size_t Chart::index(std::string_view name) const
{
	auto i = find(name);
	if (!i)
		throw Error("variable '" + std::string(name) + "' not in chart '" + name_ + "'");
	return *i;
}

bool Chart::same_layout(const Chart& o) const
{
	if (vars_.size() != o.vars_.size())
		return false;
	for (std::size_t i = 0; i < vars_.size(); ++i) {
		const auto& a = vars_[i];
		const auto& b = o.vars_[i];
		if (a.name != b.name || a.parity != b.parity || a.weight != b.weight || a.fiber != b.fiber)
			return false;
	}
	return true;
}

bool compatible(const ChartPtr& a, const ChartPtr& b)
{
	if (a == b)
		return true;
	if (!a || !b)
		return false;
	return a->same_layout(*b);
}

/* Monomial */

Monomial::Monomial(std::vector<Factor> f) : f_(std::move(f))
{
	std::sort(f_.begin(), f_.end());
	std::vector<Factor> merged;
	for (auto& x : f_) {
		if (x.second == 0)
			continue;
		if (!merged.empty() && merged.back().first == x.first)
			merged.back().second += x.second;
		else
			merged.push_back(x);
	}
	f_ = std::move(merged);
}

Monomial Monomial::single(std::uint32_t idx, std::uint32_t exp)
{
	Monomial m;
	if (exp)
		m.f_.push_back({idx, exp});
	return m;
}

std::uint32_t Monomial::degree() const
{
	std::uint32_t d = 0;
	for (auto& x : f_)
		d += x.second;
	return d;
}

std::uint32_t Monomial::exponent(std::uint32_t idx) const
{
	for (auto& x : f_)
		if (x.first == idx)
			return x.second;
	return 0;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const
{
	auto da = a.degree(), db = b.degree();
	if (da != db)
		return da < db;
	const auto& fa = a.factors();
	const auto& fb = b.factors();
	std::size_t n = std::min(fa.size(), fb.size());
	for (std::size_t i = 0; i < n; ++i) {
		if (fa[i].first != fb[i].first)
			return fa[i].first < fb[i].first;
		if (fa[i].second != fb[i].second)
			return fa[i].second > fb[i].second;
	}
	return fa.size() < fb.size();
}

int monomial_product(const Monomial& a, const Monomial& b,
                     const std::vector<std::uint8_t>& parity, Monomial& out)
{
	const auto& fa = a.factors();
	const auto& fb = b.factors();
	// odd factors of a not yet passed; each odd factor of b moves left across them
	unsigned rem = 0;
	for (auto& x : fa)
		rem += parity[x.first];
	unsigned swaps = 0;
	std::vector<Monomial::Factor> r;
	r.reserve(fa.size() + fb.size());
	std::size_t i = 0, j = 0;
	while (i < fa.size() || j < fb.size()) {
		if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
			rem -= parity[fa[i].first];
			r.push_back(fa[i++]);
		} else if (i == fa.size() || fb[j].first < fa[i].first) {
			if (parity[fb[j].first])
				swaps += rem;
			r.push_back(fb[j++]);
		} else {
			if (parity[fa[i].first])
				return 0;
			r.push_back({fa[i].first, fa[i].second + fb[j].second});
			++i;
			++j;
		}
	}
	out = Monomial();
	out = Monomial(std::move(r));
	return (swaps & 1) ? -1 : 1;
}

/* SuperPolynomial */

SuperPolynomial SuperPolynomial::constant(ChartPtr chart, const Rational& c)
{
	SuperPolynomial p(std::move(chart));
	p.add_term(Monomial(), c);
	return p;
}

SuperPolynomial SuperPolynomial::variable(ChartPtr chart, std::size_t idx)
{
	if (idx >= chart->size())
		throw Error("variable index out of range");
	SuperPolynomial p(std::move(chart));
	p.add_term(Monomial::single(static_cast<std::uint32_t>(idx)), 1);
	return p;
}

SuperPolynomial SuperPolynomial::variable(ChartPtr chart, std::string_view name)
{
	auto i = chart->index(name);
	return variable(std::move(chart), i);
}

SuperPolynomial SuperPolynomial::monomial(ChartPtr chart, const Monomial& m, const Rational& c)
{
	SuperPolynomial p(std::move(chart));
	p.add_term(m, c);
	return p;
}

Rational SuperPolynomial::coefficient(const Monomial& m) const
{
	auto it = terms_.find(m);
	return it == terms_.end() ? Rational(0) : it->second;
}

void SuperPolynomial::add_term(const Monomial& m, const Rational& c)
{
	if (c == 0)
		return;
	for (auto& f : m.factors()) {
		if (f.first >= chart_->size())
			throw Error("monomial refers to a variable outside the chart");
		if (chart_->parity(f.first) && f.second > 1)
			return;
	}
	auto [it, fresh] = terms_.try_emplace(m, c);
	if (fresh) {
		it->second.canonicalize();
	} else {
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

static void require_same(const SuperPolynomial& f, const SuperPolynomial& g, const char* op)
{
	if (!compatible(f.chart(), g.chart()))
		throw ChartMismatch(std::string(op) + ": chart mismatch ('" +
		                    (f.chart() ? f.chart()->name() : "?") + "' vs '" +
		                    (g.chart() ? g.chart()->name() : "?") + "')");
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& g)
{
	require_same(*this, g, "add");
	for (auto& [m, c] : g.terms_)
		add_term(m, c);
	return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& g)
{
	require_same(*this, g, "subtract");
	for (auto& [m, c] : g.terms_)
		add_term(m, -c);
	return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const Rational& c)
{
	if (c == 0) {
		terms_.clear();
		return *this;
	}
	for (auto& t : terms_)
		t.second *= c;
	return *this;
}

bool SuperPolynomial::operator==(const SuperPolynomial& g) const
{
	if (!compatible(chart_, g.chart_))
		return false;
	return terms_ == g.terms_;
}

SuperPolynomial SuperPolynomial::rechart(ChartPtr target) const
{
	if (!target || target->size() < (chart_ ? chart_->size() : 0))
		throw ChartMismatch("rechart: target chart too small");
	SuperPolynomial r(target);
	for (auto& [m, c] : terms_) {
		for (auto& f : m.factors())
			if (target->parity(f.first) != chart_->parity(f.first))
				throw ChartMismatch("rechart: parity layout differs");
		r.terms_.emplace(m, c);
	}
	return r;
}

std::string SuperPolynomial::render() const
{
	if (terms_.empty())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (auto& [m, c] : terms_) {
		bool neg = c < 0;
		Rational a = neg ? Rational(-c) : c;
		if (first)
			os << (neg ? "-" : "");
		else
			os << (neg ? " - " : " + ");
		first = false;
		bool unit = a == 1;
		if (m.empty()) {
			os << render_rational(a);
			continue;
		}
		if (!unit)
			os << render_rational(a) << "*";
		bool lead = true;
		for (auto& f : m.factors()) {
			if (!lead)
				os << "*";
			lead = false;
			os << chart_->var(f.first).name;
			if (f.second > 1)
				os << "^" << f.second;
		}
	}
	return os.str();
}

SuperPolynomial operator+(SuperPolynomial f, const SuperPolynomial& g)
{
	f += g;
	return f;
}

SuperPolynomial operator-(SuperPolynomial f, const SuperPolynomial& g)
{
	f -= g;
	return f;
}

SuperPolynomial operator-(SuperPolynomial f)
{
	f *= Rational(-1);
	return f;
}

SuperPolynomial operator*(const SuperPolynomial& f, const SuperPolynomial& g)
{
	return normalize_product(f, g);
}

SuperPolynomial operator*(const Rational& c, SuperPolynomial f)
{
	f *= c;
	return f;
}

SuperPolynomial operator*(SuperPolynomial f, const Rational& c)
{
	f *= c;
	return f;
}

std::ostream& operator<<(std::ostream& os, const SuperPolynomial& f)
{
	return os << f.render();
}

SuperPolynomial add(const SuperPolynomial& f, const SuperPolynomial& g)
{
	return f + g;
}

SuperPolynomial scalar_mul(const Rational& c, const SuperPolynomial& f)
{
	return c * f;
}

SuperPolynomial normalize_product(const SuperPolynomial& f, const SuperPolynomial& g)
{
	require_same(f, g, "product");
	SuperPolynomial r(f.chart());
	const auto& par = f.chart()->parities();
	Monomial m;
	for (auto& [ma, ca] : f.terms())
		for (auto& [mb, cb] : g.terms()) {
			int s = monomial_product(ma, mb, par, m);
			if (s == 0)
				continue;
			Rational c = ca * cb;
			if (s < 0)
				c = -c;
			r.add_term(m, c);
		}
	return r;
}

SuperPolynomial power(const SuperPolynomial& f, unsigned n)
{
	SuperPolynomial r = SuperPolynomial::constant(f.chart(), 1);
	for (unsigned i = 0; i < n; ++i)
		r = r * f;
	return r;
}

SuperPolynomial left_partial(const SuperPolynomial& f, std::size_t var)
{
	if (!f.chart() || var >= f.chart()->size())
		throw Error("left_partial: variable not in chart");
	const auto& par = f.chart()->parities();
	const bool odd = par[var];
	SuperPolynomial r(f.chart());
	for (auto& [m, c] : f.terms()) {
		std::vector<Monomial::Factor> rest;
		unsigned crossed = 0;
		std::uint32_t e = 0;
		for (auto& x : m.factors()) {
			if (x.first == var) {
				e = x.second;
				if (e > 1)
					rest.push_back({x.first, e - 1});
				continue;
			}
			if (!e && par[x.first])
				crossed += x.second;
			rest.push_back(x);
		}
		if (!e)
			continue;
		Rational k = c;
		if (odd) {
			if (crossed & 1)
				k = -k;
		} else {
			k *= e;
		}
		r.add_term(Monomial(std::move(rest)), k);
	}
	return r;
}

SuperPolynomial left_partial(const SuperPolynomial& f, std::string_view var)
{
	return left_partial(f, f.chart()->index(var));
}

int monomial_parity(const Monomial& m, const Chart& c)
{
	int p = 0;
	for (auto& x : m.factors())
		p ^= c.parity(x.first) & (x.second & 1);
	return p;
}

int monomial_weight(const Monomial& m, const Chart& c)
{
	int w = 0;
	for (auto& x : m.factors())
		w += c.var(x.first).weight * static_cast<int>(x.second);
	return w;
}

unsigned monomial_fiber_degree(const Monomial& m, const Chart& c)
{
	unsigned d = 0;
	for (auto& x : m.factors())
		if (c.var(x.first).fiber)
			d += x.second;
	return d;
}

std::map<int, SuperPolynomial> split_by(const SuperPolynomial& f,
                                        const std::function<int(const Monomial&)>& grade)
{
	std::map<int, SuperPolynomial> out;
	for (auto& [m, c] : f.terms()) {
		auto [it, fresh] = out.try_emplace(grade(m), f.chart());
		it->second.add_term(m, c);
	}
	return out;
}

std::map<int, SuperPolynomial> split_by_fiber_degree(const SuperPolynomial& f)
{
	const Chart& c = *f.chart();
	return split_by(f, [&](const Monomial& m) { return static_cast<int>(monomial_fiber_degree(m, c)); });
}

ParityGrade parity_of(const SuperPolynomial& f)
{
	ParityGrade g;
	g.even = SuperPolynomial(f.chart());
	g.odd = SuperPolynomial(f.chart());
	for (auto& [m, c] : f.terms())
		(monomial_parity(m, *f.chart()) ? g.odd : g.even).add_term(m, c);
	if (f.is_zero())
		g.kind = GradeKind::Zero;
	else if (g.even.is_zero() || g.odd.is_zero()) {
		g.kind = GradeKind::Homogeneous;
		g.value = g.even.is_zero() ? 1 : 0;
	} else
		g.kind = GradeKind::Mixed;
	return g;
}

WeightGrade weight_of(const SuperPolynomial& f)
{
	WeightGrade g;
	if (f.is_zero())
		return g;
	const Chart& c = *f.chart();
	g.parts = split_by(f, [&](const Monomial& m) { return monomial_weight(m, c); });
	if (g.parts.size() == 1) {
		g.kind = GradeKind::Homogeneous;
		g.value = g.parts.begin()->first;
	} else
		g.kind = GradeKind::Mixed;
	return g;
}

int parity(const SuperPolynomial& f)
{
	int p = -1;
	for (auto& [m, c] : f.terms()) {
		int q = monomial_parity(m, *f.chart());
		if (p >= 0 && q != p)
			throw ParityMismatch("polynomial of mixed parity: " + f.render());
		p = q;
	}
	return p < 0 ? 0 : p;
}

SuperPolynomial substitute(const SuperPolynomial& f, const std::vector<SuperPolynomial>& images,
                           const ChartPtr& target)
{
	const Chart& src = *f.chart();
	if (images.size() != src.size())
		throw Error("substitute: incomplete substitution");
	std::vector<std::vector<SuperPolynomial>> pw(src.size());
	auto image_power = [&](std::uint32_t v, std::uint32_t e) -> const SuperPolynomial& {
		auto& cache = pw[v];
		if (cache.empty()) {
			const auto& img = images[v];
			if (!compatible(img.chart(), target))
				throw ChartMismatch("substitute: image of '" + src.var(v).name + "' not on the target chart");
			auto pg = parity_of(img);
			if (pg.kind == GradeKind::Mixed)
				throw ParityMismatch("substitute: image of '" + src.var(v).name + "' is not parity-homogeneous");
			if (pg.kind == GradeKind::Homogeneous && pg.value != src.parity(v))
				throw ParityMismatch("substitute: image of '" + src.var(v).name + "' has the wrong parity");
			cache.push_back(SuperPolynomial::constant(target, 1));
		}
		while (cache.size() <= e)
			cache.push_back(cache.back() * images[v]);
		return cache[e];
	};
	SuperPolynomial r(target);
	for (auto& [m, c] : f.terms()) {
		SuperPolynomial t = SuperPolynomial::constant(target, c);
		for (auto& x : m.factors())
			t = t * image_power(x.first, x.second);
		r += t;
	}
	// validate images even for variables f never touches
	for (std::size_t v = 0; v < src.size(); ++v)
		image_power(static_cast<std::uint32_t>(v), 0);
	return r;
}

SuperPolynomial substitute(const SuperPolynomial& f,
                           const std::map<std::string, SuperPolynomial>& images,
                           const ChartPtr& target)
{
	std::vector<SuperPolynomial> v;
	for (auto& d : f.chart()->vars()) {
		auto it = images.find(d.name);
		if (it == images.end())
			throw Error("substitute: no image for '" + d.name + "'");
		v.push_back(it->second);
	}
	return substitute(f, v, target);
}

}
