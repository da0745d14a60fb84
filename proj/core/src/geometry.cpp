#include "gradedq/geometry.hpp"

#include <sstream>

namespace gradedq {

static ChartPtr make_lift(const ChartPtr& chart, const GradingSystem& g,
                          const std::vector<std::string>& names, std::string lift_name, bool odd)
{
	if (!names.empty() && names.size() != chart->size())
		throw Error("lift of '" + chart->name() + "': expected " + std::to_string(chart->size()) +
		            " momentum names");
	std::vector<VariableDecl> mom;
	for (std::size_t a = 0; a < chart->size(); ++a) {
		const auto& v = chart->var(a);
		VariableDecl p;
		p.name = names.empty() ? (odd ? "ast_" : "p_") + v.name : names[a];
		p.parity = odd ? 1 - v.parity : v.parity;
		p.induced = -v.weight;
		p.weight = p.induced + g.shift();
		p.fiber = 1;
		mom.push_back(std::move(p));
	}
	if (lift_name.empty())
		lift_name = (odd ? "PiT*" : "T*") + chart->name();
	return Chart::lift(std::move(lift_name), chart,
	                   odd ? ChartKind::AntiCotangent : ChartKind::Cotangent, std::move(mom), g.shift());
}

ChartPtr cotangent_lift(const ChartPtr& chart, const GradingSystem& g,
                        const std::vector<std::string>& names, std::string lift_name)
{
	return make_lift(chart, g, names, std::move(lift_name), false);
}

ChartPtr anticotangent_lift(const ChartPtr& chart, const GradingSystem& g,
                            const std::vector<std::string>& names, std::string lift_name)
{
	return make_lift(chart, g, names, std::move(lift_name), true);
}

SuperPolynomial pull_to_lift(const SuperPolynomial& f, const ChartPtr& lift)
{
	if (!lift->is_lift() || !compatible(lift->source(), f.chart()))
		throw ChartMismatch("pull_to_lift: '" + lift->name() + "' is not a lift of '" +
		                    f.chart()->name() + "'");
	return f.rechart(lift);
}

bool momentum_free(const SuperPolynomial& f)
{
	const Chart& c = *f.chart();
	if (!c.is_lift())
		return true;
	for (auto& [m, k] : f.terms())
		for (auto& x : m.factors())
			if (x.first >= c.base_size())
				return false;
	return true;
}

SuperPolynomial push_to_base(const SuperPolynomial& f)
{
	const Chart& c = *f.chart();
	if (!c.is_lift())
		return f;
	if (!momentum_free(f))
		throw Error("push_to_base: polynomial carries momenta: " + f.render());
	SuperPolynomial r(c.source());
	for (auto& [m, k] : f.terms())
		r.add_term(m, k);
	return r;
}

/* VectorField */

VectorField::VectorField(ChartPtr chart) : chart_(std::move(chart))
{
	for (std::size_t a = 0; a < chart_->size(); ++a)
		coef_.emplace_back(chart_);
}

VectorField::VectorField(ChartPtr chart, std::vector<SuperPolynomial> coefficients)
    : chart_(std::move(chart)), coef_(std::move(coefficients))
{
	if (coef_.size() != chart_->size())
		throw Error("vector field needs one coefficient per variable of '" + chart_->name() + "'");
	for (auto& c : coef_)
		if (!compatible(c.chart(), chart_))
			throw ChartMismatch("vector field coefficient on the wrong chart");
}

const SuperPolynomial& VectorField::coefficient(std::string_view var) const
{
	return coef_.at(chart_->index(var));
}

void VectorField::set(std::size_t a, SuperPolynomial c)
{
	if (!compatible(c.chart(), chart_))
		throw ChartMismatch("vector field coefficient on the wrong chart");
	coef_.at(a) = std::move(c);
}

bool VectorField::is_zero() const
{
	for (auto& c : coef_)
		if (!c.is_zero())
			return false;
	return true;
}

bool VectorField::operator==(const VectorField& o) const
{
	return compatible(chart_, o.chart_) && coef_ == o.coef_;
}

VectorField& VectorField::operator+=(const VectorField& o)
{
	if (!compatible(chart_, o.chart_))
		throw ChartMismatch("vector field sum: chart mismatch");
	for (std::size_t a = 0; a < coef_.size(); ++a)
		coef_[a] += o.coef_[a];
	return *this;
}

VectorField& VectorField::operator-=(const VectorField& o)
{
	if (!compatible(chart_, o.chart_))
		throw ChartMismatch("vector field difference: chart mismatch");
	for (std::size_t a = 0; a < coef_.size(); ++a)
		coef_[a] -= o.coef_[a];
	return *this;
}

VectorField& VectorField::operator*=(const Rational& c)
{
	for (auto& x : coef_)
		x *= c;
	return *this;
}

int VectorField::parity() const
{
	int p = -1;
	for (std::size_t a = 0; a < coef_.size(); ++a)
		for (auto& [m, k] : coef_[a].terms()) {
			int q = monomial_parity(m, *chart_) ^ chart_->parity(a);
			if (p >= 0 && p != q)
				throw ParityMismatch("vector field of mixed parity");
			p = q;
		}
	return p < 0 ? 0 : p;
}

std::pair<VectorField, VectorField> VectorField::split_parity() const
{
	VectorField ev(chart_), od(chart_);
	for (std::size_t a = 0; a < coef_.size(); ++a)
		for (auto& [m, k] : coef_[a].terms()) {
			int q = monomial_parity(m, *chart_) ^ chart_->parity(a);
			(q ? od : ev).coef_[a].add_term(m, k);
		}
	return {ev, od};
}

WeightGrade VectorField::weight() const
{
	WeightGrade g;
	for (std::size_t a = 0; a < coef_.size(); ++a) {
		int wa = chart_->var(a).weight;
		for (auto& [m, k] : coef_[a].terms()) {
			int w = monomial_weight(m, *chart_) - wa;
			auto [it, fresh] = g.parts.try_emplace(w, chart_);
			it->second.add_term(m, k);
		}
	}
	if (g.parts.empty())
		g.kind = GradeKind::Zero;
	else if (g.parts.size() == 1) {
		g.kind = GradeKind::Homogeneous;
		g.value = g.parts.begin()->first;
	} else
		g.kind = GradeKind::Mixed;
	return g;
}

VectorField VectorField::rechart(ChartPtr target) const
{
	if (target->size() != chart_->size())
		throw ChartMismatch("vector field rechart: size differs");
	std::vector<SuperPolynomial> c;
	for (auto& x : coef_)
		c.push_back(x.rechart(target));
	return VectorField(target, std::move(c));
}

std::string VectorField::render() const
{
	std::ostringstream os;
	bool first = true;
	for (std::size_t a = 0; a < coef_.size(); ++a) {
		if (coef_[a].is_zero())
			continue;
		if (!first)
			os << " + ";
		first = false;
		os << "(" << coef_[a].render() << ") d/d" << chart_->var(a).name;
	}
	return first ? "0" : os.str();
}

VectorField operator+(VectorField a, const VectorField& b)
{
	a += b;
	return a;
}

VectorField operator-(VectorField a, const VectorField& b)
{
	a -= b;
	return a;
}

VectorField operator*(const Rational& c, VectorField a)
{
	a *= c;
	return a;
}

SuperPolynomial apply(const VectorField& X, const SuperPolynomial& f)
{
	if (!compatible(X.chart(), f.chart()))
		throw ChartMismatch("apply: field on '" + X.chart()->name() + "', function on '" +
		                    f.chart()->name() + "'");
	SuperPolynomial r(f.chart());
	for (std::size_t a = 0; a < X.size(); ++a) {
		if (X[a].is_zero())
			continue;
		auto d = left_partial(f, a);
		if (!d.is_zero())
			r += X[a] * d;
	}
	return r;
}

VectorField commutator(const VectorField& X, const VectorField& Y)
{
	if (!compatible(X.chart(), Y.chart()))
		throw ChartMismatch("commutator: chart mismatch");
	int px = X.parity(), py = Y.parity();
	VectorField r(X.chart());
	for (std::size_t c = 0; c < X.size(); ++c) {
		auto v = apply(X, Y[c]);
		auto w = apply(Y, X[c]);
		r.set(c, (px & py) ? v + w : v - w);
	}
	return r;
}

SuperPolynomial hamiltonian_lift_p(const VectorField& X, const ChartPtr& cotangent)
{
	if (cotangent->chart_kind() != ChartKind::Cotangent || !compatible(cotangent->source(), X.chart()))
		throw ChartMismatch("p-lift needs the cotangent lift of the field's chart");
	X.parity();
	SuperPolynomial r(cotangent);
	const std::size_t n = cotangent->base_size();
	for (std::size_t a = 0; a < X.size(); ++a)
		r += pull_to_lift(X[a], cotangent) * SuperPolynomial::variable(cotangent, n + a);
	return r;
}

SuperPolynomial multivector_lift_theta(const VectorField& X, const ChartPtr& anticotangent)
{
	if (anticotangent->chart_kind() != ChartKind::AntiCotangent ||
	    !compatible(anticotangent->source(), X.chart()))
		throw ChartMismatch("theta-lift needs the anticotangent lift of the field's chart");
	int px = X.parity();
	SuperPolynomial r(anticotangent);
	const std::size_t n = anticotangent->base_size();
	for (std::size_t a = 0; a < X.size(); ++a)
		r += pull_to_lift(X[a], anticotangent) * SuperPolynomial::variable(anticotangent, n + a);
	if (px)
		r *= Rational(-1);
	return r;
}

}
