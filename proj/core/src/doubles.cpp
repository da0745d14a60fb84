#include "gradedq/doubles.hpp"

#include <sstream>

#include "gradedq/brackets.hpp"

namespace gradedq {

namespace {

int sgn(int e)
{
	return (e & 1) ? -1 : 1;
}

// f on a chart whose variables are the leading variables of target
SuperPolynomial embed(const SuperPolynomial& f, const ChartPtr& target)
{
	std::vector<SuperPolynomial> img;
	for (std::size_t i = 0; i < f.chart()->size(); ++i)
		img.push_back(SuperPolynomial::variable(target, i));
	return substitute(f, img, target);
}

// weight of a homogeneous polynomial; nullopt for zero
std::optional<int> weight_value(const SuperPolynomial& f, const std::string& what)
{
	auto g = weight_of(f);
	if (g.kind == GradeKind::Zero)
		return std::nullopt;
	if (g.kind == GradeKind::Mixed)
		throw Error(what + " is not weight homogeneous");
	return g.value;
}

void require_weight(const SuperPolynomial& f, int want, const std::string& what)
{
	auto w = weight_value(f, what);
	if (w && *w != want)
		throw Error(what + " has weight " + std::to_string(*w) + ", expected " + std::to_string(want));
}

void require_field_weight(const VectorField& X, int want, const std::string& what)
{
	auto g = X.weight();
	if (g.kind == GradeKind::Mixed)
		throw Error(what + " is not weight homogeneous");
	if (g.kind == GradeKind::Homogeneous && g.value != want)
		throw Error(what + " has weight " + std::to_string(g.value) + ", expected " + std::to_string(want));
}

DoubleModel build(const VectorField& Q, const SuperPolynomial& T, const GradingSystem& g, bool force,
                  StructureKind kind)
{
	DoubleModel d;
	d.kind = kind;
	d.grading = g;
	d.Q = Q;
	d.tensor = T;
	d.lift = T.chart();
	d.forced = force;
	const char* tname = kind == StructureKind::QS ? "S" : "P";
	if (d.lift->shift() != g.shift())
		throw Error(std::string("double: the lift of ") + tname + " has weight shift " +
		            std::to_string(d.lift->shift()) + " but the grading asks for " + std::to_string(g.shift()));
	require_field_weight(Q, g.q, "double: the homological field");
	// induced weight of the tensor is s (or p); the total weight adds the shift twice
	require_weight(T, 2 * g.q - g.s_or_p, std::string("double: ") + tname);
	int want = kind == StructureKind::QS ? 1 : 0;
	if (!T.is_zero() && parity(T) != want)
		throw ParityMismatch(std::string("double: ") + tname + " must be " + (want ? "odd" : "even"));
	d.compatibility = check_compatibility(Q, T, kind);
	if (!d.compatibility.pass && !force)
		throw Error(std::string("double: field and ") + tname + " are not compatible: " +
		            d.compatibility.residue_text());
	if (kind == StructureKind::QS)
		d.hamiltonian = hamiltonian_lift_p(Q, d.lift);
	else
		d.hamiltonian = multivector_lift_theta(Q, d.lift);
	d.hamiltonian += g.lambda * T;
	d.Q_D = hamiltonian_vector_field(d.hamiltonian);
	require_weight(d.hamiltonian, 2 * g.q - g.s_or_p, "double: Hamiltonian");
	require_field_weight(d.Q_D, g.q, "double: Q_D");
	return d;
}

}

Connection::Connection(ChartPtr chart) : chart_(std::move(chart)), n_(chart_->size())
{
	g_.assign(n_ * n_ * n_, SuperPolynomial(chart_));
}

const SuperPolynomial& Connection::operator()(std::size_t a, std::size_t b, std::size_t c) const
{
	return g_.at((a * n_ + b) * n_ + c);
}

void Connection::set(std::size_t a, std::size_t b, std::size_t c, SuperPolynomial g)
{
	if (!compatible(g.chart(), chart_))
		throw ChartMismatch("connection: coefficient on the wrong chart");
	g_.at((a * n_ + b) * n_ + c) = std::move(g);
}

bool Connection::flat() const
{
	for (auto& g : g_)
		if (!g.is_zero())
			return false;
	return true;
}

std::string Connection::weight_failure() const
{
	for (std::size_t a = 0; a < n_; ++a)
		for (std::size_t b = 0; b < n_; ++b)
			for (std::size_t c = 0; c < n_; ++c) {
				const auto& g = (*this)(a, b, c);
				auto w = weight_of(g);
				int want = chart_->var(c).weight - chart_->var(a).weight - chart_->var(b).weight;
				if (w.kind == GradeKind::Zero || (w.kind == GradeKind::Homogeneous && w.value == want))
					continue;
				return "Gamma[" + chart_->var(a).name + "," + chart_->var(b).name + "," + chart_->var(c).name +
				       "] should have weight " + std::to_string(want);
			}
	return {};
}

std::vector<int> DoubleModel::total_weights() const
{
	std::vector<int> w;
	for (auto& v : lift->vars())
		w.push_back(v.weight);
	return w;
}

std::string DoubleModel::render() const
{
	std::ostringstream os;
	os << "double on " << lift->name() << "\n";
	os << "weights:";
	for (auto& v : lift->vars())
		os << " W(" << v.name << ")=" << v.weight;
	os << "\nQ_D = " << Q_D.render() << "\n";
	return os.str();
}

DoubleModel build_double_QS(const VectorField& Q, const SuperPolynomial& S, const GradingSystem& g, bool force)
{
	if (!S.chart() || S.chart()->chart_kind() != ChartKind::Cotangent)
		throw ChartMismatch("build_double_QS: S must live on a cotangent lift");
	return build(Q, S, g, force, StructureKind::QS);
}

DoubleModel build_double_QP(const VectorField& Q, const SuperPolynomial& P, const GradingSystem& g, bool force)
{
	if (!P.chart() || P.chart()->chart_kind() != ChartKind::AntiCotangent)
		throw ChartMismatch("build_double_QP: P must live on an anticotangent lift");
	return build(Q, P, g, force, StructureKind::QP);
}

ChartPtr second_lift(const DoubleModel& d, const std::vector<std::string>& names, std::string lift_name)
{
	GradingSystem flat;
	bool qs = d.kind == StructureKind::QS;
	auto mom = names;
	if (mom.empty())
		for (auto& v : d.lift->vars())
			mom.push_back((qs ? "pi_" : "star_") + v.name);
	if (qs)
		return cotangent_lift(d.lift, flat, mom, std::move(lift_name));
	return anticotangent_lift(d.lift, flat, mom, std::move(lift_name));
}

SuperPolynomial long_momentum_r(const DoubleModel& d, const ChartPtr& second, const Connection& gamma)
{
	if (second->source() != d.lift || second->chart_kind() != ChartKind::Cotangent)
		throw ChartMismatch("long_momentum_r: expected the cotangent lift of the double");
	const auto& M = d.lift->source();
	const std::size_t n = M->size();
	if (gamma.dim() != n || !compatible(gamma.chart(), M))
		throw ChartMismatch("long_momentum_r: connection lives on another chart");
	auto bad = gamma.weight_failure();
	if (!bad.empty())
		throw Error("long_momentum_r: " + bad);
	auto var = [&](std::size_t i) { return SuperPolynomial::variable(second, i); };
	// x^a at a, y_a at n+a, p_a at 2n+a, q^a at 3n+a
	SuperPolynomial r(second);
	for (std::size_t a = 0; a < n; ++a) {
		r += var(2 * n + a) * var(3 * n + a);
		for (std::size_t b = 0; b < n; ++b)
			for (std::size_t c = 0; c < n; ++c)
				if (!gamma(a, b, c).is_zero())
					r += embed(gamma(a, b, c), second) * var(n + c) * var(3 * n + b) * var(3 * n + a);
	}
	require_weight(r, -d.grading.q + d.grading.s_or_p, "long_momentum_r: r");
	return r;
}

SuperPolynomial almost_schouten_SD(const DoubleModel& d, const SuperPolynomial& r)
{
	const auto& second = r.chart();
	if (!second || second->source() != d.lift)
		throw ChartMismatch("almost_schouten_SD: r does not live on the second lift");
	auto SD = canonical_poisson(hamiltonian_lift_p(d.Q_D, second), r);
	SD *= Rational(1, 2);
	for (auto& [m, k] : SD.terms())
		if (monomial_fiber_degree(m, *second) != 2)
			throw Error("almost_schouten_SD: S_D is not quadratic in momenta");
	require_weight(SD, d.grading.s_or_p, "almost_schouten_SD: S_D");
	return SD;
}

OddDoubleTensor odd_rho_PD(const DoubleModel& d, const ChartPtr& second)
{
	if (d.kind != StructureKind::QP || second->source() != d.lift ||
	    second->chart_kind() != ChartKind::AntiCotangent)
		throw ChartMismatch("odd_rho_PD: expected the anticotangent lift of a QP double");
	const std::size_t n = d.lift->base_size();
	const std::size_t N = d.lift->size();
	OddDoubleTensor out;
	out.rho = SuperPolynomial(second);
	for (std::size_t a = 0; a < n; ++a)
		out.rho += SuperPolynomial::variable(second, N + n + a) * SuperPolynomial::variable(second, N + a);
	auto theta = multivector_lift_theta(d.Q_D, second);
	out.P_D = canonical_schouten(-theta, out.rho);
	out.P_D *= Rational(1, 2);
	out.poisson = check_tensor(out.P_D, "P_D");
	out.invariance = CheckReport{"Q_D-invariance of P_D", true, {}, "chart " + second->name()};
	out.invariance.add("L_{Q_D} P_D", lie_derivative(d.Q_D, out.P_D));
	return out;
}

ChartPtr dual_bundle_chart(const ChartPtr& E, DualityKind kind)
{
	std::vector<VariableDecl> vars;
	bool fiber = false;
	for (auto& v : E->vars()) {
		VariableDecl d{v.name, v.parity, v.weight};
		if (v.weight != 0) {
			fiber = true;
			d.name = (kind == DualityKind::Even ? "bar_" : "eta_") + v.name;
			d.weight = -v.weight;
			if (kind == DualityKind::Odd)
				d.parity = 1 - v.parity;
		}
		vars.push_back(d);
	}
	if (!fiber)
		throw Error("duality: chart '" + E->name() + "' has no fiber variables (nonzero weight)");
	return Chart::base((kind == DualityKind::Even ? "" : "Pi") + E->name() + "*", std::move(vars));
}

DualityMap duality_map(const ChartPtr& E, DualityKind kind, DualityCoordinates coords)
{
	DualityMap m;
	m.kind = kind;
	m.coordinates = coords;
	m.E = E;
	m.dual = dual_bundle_chart(E, kind);
	GradingSystem g;
	bool odd = kind == DualityKind::Odd;
	m.source = odd ? anticotangent_lift(E, g) : cotangent_lift(E, g);
	m.target = odd ? anticotangent_lift(m.dual, g) : cotangent_lift(m.dual, g);
	const std::size_t n = E->size();
	auto src = [&](std::size_t i) { return SuperPolynomial::variable(m.source, i); };
	m.images.assign(2 * n, SuperPolynomial(m.source));
	for (std::size_t a = 0; a < n; ++a) {
		if (E->var(a).weight == 0) {
			m.images[a] = src(a);
			m.images[n + a] = src(n + a);
		} else if (odd) {
			// (x, y, x*, y*) -> (x, y*, x*, -y)
			m.images[a] = src(n + a);
			m.images[n + a] = -src(a);
		} else if (coords == DualityCoordinates::Left) {
			// (x, y, p_a, p_i) -> (x, (-1)^i p_i, p_a, -y)
			m.images[a] = Rational(sgn(E->parity(a))) * src(n + a);
			m.images[n + a] = -src(a);
		} else {
			// (x, y, p_a, p_i) -> (x, p_i, p_a, -(-1)^i y)
			m.images[a] = src(n + a);
			m.images[n + a] = Rational(-sgn(E->parity(a))) * src(a);
		}
	}
	m.preservation = CheckReport{"duality map preserves the canonical bracket", true, {},
	                             m.source->name() + " -> " + m.target->name()};
	for (std::size_t u = 0; u < 2 * n; ++u)
		for (std::size_t v = 0; v < 2 * n; ++v) {
			auto U = SuperPolynomial::variable(m.target, u);
			auto V = SuperPolynomial::variable(m.target, v);
			auto lhs = m.pull(canonical_bracket(U, V));
			auto rhs = canonical_bracket(m.images[u], m.images[v]);
			m.preservation.add("{" + m.target->var(u).name + "," + m.target->var(v).name + "}", lhs - rhs);
		}
	return m;
}

SuperPolynomial DualityMap::pull(const SuperPolynomial& f) const
{
	return substitute(f, images, source);
}

std::string DualityMap::render() const
{
	std::ostringstream os;
	for (std::size_t i = 0; i < images.size(); ++i)
		os << target->var(i).name << " = " << images[i].render() << "\n";
	return os.str();
}

DualitySquare duality_square(const ChartPtr& E, DualityKind kind, DualityCoordinates coords)
{
	auto F = duality_map(E, kind, coords);
	auto G = duality_map(F.dual, kind, coords);
	const std::size_t n = E->size();
	DualitySquare sq;
	sq.source = F.source;
	// I: E** -> E is (-1)^i on the fibers in the even case and the identity in the odd case
	for (std::size_t a = 0; a < 2 * n; ++a) {
		auto w = SuperPolynomial::variable(G.target, a);
		if (kind == DualityKind::Even && E->var(a % n).weight != 0)
			w *= Rational(sgn(E->parity(a % n)));
		sq.images.push_back(F.pull(G.pull(w)));
	}
	sq.report = CheckReport{"F^2 is -1 on the fibers", true, {}, F.source->name()};
	for (std::size_t a = 0; a < 2 * n; ++a) {
		auto want = SuperPolynomial::variable(F.source, a);
		if (E->var(a % n).weight != 0)
			want = -want;
		sq.report.add(F.source->var(a).name, sq.images[a] - want);
	}
	return sq;
}

}
