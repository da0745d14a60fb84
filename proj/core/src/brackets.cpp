#include "gradedq/brackets.hpp"

namespace gradedq {

namespace {

void require_lift(const SuperPolynomial& f, const SuperPolynomial& g, ChartKind want, const char* op)
{
	if (!f.chart() || f.chart()->chart_kind() != want)
		throw ChartMismatch(std::string(op) + ": chart '" + (f.chart() ? f.chart()->name() : "?") +
		                    "' is not a" + (want == ChartKind::Cotangent ? " cotangent" : "n anticotangent") +
		                    " lift");
	if (!compatible(f.chart(), g.chart()))
		throw ChartMismatch(std::string(op) + ": chart mismatch");
}

// both canonical brackets share the shape
//   sum_a s1(a) df/dmom_a dg/dx^a - s2(a) df/dx^a dg/dmom_a
// with signs depending on the parity of f, which is split off first
SuperPolynomial bracket_core(const SuperPolynomial& f, const SuperPolynomial& g, bool odd)
{
	const Chart& c = *f.chart();
	const std::size_t n = c.base_size();
	SuperPolynomial r(f.chart());
	auto pf = parity_of(f);
	for (int fp = 0; fp < 2; ++fp) {
		const SuperPolynomial& part = fp ? pf.odd : pf.even;
		if (part.is_zero())
			continue;
		for (std::size_t a = 0; a < n; ++a) {
			int pa = c.parity(a);
			auto dfm = left_partial(part, n + a);
			if (!dfm.is_zero()) {
				auto dgx = left_partial(g, a);
				if (!dgx.is_zero()) {
					int e = odd ? (pa + 1) * (fp + 1) : pa * (fp + 1);
					auto t = dfm * dgx;
					if (e & 1)
						r -= t;
					else
						r += t;
				}
			}
			auto dfx = left_partial(part, a);
			if (!dfx.is_zero()) {
				auto dgm = left_partial(g, n + a);
				if (!dgm.is_zero()) {
					int e = odd ? pa * (fp + 1) : pa * fp;
					auto t = dfx * dgm;
					if (e & 1)
						r += t;
					else
						r -= t;
				}
			}
		}
	}
	return r;
}

}

SuperPolynomial canonical_poisson(const SuperPolynomial& f, const SuperPolynomial& g)
{
	require_lift(f, g, ChartKind::Cotangent, "canonical_poisson");
	return bracket_core(f, g, false);
}

SuperPolynomial canonical_schouten(const SuperPolynomial& f, const SuperPolynomial& g)
{
	require_lift(f, g, ChartKind::AntiCotangent, "canonical_schouten");
	return bracket_core(f, g, true);
}

SuperPolynomial canonical_bracket(const SuperPolynomial& f, const SuperPolynomial& g)
{
	if (f.chart() && f.chart()->chart_kind() == ChartKind::AntiCotangent)
		return canonical_schouten(f, g);
	return canonical_poisson(f, g);
}

int bracket_parity(const Chart& lift)
{
	if (lift.chart_kind() == ChartKind::Base)
		throw ChartMismatch("chart '" + lift.name() + "' carries no canonical bracket");
	return lift.chart_kind() == ChartKind::AntiCotangent ? 1 : 0;
}

SuperPolynomial derived_bracket(const SuperPolynomial& T, const SuperPolynomial& f,
                                const SuperPolynomial& g)
{
	int bp = bracket_parity(*T.chart());
	if (!T.is_zero() && ((parity(T) + bp) & 1) == 0)
		throw ParityMismatch("derived_bracket: {T,.} must be odd, got T of parity " +
		                     std::to_string(parity(T)));
	return canonical_bracket(f, canonical_bracket(T, g));
}

SuperPolynomial lie_derivative(const VectorField& Q, const SuperPolynomial& T)
{
	const auto& lift = T.chart();
	if (!lift->is_lift() || !compatible(lift->source(), Q.chart()))
		throw ChartMismatch("lie_derivative: tensor chart is not a lift of the field's chart");
	if (lift->chart_kind() == ChartKind::Cotangent)
		return canonical_poisson(hamiltonian_lift_p(Q, lift), T);
	auto r = canonical_schouten(multivector_lift_theta(Q, lift), T);
	if (Q.parity())
		r *= Rational(-1);
	return r;
}

VectorField hamiltonian_vector_field(const SuperPolynomial& H)
{
	const auto& c = H.chart();
	bracket_parity(*c);
	VectorField X(c);
	for (std::size_t a = 0; a < c->size(); ++a)
		X.set(a, canonical_bracket(H, SuperPolynomial::variable(c, a)));
	return X;
}

}
