#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gradedq {

using Rational = mpq_class;

class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class ChartMismatch : public Error {
public:
	using Error::Error;
};

class ParityMismatch : public Error {
public:
	using Error::Error;
};

std::string render_rational(const Rational& q);

enum class ChartKind { Base, Cotangent, AntiCotangent };

const char* chart_kind_name(ChartKind p);

// weight is the total weight W; induced is the weight before the lift shift.
// fiber is 1 only for the momenta of the outermost lift.
struct VariableDecl {
	std::string name;
	int parity = 0;
	int weight = 0;
	int induced = 0;
	int fiber = 0;
	std::size_t order_index = 0;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

class Chart {
public:
	static ChartPtr base(std::string name, std::vector<VariableDecl> vars);
	static ChartPtr lift(std::string name, ChartPtr source, ChartKind kind,
	                     std::vector<VariableDecl> momenta, int shift);

	const std::string& name() const { return name_; }
	const std::vector<VariableDecl>& vars() const { return vars_; }
	const VariableDecl& var(std::size_t i) const { return vars_.at(i); }
	std::size_t size() const { return vars_.size(); }
	ChartKind chart_kind() const { return prov_; }
	const ChartPtr& source() const { return source_; }
	int shift() const { return shift_; }
	bool is_lift() const { return prov_ != ChartKind::Base; }
	// number of base variables; the momentum of base variable a sits at base_size()+a
	std::size_t base_size() const { return source_ ? source_->size() : vars_.size(); }
	int parity(std::size_t i) const { return parities_[i]; }
	const std::vector<std::uint8_t>& parities() const { return parities_; }

	std::optional<std::size_t> find(std::string_view name) const;
	std::size_t index(std::string_view name) const;

	bool same_layout(const Chart& other) const;

private:
	Chart() = default;
	void finish();

	std::string name_;
	std::vector<VariableDecl> vars_;
	std::vector<std::uint8_t> parities_;
	ChartKind prov_ = ChartKind::Base;
	ChartPtr source_;
	int shift_ = 0;
};

bool compatible(const ChartPtr& a, const ChartPtr& b);

// sparse (index, exponent) pairs sorted by index
class Monomial {
public:
	using Factor = std::pair<std::uint32_t, std::uint32_t>;

	Monomial() = default;
	explicit Monomial(std::vector<Factor> f);
	static Monomial single(std::uint32_t idx, std::uint32_t exp = 1);

	const std::vector<Factor>& factors() const { return f_; }
	bool empty() const { return f_.empty(); }
	std::uint32_t degree() const;
	std::uint32_t exponent(std::uint32_t idx) const;

	bool operator==(const Monomial& o) const { return f_ == o.f_; }

private:
	std::vector<Factor> f_;
};

// total degree first, then the monomial holding the earlier variable (or its higher power)
struct MonomialOrder {
	bool operator()(const Monomial& a, const Monomial& b) const;
};

// product of monomials under the Koszul rule; sign 0 means the product vanishes
int monomial_product(const Monomial& a, const Monomial& b,
                     const std::vector<std::uint8_t>& parity, Monomial& out);

class SuperPolynomial {
public:
	using TermMap = std::map<Monomial, Rational, MonomialOrder>;

	SuperPolynomial() = default;
	explicit SuperPolynomial(ChartPtr chart) : chart_(std::move(chart)) {}

	static SuperPolynomial constant(ChartPtr chart, const Rational& c);
	static SuperPolynomial variable(ChartPtr chart, std::size_t idx);
	static SuperPolynomial variable(ChartPtr chart, std::string_view name);
	static SuperPolynomial monomial(ChartPtr chart, const Monomial& m, const Rational& c);

	const ChartPtr& chart() const { return chart_; }
	const TermMap& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	std::size_t size() const { return terms_.size(); }
	Rational coefficient(const Monomial& m) const;

	void add_term(const Monomial& m, const Rational& c);

	SuperPolynomial& operator+=(const SuperPolynomial& g);
	SuperPolynomial& operator-=(const SuperPolynomial& g);
	SuperPolynomial& operator*=(const Rational& c);

	bool operator==(const SuperPolynomial& g) const;
	bool operator!=(const SuperPolynomial& g) const { return !(*this == g); }

	// same terms moved onto another chart with identical layout
	SuperPolynomial rechart(ChartPtr target) const;

	std::string render() const;

private:
	ChartPtr chart_;
	TermMap terms_;
};

SuperPolynomial operator+(SuperPolynomial f, const SuperPolynomial& g);
SuperPolynomial operator-(SuperPolynomial f, const SuperPolynomial& g);
SuperPolynomial operator-(SuperPolynomial f);
SuperPolynomial operator*(const SuperPolynomial& f, const SuperPolynomial& g);
SuperPolynomial operator*(const Rational& c, SuperPolynomial f);
SuperPolynomial operator*(SuperPolynomial f, const Rational& c);

std::ostream& operator<<(std::ostream& os, const SuperPolynomial& f);

SuperPolynomial add(const SuperPolynomial& f, const SuperPolynomial& g);
SuperPolynomial scalar_mul(const Rational& c, const SuperPolynomial& f);
SuperPolynomial normalize_product(const SuperPolynomial& f, const SuperPolynomial& g);
SuperPolynomial power(const SuperPolynomial& f, unsigned n);

SuperPolynomial left_partial(const SuperPolynomial& f, std::size_t var);
SuperPolynomial left_partial(const SuperPolynomial& f, std::string_view var);

enum class GradeKind { Zero, Homogeneous, Mixed };

struct ParityGrade {
	GradeKind kind = GradeKind::Zero;
	int value = 0;
	SuperPolynomial even, odd;
};

struct WeightGrade {
	GradeKind kind = GradeKind::Zero;
	int value = 0;
	std::map<int, SuperPolynomial> parts;
};

ParityGrade parity_of(const SuperPolynomial& f);
WeightGrade weight_of(const SuperPolynomial& f);
// parity of a homogeneous polynomial; throws on mixed input, 0 for zero
int parity(const SuperPolynomial& f);

int monomial_parity(const Monomial& m, const Chart& c);
int monomial_weight(const Monomial& m, const Chart& c);
unsigned monomial_fiber_degree(const Monomial& m, const Chart& c);

// parts sorted by a caller-supplied integer grade of each monomial
std::map<int, SuperPolynomial> split_by(const SuperPolynomial& f,
                                        const std::function<int(const Monomial&)>& grade);
std::map<int, SuperPolynomial> split_by_fiber_degree(const SuperPolynomial& f);

// images[i] replaces variable i of f's chart; images live on target
SuperPolynomial substitute(const SuperPolynomial& f, const std::vector<SuperPolynomial>& images,
                           const ChartPtr& target);
SuperPolynomial substitute(const SuperPolynomial& f,
                           const std::map<std::string, SuperPolynomial>& images,
                           const ChartPtr& target);

}
