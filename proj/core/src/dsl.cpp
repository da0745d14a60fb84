#include "gradedq/dsl.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gradedq/brackets.hpp"

namespace gradedq {

ParseError::ParseError(std::string file, int line, int col, const std::string& msg)
    : Error(file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": error: " + msg), line_(line),
      col_(col)
{
}

unsigned degree_cap()
{
	const char* s = std::getenv("GRADEDQ_DEGREE_CAP");
	if (!s || !*s)
		return 64;
	char* end = nullptr;
	long v = std::strtol(s, &end, 10);
	if (*end || v <= 0)
		throw UsageError(std::string("GRADEDQ_DEGREE_CAP must be a positive integer, got '") + s + "'");
	return static_cast<unsigned>(v);
}

namespace {

/* lexer */

enum class Tok { Ident, Int, String, Deriv, Punct, End };

struct Token {
	Tok kind = Tok::End;
	std::string text;
	int line = 1, col = 1;
};

// greek input aliases, spelled the way the ASCII surface names them
const std::pair<const char*, const char*> aliases[] = {
    {"\xce\xbe", "xi"},     {"\xce\xb7", "eta"},   {"\xcf\x80", "pi"},    {"\xce\xba", "kappa"},
    {"\xce\xb8", "theta"},  {"\xce\xb5", "eps"},   {"\xcf\x81", "rho"},   {"\xce\xbb", "lambda"},
    {"\xce\xbc", "mu"},     {"\xce\x93", "Gamma"}, {"\xce\xb1", "alpha"}, {"\xce\xb2", "beta"},
    {"\xce\xb3", "gamma"},  {"\xce\xb4", "delta"}, {"\xcf\x83", "sigma"}, {"\xcf\x84", "tau"},
    {"\xcf\x86", "phi"},    {"\xcf\x88", "psi"},   {"\xcf\x89", "omega"}, {"\xce\xb6", "zeta"},
    {"\xce\xbd", "nu"},
};
// punctuation aliases
const std::pair<const char*, char> punct_aliases[] = {
    {"\xe2\x88\x92", '-'}, {"\xc2\xb7", '*'}, {"\xe2\x8b\x85", '*'}, {"\xc3\x97", '*'},
};

class Lexer {
public:
	Lexer(const std::string& text, std::string file) : s_(text), file_(std::move(file)) {}

	std::vector<Token> run()
	{
		std::vector<Token> out;
		for (;;) {
			skip();
			Token t;
			t.line = line_;
			t.col = col_;
			if (i_ >= s_.size()) {
				out.push_back(t);
				return out;
			}
			char c = s_[i_];
			if (c == '"') {
				advance();
				while (i_ < s_.size() && s_[i_] != '"' && s_[i_] != '\n')
					t.text += s_[i_], advance();
				if (i_ >= s_.size() || s_[i_] != '"')
					throw ParseError(file_, t.line, t.col, "unterminated string");
				advance();
				t.kind = Tok::String;
			} else if (std::isdigit(static_cast<unsigned char>(c))) {
				while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
					t.text += s_[i_], advance();
				t.kind = Tok::Int;
			} else if (c == 'd' && s_.compare(i_, 3, "d/d") == 0 && i_ + 3 < s_.size() && ident_start(i_ + 3)) {
				advance(3);
				t.text = ident();
				t.kind = Tok::Deriv;
			} else if (ident_start(i_)) {
				t.text = ident();
				t.kind = Tok::Ident;
			} else if (auto p = punct_alias(); p) {
				t.text = std::string(1, p);
				t.kind = Tok::Punct;
			} else if (std::string("{}()[];:,=+-*^/").find(c) != std::string::npos) {
				t.text = std::string(1, c);
				advance();
				t.kind = Tok::Punct;
			} else {
				throw ParseError(file_, t.line, t.col, std::string("unexpected character '") + c + "'");
			}
			out.push_back(t);
		}
	}

private:
	void advance(std::size_t n = 1)
	{
		while (n-- && i_ < s_.size()) {
			unsigned char c = s_[i_++];
			if (c == '\n') {
				++line_;
				col_ = 1;
			} else if ((c & 0xC0) != 0x80) {
				++col_;
			}
		}
	}

	void skip()
	{
		while (i_ < s_.size()) {
			char c = s_[i_];
			if (c == '#' || (c == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '/')) {
				while (i_ < s_.size() && s_[i_] != '\n')
					advance();
			} else if (std::isspace(static_cast<unsigned char>(c))) {
				advance();
			} else {
				break;
			}
		}
	}

	const char* alias_at(std::size_t i, std::size_t& len) const
	{
		for (auto& [u, a] : aliases) {
			std::size_t n = std::char_traits<char>::length(u);
			if (s_.compare(i, n, u) == 0) {
				len = n;
				return a;
			}
		}
		return nullptr;
	}

	bool ident_start(std::size_t i) const
	{
		char c = s_[i];
		std::size_t len;
		return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || alias_at(i, len);
	}

	std::string ident()
	{
		std::string out;
		while (i_ < s_.size()) {
			char c = s_[i_];
			std::size_t len = 0;
			if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
				out += c;
				advance();
			} else if (auto a = alias_at(i_, len)) {
				out += a;
				advance(len);
			} else {
				break;
			}
		}
		return out;
	}

	char punct_alias()
	{
		for (auto& [u, p] : punct_aliases) {
			std::size_t n = std::char_traits<char>::length(u);
			if (s_.compare(i_, n, u) == 0) {
				advance(n);
				return p;
			}
		}
		return 0;
	}

	const std::string& s_;
	std::string file_;
	std::size_t i_ = 0;
	int line_ = 1, col_ = 1;
};

std::uint32_t max_degree(const SuperPolynomial& f)
{
	std::uint32_t d = 0;
	for (auto& [m, c] : f.terms())
		d = std::max(d, m.degree());
	return d;
}

/* parser */

class Parser {
public:
	Parser(std::vector<Token> toks, std::string file, std::string dir)
	    : t_(std::move(toks)), file_(std::move(file)), dir_(std::move(dir)), cap_(degree_cap())
	{
	}

	Model run()
	{
		Model m;
		m.source = file_;
		while (peek().kind != Tok::End) {
			const Token& t = peek();
			if (is("chart"))
				chart(m);
			else if (is("grading"))
				grading(m);
			else if (is("field"))
				field(m);
			else if (is("tensor"))
				tensor(m);
			else if (is("connection"))
				connection(m);
			else if (is("algebra"))
				algebra(m);
			else
				fail(t, "expected a declaration (chart, grading, field, tensor, connection or algebra), got " +
				            describe(t));
		}
		return m;
	}

private:
	[[noreturn]] void fail(const Token& t, const std::string& msg) const
	{
		throw ParseError(file_, t.line, t.col, msg);
	}

	static std::string describe(const Token& t)
	{
		switch (t.kind) {
		case Tok::End: return "end of input";
		case Tok::String: return "string \"" + t.text + "\"";
		case Tok::Deriv: return "'d/d" + t.text + "'";
		default: return "'" + t.text + "'";
		}
	}

	const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
	const Token& next() { return t_[std::min(p_++, t_.size() - 1)]; }
	bool is(const char* word, std::size_t k = 0) const
	{
		auto& t = peek(k);
		return t.kind == Tok::Ident && t.text == word;
	}
	bool is_punct(char c, std::size_t k = 0) const
	{
		auto& t = peek(k);
		return t.kind == Tok::Punct && t.text[0] == c;
	}

	void expect_punct(char c)
	{
		if (!is_punct(c)) {
			// a missing terminator is reported where it should have been
			const Token& t = peek();
			if ((c == ';' || c == '}') && p_ > 0) {
				const Token& prev = t_[p_ - 1];
				Token at = prev;
				at.col = prev.col + static_cast<int>(prev.kind == Tok::Deriv ? prev.text.size() + 3 : prev.text.size()) +
				         (prev.kind == Tok::String ? 2 : 0);
				fail(at, std::string("expected '") + c + "' before " + describe(t));
			}
			fail(t, std::string("expected '") + c + "', got " + describe(t));
		}
		next();
	}
	void expect_word(const char* w)
	{
		if (!is(w))
			fail(peek(), std::string("expected '") + w + "', got " + describe(peek()));
		next();
	}
	std::string name()
	{
		if (peek().kind != Tok::Ident)
			fail(peek(), "expected a name, got " + describe(peek()));
		return next().text;
	}
	long integer()
	{
		bool neg = false;
		if (is_punct('-')) {
			next();
			neg = true;
		} else if (is_punct('+')) {
			next();
		}
		if (peek().kind != Tok::Int)
			fail(peek(), "expected an integer, got " + describe(peek()));
		const Token& t = next();
		if (t.text.size() > 9)
			fail(t, "integer out of range");
		long v = std::stol(t.text);
		return neg ? -v : v;
	}
	Rational rational()
	{
		long num = integer();
		if (is_punct('/')) {
			next();
			const Token& t = peek();
			long den = integer();
			if (den <= 0)
				fail(t, "denominator must be positive");
			Rational q(num, den);
			q.canonicalize();
			return q;
		}
		return Rational(num);
	}

	void unique(const Model& m, const Token& t, const std::string& n)
	{
		bool dup = m.chart(n) || m.grading(n) || m.field(n) || m.tensor(n) || m.connection(n) || m.algebra(n);
		if (dup)
			fail(t, "'" + n + "' is already declared");
	}

	int parity_word()
	{
		if (is("even")) {
			next();
			return 0;
		}
		if (is("odd")) {
			next();
			return 1;
		}
		fail(peek(), "expected 'even' or 'odd', got " + describe(peek()));
	}

	void chart(Model& m)
	{
		next();
		const Token& at = peek();
		auto n = name();
		unique(m, at, n);
		expect_punct('{');
		std::vector<VariableDecl> vars;
		while (!is_punct('}')) {
			expect_word("var");
			std::vector<std::pair<Token, std::string>> names;
			do {
				const Token& vt = peek();
				names.push_back({vt, name()});
			} while (is_punct(',') && (next(), true));
			expect_punct(':');
			int par = parity_word();
			expect_punct(',');
			expect_word("weight");
			long w = integer();
			expect_punct(';');
			for (auto& [vt, vn] : names) {
				for (auto& v : vars)
					if (v.name == vn)
						fail(vt, "variable '" + vn + "' declared twice in chart '" + n + "'");
				vars.push_back({vn, par, static_cast<int>(w)});
			}
		}
		expect_punct('}');
		m.charts.push_back(Chart::base(n, vars));
	}

	void grading(Model& m)
	{
		next();
		const Token& at = peek();
		GradingDecl g;
		g.name = name();
		unique(m, at, g.name);
		expect_punct('{');
		bool q = false, sp = false;
		while (!is_punct('}')) {
			const Token& kt = peek();
			auto key = name();
			expect_punct('=');
			if (key == "q") {
				g.grading.q = static_cast<int>(integer());
				q = true;
			} else if (key == "s" || key == "p") {
				if (sp)
					fail(kt, "grading '" + g.name + "' sets both s and p");
				g.grading.s_or_p = static_cast<int>(integer());
				g.has_p = key == "p";
				g.grading.kind = g.has_p ? GradingSystem::Kind::QP : GradingSystem::Kind::QS;
				sp = true;
			} else if (key == "lambda") {
				g.grading.lambda = rational();
			} else {
				fail(kt, "unknown grading key '" + key + "' (expected q, s, p or lambda)");
			}
			expect_punct(';');
		}
		if (!q || !sp)
			fail(at, "grading '" + g.name + "' needs q and one of s or p");
		expect_punct('}');
		m.gradings.push_back(g);
	}

	ChartPtr chart_ref(const Model& m)
	{
		const Token& t = peek();
		auto n = name();
		auto c = m.chart(n);
		if (!c)
			fail(t, "unknown chart '" + n + "'");
		return c;
	}

	void check_cap(const Token& t, const SuperPolynomial& f)
	{
		if (max_degree(f) > cap_)
			fail(t, "expression exceeds the degree cap " + std::to_string(cap_));
	}

	// expr := [+-] term {(+|-) term}
	SuperPolynomial expr(const ChartPtr& c)
	{
		SuperPolynomial f(c);
		bool neg = false;
		if (is_punct('+') || is_punct('-'))
			neg = next().text == "-";
		auto t = term(c);
		f = neg ? -t : t;
		while (is_punct('+') || is_punct('-')) {
			bool minus = next().text == "-";
			auto u = term(c);
			if (minus)
				f -= u;
			else
				f += u;
		}
		return f;
	}

	SuperPolynomial term(const ChartPtr& c)
	{
		const Token& at = peek();
		auto f = factor(c);
		while (is_punct('*')) {
			next();
			f = f * factor(c);
			check_cap(at, f);
		}
		return f;
	}

	SuperPolynomial factor(const ChartPtr& c)
	{
		const Token& at = peek();
		auto f = primary(c);
		if (is_punct('^')) {
			next();
			const Token& et = peek();
			if (et.kind != Tok::Int)
				fail(et, "expected an integer exponent, got " + describe(et));
			next();
			if (et.text.size() > 6 || std::stoul(et.text) * std::max<std::uint32_t>(max_degree(f), 1) > cap_)
				fail(et, "exponent exceeds the degree cap " + std::to_string(cap_));
			f = power(f, static_cast<unsigned>(std::stoul(et.text)));
			check_cap(at, f);
		}
		return f;
	}

	SuperPolynomial primary(const ChartPtr& c)
	{
		const Token& t = peek();
		if (t.kind == Tok::Int) {
			next();
			Rational q(mpz_class(t.text));
			if (is_punct('/') && peek(1).kind == Tok::Int) {
				next();
				const Token& d = next();
				mpz_class den(d.text);
				if (den == 0)
					fail(d, "zero denominator");
				q /= den;
			}
			return SuperPolynomial::constant(c, q);
		}
		if (t.kind == Tok::Ident) {
			next();
			auto idx = c->find(t.text);
			if (!idx)
				fail(t, "unknown variable '" + t.text + "' on chart '" + c->name() + "'");
			return SuperPolynomial::variable(c, *idx);
		}
		if (is_punct('(')) {
			next();
			auto f = expr(c);
			expect_punct(')');
			return f;
		}
		fail(t, "expected a number, a variable or '(', got " + describe(t));
	}

	int optional_parity()
	{
		if (!is_punct(':'))
			return -1;
		next();
		return parity_word();
	}

	void require_parity(const Token& at, const std::string& what, int declared, const std::function<int()>& actual)
	{
		if (declared < 0)
			return;
		int p;
		try {
			p = actual();
		} catch (const Error&) {
			fail(at, what + " is declared " + (declared ? "odd" : "even") + " but has mixed parity");
		}
		if (p != declared)
			fail(at, what + " is declared " + (declared ? "odd" : "even") + " but is " + (p ? "odd" : "even"));
	}

	void field(Model& m)
	{
		next();
		const Token& at = peek();
		FieldDecl f;
		f.name = name();
		unique(m, at, f.name);
		expect_word("on");
		auto c = chart_ref(m);
		f.chart = c->name();
		f.declared_parity = optional_parity();
		expect_punct('=');
		VectorField X(c);
		std::vector<SuperPolynomial> co(c->size(), SuperPolynomial(c));
		bool first = true;
		for (;;) {
			bool neg = false;
			if (is_punct('+') || is_punct('-'))
				neg = next().text == "-";
			else if (!first)
				break;
			first = false;
			const Token& tt = peek();
			SuperPolynomial k = SuperPolynomial::constant(c, 1);
			if (peek().kind != Tok::Deriv)
				k = term(c);
			if (peek().kind != Tok::Deriv) {
				// a lone zero is the zero field
				if (k.is_zero() && (is_punct(';')))
					break;
				fail(peek(), "expected 'd/d<variable>' after the coefficient, got " + describe(peek()));
			}
			const Token& d = next();
			auto idx = c->find(d.text);
			if (!idx)
				fail(d, "unknown variable '" + d.text + "' on chart '" + c->name() + "'");
			(void)tt;
			if (neg)
				co[*idx] -= k;
			else
				co[*idx] += k;
		}
		expect_punct(';');
		for (std::size_t a = 0; a < co.size(); ++a)
			X.set(a, co[a]);
		f.field = X;
		require_parity(at, "field '" + f.name + "'", f.declared_parity, [&] { return X.parity(); });
		m.fields.push_back(f);
	}

	void tensor(Model& m)
	{
		next();
		const Token& at = peek();
		TensorDecl t;
		t.name = name();
		unique(m, at, t.name);
		expect_word("on");
		if (is("lift"))
			t.kind = LiftKind::Cotangent;
		else if (is("antilift"))
			t.kind = LiftKind::AntiCotangent;
		else
			fail(peek(), "expected 'lift' or 'antilift', got " + describe(peek()));
		next();
		expect_punct('(');
		auto c = chart_ref(m);
		t.chart = c->name();
		if (is_punct(':')) {
			next();
			do {
				t.momenta.push_back(name());
			} while (is_punct(',') && (next(), true));
			if (t.momenta.size() != c->size())
				fail(at, "lift of '" + c->name() + "' needs " + std::to_string(c->size()) + " momentum names");
		}
		expect_punct(')');
		t.declared_parity = optional_parity();
		expect_punct('=');
		ChartPtr L;
		try {
			L = tensor_lift(m, t, 0);
		} catch (const Error& e) {
			fail(at, e.what());
		}
		t.value = expr(L);
		expect_punct(';');
		require_parity(at, "tensor '" + t.name + "'", t.declared_parity, [&] { return parity(t.value); });
		m.tensors.push_back(t);
	}

	void connection(Model& m)
	{
		next();
		const Token& at = peek();
		ConnectionDecl c;
		c.name = name();
		unique(m, at, c.name);
		ChartPtr ch;
		if (is("on")) {
			next();
			ch = chart_ref(m);
		} else if (m.charts.size() == 1) {
			ch = m.charts[0];
		} else {
			fail(peek(), "connection '" + c.name + "' needs 'on CHART' when the model has several charts");
		}
		c.chart = ch->name();
		c.gamma = Connection(ch);
		expect_punct('{');
		while (!is_punct('}')) {
			expect_word("Gamma");
			expect_punct('[');
			std::size_t idx[3];
			for (int k = 0; k < 3; ++k) {
				if (k)
					expect_punct(',');
				const Token& vt = peek();
				auto vn = name();
				auto i = ch->find(vn);
				if (!i)
					fail(vt, "unknown variable '" + vn + "' on chart '" + ch->name() + "'");
				idx[k] = *i;
			}
			expect_punct(']');
			expect_punct('=');
			auto g = expr(ch);
			expect_punct(';');
			c.gamma.set(idx[0], idx[1], idx[2], c.gamma(idx[0], idx[1], idx[2]) + g);
		}
		expect_punct('}');
		auto bad = c.gamma.weight_failure();
		if (!bad.empty())
			fail(at, "connection '" + c.name + "': " + bad);
		m.connections.push_back(c);
	}

	void algebra(Model& m)
	{
		next();
		const Token& at = peek();
		AlgebraDecl a;
		a.name = name();
		unique(m, at, a.name);
		expect_punct('=');
		const Token& kt = peek();
		auto kind = name();
		try {
			if (kind == "sc") {
				if (peek().kind != Tok::String)
					fail(peek(), "expected a file name string after 'sc'");
				a.kind = "sc";
				a.file = next().text;
				std::string path = a.file;
				if (!path.empty() && path[0] != '/')
					path = dir_ + "/" + path;
				std::ifstream in(path);
				if (!in)
					fail(kt, "cannot open structure constants file '" + a.file + "'");
				std::stringstream ss;
				ss << in.rdbuf();
				a.c = StructureConstants::from_json(ss.str());
				a.c.require_valid();
			} else if (kind == "susy1") {
				a.kind = kind;
				a.c = susy1_algebra();
			} else if (kind == "q" || kind == "gl" || kind == "sl") {
				a.kind = kind;
				expect_punct('(');
				const Token& nt = peek();
				long n = integer();
				if (n < 1 || n > 6)
					fail(nt, "algebra size must be between 1 and 6");
				a.n = static_cast<unsigned>(n);
				expect_punct(')');
				if (kind == "q") {
					a.q = q_algebra(a.n);
					a.c = a.q->c;
				} else {
					a.c = kind == "gl" ? gl_algebra(a.n) : sl_algebra(a.n);
				}
			} else {
				fail(kt, "unknown algebra '" + kind + "' (expected q(N), gl(N), sl(N), susy1 or sc \"file\")");
			}
		} catch (const ParseError&) {
			throw;
		} catch (const Error& e) {
			fail(kt, e.what());
		}
		expect_punct(';');
		m.algebras.push_back(a);
	}

	std::vector<Token> t_;
	std::size_t p_ = 0;
	std::string file_, dir_;
	unsigned cap_;
};

template <class T>
const T* find_named(const std::vector<T>& v, const std::string& n)
{
	for (auto& x : v)
		if (x.name == n)
			return &x;
	return nullptr;
}

}

ChartPtr Model::chart(const std::string& name) const
{
	for (auto& c : charts)
		if (c->name() == name)
			return c;
	return nullptr;
}
const GradingDecl* Model::grading(const std::string& n) const { return find_named(gradings, n); }
const FieldDecl* Model::field(const std::string& n) const { return find_named(fields, n); }
const TensorDecl* Model::tensor(const std::string& n) const { return find_named(tensors, n); }
const ConnectionDecl* Model::connection(const std::string& n) const { return find_named(connections, n); }
const AlgebraDecl* Model::algebra(const std::string& n) const { return find_named(algebras, n); }

bool Model::operator==(const Model& o) const
{
	if (charts.size() != o.charts.size() || gradings.size() != o.gradings.size() ||
	    fields.size() != o.fields.size() || tensors.size() != o.tensors.size() ||
	    connections.size() != o.connections.size() || algebras.size() != o.algebras.size())
		return false;
	for (std::size_t i = 0; i < charts.size(); ++i)
		if (charts[i]->name() != o.charts[i]->name() || !charts[i]->same_layout(*o.charts[i]))
			return false;
	for (std::size_t i = 0; i < gradings.size(); ++i) {
		auto &a = gradings[i].grading, &b = o.gradings[i].grading;
		if (gradings[i].name != o.gradings[i].name || a.kind != b.kind || a.q != b.q ||
		    a.s_or_p != b.s_or_p || a.lambda != b.lambda)
			return false;
	}
	for (std::size_t i = 0; i < fields.size(); ++i) {
		auto &a = fields[i], &b = o.fields[i];
		if (a.name != b.name || a.chart != b.chart || a.declared_parity != b.declared_parity ||
		    a.field.render() != b.field.render())
			return false;
	}
	for (std::size_t i = 0; i < tensors.size(); ++i) {
		auto &a = tensors[i], &b = o.tensors[i];
		if (a.name != b.name || a.chart != b.chart || a.kind != b.kind || a.momenta != b.momenta ||
		    a.declared_parity != b.declared_parity || a.value.render() != b.value.render())
			return false;
	}
	for (std::size_t i = 0; i < connections.size(); ++i) {
		auto &a = connections[i], &b = o.connections[i];
		if (a.name != b.name || a.chart != b.chart)
			return false;
		std::size_t n = a.gamma.dim();
		if (n != b.gamma.dim())
			return false;
		for (std::size_t x = 0; x < n; ++x)
			for (std::size_t y = 0; y < n; ++y)
				for (std::size_t z = 0; z < n; ++z)
					if (a.gamma(x, y, z).render() != b.gamma(x, y, z).render())
						return false;
	}
	for (std::size_t i = 0; i < algebras.size(); ++i) {
		auto &a = algebras[i], &b = o.algebras[i];
		if (a.name != b.name || a.kind != b.kind || a.n != b.n || a.file != b.file || !(a.c == b.c))
			return false;
	}
	return true;
}

ChartPtr tensor_lift(const Model& m, const TensorDecl& t, int shift)
{
	auto c = m.chart(t.chart);
	if (!c)
		throw Error("unknown chart '" + t.chart + "'");
	// a grading whose shift is q - s
	GradingSystem g;
	g.q = shift;
	g.s_or_p = 0;
	if (t.kind == LiftKind::Cotangent)
		return cotangent_lift(c, g, t.momenta);
	return anticotangent_lift(c, g, t.momenta);
}

Model parse_model(const std::string& text, const std::string& source, const std::string& base_dir)
{
	Lexer lx(text, source);
	Parser p(lx.run(), source, base_dir);
	return p.run();
}

Model load_model(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw UsageError("cannot open model file '" + path + "'");
	std::stringstream ss;
	ss << in.rdbuf();
	auto slash = path.find_last_of('/');
	std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
	return parse_model(ss.str(), path, dir);
}

std::string print_model(const Model& m)
{
	std::ostringstream os;
	auto par = [](int p) { return p ? "odd" : "even"; };
	for (auto& c : m.charts) {
		os << "chart " << c->name() << " {\n";
		for (auto& v : c->vars())
			os << "\tvar " << v.name << " : " << par(v.parity) << ", weight " << v.weight << ";\n";
		os << "}\n";
	}
	for (auto& g : m.gradings) {
		os << "grading " << g.name << " { q=" << g.grading.q << "; " << (g.has_p ? "p=" : "s=") << g.grading.s_or_p
		   << "; lambda=" << render_rational(g.grading.lambda) << "; }\n";
	}
	for (auto& f : m.fields) {
		os << "field " << f.name << " on " << f.chart;
		if (f.declared_parity >= 0)
			os << " : " << par(f.declared_parity);
		os << " = " << f.field.render() << ";\n";
	}
	for (auto& t : m.tensors) {
		os << "tensor " << t.name << " on " << (t.kind == LiftKind::Cotangent ? "lift(" : "antilift(") << t.chart;
		if (!t.momenta.empty()) {
			os << ":";
			for (std::size_t i = 0; i < t.momenta.size(); ++i)
				os << (i ? ", " : " ") << t.momenta[i];
		}
		os << ")";
		if (t.declared_parity >= 0)
			os << " : " << par(t.declared_parity);
		os << " = " << t.value.render() << ";\n";
	}
	for (auto& c : m.connections) {
		os << "connection " << c.name << " on " << c.chart << " {";
		const auto& ch = c.gamma.chart();
		std::size_t n = c.gamma.dim();
		bool any = false;
		for (std::size_t a = 0; a < n; ++a)
			for (std::size_t b = 0; b < n; ++b)
				for (std::size_t k = 0; k < n; ++k)
					if (!c.gamma(a, b, k).is_zero()) {
						os << "\n\tGamma[" << ch->var(a).name << "," << ch->var(b).name << "," << ch->var(k).name
						   << "] = " << c.gamma(a, b, k).render() << ";";
						any = true;
					}
		os << (any ? "\n}\n" : " }\n");
	}
	for (auto& a : m.algebras) {
		os << "algebra " << a.name << " = ";
		if (a.kind == "sc")
			os << "sc \"" << a.file << "\"";
		else if (a.kind == "susy1")
			os << "susy1";
		else
			os << a.kind << "(" << a.n << ")";
		os << ";\n";
	}
	return os.str();
}

/* reports */

bool Report::pass() const
{
	for (auto& c : checks)
		if (!c.pass)
			return false;
	return true;
}

namespace {

std::vector<std::string> residue_lines(const CheckReport& c)
{
	std::vector<std::string> out;
	if (c.pass)
		return {"0"};
	if (c.residue.size() == 1)
		return {c.residue[0].second.render()};
	for (auto& [l, f] : c.residue)
		if (!f.is_zero())
			out.push_back(l + ": " + f.render());
	return out;
}

}

std::string Report::text() const
{
	std::ostringstream os;
	os << "model: " << model << "\n";
	os << "command: " << command << "\n";
	for (auto& c : checks) {
		os << "check " << c.name << ": " << (c.pass ? "PASS" : "FAIL") << "\n";
		for (auto& l : residue_lines(c))
			os << "  residue " << l << "\n";
	}
	for (auto& o : objects) {
		os << o.kind << " " << o.name << ":\n";
		std::istringstream in(o.rendering);
		std::string line;
		while (std::getline(in, line))
			os << "  " << line << "\n";
	}
	os << "status: " << (pass() ? "PASS" : "FAIL") << "\n";
	return os.str();
}

std::string Report::json() const
{
	nlohmann::ordered_json j;
	j["model"] = model;
	j["checks"] = nlohmann::ordered_json::array();
	for (auto& c : checks) {
		std::string r;
		for (auto& l : residue_lines(c))
			r += (r.empty() ? "" : "\n") + l;
		j["checks"].push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"residue", r}});
	}
	j["objects"] = nlohmann::ordered_json::array();
	for (auto& o : objects)
		j["objects"].push_back({{"name", o.name}, {"kind", o.kind}, {"rendering", o.rendering}});
	return j.dump(2) + "\n";
}

/* commands */

namespace {

struct Args {
	std::vector<std::string> pos;
	std::map<std::string, std::string> opt;
	std::vector<std::string> flags;

	bool flag(const std::string& f) const
	{
		return std::find(flags.begin(), flags.end(), f) != flags.end();
	}
};

Args split_args(const std::vector<std::string>& in, const std::vector<std::string>& valued,
                const std::vector<std::string>& boolean)
{
	Args a;
	for (std::size_t i = 1; i < in.size(); ++i) {
		const auto& s = in[i];
		if (s.rfind("--", 0) == 0) {
			auto eq = s.find('=');
			std::string key = s.substr(0, eq);
			if (std::find(valued.begin(), valued.end(), key) != valued.end()) {
				if (eq != std::string::npos)
					a.opt[key] = s.substr(eq + 1);
				else if (i + 1 < in.size())
					a.opt[key] = in[++i];
				else
					throw UsageError(in[0] + ": option " + key + " needs a value");
			} else if (std::find(boolean.begin(), boolean.end(), key) != boolean.end() && eq == std::string::npos) {
				a.flags.push_back(key);
			} else {
				throw UsageError(in[0] + ": unknown option " + s);
			}
		} else {
			a.pos.push_back(s);
		}
	}
	return a;
}

void arity(const std::string& cmd, const Args& a, std::size_t n, const std::string& usage)
{
	if (a.pos.size() != n)
		throw UsageError(cmd + ": expected " + usage);
}

const FieldDecl& need_field(const Model& m, const std::string& n)
{
	auto f = m.field(n);
	if (!f)
		throw UsageError("unknown field '" + n + "'");
	return *f;
}
const TensorDecl& need_tensor(const Model& m, const std::string& n)
{
	auto t = m.tensor(n);
	if (!t)
		throw UsageError("unknown tensor '" + n + "'");
	return *t;
}
const GradingDecl& need_grading(const Model& m, const std::string& n)
{
	auto g = m.grading(n);
	if (!g)
		throw UsageError("unknown grading '" + n + "'");
	return *g;
}

// builtin spellings accepted where an algebra name is expected
std::optional<AlgebraDecl> builtin_algebra(const std::string& s)
{
	AlgebraDecl a;
	a.name = s;
	if (s == "susy1") {
		a.kind = s;
		a.c = susy1_algebra();
		return a;
	}
	auto open = s.find('(');
	if (open == std::string::npos || s.back() != ')')
		return std::nullopt;
	auto kind = s.substr(0, open);
	auto num = s.substr(open + 1, s.size() - open - 2);
	if (num.empty() || num.size() > 1 || !std::isdigit(static_cast<unsigned char>(num[0])))
		return std::nullopt;
	unsigned n = static_cast<unsigned>(std::stoul(num));
	if (n < 1 || n > 6)
		return std::nullopt;
	a.kind = kind;
	a.n = n;
	if (kind == "q") {
		a.q = q_algebra(n);
		a.c = a.q->c;
	} else if (kind == "gl") {
		a.c = gl_algebra(n);
	} else if (kind == "sl") {
		a.c = sl_algebra(n);
	} else {
		return std::nullopt;
	}
	return a;
}

AlgebraDecl need_algebra(const Model& m, const std::string& n)
{
	if (auto a = m.algebra(n))
		return *a;
	if (auto b = builtin_algebra(n))
		return *b;
	throw UsageError("unknown algebra '" + n + "'");
}

bool is_algebra(const Model& m, const std::string& n)
{
	return m.algebra(n) || builtin_algebra(n);
}

VectorField field_on(const FieldDecl& f, const ChartPtr& c)
{
	return f.field.rechart(c);
}

// residue of the terms whose weight differs from want
CheckReport weight_report(const std::string& name, const VectorField& Q, int want)
{
	CheckReport r{name, true, {}, {}};
	const auto& c = Q.chart();
	for (std::size_t a = 0; a < Q.size(); ++a) {
		SuperPolynomial bad(c);
		for (auto& [m, k] : Q[a].terms())
			if (monomial_weight(m, *c) - c->var(a).weight != want)
				bad.add_term(m, k);
		if (!bad.is_zero() || a == 0)
			r.add("d/d" + c->var(a).name, bad);
	}
	return r;
}

CheckReport weight_report(const std::string& name, const SuperPolynomial& T, int want)
{
	CheckReport r{name, true, {}, {}};
	SuperPolynomial bad(T.chart());
	for (auto& [m, k] : T.terms())
		if (monomial_weight(m, *T.chart()) != want)
			bad.add_term(m, k);
	r.add("terms", bad);
	return r;
}

CheckReport jacobi_report(const StructureConstants& c)
{
	auto pc = product_chart(c, false);
	CheckReport r{"Jacobi identity", true, {}, {}};
	std::size_t n = c.dim();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			for (std::size_t k = 0; k < n; ++k) {
				auto d = c.jacobi_defect(i, j, k);
				SuperPolynomial f(pc);
				for (std::size_t a = 0; a < n; ++a)
					if (d[a] != 0)
						f += d[a] * SuperPolynomial::variable(pc, a);
				if (!f.is_zero())
					r.add("[" + c.name(i) + ",[" + c.name(j) + "," + c.name(k) + "]]", f);
			}
	if (r.residue.empty())
		r.add("all basis triples", SuperPolynomial(pc));
	return r;
}

// pairing residues ([u,v],w) + (-1)^{u(v+a)} (v,[u,w]) as constants
CheckReport invariance_report(const StructureConstants& c, const InnerProduct& g)
{
	auto pc = product_chart(c, false);
	CheckReport r{"ad-invariance of the pairing", true, {}, {}};
	std::size_t n = c.dim();
	auto unit = [&](std::size_t i) {
		std::vector<Rational> e(n);
		e[i] = 1;
		return e;
	};
	for (std::size_t u = 0; u < n; ++u)
		for (std::size_t v = 0; v < n; ++v)
			for (std::size_t w = 0; w < n; ++w) {
				auto uv = c.bracket(unit(u), unit(v));
				auto uw = c.bracket(unit(u), unit(w));
				Rational s = 0;
				for (std::size_t k = 0; k < n; ++k)
					s += uv[k] * g(k, w) + (((c.parity(u) * (c.parity(v) + g.parity)) & 1) ? -1 : 1) * g(v, k) * uw[k];
				if (s != 0)
					r.add("(" + c.name(u) + "," + c.name(v) + "," + c.name(w) + ")", SuperPolynomial::constant(pc, s));
			}
	if (r.residue.empty())
		r.add("all basis triples", SuperPolynomial(pc));
	return r;
}

std::string chart_rendering(const ChartPtr& c)
{
	std::ostringstream os;
	for (auto& v : c->vars())
		os << v.name << ": " << (v.parity ? "odd" : "even") << ", weight " << v.induced << ", total " << v.weight
		   << ", " << (v.fiber ? chart_kind_name(c->chart_kind()) : "base") << "\n";
	return os.str();
}

std::string matrix_rendering(const StructureConstants& c, const InnerProduct& g)
{
	std::ostringstream os;
	for (std::size_t i = 0; i < c.dim(); ++i)
		for (std::size_t j = 0; j < c.dim(); ++j)
			if (g(i, j) != 0)
				os << "(" << c.name(i) << "," << c.name(j) << ") = " << render_rational(g(i, j)) << "\n";
	return os.str();
}

std::string table_or_zero(const std::string& t)
{
	return t.empty() ? "0\n" : t;
}

// nonzero derived brackets of the base coordinates of a lift
std::string coordinate_bracket_rendering(const SuperPolynomial& T, std::size_t count)
{
	std::ostringstream os;
	const auto& c = T.chart();
	for (std::size_t a = 0; a < count; ++a)
		for (std::size_t b = a; b < count; ++b) {
			auto f = derived_bracket(T, SuperPolynomial::variable(c, a), SuperPolynomial::variable(c, b));
			if (!f.is_zero())
				os << "{" << c->var(a).name << "," << c->var(b).name << "} = " << f.render() << "\n";
		}
	return table_or_zero(os.str());
}

struct Built {
	DoubleModel D;
	ChartPtr lift;
};

Built build_manifold_double(const Model& m, const Args& a, const std::string& cmd, bool force)
{
	auto& f = need_field(m, a.pos[0]);
	auto& t = need_tensor(m, a.pos[1]);
	auto& g = need_grading(m, a.pos[2]);
	if (f.chart != t.chart)
		throw UsageError(cmd + ": field and tensor live on different charts");
	bool qp = t.kind == LiftKind::AntiCotangent;
	if (qp != g.has_p)
		throw UsageError(cmd + ": grading '" + g.name + "' sets " + (g.has_p ? "p" : "s") + " but tensor '" + t.name +
		                 "' lives on " + (qp ? "an antilift" : "a lift"));
	auto L = tensor_lift(m, t, g.grading.shift());
	auto T = t.value.rechart(L);
	auto Q = field_on(f, m.chart(f.chart));
	Built b;
	b.lift = L;
	b.D = qp ? build_double_QP(Q, T, g.grading, force) : build_double_QS(Q, T, g.grading, force);
	return b;
}

void add_double_objects(Report& r, const DoubleModel& D)
{
	r.objects.push_back({D.lift->name(), "chart", chart_rendering(D.lift)});
	r.objects.push_back({"H", "hamiltonian", D.hamiltonian.render()});
	r.objects.push_back({"Q_D", "field", D.Q_D.render()});
}

Report cmd_check_q(const Model& m, const Args& a)
{
	arity("check-q", a, 1, "FIELD");
	auto& f = need_field(m, a.pos[0]);
	Report r;
	r.checks.push_back(check_homological(f.field));
	r.checks.push_back(check_homological_hamiltonian(f.field));
	if (a.flag("--linf")) {
		auto comps = linf_components(f.field);
		for (auto& [deg, X] : comps) {
			CheckReport c{"L-infinity component of fiber degree " + std::to_string(deg), true, {}, {}};
			for (std::size_t i = 0; i < X.size(); ++i)
				if (!X[i].is_zero())
					c.add("d/d" + X.chart()->var(i).name, X[i]);
			if (c.residue.empty())
				c.add("all", SuperPolynomial(X.chart()));
			r.checks.push_back(c);
		}
	}
	r.objects.push_back({f.name, "field", f.field.render()});
	return r;
}

Report cmd_check_tensor(const Model& m, const Args& a)
{
	arity("check-tensor", a, 1, "TENSOR");
	auto& t = need_tensor(m, a.pos[0]);
	Report r;
	r.checks.push_back(check_tensor(t.value, t.name));
	r.objects.push_back({t.name, "tensor", t.value.render()});
	r.objects.push_back({t.name, "coordinate brackets", coordinate_bracket_rendering(t.value, t.value.chart()->base_size())});
	return r;
}

Report cmd_check_structure(const Model& m, const Args& a, bool qp)
{
	std::string cmd = qp ? "check-qp" : "check-qs";
	arity(cmd, a, 3, "FIELD TENSOR GRADING");
	auto& f = need_field(m, a.pos[0]);
	auto& t = need_tensor(m, a.pos[1]);
	auto& g = need_grading(m, a.pos[2]);
	if ((t.kind == LiftKind::AntiCotangent) != qp)
		throw UsageError(cmd + ": tensor '" + t.name + "' lives on " + (qp ? "a lift" : "an antilift"));
	if (g.has_p != qp)
		throw UsageError(cmd + ": grading '" + g.name + "' must set " + (qp ? "p" : "s"));
	if (f.chart != t.chart)
		throw UsageError(cmd + ": field and tensor live on different charts");
	auto L = tensor_lift(m, t, g.grading.shift());
	auto T = t.value.rechart(L);
	Report r;
	r.checks.push_back(check_homological(f.field));
	r.checks.push_back(check_tensor(T, t.name));
	r.checks.push_back(check_compatibility(f.field, T, qp ? StructureKind::QP : StructureKind::QS));
	r.checks.push_back(weight_report("weight of " + f.name + " is q = " + std::to_string(g.grading.q), f.field,
	                                 g.grading.q));
	int want = 2 * g.grading.q - g.grading.s_or_p;
	r.checks.push_back(weight_report("total weight of " + t.name + " is 2q-" + std::string(qp ? "p" : "s") + " = " +
	                                     std::to_string(want),
	                                 T, want));
	r.objects.push_back({L->name(), "chart", chart_rendering(L)});
	return r;
}

Report cmd_double(const Model& m, const Args& a)
{
	if (a.pos.size() == 2 && is_algebra(m, a.pos[0]) && is_algebra(m, a.pos[1])) {
		auto c = need_algebra(m, a.pos[0]).c;
		auto b = need_algebra(m, a.pos[1]).c;
		if (b.dim() != c.dim())
			throw Error("dual '" + a.pos[1] + "' has dimension " + std::to_string(b.dim()) + ", algebra '" +
			            a.pos[0] + "' has " + std::to_string(c.dim()));
		b.set_names(c.names());
		auto D = drinfeld_double(c, b);
		Report r;
		r.checks.push_back(D.bialgebra);
		r.checks.push_back(invariance_report(D.d, D.pairing));
		r.checks.push_back(check_tensor(D.S_D, "S_D"));
		r.checks.push_back(jacobi_report(D.d));
		r.objects.push_back({"d", "brackets", table_or_zero(D.d.render_table())});
		r.objects.push_back({"Q_D", "field", D.model.Q_D.render()});
		r.objects.push_back({"r", "tensor", D.r.render()});
		r.objects.push_back({"S_D", "tensor", D.S_D.render()});
		r.objects.push_back({"S_D", "second bracket", table_or_zero(D.second_bracket.render_table())});
		return r;
	}
	arity("double", a, 3, "FIELD TENSOR GRADING, or two algebras");
	bool force = a.flag("--force");
	auto b = build_manifold_double(m, a, "double", force);
	Report r;
	r.checks.push_back(b.D.compatibility);
	r.checks.push_back(check_homological(b.D.Q_D));
	add_double_objects(r, b.D);
	return r;
}

std::vector<std::string> comma_list(const std::string& s)
{
	std::vector<std::string> out;
	std::string cur;
	for (char c : s) {
		if (c == ',') {
			out.push_back(cur);
			cur.clear();
		} else if (!std::isspace(static_cast<unsigned char>(c))) {
			cur += c;
		}
	}
	if (!cur.empty())
		out.push_back(cur);
	return out;
}

Report cmd_sd(const Model& m, const Args& a)
{
	arity("sd", a, 3, "FIELD TENSOR GRADING --connection NAME");
	auto b = build_manifold_double(m, a, "sd", false);
	if (b.D.kind != StructureKind::QS)
		throw UsageError("sd: the almost Schouten tensor needs a QS double (tensor on a lift)");
	auto base = b.D.lift->source();
	auto it = a.opt.find("--connection");
	if (it == a.opt.end())
		throw UsageError("sd: --connection NAME is required (use 'flat' for the zero connection)");
	Connection gamma(base);
	if (auto c = m.connection(it->second)) {
		if (c->chart != base->name())
			throw UsageError("sd: connection '" + c->name + "' lives on chart '" + c->chart + "'");
		gamma = c->gamma;
	} else if (it->second != "flat") {
		throw UsageError("sd: unknown connection '" + it->second + "'");
	}
	std::vector<std::string> names;
	if (auto mo = a.opt.find("--momenta"); mo != a.opt.end()) {
		names = comma_list(mo->second);
		if (names.size() != b.D.lift->size())
			throw UsageError("sd: --momenta needs " + std::to_string(b.D.lift->size()) + " names");
	}
	auto second = second_lift(b.D, names);
	auto rr = long_momentum_r(b.D, second, gamma);
	auto SD = almost_schouten_SD(b.D, rr);
	Report r;
	auto jac = check_tensor(SD, "S_D");
	r.checks.push_back(jac);
	CheckReport inv{"Q_D-invariance of S_D", true, {}, {}};
	inv.add("{p(Q_D),S_D}", lie_derivative(b.D.Q_D, SD));
	r.checks.push_back(inv);
	r.objects.push_back({second->name(), "chart", chart_rendering(second)});
	r.objects.push_back({"r", "tensor", rr.render()});
	r.objects.push_back({"S_D", "tensor", SD.render()});
	r.objects.push_back({"S_D", "coordinate brackets", coordinate_bracket_rendering(SD, b.D.lift->size())});
	return r;
}

Report cmd_odd_double(const Model& m, const Args& a)
{
	arity("odd-double", a, 2, "ALGEBRA DUAL");
	auto g = need_algebra(m, a.pos[0]).c;
	auto d = need_algebra(m, a.pos[1]).c;
	auto O = odd_double(g, d);
	Report r;
	r.checks.push_back(O.conditions);
	r.checks.push_back(invariance_report(O.d, O.pairing));
	r.checks.push_back(O.tensor.poisson);
	r.checks.push_back(O.tensor.invariance);
	r.checks.push_back(jacobi_report(O.d));
	r.objects.push_back({"P", "tensor", O.P.render()});
	r.objects.push_back({"g", "cobracket", O.delta_g.render()});
	r.objects.push_back({"d", "brackets", table_or_zero(O.d.render_table())});
	r.objects.push_back({"Q_D", "field", O.model.Q_D.render()});
	r.objects.push_back({"P_D", "tensor", O.tensor.P_D.render()});
	r.objects.push_back({"d", "cobracket", O.delta.render()});
	return r;
}

Report cmd_yang_baxter(const Model& m, const Args& a)
{
	arity("yang-baxter", a, 2, "R Q");
	Report r;
	if (is_algebra(m, a.pos[0]) && is_algebra(m, a.pos[1])) {
		auto c = need_algebra(m, a.pos[0]).c;
		auto b = need_algebra(m, a.pos[1]).c;
		if (b.dim() != c.dim())
			throw Error("dual '" + a.pos[1] + "' has dimension " + std::to_string(b.dim()) + ", algebra '" +
			            a.pos[0] + "' has " + std::to_string(c.dim()));
		b.set_names(c.names());
		auto D = drinfeld_double(c, b);
		r.checks.push_back(D.yang_baxter.first);
		r.checks.push_back(D.yang_baxter.second);
		r.objects.push_back({"r", "tensor", D.r.render()});
		r.objects.push_back({"Q", "hamiltonian", hamiltonian_lift_p(D.model.Q_D, D.second).render()});
		return r;
	}
	auto& R = need_tensor(m, a.pos[0]);
	SuperPolynomial Q;
	if (auto f = m.field(a.pos[1])) {
		if (R.kind != LiftKind::Cotangent)
			throw UsageError("yang-baxter: a field is lifted by p(Q), which needs R on a lift");
		if (f->chart != R.chart)
			throw UsageError("yang-baxter: field and R live on different charts");
		Q = hamiltonian_lift_p(f->field, R.value.chart());
	} else {
		auto& T = need_tensor(m, a.pos[1]);
		if (T.chart != R.chart || T.kind != R.kind || T.momenta != R.momenta)
			throw UsageError("yang-baxter: R and Q live on different lifts");
		Q = T.value;
	}
	auto [cy, gy] = yang_baxter(R.value, Q);
	r.checks.push_back(cy);
	r.checks.push_back(gy);
	r.objects.push_back({R.name, "tensor", R.value.render()});
	r.objects.push_back({a.pos[1], "hamiltonian", Q.render()});
	return r;
}

Report cmd_duality(const Model& m, const Args& a)
{
	arity("duality", a, 2, "even|odd CHART");
	DualityKind kind;
	if (a.pos[0] == "even")
		kind = DualityKind::Even;
	else if (a.pos[0] == "odd")
		kind = DualityKind::Odd;
	else
		throw UsageError("duality: expected 'even' or 'odd', got '" + a.pos[0] + "'");
	auto c = m.chart(a.pos[1]);
	if (!c)
		throw UsageError("unknown chart '" + a.pos[1] + "'");
	auto coords = a.flag("--left") ? DualityCoordinates::Left : DualityCoordinates::Standard;
	auto F = duality_map(c, kind, coords);
	auto sq = duality_square(c, kind, coords);
	Report r;
	r.checks.push_back(F.preservation);
	r.checks.push_back(sq.report);
	r.objects.push_back({F.dual->name(), "chart", chart_rendering(F.dual)});
	r.objects.push_back({"F", "map " + F.source->name() + " -> " + F.target->name(), F.render()});
	std::ostringstream os;
	for (std::size_t i = 0; i < sq.images.size(); ++i)
		os << sq.source->var(i).name << " -> " << sq.images[i].render() << "\n";
	r.objects.push_back({"F^2", "map", os.str()});
	return r;
}

Report cmd_algebra_report(const Model& m, const Args& a)
{
	arity("algebra-report", a, 1, "NAME [--cobracket]");
	auto A = need_algebra(m, a.pos[0]);
	Report r;
	r.checks.push_back(jacobi_report(A.c));
	if (A.q)
		r.checks.push_back(invariance_report(A.c, A.q->pairing));
	std::ostringstream basis;
	for (std::size_t i = 0; i < A.c.dim(); ++i)
		basis << A.c.name(i) << ": " << (A.c.parity(i) ? "odd" : "even") << "\n";
	r.objects.push_back({A.name, "basis", basis.str()});
	r.objects.push_back({A.name, "brackets", table_or_zero(A.c.render_table())});
	if (A.q)
		r.objects.push_back({A.name, "pairing", matrix_rendering(A.c, A.q->pairing)});
	if (a.flag("--cobracket")) {
		if (!A.q)
			throw UsageError("algebra-report: --cobracket is available for q(n)");
		auto R = relative_double(A.c, A.q->part, A.q->pairing);
		r.checks.push_back(R.checks);
		CheckReport h{"cobracket vanishes on h", true, {}, {}};
		for (auto i : R.h_index)
			h.add("delta(" + A.c.name(i) + ")", R.delta.delta[i]);
		r.checks.push_back(h);
		CheckReport regen{"relative double reproduces the bracket", true, {}, {}};
		auto pc = product_chart(A.c, false);
		for (std::size_t i = 0; i < A.c.dim(); ++i)
			for (std::size_t j = 0; j < A.c.dim(); ++j) {
				SuperPolynomial diff(pc);
				for (std::size_t k = 0; k < A.c.dim(); ++k)
					if (R.d(i, j, k) != A.c(i, j, k))
						diff += (R.d(i, j, k) - A.c(i, j, k)) * SuperPolynomial::variable(pc, k);
				if (!diff.is_zero())
					regen.add("[" + A.c.name(i) + "," + A.c.name(j) + "]", diff);
			}
		if (regen.residue.empty())
			regen.add("all basis pairs", SuperPolynomial(pc));
		r.checks.push_back(regen);
		CheckReport fit{"sign resolution", true, {}, {}};
		std::ostringstream signs;
		for (auto& f : R.signs) {
			signs << f.family << ":";
			if (f.vacuous)
				signs << " vacuous";
			else if (f.solutions.empty())
				signs << " none";
			for (std::size_t s = 0; s < f.solutions.size() && !f.vacuous; ++s) {
				auto& v = f.solutions[s];
				signs << " (" << v[0] << "," << v[1] << "," << v[2] << "," << v[3] << ")";
			}
			signs << "\n";
			fit.add(f.family, SuperPolynomial::constant(pc, f.solutions.empty() ? 1 : 0));
		}
		r.checks.push_back(fit);
		r.objects.push_back({"rho", "tensor", R.rho.render()});
		r.objects.push_back({A.name, "signs (-1)^(a0 + a1 i + a2 j + a3 k)", signs.str()});
		r.objects.push_back({A.name, "cobracket", R.delta.render()});
	}
	return r;
}

}

Report run(const std::vector<std::string>& args, const Model& model)
{
	if (args.empty())
		throw UsageError("no command given");
	const auto& cmd = args[0];
	Args a;
	Report r;
	try {
		if (cmd == "check-q") {
			r = cmd_check_q(model, split_args(args, {}, {"--linf"}));
		} else if (cmd == "check-tensor") {
			r = cmd_check_tensor(model, split_args(args, {}, {}));
		} else if (cmd == "check-qs" || cmd == "check-qp") {
			r = cmd_check_structure(model, split_args(args, {}, {}), cmd == "check-qp");
		} else if (cmd == "check-bialgebra") {
			a = split_args(args, {}, {});
			arity(cmd, a, 2, "C B");
			auto c = need_algebra(model, a.pos[0]).c;
			auto b = need_algebra(model, a.pos[1]).c;
			r.checks.push_back(check_bialgebra(c, b));
			r.objects.push_back({a.pos[0], "brackets", table_or_zero(c.render_table())});
			r.objects.push_back({a.pos[1], "dual brackets", table_or_zero(b.render_table())});
		} else if (cmd == "double") {
			r = cmd_double(model, split_args(args, {}, {"--force"}));
		} else if (cmd == "sd") {
			r = cmd_sd(model, split_args(args, {"--connection", "--momenta"}, {}));
		} else if (cmd == "odd-double") {
			r = cmd_odd_double(model, split_args(args, {}, {}));
		} else if (cmd == "yang-baxter") {
			r = cmd_yang_baxter(model, split_args(args, {}, {}));
		} else if (cmd == "duality") {
			r = cmd_duality(model, split_args(args, {}, {"--left"}));
		} else if (cmd == "algebra-report") {
			r = cmd_algebra_report(model, split_args(args, {}, {"--cobracket"}));
		} else {
			throw UsageError("unknown command '" + cmd + "'");
		}
	} catch (const UsageError&) {
		throw;
	} catch (const Error& e) {
		throw Error(cmd + ": " + e.what());
	}
	r.model = model.source.empty() ? "(builtin)" : model.source;
	r.command.clear();
	for (std::size_t i = 0; i < args.size(); ++i)
		r.command += (i ? " " : "") + args[i];
	return r;
}

}
