#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradedq/liealg.hpp"

namespace gradedq {

class ParseError : public Error {
public:
	ParseError(std::string file, int line, int col, const std::string& msg);
	int line() const { return line_; }
	int column() const { return col_; }

private:
	int line_, col_;
};

// total degree cap for parsed expressions; GRADEDQ_DEGREE_CAP overrides the default 64
unsigned degree_cap();

enum class LiftKind { Cotangent, AntiCotangent };

struct FieldDecl {
	std::string name, chart;
	// -1 when no parity was declared
	int declared_parity = -1;
	VectorField field;
};

// the polynomial lives on the lift with shift 0; momentum names are kept when given explicitly
struct TensorDecl {
	std::string name, chart;
	LiftKind kind = LiftKind::Cotangent;
	std::vector<std::string> momenta;
	int declared_parity = -1;
	SuperPolynomial value;
};

struct GradingDecl {
	std::string name;
	GradingSystem grading;
	bool has_p = false;
};

struct ConnectionDecl {
	std::string name, chart;
	Connection gamma;
};

struct AlgebraDecl {
	std::string name;
	// "q", "gl", "sl", "susy1" or "sc"
	std::string kind;
	unsigned n = 0;
	std::string file;
	StructureConstants c;
	// set for q(n)
	std::optional<QAlgebra> q;
};

struct Model {
	std::string source;
	std::vector<ChartPtr> charts;
	std::vector<GradingDecl> gradings;
	std::vector<FieldDecl> fields;
	std::vector<TensorDecl> tensors;
	std::vector<ConnectionDecl> connections;
	std::vector<AlgebraDecl> algebras;

	ChartPtr chart(const std::string& name) const;
	const GradingDecl* grading(const std::string& name) const;
	const FieldDecl* field(const std::string& name) const;
	const TensorDecl* tensor(const std::string& name) const;
	const ConnectionDecl* connection(const std::string& name) const;
	const AlgebraDecl* algebra(const std::string& name) const;

	// structural equality of the declarations
	bool operator==(const Model& o) const;
};

// lift of a declared chart with the given shift and the tensor's momentum names
ChartPtr tensor_lift(const Model& m, const TensorDecl& t, int shift);

// sc "file.json" paths resolve against base_dir
Model parse_model(const std::string& text, const std::string& source = "<input>",
                  const std::string& base_dir = ".");
Model load_model(const std::string& path);
std::string print_model(const Model& m);

struct ReportObject {
	std::string name, kind, rendering;
};

struct Report {
	std::string model;
	std::string command;
	std::vector<CheckReport> checks;
	std::vector<ReportObject> objects;

	bool pass() const;
	std::string text() const;
	std::string json() const;
};

class UsageError : public Error {
public:
	using Error::Error;
};

// args are the command name followed by its operands and flags
Report run(const std::vector<std::string>& args, const Model& model);

}
