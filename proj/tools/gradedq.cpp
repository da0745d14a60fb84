#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gradedq/dsl.hpp"

int main(int argc, char** argv)
{
	CLI::App app{"gradedq: exact checks for supercommutative polynomial structures"};
	std::string model_path;
	bool json = false;
	app.add_option("-m,--model", model_path, "declaration file");
	app.add_flag("--json", json, "machine readable report");
	app.prefix_command();
	app.footer("commands:\n"
	           "  print\n"
	           "  check-q FIELD [--linf]\n"
	           "  check-tensor TENSOR\n"
	           "  check-qs FIELD TENSOR GRADING\n"
	           "  check-qp FIELD TENSOR GRADING\n"
	           "  check-bialgebra C B\n"
	           "  double FIELD TENSOR GRADING [--force] | double C B\n"
	           "  odd-double G DUAL\n"
	           "  sd FIELD TENSOR GRADING --connection NAME|flat [--momenta a,b,...]\n"
	           "  yang-baxter R Q | yang-baxter C B\n"
	           "  duality even|odd CHART [--left]\n"
	           "  algebra-report NAME [--cobracket]\n"
	           "algebra names also accept q(N), gl(N), sl(N) and susy1\n"
	           "exit status: 0 pass, 1 a check failed, 2 usage, parse or module error");
	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int rc = app.exit(e);
		return rc == 0 ? 0 : 2;
	}
	auto args = app.remaining();
	if (args.empty()) {
		std::cerr << "gradedq: no command given (see --help)\n";
		return 2;
	}
	try {
		gradedq::Model model;
		if (!model_path.empty())
			model = gradedq::load_model(model_path);
		if (args[0] == "print") {
			if (args.size() != 1) {
				std::cerr << "gradedq: print takes no operands\n";
				return 2;
			}
			std::cout << gradedq::print_model(model);
			return 0;
		}
		auto r = gradedq::run(args, model);
		std::cout << (json ? r.json() : r.text());
		return r.pass() ? 0 : 1;
	} catch (const std::exception& e) {
		std::cerr << "gradedq: " << e.what() << "\n";
		return 2;
	}
}
