#include <iostream>

#include "gradedq/dsl.hpp"

int main()
{
	auto m = gradedq::parse_model("chart C { var x : even, weight 0; var t : odd, weight 1; }\n"
	                              "field X on C = t d/dx;\n");
	auto r = gradedq::run({"check-q", "X"}, m);
	std::cout << r.text();
	return r.pass() ? 0 : 1;
}
