#include <iostream>

#include "cli.hh"

int main(int argc, char** argv)
{
	std::ios::sync_with_stdio(false);
	return simrel::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
