#include <iostream>

#include "oplab/acceptance.hpp"

int main() { return oplab::report_acceptance(std::cout); }
