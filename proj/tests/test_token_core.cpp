#include <doctest.h>
#include "catome/types.hpp"
TEST_CASE("placeholder") { CHECK(catome::grid_index(0,0,4) == 0); }
