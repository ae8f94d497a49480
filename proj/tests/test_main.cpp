// test_main.cpp — doctest runner shared by every test executable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
