#pragma once

#include "latdiam/bound_path.hpp"
#include "latdiam/errors.hpp"
#include "latdiam/generators.hpp"
#include "latdiam/lp.hpp"
#include "latdiam/polytope.hpp"
#include "latdiam/rational.hpp"
#include "latdiam/skeleton.hpp"
#include "latdiam/vertex_tests.hpp"
