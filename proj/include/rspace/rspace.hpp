#pragma once

#include "rspace/scalars.hpp"
#include "rspace/fmatrix.hpp"
#include "rspace/linalg.hpp"
#include "rspace/random.hpp"
#include "rspace/lie.hpp"
#include "rspace/algebras.hpp"
#include "rspace/sphere.hpp"
#include "rspace/grassmann.hpp"
#include "rspace/isotropic.hpp"
#include "rspace/classical.hpp"
#include "rspace/quadric.hpp"
#include "rspace/suites.hpp"
