#pragma once

#include "cone/types.hpp"
#include "cone/rng.hpp"
#include "cone/quadrature.hpp"
#include "cone/jordan.hpp"
#include "cone/geometry.hpp"
#include "cone/special.hpp"
#include "cone/spherical.hpp"
#include "cone/boundary.hpp"
#include "cone/transform.hpp"
