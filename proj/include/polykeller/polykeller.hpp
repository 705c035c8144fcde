#pragma once

// Umbrella header for the exact Keller-map toolkit.

#include "constructions.hpp"
#include "factor.hpp"
#include "gcd.hpp"
#include "generators.hpp"
#include "mapfile.hpp"
#include "matrix.hpp"
#include "parse.hpp"
#include "poly_map.hpp"
#include "polynomial.hpp"
#include "report.hpp"
#include "ruppert.hpp"
#include "verify.hpp"
