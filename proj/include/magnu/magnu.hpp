#ifndef MAGNU_MAGNU_HPP
#define MAGNU_MAGNU_HPP

// Umbrella header.

#include "magnu/bounds.hpp"
#include "magnu/constructions.hpp"
#include "magnu/curvature.hpp"
#include "magnu/errors.hpp"
#include "magnu/families.hpp"
#include "magnu/generators.hpp"
#include "magnu/graph.hpp"
#include "magnu/io.hpp"
#include "magnu/potential.hpp"
#include "magnu/report.hpp"
#include "magnu/solver.hpp"
#include "magnu/spectra.hpp"

#endif // MAGNU_MAGNU_HPP
