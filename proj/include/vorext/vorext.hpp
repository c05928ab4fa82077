#ifndef VOREXT_VOREXT_HPP
#define VOREXT_VOREXT_HPP

#include "vorext/exact.hpp"
#include "vorext/extension.hpp"
#include "vorext/lattice.hpp"
#include "vorext/polytope.hpp"
#include "vorext/report.hpp"
#include "vorext/serialize.hpp"

#endif  // VOREXT_VOREXT_HPP
