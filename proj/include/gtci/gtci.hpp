// Umbrella header: exact classification of Q-factorial Gorenstein Fano
// general toric complete intersection threefolds of rank one.
#pragma once

#include <gtci/integer.hpp>
#include <gtci/matrix.hpp>
#include <gtci/zlattice.hpp>
#include <gtci/abelian.hpp>
#include <gtci/constellation.hpp>
#include <gtci/degree_matrix.hpp>
#include <gtci/geometry.hpp>
#include <gtci/pipeline.hpp>
