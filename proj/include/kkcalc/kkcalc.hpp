#pragma once

// Umbrella header: exact computation with finitely generated abelian groups,
// Z/2-graded K-theory data, and the Kasparov-group assembly built on top.

#include "kkcalc/decomp.hpp"
#include "kkcalc/errors.hpp"
#include "kkcalc/fga.hpp"
#include "kkcalc/functors.hpp"
#include "kkcalc/graded.hpp"
#include "kkcalc/group_map.hpp"
#include "kkcalc/int_matrix.hpp"
#include "kkcalc/integer.hpp"
#include "kkcalc/kk.hpp"
#include "kkcalc/parse.hpp"
#include "kkcalc/sequences.hpp"
#include "kkcalc/snf.hpp"
