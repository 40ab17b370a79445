#pragma once

#include "lpde/assoc.hpp"
#include "lpde/duality.hpp"
#include "lpde/frobenius.hpp"
#include "lpde/io.hpp"
#include "lpde/residue.hpp"
#include "lpde/solver.hpp"
