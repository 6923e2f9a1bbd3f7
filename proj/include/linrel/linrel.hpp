#pragma once

// Umbrella header: the whole calculus in one include.

#include "linrel/tolerance.hpp"
#include "linrel/subspace.hpp"
#include "linrel/relation.hpp"
#include "linrel/rowcol.hpp"
#include "linrel/laws.hpp"
#include "linrel/truncation.hpp"
#include "linrel/serialize.hpp"
