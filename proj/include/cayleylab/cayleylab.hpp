#pragma once

#include "bitset.hpp"
#include "bounds.hpp"
#include "cayley.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "family.hpp"
#include "group.hpp"
#include "latin.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "theory.hpp"
#include "verify.hpp"
