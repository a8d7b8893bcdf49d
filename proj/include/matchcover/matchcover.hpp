#pragma once

// Umbrella header for the matchcover library.

#include "matchcover/bounds.hpp"
#include "matchcover/covering.hpp"
#include "matchcover/errors.hpp"
#include "matchcover/exact.hpp"
#include "matchcover/hypermatchings.hpp"
#include "matchcover/io.hpp"
#include "matchcover/matchings.hpp"
#include "matchcover/parallel.hpp"
#include "matchcover/rng.hpp"
