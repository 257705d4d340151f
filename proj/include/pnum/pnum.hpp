#pragma once

/// @file pnum.hpp
/// @brief Umbrella header for the core library (everything except io.hpp,
/// which additionally needs nlohmann/json).

#include "analysis.hpp"
#include "arith.hpp"
#include "classify.hpp"
#include "constructors.hpp"
#include "crosscheck.hpp"
#include "group.hpp"
