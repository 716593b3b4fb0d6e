#pragma once

#include "rng.hpp"
#include "ising.hpp"
#include "schedules.hpp"
#include "zeeman.hpp"
#include "models.hpp"
#include "stats.hpp"
#include "harness.hpp"
