#pragma once

// Umbrella header for the directed preferential attachment library.

#include "dpa/absorption.hpp"
#include "dpa/closed_form.hpp"
#include "dpa/error.hpp"
#include "dpa/growth.hpp"
#include "dpa/io.hpp"
#include "dpa/joint_pmf.hpp"
#include "dpa/marginals.hpp"
#include "dpa/params.hpp"
#include "dpa/quadrature.hpp"
#include "dpa/rational.hpp"
#include "dpa/rng.hpp"
#include "dpa/special.hpp"
#include "dpa/stats.hpp"
#include "dpa/tails.hpp"
#include "dpa/version.hpp"
