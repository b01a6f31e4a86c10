#pragma once

#include "dalnet/diagnostics.hpp"
#include "dalnet/error.hpp"
#include "dalnet/fit.hpp"
#include "dalnet/kernel.hpp"
#include "dalnet/likelihood.hpp"
#include "dalnet/model.hpp"
#include "dalnet/model_io.hpp"
#include "dalnet/models.hpp"
#include "dalnet/network.hpp"
#include "dalnet/network_io.hpp"
#include "dalnet/optimize.hpp"
#include "dalnet/pattern.hpp"
#include "dalnet/pattern_io.hpp"
#include "dalnet/quadrature.hpp"
#include "dalnet/random.hpp"
#include "dalnet/residuals.hpp"
#include "dalnet/simulation.hpp"
#include "dalnet/study.hpp"
