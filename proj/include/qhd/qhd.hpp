#pragma once

#include "qhd/analysis.hpp"
#include "qhd/boolfn.hpp"
#include "qhd/circuit.hpp"
#include "qhd/config.hpp"
#include "qhd/errors.hpp"
#include "qhd/simulator.hpp"
