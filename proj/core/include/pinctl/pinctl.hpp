#pragma once

#include "pinctl/bounds.hpp"
#include "pinctl/error.hpp"
#include "pinctl/graph.hpp"
#include "pinctl/matrix.hpp"
#include "pinctl/select.hpp"
#include "pinctl/simulate.hpp"
#include "pinctl/spectral.hpp"
#include "pinctl/stability.hpp"
