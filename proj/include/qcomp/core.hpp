#pragma once

#include "qcomp/core/linalg.hpp"
#include "qcomp/core/propagate.hpp"
#include "qcomp/core/schedule.hpp"
#include "qcomp/core/types.hpp"
