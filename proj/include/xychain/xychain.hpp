#pragma once

#include "xychain/analytic.hpp"
#include "xychain/errors.hpp"
#include "xychain/model.hpp"
#include "xychain/oracle.hpp"
#include "xychain/scaling.hpp"
