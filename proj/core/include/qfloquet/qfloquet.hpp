#pragma once

#include "qfloquet/error.hpp"
#include "qfloquet/floquet.hpp"
#include "qfloquet/hill.hpp"
#include "qfloquet/integrator.hpp"
#include "qfloquet/qmatrix.hpp"
#include "qfloquet/quaternion.hpp"
#include "qfloquet/stability.hpp"
#include "qfloquet/time_expr.hpp"
