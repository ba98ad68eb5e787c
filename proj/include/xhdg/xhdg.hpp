#pragma once

#include "xhdg/assembly.hpp"
#include "xhdg/basis.hpp"
#include "xhdg/driver.hpp"
#include "xhdg/geometry.hpp"
#include "xhdg/material.hpp"
#include "xhdg/mesh.hpp"
#include "xhdg/problems.hpp"
#include "xhdg/projection.hpp"
#include "xhdg/quadrature.hpp"
#include "xhdg/solver.hpp"
#include "xhdg/spaces.hpp"
#include "xhdg/verify.hpp"
