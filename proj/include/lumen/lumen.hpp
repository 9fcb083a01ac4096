#pragma once

#include "lumen/cmf.hpp"
#include "lumen/colorimetry.hpp"
#include "lumen/constants.hpp"
#include "lumen/csv.hpp"
#include "lumen/error.hpp"
#include "lumen/maxper.hpp"
#include "lumen/photometry.hpp"
#include "lumen/quadrature.hpp"
#include "lumen/simplex.hpp"
#include "lumen/spectrum.hpp"
#include "lumen/spectrum_io.hpp"
#include "lumen/spline.hpp"
