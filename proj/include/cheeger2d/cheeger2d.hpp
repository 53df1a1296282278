#pragma once

#include "arc_region.hpp"
#include "calibration.hpp"
#include "cheeger.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "cutlocus.hpp"
#include "domain_io.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "oned.hpp"
#include "polygon.hpp"
#include "radial_disk.hpp"
#include "rng.hpp"
#include "rootfind.hpp"
#include "svg.hpp"
#include "vec2.hpp"
