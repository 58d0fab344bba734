#pragma once

#include "ucpoly/error.hpp"
#include "ucpoly/random.hpp"
#include "ucpoly/budget.hpp"
#include "ucpoly/core.hpp"
#include "ucpoly/rademacher.hpp"
#include "ucpoly/polys.hpp"
#include "ucpoly/optimize.hpp"
#include "ucpoly/certify.hpp"
#include "ucpoly/series.hpp"
#include "ucpoly/gallery.hpp"
