#pragma once

#include "phislope/admiss.hpp"
#include "phislope/display.hpp"
#include "phislope/error.hpp"
#include "phislope/mass.hpp"
#include "phislope/matrix.hpp"
#include "phislope/oracle.hpp"
#include "phislope/phimod.hpp"
#include "phislope/polygon.hpp"
#include "phislope/random.hpp"
#include "phislope/semilinear.hpp"
#include "phislope/series.hpp"
#include "phislope/simulate.hpp"
#include "phislope/witt.hpp"
