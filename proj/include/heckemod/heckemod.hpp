#pragma once

#include "heckemod/integer.hpp"
#include "heckemod/qseries.hpp"
#include "heckemod/hecke.hpp"
#include "heckemod/gfpoly.hpp"
#include "heckemod/traceformula.hpp"
#include "heckemod/cache.hpp"
#include "heckemod/parallel.hpp"
#include "heckemod/modfactor.hpp"
#include "heckemod/galois.hpp"
