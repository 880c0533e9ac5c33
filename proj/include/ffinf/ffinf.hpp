#pragma once

#include "scalar.hpp"
#include "combinat.hpp"
#include "poly.hpp"
#include "finconv.hpp"
#include "series.hpp"
#include "freeprob.hpp"
#include "infin.hpp"
#include "families.hpp"
#include "io.hpp"
